"""Wiener-Hopf factors f+ and f- of a Rogers function, three ways.

``f(xi) = f+(-i xi) f-(i xi)`` with complete Bernstein factors, unique up to
a constant split; the library fixes c+ = c- = sqrt(c) where c is the
exponential-representation constant of f.  Three independent evaluation
routes are provided:

* ``phi``   -- the exponential formula over a cached boundary-angle table,
* ``bd``    -- a Baxter-Donsker-type contour integral along the real line,
* ``spine`` -- a Riemann-Stieltjes integral along the spine of f.

Ratios f+(x1)/f+(x2) and products f+(x1) f-(x2) are normalization-free and
are what the public operations return.
"""

from __future__ import annotations

import cmath
import math
from bisect import bisect_left, bisect_right

import numpy as np

from .errors import (
    ConventionViolationError,
    DomainError,
    MethodUnsupportedError,
)
from .numerics import QuadratureConfig, integrate_adaptive, principal_log
from .report import VerifyReport
from .rogers import (
    PhiTable,
    axis_feature_points,
    estimate_phi,
    eval_f,
    f_limits,
    is_constant,
    is_degenerate,
)
from .spine import _lambda_flagged

__all__ = [
    "build_phi_table",
    "FactorHandle",
    "wh_eval_from_phi",
    "wh_ratio",
    "wh_product",
    "factorization_check",
    "closed_form_factors",
    "SpineStieltjes",
    "get_phi_table",
    "get_spine_engine",
    "get_factor_handle",
    "factor_pair",
]

PLUS = "plus"
MINUS = "minus"
_METHODS = ("bd", "spine", "phi")

# 8-point Gauss-Legendre rule on [-1, 1], used per phi-table cell
_GX, _GW = np.polynomial.legendre.leggauss(8)


# ---------------------------------------------------------------------------
# boundary-angle table construction
# ---------------------------------------------------------------------------


def build_phi_table(
    spec,
    s_min=1e-6,
    s_max=1e6,
    n_base=512,
    refine_tol=2e-7,
    min_width=1e-10,
    max_points=40000,
):
    """Estimate the boundary angle on log grids over +-[s_min, s_max].

    Cells failing a width-weighted midpoint-interpolation test (local
    integral-error proxy |phi_mid - interp| * cell log-width) are split
    recursively, which localizes jumps of phi (zeros and poles of f on the
    imaginary axis) to relative width ``min_width`` and resolves kinks
    adaptively.  Returns a piecewise-linear :class:`PhiTable`.
    """
    out_s, out_phi = [], []
    budget = [max_points]

    def refine(s_lo, s_hi, p_lo, p_hi, sink):
        if budget[0] <= 0 or (s_hi - s_lo) <= min_width * min(abs(s_lo), abs(s_hi)):
            return
        s_mid = math.copysign(math.sqrt(s_lo * s_hi), s_lo)
        p_mid = estimate_phi(spec, s_mid)
        budget[0] -= 1
        w = (s_mid - s_lo) / (s_hi - s_lo)
        p_interp = (1.0 - w) * p_lo + w * p_hi
        width_u = math.log(s_hi / s_lo) if s_lo > 0 else math.log(s_lo / s_hi)
        if abs(p_mid - p_interp) * min(abs(width_u), 1.0) > refine_tol:
            refine(s_lo, s_mid, p_lo, p_mid, sink)
            sink.append((s_mid, p_mid))
            refine(s_mid, s_hi, p_mid, p_hi, sink)
        else:
            sink.append((s_mid, p_mid))

    features = axis_feature_points(spec)
    for sign in (-1.0, 1.0):
        pts = set((sign * np.geomspace(s_min, s_max, n_base + 1)).tolist())
        for fpt in features:
            if math.copysign(1.0, fpt) != sign or not s_min < abs(fpt) < s_max:
                continue
            for rel in (1e-3, 1e-6, 1e-9):
                pts.add(fpt * (1.0 + rel))
                pts.add(fpt * (1.0 - rel))
        grid = np.sort(np.asarray(sorted(pts)))
        phis = [estimate_phi(spec, float(s)) for s in grid]
        for k in range(len(grid) - 1):
            out_s.append(float(grid[k]))
            out_phi.append(phis[k])
            sink = []
            refine(float(grid[k]), float(grid[k + 1]), phis[k], phis[k + 1], sink)
            out_s.extend(s for s, _ in sink)
            out_phi.extend(p for _, p in sink)
        out_s.append(float(grid[-1]))
        out_phi.append(phis[-1])

    order = np.argsort(out_s)
    s_arr = np.asarray(out_s)[order]
    p_arr = np.clip(np.asarray(out_phi)[order], 0.0, math.pi)
    keep = np.concatenate([[True], np.diff(s_arr) > 0])
    return PhiTable(tuple(s_arr[keep]), tuple(p_arr[keep]), "piecewise-linear")


# ---------------------------------------------------------------------------
# factor evaluation from a phi table
# ---------------------------------------------------------------------------


def _table_polyline(table: PhiTable):
    """Breakpoint/value polyline; constant tables become a tight staircase."""
    bp = np.asarray(table.breakpoints)
    if table.interpolation == "piecewise-linear":
        return bp, np.asarray(table.values)
    s_pts, v_pts = [], []
    vals = table.values
    for k, v in enumerate(vals):
        lo, hi = bp[k], bp[k + 1]
        gap = 1e-13 * max(abs(lo), abs(hi), 1e-300)
        s_pts.extend([lo, hi - gap])
        v_pts.extend([v, v])
    s = np.asarray(s_pts)
    v = np.asarray(v_pts)
    keep = np.concatenate([[True], np.diff(s) > 0])
    return s[keep], v[keep]


class _SideData:
    """Per-side cell and Gauss-node arrays for the one-sided CBF exponent."""

    def __init__(self, table: PhiTable, side):
        s_all, v_all = _table_polyline(table)
        if side == MINUS:
            s_all, v_all = -s_all[::-1], v_all[::-1]
        mask = s_all > 0.0
        s = s_all[mask]
        p = v_all[mask]
        # The inner gap (0, s_first) continues the side's innermost value
        # (handled by the constant inner tail); no cross-zero interpolation.
        if len(s) < 2:
            flat = float(np.interp(1.0, s_all, v_all)) if len(s_all) else 0.0
            s = np.array([1e-6, 1e6])
            p = np.array([flat, flat])
        self.s_bp = s
        self.phi_bp = p
        self.u_bp = np.log(s)
        self.s_lo = float(s[0])
        self.s_hi = float(s[-1])
        self.phi_lo = float(p[0])
        self.phi_hi = float(p[-1])

        u0, u1 = self.u_bp[:-1], self.u_bp[1:]
        half = 0.5 * (u1 - u0)
        mid = 0.5 * (u1 + u0)
        un = mid[:, None] + half[:, None] * _GX[None, :]
        wn = half[:, None] * _GW[None, :]
        sn = np.exp(un)
        self.s_nodes = sn.ravel()
        self.w_nodes = wn.ravel()
        self.phi_nodes = np.interp(self.s_nodes, s, p)
        self.node_start = np.arange(len(u0)) * len(_GX)
        # kernel decomposition: sum w phi (xi/(xi+s) - 1/(1+s))
        #   = (A - C0) - sum b_k / (xi + s_k),   b_k = w_k phi_k s_k
        wp = self.w_nodes * self.phi_nodes
        self.b_nodes = wp * self.s_nodes
        self.cum_a = np.concatenate([[0.0], np.cumsum(wp)])
        self.cum_c = np.concatenate([[0.0], np.cumsum(wp / (1.0 + self.s_nodes))])

    def _tails(self, xi):
        """Constant-phi tails on (0, s_lo] and [s_hi, inf)."""
        xi = np.asarray(xi, dtype=complex)
        out = np.zeros(xi.shape, dtype=complex)
        zero = xi == 0.0
        if self.phi_lo > 0.0:
            if bool(np.any(zero)):
                if self.phi_lo > 1e-9:
                    raise DomainError("factor vanishes at 0 (phi has inner support)")
                # negligible inner mass; drop the inner tail at xi = 0
                nz = ~zero
                out[nz] += self.phi_lo * (
                    np.log(xi[nz]) + np.log((1.0 + self.s_lo) / (xi[nz] + self.s_lo))
                )
            else:
                out += self.phi_lo * (
                    np.log(xi) + np.log((1.0 + self.s_lo) / (xi + self.s_lo))
                )
        if self.phi_hi != 0.0:
            out += self.phi_hi * np.log((xi + self.s_hi) / (1.0 + self.s_hi))
        return out

    def exponent(self, xi):
        """(1/pi) int_0^inf (xi/(xi+s) - 1/(1+s)) phi(s)/s ds, vectorized."""
        xi = np.asarray(xi, dtype=complex)
        scalar = xi.ndim == 0
        xiv = np.atleast_1d(xi).ravel()
        if np.any((xiv.real < 0.0) & (xiv.imag == 0.0)):
            raise DomainError("factor evaluation on the cut (-inf, 0]")
        near = (xiv.real < 0.0) & (np.abs(xiv.imag) < 0.5 * np.abs(xiv.real))
        out = np.empty(xiv.shape, dtype=complex)
        safe = ~near
        if safe.any():
            out[safe] = self._exponent_safe(xiv[safe])
        if near.any():
            idx = np.flatnonzero(near)
            # batch near-cut points whose windows overlap (one shared
            # partition; the union of graded fans refines each point's own)
            u_ts = np.log(-xiv[idx].real)
            order = idx[np.argsort(u_ts)]
            u_sorted = np.log(-xiv[order].real)
            start = 0
            for k in range(1, len(order) + 1):
                if k == len(order) or u_sorted[k] - u_sorted[start] > 0.4:
                    batch = order[start:k]
                    out[batch] = self._exponent_nearcut_batch(xiv[batch])
                    start = k
        return complex(out[0]) if scalar else out.reshape(xi.shape)

    @staticmethod
    def _pole_sum(xiv, s, b):
        """sum_k b_k / (xi + s_k) per xi, chunked to bound temporaries."""
        out = np.empty(xiv.shape, dtype=complex)
        chunk = max(1, int(6e6 // max(1, len(s))))
        for lo in range(0, len(xiv), chunk):
            den = xiv[lo : lo + chunk, None] + s[None, :]
            np.divide(b[None, :], den, out=den)
            out[lo : lo + chunk] = den.sum(axis=1)
        return out

    @staticmethod
    def _kernel_sum(xi_col, s, w, phi):
        wp = w * phi
        a = float(np.sum(wp))
        c0 = float(np.sum(wp / (1.0 + s)))
        return (a - c0) - _SideData._pole_sum(xi_col[:, 0], s, wp * s)

    def _exponent_safe(self, xiv):
        a = self.cum_a[-1]
        c0 = self.cum_c[-1]
        out = (a - c0) - self._pole_sum(xiv, self.s_nodes, self.b_nodes)
        return (out + self._tails(xiv)) / math.pi

    def _exponent_nearcut_batch(self, xis):
        """Near-cut points sharing one refined partition around s = -re(xi).

        Every table breakpoint in the window stays a panel cut (phi kinks
        and jump-hugging nodes), and each point contributes a geometric fan
        of cuts around its own pole abscissa; the union partition refines
        each individual fan, so 8-point Gauss per sub-panel stays accurate
        for all points at once.
        """
        ts = -xis.real
        epss = np.abs(xis.imag)
        u_ts = np.log(ts)
        u_list = self.u_bp.tolist()
        n_cells = len(u_list) - 1
        c_lo = max(0, bisect_right(u_list, float(u_ts.min()) - 0.8) - 1)
        c_hi = min(n_cells, bisect_left(u_list, float(u_ts.max()) + 0.8))
        # full-table sum minus the window part (prefix sums make the
        # xi-independent pieces O(1); the pole sums cancel exactly)
        a_tot, c_tot = self.cum_a[-1], self.cum_c[-1]
        total = (a_tot - c_tot) - self._pole_sum(xis, self.s_nodes, self.b_nodes)
        if c_hi > c_lo:
            n0 = self.node_start[c_lo]
            n1 = self.node_start[c_hi - 1] + len(_GX)
            a_win = self.cum_a[n1] - self.cum_a[n0]
            c_win = self.cum_c[n1] - self.cum_c[n0]
            total -= (a_win - c_win) - self._pole_sum(
                xis, self.s_nodes[n0:n1], self.b_nodes[n0:n1]
            )
        if c_hi > c_lo:
            a, b = float(self.u_bp[c_lo]), float(self.u_bp[c_hi])
            cuts = {a, b}
            cuts.update(float(u) for u in self.u_bp[c_lo + 1 : c_hi])
            for u_t, t, eps in zip(u_ts, ts, epss):
                delta = max(eps / max(t, 1e-300), 1e-12) * 0.5
                if a < u_t < b:
                    cuts.add(float(u_t))
                for sgn in (-1.0, 1.0):
                    d = delta
                    x = u_t + sgn * d
                    while a < x < b and d < (b - a):
                        cuts.add(float(x))
                        d *= 3.0
                        x = u_t + sgn * d
            cuts = np.asarray(sorted(cuts))
            half = 0.5 * np.diff(cuts)
            mid = 0.5 * (cuts[:-1] + cuts[1:])
            sn = np.exp(mid[:, None] + half[:, None] * _GX[None, :]).ravel()
            wn = (half[:, None] * _GW[None, :]).ravel()
            pn = np.interp(sn, self.s_bp, self.phi_bp)
            total = total + self._kernel_sum(xis[:, None], sn, wn, pn)
        return (total + self._tails(xis)) / math.pi


class FactorHandle:
    """Evaluator for one Wiener-Hopf factor under c+ = c- = sqrt(c).

    The representation constant c is anchored at xi = 1 so that the two
    factors reconstruct f exactly there.  ``scale_override`` replaces the
    sqrt(c) normalization; ratios and products against the complementary
    1/kappa handle are unchanged by such a rescaling.
    """

    def __init__(self, spec, side, table=None, scale_override=None):
        if side not in (PLUS, MINUS):
            raise ValueError("side must be 'plus' or 'minus'")
        self.spec = spec
        self.side = side
        self.table = table if table is not None else get_phi_table(spec)
        self._plus = _SideData(self.table, PLUS)
        self._minus = _SideData(self.table, MINUS)
        self._data = self._plus if side == PLUS else self._minus
        # anchor: f(1) = c exp(E+(-i) + E-(i)) under f(xi) = f+(-i xi) f-(i xi)
        f1 = eval_f(spec, 1.0 + 0.0j)
        e_tot = self._plus.exponent(complex(0.0, -1.0)) + self._minus.exponent(
            complex(0.0, 1.0)
        )
        self.c_const = abs(f1 * cmath.exp(-complex(e_tot)))
        self.scale = math.sqrt(self.c_const)
        if scale_override is not None:
            self.scale = float(scale_override)

    def eval(self, xi):
        """Factor value at xi off (-inf, 0]; complete Bernstein in xi."""
        xi = np.asarray(xi, dtype=complex)
        scalar = xi.ndim == 0
        xiv = np.atleast_1d(xi).ravel()
        out = np.empty(xiv.shape, dtype=complex)
        zero = xiv == 0.0
        if zero.any() and self._data.phi_lo > 1e-9:
            out[zero] = 0.0
            rest = ~zero
        else:
            rest = np.ones(xiv.shape, dtype=bool)
        if rest.any():
            out[rest] = self.scale * np.exp(self._data.exponent(xiv[rest]))
        return complex(out[0]) if scalar else out.reshape(xi.shape)

    __call__ = eval


def wh_eval_from_phi(handle: FactorHandle, xi):
    """Evaluate a factor from its cached boundary-angle table."""
    return handle.eval(xi)


_PHI_CACHE: dict = {}
_ENGINE_CACHE: dict = {}
_HANDLE_CACHE: dict = {}


def get_phi_table(spec, **kwargs):
    key = (spec, tuple(sorted(kwargs.items())))
    if key not in _PHI_CACHE:
        _PHI_CACHE[key] = build_phi_table(spec, **kwargs)
    return _PHI_CACHE[key]


def get_factor_handle(spec, side) -> "FactorHandle":
    key = (spec, side)
    if key not in _HANDLE_CACHE:
        _HANDLE_CACHE[key] = FactorHandle(spec, side, get_phi_table(spec))
    return _HANDLE_CACHE[key]


def get_spine_engine(spec) -> "SpineStieltjes":
    if spec not in _ENGINE_CACHE:
        _ENGINE_CACHE[spec] = SpineStieltjes(spec)
    return _ENGINE_CACHE[spec]


def factor_pair(spec, kappa=1.0):
    """Plus and minus handles with scales kappa sqrt(c) and sqrt(c)/kappa."""
    table = get_phi_table(spec)
    plus = FactorHandle(spec, PLUS, table)
    minus = FactorHandle(spec, MINUS, table)
    if kappa != 1.0:
        plus = FactorHandle(spec, PLUS, table, scale_override=plus.scale * kappa)
        minus = FactorHandle(spec, MINUS, table, scale_override=minus.scale / kappa)
    return plus, minus


# ---------------------------------------------------------------------------
# Baxter-Donsker route
# ---------------------------------------------------------------------------

# abs_tol sits above the roundoff floor of near-zero exponents (x1 ~ x2)
_BD_CFG = QuadratureConfig(
    rel_tol=1e-12, abs_tol=1e-13, max_subdivisions=6000, singular_points=(0.0,)
)


def _bd_exponent(spec, poles_upper, poles_lower, log_shift=0.0):
    """(1/2 pi i) int kern(z) (log f(z) - log_shift) dz along the real line.

    ``poles_upper`` lists (a, sign) for terms sign/(z - i a) with a >= 0,
    ``poles_lower`` lists (b, sign) for terms sign/(z + i b) with b >= 0.
    """

    def integrand(z):
        z = np.asarray(z, dtype=complex)
        kern = np.zeros_like(z)
        for a, sgn in poles_upper:
            kern = kern + sgn / (z - 1j * a)
        for b, sgn in poles_lower:
            kern = kern + sgn / (z + 1j * b)
        return kern * (principal_log(eval_f(spec, z)) - log_shift)

    val, err = integrate_adaptive(integrand, (-math.inf, math.inf), _BD_CFG)
    return val / (2j * math.pi), err / (2.0 * math.pi)


def _bd_ratio(spec, side, x1, x2):
    if x1 == x2:
        return 1.0
    if x1 > 0.0 and x2 > 0.0:
        if side == PLUS:
            val, _ = _bd_exponent(spec, [(x1, 1.0), (x2, -1.0)], [])
        else:
            val, _ = _bd_exponent(spec, [], [(x2, 1.0), (x1, -1.0)])
        return math.exp(val.real)
    # One endpoint at zero: both poles approach the contour from the same
    # side, so the half-residue contributions cancel once log f(0) is
    # subtracted and the z = 0 singularity becomes removable.
    x = x1 if x2 == 0.0 else x2
    f0 = f_limits(spec).f_at_zero
    if not f0 > 0.0:
        raise DomainError("ratio against xi = 0 needs f(0+) > 0")
    log_f0 = math.log(f0)
    if side == PLUS:
        val, _ = _bd_exponent(spec, [(x, 1.0), (0.0, -1.0)], [], log_shift=log_f0)
    else:
        val, _ = _bd_exponent(spec, [], [(0.0, 1.0), (x, -1.0)], log_shift=log_f0)
    ratio = math.exp(val.real)
    return ratio if x2 == 0.0 else 1.0 / ratio


def _bd_product(spec, x1, x2):
    val, _ = _bd_exponent(spec, [(x1, 1.0)], [(x2, -1.0)])
    return math.exp(val.real)


# ---------------------------------------------------------------------------
# spine Stieltjes route
# ---------------------------------------------------------------------------


def _arg(z):
    return math.atan2(z.imag, z.real)


class SpineStieltjes:
    """Riemann-Stieltjes integrals of angle differences against d log lambda.

    Ratios integrate Arg(zeta(r) -+ i x1) - Arg(zeta(r) -+ i x2) against
    d lambda / (lambda + tau); products add a pi indicator on (0, R) and a
    (tau + lambda(R)) prefactor.  Spine samples are memoized per log-radius
    and panels are refined adaptively (Richardson on the Stieltjes
    trapezoid), with panels split at the jump radii |x1|, |x2| and R.
    """

    def __init__(self, spec, base_step=0.05):
        if is_constant(spec) or is_degenerate(spec):
            raise MethodUnsupportedError(
                "spine factorization needs a non-degenerate exponent"
            )
        self.spec = spec
        self.base_step = base_step
        self._cache: dict = {}
        lim = f_limits(spec)
        self.f_zero = lim.f_at_zero

    def _tl(self, u):
        hit = self._cache.get(u)
        if hit is None:
            r = math.exp(u)
            lam, theta, _ = _lambda_flagged(self.spec, r)
            if abs(theta) == 0.5 * math.pi:
                zeta = complex(0.0, math.copysign(r, theta))
            else:
                zeta = r * cmath.exp(1j * theta)
            hit = (zeta, lam)
            self._cache[u] = hit
        return hit

    def _grid(self, scales, jumps):
        """Log-radius grid snapped to absolute multiples of base_step."""
        u_lo = math.log(min(scales)) - 13.0
        u_hi = math.log(max(scales)) + 13.0
        k_lo = math.floor(u_lo / self.base_step)
        k_hi = math.ceil(u_hi / self.base_step)
        pts = set((np.arange(k_lo, k_hi + 1) * self.base_step).tolist())
        nudge = 1e-12
        for rj in jumps:
            uj = math.log(rj)
            pts -= {p for p in list(pts) if abs(p - uj) < 2 * nudge}
            pts.add(uj - nudge)
            pts.add(uj + nudge)
        return np.asarray(sorted(pts))

    def _integral(self, gfun, g0_lim, tau, scales, jumps, rel_goal=1e-8, max_splits=6000):
        """int_0^inf g(r) d log(lambda(r) + tau) for real tau >= 0.

        Stieltjes trapezoid with one Richardson level per panel; the worst
        panels (by trapezoid-difference estimate) are split first until the
        accumulated estimate meets ``rel_goal``.
        """
        import heapq

        grid = self._grid(scales, jumps)

        def point(u):
            zeta, lam = self._tl(float(u))
            return gfun(zeta, math.exp(u)), math.log(lam + tau)

        vals = [point(u) for u in grid]

        def make_panel(u0, u1, p0, p1):
            um = 0.5 * (u0 + u1)
            pm = point(um)
            g0, v0 = p0
            gm, vm = pm
            g1, v1 = p1
            t1 = 0.5 * (g0 + g1) * (v1 - v0)
            t2 = 0.5 * (g0 + gm) * (vm - v0) + 0.5 * (gm + g1) * (v1 - vm)
            value = (4.0 * t2 - t1) / 3.0
            err = abs(t2 - t1) / 3.0
            return value, err, um, pm

        heap = []
        total = 0.0
        err_sum = 0.0
        counter = 0
        for k in range(len(grid) - 1):
            u0, u1 = float(grid[k]), float(grid[k + 1])
            value, err, um, pm = make_panel(u0, u1, vals[k], vals[k + 1])
            total += value
            err_sum += err
            heapq.heappush(heap, (-err, counter, u0, u1, vals[k], pm, vals[k + 1]))
            counter += 1
        splits = 0
        while err_sum > rel_goal and heap and splits < max_splits:
            neg_err, _, u0, u1, p0, pm, p1 = heapq.heappop(heap)
            um = 0.5 * (u0 + u1)
            g0, v0 = p0
            gm, vm = pm
            g1, v1 = p1
            t1 = 0.5 * (g0 + g1) * (v1 - v0)
            t2 = 0.5 * (g0 + gm) * (vm - v0) + 0.5 * (gm + g1) * (v1 - vm)
            parent_value = (4.0 * t2 - t1) / 3.0
            v_l, e_l, um_l, pm_l = make_panel(u0, um, p0, pm)
            v_r, e_r, um_r, pm_r = make_panel(um, u1, pm, p1)
            total += (v_l + v_r) - parent_value
            err_sum += (e_l + e_r) - (-neg_err)
            heapq.heappush(heap, (-e_l, counter, u0, um, p0, pm_l, pm))
            counter += 1
            heapq.heappush(heap, (-e_r, counter, um, u1, pm, pm_r, p1))
            counter += 1
            splits += 1
        state = {"err": err_sum}

        # tails: g -> g0_lim linearly in r at 0+ and g -> 0 like 1/r at inf
        g_lo, v_lo = vals[0]
        _, v_1 = vals[1]
        du0 = float(grid[1] - grid[0])
        if g0_lim is None:
            g0_lim = g_lo
        if self.f_zero + tau > 0.0:
            v_zero = math.log(self.f_zero + tau)
            total += g0_lim * (v_lo - v_zero) + 0.5 * (g_lo - g0_lim) * (v_lo - v_zero)
        else:
            if abs(g0_lim) > 1e-12:
                raise MethodUnsupportedError(
                    "spine integral diverges: g(0+) != 0 with f(0+) + tau = 0"
                )
            total += (g_lo - g0_lim) * (v_1 - v_lo) / du0
        g_hi, v_hi = vals[-1]
        _, v_2 = vals[-2]
        du1 = float(grid[-1] - grid[-2])
        total += g_hi * (v_hi - v_2) / du1
        return total, state["err"]

    def ratio(self, x1, x2, side, tau=0.0, rel_goal=3e-9):
        """f_tau^side(x1) / f_tau^side(x2) for real tau >= 0; x = 0 allowed."""
        x1 = float(x1)
        x2 = float(x2)
        if x1 == x2:
            return 1.0
        sgn = 1.0 if side == PLUS else -1.0

        def gfun(zeta, r):
            return _arg(zeta - sgn * 1j * x1) - _arg(zeta - sgn * 1j * x2)

        if min(x1, x2) > 0.0:
            g0_lim = 0.0
        else:
            if self.f_zero + tau <= 0.0:
                raise MethodUnsupportedError(
                    "ratio against xi = 0 needs f(0+) + tau > 0"
                )
            g0_lim = None  # finite spine-dependent limit; g(r_lo) is used
        scales = tuple(x for x in (x1, x2) if x > 0.0) + (1.0,)
        jumps = tuple(x for x in (x1, x2) if x > 0.0)
        val, _ = self._integral(gfun, g0_lim, float(tau), scales, jumps, rel_goal)
        return math.exp(-sgn * val / math.pi)

    def product(self, x1, x2, R, tau=0.0, rel_goal=3e-9):
        """f_tau^+(x1) f_tau^-(x2); R >= 0 picks the representation split."""
        x1 = float(x1)
        x2 = float(x2)
        R = float(R)
        if R == 0.0:
            if self.f_zero + tau <= 0.0:
                raise ConventionViolationError("R = 0 requires f(0+) + tau > 0")
            lam_R = self.f_zero
        else:
            lam_R, _, _ = _lambda_flagged(self.spec, R)

        def gfun(zeta, r):
            g = _arg(zeta - 1j * x1) - _arg(zeta + 1j * x2)
            if r < R:
                g += math.pi
            return g

        g0_lim = -math.pi if R == 0.0 else 0.0
        jumps = tuple(x for x in (x1, x2, R) if x > 0.0)
        scales = jumps + (1.0,)
        val, _ = self._integral(gfun, g0_lim, float(tau), scales, jumps, rel_goal)
        return (tau + lam_R) * math.exp(-val / math.pi)

    # -- fixed-grid families, evaluable at complex tau ---------------------

    def ratio_family(self, x1, x2, side):
        """Callable tau -> f_tau^side(x1)/f_tau^side(x2), tau off (-inf, 0]."""
        x1 = float(x1)
        x2 = float(x2)
        sgn = 1.0 if side == PLUS else -1.0

        def gfun(zeta, r):
            return _arg(zeta - sgn * 1j * x1) - _arg(zeta - sgn * 1j * x2)

        scales = tuple(x for x in (x1, x2) if x > 0.0) + (1.0,)
        jumps = tuple(x for x in (x1, x2) if x > 0.0)
        g, lam, grid = self._samples(gfun, scales, jumps)
        g0_lim = 0.0 if min(x1, x2) > 0.0 else float(g[0])
        return _StieltjesFamily(g, lam, grid, g0_lim, self.f_zero, -sgn / math.pi)

    def product_family(self, x1, x2, R):
        """Callable tau -> f_tau^+(x1) f_tau^-(x2) with the split at R."""
        x1 = float(x1)
        x2 = float(x2)
        R = float(R)
        lam_R = self.f_zero if R == 0.0 else _lambda_flagged(self.spec, R)[0]

        def gfun(zeta, r):
            g = _arg(zeta - 1j * x1) - _arg(zeta + 1j * x2)
            if r < R:
                g += math.pi
            return g

        g0_lim = -math.pi if R == 0.0 else 0.0
        jumps = tuple(x for x in (x1, x2, R) if x > 0.0)
        scales = jumps + (1.0,)
        g, lam, grid = self._samples(gfun, scales, jumps)
        fam = _StieltjesFamily(g, lam, grid, g0_lim, self.f_zero, -1.0 / math.pi)
        return lambda tau: (tau + lam_R) * fam(tau)

    def _samples(self, gfun, scales, jumps):
        grid = self._grid(scales, jumps)
        g = np.empty(len(grid))
        lam = np.empty(len(grid))
        for k, u in enumerate(grid):
            zeta, l = self._tl(float(u))
            g[k] = gfun(zeta, math.exp(u))
            lam[k] = l
        return g, lam, grid


class _StieltjesFamily:
    """exp(coef int g d log(lambda + tau)) over a fixed sampled spine grid."""

    def __init__(self, g, lam, grid, g0_lim, f_zero, coef):
        self.g = g
        self.lam = lam
        self.du0 = float(grid[1] - grid[0])
        self.du1 = float(grid[-1] - grid[-2])
        self.g0 = g0_lim
        self.f_zero = f_zero
        self.coef = coef

    def __call__(self, tau):
        v = np.log(self.lam + tau + 0.0j) if isinstance(tau, complex) else np.log(self.lam + tau)
        mids = 0.5 * (self.g[:-1] + self.g[1:])
        total = np.sum(mids * np.diff(v))
        finite_zero = self.f_zero + (tau.real if isinstance(tau, complex) else tau) > 0.0
        if isinstance(tau, complex) and tau.imag != 0.0:
            finite_zero = True
        if finite_zero:
            v_zero = (
                cmath.log(self.f_zero + tau)
                if isinstance(tau, complex)
                else math.log(self.f_zero + tau)
            )
            total += self.g0 * (v[0] - v_zero) + 0.5 * (self.g[0] - self.g0) * (v[0] - v_zero)
        else:
            total += (self.g[0] - self.g0) * (v[1] - v[0]) / self.du0
        total += self.g[-1] * (v[-1] - v[-2]) / self.du1
        out = np.exp(self.coef * total)
        return complex(out) if isinstance(tau, complex) else float(np.real(out))


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def wh_ratio(spec, method, side, xi1, xi2):
    """f^side(xi1) / f^side(xi2) by the requested method; normalization-free."""
    if method not in _METHODS:
        raise ValueError(f"unknown method {method!r}")
    if side not in (PLUS, MINUS):
        raise ValueError("side must be 'plus' or 'minus'")
    xi1 = float(xi1)
    xi2 = float(xi2)
    if xi1 <= 0.0 or xi2 <= 0.0:
        raise DomainError("wh_ratio needs xi1, xi2 > 0")
    if is_constant(spec):
        raise MethodUnsupportedError("constant exponents have no factorization")
    if method == "phi":
        handle = get_factor_handle(spec, side)
        return float((handle.eval(complex(xi1)) / handle.eval(complex(xi2))).real)
    if method == "bd":
        return _bd_ratio(spec, side, xi1, xi2)
    return get_spine_engine(spec).ratio(xi1, xi2, side)


def wh_product(spec, method, xi1, xi2, R=None):
    """f+(xi1) f-(xi2) under c+ c- = c; ``R`` is the spine-route split radius."""
    if method not in ("bd", "spine"):
        raise ValueError("wh_product supports methods 'bd' and 'spine'")
    xi1 = float(xi1)
    xi2 = float(xi2)
    if xi1 <= 0.0 or xi2 <= 0.0:
        raise DomainError("wh_product needs xi1, xi2 > 0")
    if method == "bd":
        return _bd_product(spec, xi1, xi2)
    if R is None:
        R = math.sqrt(xi1 * xi2)
    return get_spine_engine(spec).product(xi1, xi2, float(R))


def factorization_check(spec, samples, tol=1e-4) -> VerifyReport:
    """Relative error of f(xi) - f+(-i xi) f-(i xi) over right-half-plane samples."""
    rep = VerifyReport("factorization")
    plus, minus = factor_pair(spec)
    for k, xi in enumerate(samples):
        xi = complex(xi)
        if xi.real <= 0.0:
            raise DomainError("factorization_check samples must have re(xi) > 0")
        f = eval_f(spec, xi)
        prod = plus.eval(-1j * xi) * minus.eval(1j * xi)
        rel = abs(f - prod) / abs(f)
        rep.add(
            f"factorization[{k}]",
            (tol - rel) / tol,
            {"xi": str(xi), "rel_err": rel},
        )
    return rep


def closed_form_factors(family, side, xi, **params):
    """Closed-form factor oracles.

    ``family='bm_drift'`` with parameters ``b`` (drift) and ``sigma``
    (constant shift): factors of xi^2/2 - i b xi + sigma, each scaled by
    sqrt(1/2).  ``family='stable'`` with parameters ``c`` (complex) and
    ``alpha``: factors sqrt(|c|) xi^(alpha rho) and sqrt(|c|)
    xi^(alpha (1 - rho)) with rho the positivity parameter.
    """
    if side not in (PLUS, MINUS):
        raise ValueError("side must be 'plus' or 'minus'")
    xi = float(xi)
    if family == "bm_drift":
        b = float(params.get("b", 0.0))
        sigma = float(params.get("sigma", 0.0))
        root = math.sqrt(b * b + 2.0 * sigma)
        return math.sqrt(0.5) * (xi + (root - b if side == PLUS else root + b))
    if family == "stable":
        c = complex(params["c"])
        alpha = float(params["alpha"])
        if not (0.0 < alpha <= 2.0):
            raise DomainError("alpha must lie in (0, 2]")
        if abs(cmath.phase(c)) > 0.5 * math.pi * min(alpha, 2.0 - alpha) + 1e-13:
            raise DomainError("inadmissible stable parameters")
        rho = 0.5 - cmath.phase(c) / (alpha * math.pi)
        expo = alpha * rho if side == PLUS else alpha * (1.0 - rho)
        return math.sqrt(abs(c)) * xi**expo
    raise ValueError(f"unknown family {family!r}")
