"""Concrete Rogers functions and their evaluation.

A Rogers function is a function holomorphic in the right half-plane with
re(f(xi)/xi) >= 0; exactly the characteristic exponents of Levy processes
with completely monotone jumps (possibly killed at a constant rate).  Four
concrete families are supported:

* :class:`LevyAtomic` -- quadruple (a, b, c, mu) with a purely atomic
  spectral measure mu = sum w_j delta_{s_j},
* :class:`StableSum` -- sums w (-+ i xi + m)^alpha,
* :class:`RationalProduct` -- products prefactor * prod (+- i xi + m)^(+-1),
* :class:`PhiRep` -- exponential representation driven by a tabulated
  boundary-angle function phi with values in [0, pi].

Every family evaluates on the slit plane C \\ iR (values in the left
half-plane are fixed by the reflection f(-conj(xi)) = conj(f(xi))) and on
the parts of the imaginary axis where the function extends continuously
with values in (0, inf).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    DomainError,
    EstimationError,
    RogersViolationError,
    ValidationError,
)
from .numerics import QuadratureConfig, integrate_adaptive, richardson_zero
from .report import VerifyReport

__all__ = [
    "PhiTable",
    "LevyAtomic",
    "StableSum",
    "StableTerm",
    "RationalProduct",
    "RationalFactor",
    "PhiRep",
    "ShiftedSpec",
    "DerivedExponent",
    "LimitsResult",
    "validate_spec",
    "eval_f",
    "eval_f_prime",
    "levy_density",
    "f_limits",
    "estimate_phi",
    "check_function_bounds",
    "is_constant",
    "is_degenerate",
    "is_symmetric",
    "is_compound_poisson",
    "shift_spec",
    "total_jump_rate",
    "compensator_drift",
]

_MINUS_I = "minus-i"
_PLUS_I = "plus-i"
_ORIENTATIONS = (_MINUS_I, _PLUS_I)

PW_CONSTANT = "piecewise-constant"
PW_LINEAR = "piecewise-linear"


# ---------------------------------------------------------------------------
# spec types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PhiTable:
    """Sampled boundary-angle function phi(s) in [0, pi].

    ``breakpoints`` is a strictly increasing grid covering the support
    window; outside the window phi is extrapolated as the constant boundary
    value.  For piecewise-constant tables ``values`` holds one value per
    cell (``len(breakpoints) - 1``); for piecewise-linear tables one value
    per breakpoint.
    """

    breakpoints: tuple
    values: tuple
    interpolation: str = PW_LINEAR

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(float(s) for s in self.breakpoints))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def validate(self):
        bp, vals = self.breakpoints, self.values
        if self.interpolation not in (PW_CONSTANT, PW_LINEAR):
            raise ValidationError("phi.interpolation", f"unknown tag {self.interpolation!r}")
        if len(bp) < 2:
            raise ValidationError("phi.breakpoints", "need at least two breakpoints")
        if any(b2 <= b1 for b1, b2 in zip(bp, bp[1:])):
            raise ValidationError("phi.breakpoints", "must be strictly increasing")
        want = len(bp) - 1 if self.interpolation == PW_CONSTANT else len(bp)
        if len(vals) != want:
            raise ValidationError(
                "phi.values", f"expected {want} values for {self.interpolation}, got {len(vals)}"
            )
        for k, v in enumerate(vals):
            if not (0.0 <= v <= math.pi + 1e-15):
                raise ValidationError(f"phi.values[{k}]", "phi values must lie in [0, pi]")

    def value_at(self, s):
        """phi(s), with constant extrapolation beyond the window."""
        s = np.asarray(s, dtype=float)
        bp = np.asarray(self.breakpoints)
        vals = np.asarray(self.values)
        if self.interpolation == PW_CONSTANT:
            idx = np.clip(np.searchsorted(bp, s, side="right") - 1, 0, len(vals) - 1)
            out = vals[idx]
        else:
            out = np.interp(s, bp, vals)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class LevyAtomic:
    """Exponent a xi^2 - i b xi + c plus an atomic spectral measure.

    ``atoms`` is a tuple of (s_j, w_j) with s_j != 0 and w_j > 0; the
    corresponding Levy density is (1/pi) sum_j w_j e^{-|s_j x|} on the side
    matching the sign of s_j.
    """

    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    atoms: tuple = ()

    def __post_init__(self):
        object.__setattr__(
            self, "atoms", tuple((float(s), float(w)) for s, w in self.atoms)
        )


@dataclass(frozen=True)
class StableTerm:
    w: float
    m: float
    alpha: float
    orientation: str


@dataclass(frozen=True)
class StableSum:
    """Sum of terms w * (-+ i xi + m)^alpha with principal-branch powers."""

    terms: tuple

    def __post_init__(self):
        object.__setattr__(
            self,
            "terms",
            tuple(t if isinstance(t, StableTerm) else StableTerm(*t) for t in self.terms),
        )


@dataclass(frozen=True)
class RationalFactor:
    orientation: str
    m: float
    exponent: int


@dataclass(frozen=True)
class RationalProduct:
    """prefactor * prod (+- i xi + m)^(+-1)."""

    prefactor: float
    factors: tuple

    def __post_init__(self):
        object.__setattr__(
            self,
            "factors",
            tuple(
                f if isinstance(f, RationalFactor) else RationalFactor(*f)
                for f in self.factors
            ),
        )


@dataclass(frozen=True)
class PhiRep:
    """Exponential representation c * exp((1/pi) int kern(xi, s) phi(s)/|s| ds)."""

    c: float
    phi: PhiTable


@dataclass(frozen=True)
class ShiftedSpec:
    """tau + f for a base spec; the shift models killing / temporal Laplace."""

    base: object
    shift: float


@dataclass(frozen=True, eq=False)
class DerivedExponent:
    """Wrap an arbitrary evaluator as a Rogers-function-like object.

    Used internally for derived functions such as (tau1 + f)/(tau2 + f);
    not part of the spec-file schema and never validated structurally.
    """

    fn: object
    label: str = "derived"

    def __hash__(self):
        return id(self)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def _atomic_core(spec: LevyAtomic, xi):
    val = spec.a * xi * xi - 1j * spec.b * xi + spec.c
    for s, w in spec.atoms:
        val = val + (w / abs(s) / math.pi) * (
            xi / (xi + 1j * s) + 1j * xi * math.copysign(1.0, s) / (1.0 + abs(s))
        )
    return val


def _stable_core(spec: StableSum, xi):
    val = np.zeros_like(xi) if isinstance(xi, np.ndarray) else 0.0 + 0.0j
    for t in spec.terms:
        rot = -1j if t.orientation == _MINUS_I else 1j
        val = val + t.w * (rot * xi + t.m) ** t.alpha
    return val


def _rational_core(spec: RationalProduct, xi):
    val = np.full_like(xi, spec.prefactor) if isinstance(xi, np.ndarray) else complex(spec.prefactor)
    for f in spec.factors:
        rot = -1j if f.orientation == _MINUS_I else 1j
        base = rot * xi + f.m
        val = val * base if f.exponent == 1 else val / base
    return val


def _phirep_cells(table: PhiTable):
    """Cells (s_lo, s_hi, phi_lo, phi_hi) plus the two extrapolation values."""
    bp = table.breakpoints
    if table.interpolation == PW_CONSTANT:
        vals = table.values
        cells = [(bp[k], bp[k + 1], vals[k], vals[k]) for k in range(len(vals))]
        lo_ext, hi_ext = vals[0], vals[-1]
    else:
        vals = table.values
        cells = [
            (bp[k], bp[k + 1], vals[k], vals[k + 1]) for k in range(len(bp) - 1)
        ]
        lo_ext, hi_ext = vals[0], vals[-1]
    return cells, lo_ext, hi_ext


def _phi_kernel_antideriv(xi, s):
    """Antiderivative of (xi/(xi+is) - 1/(1+s))/s on s > 0 (principal branch)."""
    return np.log1p(s) - np.log(xi + 1j * s)


def _phi_kernel_antideriv_neg(xi, sigma):
    """Antiderivative of (xi/(xi-i sigma) - 1/(1+sigma))/sigma on sigma > 0."""
    return np.log1p(sigma) - np.log(xi - 1j * sigma)


def _exp_span(xi, l, h):
    """int_l^h (xi/(xi+is) - 1/(1+|s|)) ds/|s| for constant phi = 1.

    Endpoints may be 0 or +-inf; the interval may straddle 0 (the kernel is
    integrable there).
    """
    log_xi = np.log(xi)

    def pos(a, b):
        hi_v = -0.5j * math.pi if b == math.inf else _phi_kernel_antideriv(xi, b)
        lo_v = -log_xi if a == 0.0 else _phi_kernel_antideriv(xi, a)
        return hi_v - lo_v

    def neg(a, b):
        lo_v = 0.5j * math.pi if a == -math.inf else _phi_kernel_antideriv_neg(xi, -a)
        hi_v = -log_xi if b == 0.0 else _phi_kernel_antideriv_neg(xi, -b)
        return lo_v - hi_v

    out = 0.0 + 0.0j
    if l < 0.0:
        out = out + neg(l, min(h, 0.0))
    if h > 0.0:
        out = out + pos(max(l, 0.0), h)
    return out


def _phirep_exponent_const(table: PhiTable, xi):
    """Exponent integral for a piecewise-constant table, in closed form.

    Cells with phi = 0 contribute nothing and are skipped, which also keeps
    the principal-branch antiderivative differences free of winding when
    evaluating exactly on the imaginary axis (the cell at -im(xi) must carry
    phi = 0 for such points to be in the domain).
    """
    cells, lo_ext, hi_ext = _phirep_cells(table)
    s_min, s_max = table.breakpoints[0], table.breakpoints[-1]

    total = 0.0 + 0.0j
    for s_lo, s_hi, phi, _ in cells:
        if phi != 0.0:
            total = total + phi * _exp_span(xi, s_lo, s_hi)
    if lo_ext != 0.0:
        total = total + lo_ext * _exp_span(xi, -math.inf, s_min)
    if hi_ext != 0.0:
        total = total + hi_ext * _exp_span(xi, s_max, math.inf)
    return total / math.pi


def _phirep_exponent_quad(spec: PhiRep, xi):
    """Exponent integral for a piecewise-linear table via adaptive quadrature."""
    table = spec.phi
    bp = table.breakpoints
    s_min, s_max = bp[0], bp[-1]
    sing = {0.0}
    axis_s = -xi.imag if isinstance(xi, complex) else None
    if xi.real == 0.0 and axis_s is not None:
        sing.add(axis_s)

    def integrand(s):
        phi = table.value_at(s)
        return (xi / (xi + 1j * s) - 1.0 / (1.0 + np.abs(s))) * phi / np.abs(s)

    cfg = QuadratureConfig(
        rel_tol=1e-11,
        abs_tol=1e-13,
        max_subdivisions=4000,
        singular_points=tuple(sorted(p for p in sing if s_min < p < s_max)),
    )
    val, _ = integrate_adaptive(integrand, (s_min, s_max), cfg)

    _, lo_ext, hi_ext = _phirep_cells(table)
    if lo_ext != 0.0:
        val += lo_ext * _exp_span(xi, -math.inf, s_min)
    if hi_ext != 0.0:
        val += hi_ext * _exp_span(xi, s_max, math.inf)
    return val / math.pi


def _phirep_core(spec: PhiRep, xi):
    if spec.phi.interpolation == PW_CONSTANT:
        return spec.c * np.exp(_phirep_exponent_const(spec.phi, xi))
    if isinstance(xi, np.ndarray):
        out = np.empty(xi.shape, dtype=complex)
        flat = xi.ravel()
        res = out.ravel()
        for k in range(flat.size):
            res[k] = spec.c * cmath.exp(_phirep_exponent_quad(spec, complex(flat[k])))
        return out
    return spec.c * cmath.exp(_phirep_exponent_quad(spec, complex(xi)))


def _eval_core(spec, xi):
    """Evaluate on re(xi) >= 0 (axis included, without domain filtering)."""
    if isinstance(spec, LevyAtomic):
        return _atomic_core(spec, xi)
    if isinstance(spec, StableSum):
        return _stable_core(spec, xi)
    if isinstance(spec, RationalProduct):
        return _rational_core(spec, xi)
    if isinstance(spec, PhiRep):
        return _phirep_core(spec, xi)
    if isinstance(spec, ShiftedSpec):
        return spec.shift + _eval_core(spec.base, xi)
    if isinstance(spec, DerivedExponent):
        return spec.fn(xi)
    raise TypeError(f"not a Rogers spec: {type(spec).__name__}")


def _atomic_axis_poles(spec: LevyAtomic):
    return tuple(-s for s, _ in spec.atoms)  # xi = -i s is the pole of the atom at s


def _axis_value(spec, xi):
    """Boundary value on the imaginary axis; must land in (0, inf)."""
    y = xi.imag
    if y == 0.0:
        lim = f_limits(spec)
        if math.isfinite(lim.f_at_zero) and lim.f_at_zero > 0.0:
            return complex(lim.f_at_zero)
        raise DomainError("xi = 0 is outside the domain of this spec")
    s_star = -y
    if isinstance(spec, LevyAtomic) and any(
        s == s_star for s, _ in spec.atoms
    ):
        raise DomainError(f"xi={xi} is a pole of the spectral measure")
    if isinstance(spec, PhiRep):
        if spec.phi.value_at(s_star) > 1e-9:
            raise DomainError(f"xi={xi} lies on the boundary support (phi > 0)")
    if isinstance(spec, ShiftedSpec):
        return spec.shift + _axis_value(spec.base, xi)
    val = _eval_core(spec, xi)
    val = complex(val)
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise DomainError(f"evaluation not finite at xi={xi}")
    if abs(val.imag) > 1e-9 * (1.0 + abs(val)) or val.real <= 0.0:
        raise DomainError(f"xi={xi} is outside the domain (boundary value {val} not in (0, inf))")
    return complex(val.real)


def eval_f(spec, xi):
    """Evaluate the exponent at ``xi`` (complex scalar or array).

    Points with re(xi) < 0 use the reflection f(-conj(xi)) = conj(f(xi)).
    Points exactly on the imaginary axis are admitted only where the
    function extends continuously with a value in (0, inf); otherwise a
    :class:`DomainError` is raised.
    """
    if isinstance(xi, np.ndarray):
        xi = np.asarray(xi, dtype=complex)
        out = np.empty(xi.shape, dtype=complex)
        right = xi.real > 0.0
        left = xi.real < 0.0
        axis = ~right & ~left
        if right.any():
            out[right] = _eval_core(spec, xi[right])
        if left.any():
            out[left] = np.conj(_eval_core(spec, -np.conj(xi[left])))
        if axis.any():
            flat_idx = np.flatnonzero(axis.ravel())
            res = out.ravel()
            src = xi.ravel()
            for k in flat_idx:
                res[k] = _axis_value(spec, complex(src[k]))
        return out

    xi = complex(xi)
    if xi.real > 0.0:
        return complex(_eval_core(spec, xi))
    if xi.real < 0.0:
        return complex(np.conj(_eval_core(spec, -xi.conjugate())))
    return _axis_value(spec, xi)


def _prime_core(spec, xi):
    if isinstance(spec, LevyAtomic):
        val = 2.0 * spec.a * xi - 1j * spec.b
        for s, w in spec.atoms:
            val = val + (w / abs(s) / math.pi) * (
                1j * s / (xi + 1j * s) ** 2 + 1j * math.copysign(1.0, s) / (1.0 + abs(s))
            )
        return val
    if isinstance(spec, StableSum):
        val = np.zeros_like(xi) if isinstance(xi, np.ndarray) else 0.0 + 0.0j
        for t in spec.terms:
            rot = -1j if t.orientation == _MINUS_I else 1j
            val = val + t.w * t.alpha * rot * (rot * xi + t.m) ** (t.alpha - 1.0)
        return val
    if isinstance(spec, RationalProduct):
        val = _rational_core(spec, xi)
        logd = np.zeros_like(xi) if isinstance(xi, np.ndarray) else 0.0 + 0.0j
        for f in spec.factors:
            rot = -1j if f.orientation == _MINUS_I else 1j
            logd = logd + f.exponent * rot / (rot * xi + f.m)
        return val * logd
    if isinstance(spec, PhiRep):
        return _phirep_core(spec, xi) * _phirep_log_prime(spec, xi)
    if isinstance(spec, ShiftedSpec):
        return _prime_core(spec.base, xi)
    if isinstance(spec, DerivedExponent):
        h = 1e-6 * (1.0 + np.abs(xi))
        return (spec.fn(xi + h) - spec.fn(xi - h)) / (2.0 * h)
    raise TypeError(f"not a Rogers spec: {type(spec).__name__}")


def _prime_span(xi, l, h):
    """int_l^h i sign(s) / (xi + i s)^2 ds with endpoints possibly 0 or +-inf."""

    def at(s):
        return 1.0 / (xi + 1j * s)

    out = 0.0 + 0.0j
    if l < 0.0:
        b = min(h, 0.0)
        out = out + at(b) - (0.0 if l == -math.inf else at(l))
    if h > 0.0:
        a = max(l, 0.0)
        out = out + at(a) - (0.0 if h == math.inf else at(h))
    return out


def _phirep_log_prime(spec: PhiRep, xi):
    """(log f)'(xi) = (1/pi) int i sign(s) phi(s) / (xi + i s)^2 ds."""
    table = spec.phi
    s_min, s_max = table.breakpoints[0], table.breakpoints[-1]
    _, lo_ext, hi_ext = _phirep_cells(table)

    if table.interpolation == PW_CONSTANT:
        cells, _, _ = _phirep_cells(table)
        total = 0.0 + 0.0j
        for s_lo, s_hi, phi, _ in cells:
            if phi != 0.0:
                total += phi * _prime_span(xi, s_lo, s_hi)
    else:
        def integrand(s):
            return 1j * np.sign(s) * table.value_at(s) / (xi + 1j * s) ** 2

        total, _ = integrate_adaptive(
            integrand,
            (s_min, s_max),
            QuadratureConfig(rel_tol=1e-10, abs_tol=1e-13, singular_points=(0.0,)),
        )
    if lo_ext != 0.0:
        total += lo_ext * _prime_span(xi, -math.inf, s_min)
    if hi_ext != 0.0:
        total += hi_ext * _prime_span(xi, s_max, math.inf)
    return total / math.pi


def eval_f_prime(spec, xi):
    """Derivative f'(xi); reflection f'(-conj(xi)) = -conj(f'(xi)) on the left."""
    if isinstance(xi, np.ndarray):
        xi = np.asarray(xi, dtype=complex)
        out = np.empty(xi.shape, dtype=complex)
        right = xi.real >= 0.0
        if right.any():
            out[right] = _prime_core(spec, xi[right])
        if (~right).any():
            out[~right] = -np.conj(_prime_core(spec, -np.conj(xi[~right])))
        return out
    xi = complex(xi)
    if xi.real >= 0.0:
        return complex(_prime_core(spec, xi))
    return complex(-np.conj(_prime_core(spec, -xi.conjugate())))


# ---------------------------------------------------------------------------
# structure predicates and derived quantities
# ---------------------------------------------------------------------------


def total_jump_rate(spec: LevyAtomic):
    """Total mass of the Levy measure: (1/pi) sum w_j / |s_j|."""
    return sum(w / abs(s) for s, w in spec.atoms) / math.pi


def compensator_drift(spec: LevyAtomic):
    """int (1 - e^{-|x|}) sign(x) nu(dx), the drift of a compound Poisson spec."""
    return sum(
        math.copysign(1.0, s) * w / (abs(s) * (1.0 + abs(s))) for s, w in spec.atoms
    ) / math.pi


def is_compound_poisson(spec):
    if isinstance(spec, ShiftedSpec):
        return False if spec.shift != 0.0 else is_compound_poisson(spec.base)
    if not isinstance(spec, LevyAtomic):
        return False
    if spec.a != 0.0:
        return False
    bc = compensator_drift(spec)
    return abs(spec.b - bc) <= 1e-12 * (1.0 + abs(spec.b) + abs(bc))


def is_constant(spec):
    if isinstance(spec, LevyAtomic):
        return spec.a == 0.0 and spec.b == 0.0 and not spec.atoms
    if isinstance(spec, StableSum):
        return all(t.w == 0.0 for t in spec.terms)
    if isinstance(spec, RationalProduct):
        return not spec.factors
    if isinstance(spec, PhiRep):
        return all(v == 0.0 for v in spec.phi.values)
    if isinstance(spec, ShiftedSpec):
        return is_constant(spec.base)
    return False


def is_degenerate(spec):
    """True for f(xi) = -i b xi (a deterministic drift)."""
    if is_constant(spec):
        return False
    v = eval_f(spec, 1.0 + 0.0j)
    return abs(v.real) <= 1e-13 * abs(v)


def is_symmetric(spec, tol=1e-12):
    for x in (0.5, 1.0, math.sqrt(2.0), 7.3):
        v = eval_f(spec, complex(x))
        if abs(v.imag) > tol * (1.0 + abs(v)):
            return False
    return True


def shift_spec(spec, tau):
    """The spec of tau + f; LevyAtomic absorbs tau into its kill rate."""
    if tau == 0.0:
        return spec
    if tau < 0.0:
        raise ValidationError("tau", "temporal shift must be nonnegative")
    if isinstance(spec, LevyAtomic):
        return replace(spec, c=spec.c + float(tau))
    if isinstance(spec, ShiftedSpec):
        return ShiftedSpec(spec.base, spec.shift + float(tau))
    return ShiftedSpec(spec, float(tau))


# ---------------------------------------------------------------------------
# limits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LimitsResult:
    """One-sided limits f(0+) and f(inf-); math.inf flags an unbounded spec."""

    f_at_zero: float
    f_at_infinity: float


def f_limits(spec) -> LimitsResult:
    if isinstance(spec, LevyAtomic):
        zero = spec.c
        if spec.a == 0.0 and abs(spec.b - compensator_drift(spec)) <= 1e-12 * (
            1.0 + abs(spec.b)
        ):
            inf = spec.c + total_jump_rate(spec)
        elif spec.a == 0.0 and spec.b == 0.0 and not spec.atoms:
            inf = spec.c
        else:
            inf = math.inf
        return LimitsResult(zero, inf)
    if isinstance(spec, StableSum):
        zero = sum(t.w * t.m**t.alpha for t in spec.terms)
        inf = math.inf if any(t.w > 0.0 for t in spec.terms) else zero
        return LimitsResult(zero, inf)
    if isinstance(spec, RationalProduct):
        return _rational_limits(spec)
    if isinstance(spec, PhiRep):
        return _phirep_limits(spec)
    if isinstance(spec, ShiftedSpec):
        base = f_limits(spec.base)
        return LimitsResult(base.f_at_zero + spec.shift, base.f_at_infinity + spec.shift)
    raise TypeError(f"not a Rogers spec: {type(spec).__name__}")


def _rational_limits(spec: RationalProduct):
    zero_order = sum(f.exponent for f in spec.factors if f.m == 0.0)
    degree = sum(f.exponent for f in spec.factors)
    if zero_order > 0:
        zero = 0.0
    elif zero_order < 0:
        zero = math.inf
    else:
        val = complex(spec.prefactor)
        for f in spec.factors:
            rot = -1j if f.orientation == _MINUS_I else 1j
            base = rot * 0.0 + f.m if f.m > 0.0 else rot
            val = val * base if f.exponent == 1 else val / base
        zero = max(val.real, 0.0)
    if degree > 0:
        inf = math.inf
    elif degree < 0:
        inf = 0.0
    else:
        val = complex(spec.prefactor)
        for f in spec.factors:
            rot = -1j if f.orientation == _MINUS_I else 1j
            val = val * rot if f.exponent == 1 else val / rot
        inf = max(val.real, 0.0)
    return LimitsResult(zero, inf)


def _phirep_limits(spec: PhiRep):
    table = spec.phi
    bp = np.asarray(table.breakpoints)
    cells, lo_ext, hi_ext = _phirep_cells(table)

    # f(0+) = c exp(-(1/pi) int phi(s) / (|s| (1+|s|)) ds); diverges -> 0
    near_zero = table.value_at(np.array([-1e-300, 1e-300]))
    inner_diverges = bool(np.any(np.asarray(near_zero) > 1e-12))
    if bp[0] > 0.0 and lo_ext > 1e-12:
        inner_diverges = True
    if bp[-1] < 0.0 and hi_ext > 1e-12:
        inner_diverges = True
    if inner_diverges:
        zero = 0.0
    else:
        def integrand0(s):
            return table.value_at(s) / (np.abs(s) * (1.0 + np.abs(s)))

        val, _ = integrate_adaptive(
            integrand0,
            (float(bp[0]), float(bp[-1])),
            QuadratureConfig(rel_tol=1e-10, abs_tol=1e-14, singular_points=(0.0,)),
        )
        # constant tails
        s_hi = float(bp[-1])
        s_lo = float(bp[0])
        if s_hi > 0.0 and hi_ext > 0.0:
            val += hi_ext * math.log((1.0 + s_hi) / s_hi)
        if s_lo < 0.0 and lo_ext > 0.0:
            val += lo_ext * math.log((1.0 - s_lo) / (-s_lo))
        zero = spec.c * math.exp(-val.real / math.pi)

    # f(inf-) = c exp((1/pi) int phi(s) / (1+|s|) ds); diverges -> inf
    if hi_ext > 1e-12 or lo_ext > 1e-12:
        inf = math.inf
    else:
        def integrand1(s):
            return table.value_at(s) / (1.0 + np.abs(s))

        val, _ = integrate_adaptive(
            integrand1,
            (float(bp[0]), float(bp[-1])),
            QuadratureConfig(rel_tol=1e-10, abs_tol=1e-14),
        )
        inf = spec.c * math.exp(val.real / math.pi)
    return LimitsResult(zero, inf)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def _structural_validate(spec):
    if isinstance(spec, LevyAtomic):
        if spec.a < 0.0:
            raise ValidationError("a", "Gaussian coefficient must be >= 0")
        if spec.c < 0.0:
            raise ValidationError("c", "kill rate must be >= 0")
        for k, (s, w) in enumerate(spec.atoms):
            if s == 0.0 or not math.isfinite(s):
                raise ValidationError(f"atoms[{k}].s", "atom location must be finite and nonzero")
            if not w > 0.0:
                raise ValidationError(f"atoms[{k}].w", "atom weight must be positive")
        return replace(spec, atoms=tuple(sorted(spec.atoms)))
    if isinstance(spec, StableSum):
        for k, t in enumerate(spec.terms):
            if t.w < 0.0:
                raise ValidationError(f"terms[{k}].w", "weight must be >= 0")
            if t.m < 0.0:
                raise ValidationError(f"terms[{k}].m", "tempering must be >= 0")
            if not (0.0 < t.alpha <= 2.0):
                raise ValidationError(f"terms[{k}].alpha", "alpha must lie in (0, 2]")
            if t.orientation not in _ORIENTATIONS:
                raise ValidationError(f"terms[{k}].orientation", f"unknown tag {t.orientation!r}")
            if t.alpha > 1.0 and t.m != 0.0:
                raise ValidationError(
                    f"terms[{k}].m", "terms with alpha > 1 must have m = 0"
                )
        terms = tuple(
            sorted(spec.terms, key=lambda t: (t.orientation, t.alpha, t.m, t.w))
        )
        return StableSum(terms)
    if isinstance(spec, RationalProduct):
        if not spec.prefactor > 0.0:
            raise ValidationError("prefactor", "must be positive")
        for k, f in enumerate(spec.factors):
            if f.orientation not in _ORIENTATIONS:
                raise ValidationError(f"factors[{k}].orientation", f"unknown tag {f.orientation!r}")
            if f.m < 0.0:
                raise ValidationError(f"factors[{k}].m", "must be >= 0")
            if f.exponent not in (-1, 1):
                raise ValidationError(f"factors[{k}].exponent", "must be -1 or +1")
        factors = tuple(
            sorted(spec.factors, key=lambda f: (f.orientation, -f.exponent, f.m))
        )
        return RationalProduct(spec.prefactor, factors)
    if isinstance(spec, PhiRep):
        if not spec.c > 0.0:
            raise ValidationError("c", "must be positive")
        spec.phi.validate()
        return spec
    if isinstance(spec, ShiftedSpec):
        if spec.shift < 0.0:
            raise ValidationError("shift", "must be >= 0")
        return ShiftedSpec(_structural_validate(spec.base), spec.shift)
    if isinstance(spec, DerivedExponent):
        return spec
    raise ValidationError("type", f"not a Rogers spec: {type(spec).__name__}")


def validate_spec(spec, n_samples=256):
    """Structural checks, canonical ordering, then sampled necessary checks.

    Samples re(f(xi)/xi) on a log-polar grid in the right half-plane and
    rejects on any violation.  Acceptance is a necessary condition only
    (sampled validation), not a proof of the Rogers property.
    """
    spec = _structural_validate(spec)
    if is_constant(spec):
        return spec
    if isinstance(spec, StableSum) and len(spec.terms) == 1:
        # single pure-power term: the admissibility wedge is exact,
        # |arg c| <= (pi/2) min(alpha, 2 - alpha) with c = w e^{-+ i alpha pi/2}
        t = spec.terms[0]
        if t.m == 0.0 and t.w > 0.0 and t.alpha * 0.5 * math.pi > (
            0.5 * math.pi * min(t.alpha, 2.0 - t.alpha) + 1e-15
        ):
            sgn = -1.0 if t.orientation == _MINUS_I else 1.0
            witness = cmath.exp(-sgn * 1j * (0.5 * math.pi - 1e-6))
            ratio = eval_f(spec, witness) / witness
            raise RogersViolationError(witness, float(ratio.real))
    n_radii = max(8, int(n_samples) // 16)
    radii = np.geomspace(1e-6, 1e6, n_radii)
    angles = np.concatenate(
        [
            np.linspace(-0.5 * math.pi + 1e-2, 0.5 * math.pi - 1e-2, 14),
            [-0.5 * math.pi + 1e-4, 0.5 * math.pi - 1e-4],
        ]
    )
    xi = radii[:, None] * np.exp(1j * angles[None, :])
    f = eval_f(spec, xi)
    ratio = f / xi
    tol = 1e-10 * (1.0 + np.abs(ratio))
    bad = ratio.real < -tol
    if np.any(bad):
        idx = np.argwhere(bad)[0]
        witness = complex(xi[idx[0], idx[1]])
        raise RogersViolationError(witness, float(ratio.real[idx[0], idx[1]]))
    return spec


# ---------------------------------------------------------------------------
# Levy density and boundary angle
# ---------------------------------------------------------------------------


def levy_density(spec: LevyAtomic, x):
    """Density of the Levy measure at x != 0 (completely monotone per side)."""
    if not isinstance(spec, LevyAtomic):
        raise TypeError("levy_density applies to LevyAtomic specs only")
    x = float(x)
    if x == 0.0:
        raise DomainError("Levy density is undefined at x = 0")
    total = 0.0
    for s, w in spec.atoms:
        if x > 0.0 and s > 0.0:
            total += w * math.exp(-s * x)
        elif x < 0.0 and s < 0.0:
            total += w * math.exp(-abs(s) * abs(x))
    return total / math.pi


def axis_feature_points(spec):
    """Known abscissae of boundary structure (poles, branch points, kinks).

    For an atom at s_j the Stieltjes kernel is singular at s = s_j; a
    minus-i factor or term (-i xi + m) meets the axis at s = +m, a plus-i
    one at s = -m.  Table builders seed their grids here so that narrow
    jump pairs (nearby zeros and poles of f on the axis) cannot hide inside
    one cell.
    """
    pts = set()
    if isinstance(spec, LevyAtomic):
        pts.update(s for s, _ in spec.atoms)
    elif isinstance(spec, StableSum):
        for t in spec.terms:
            if t.m > 0.0:
                pts.add(t.m if t.orientation == _MINUS_I else -t.m)
    elif isinstance(spec, RationalProduct):
        for f in spec.factors:
            if f.m > 0.0:
                pts.add(f.m if f.orientation == _MINUS_I else -f.m)
    elif isinstance(spec, PhiRep):
        pts.update(spec.phi.breakpoints)
    elif isinstance(spec, ShiftedSpec):
        pts.update(axis_feature_points(spec.base))
    return tuple(sorted(p for p in pts if p != 0.0))


def estimate_phi(spec, s, eps_ladder=None):
    """Boundary angle phi(s) = -sign(s) lim_{t->0+} Arg f(t - i s), in [0, pi].

    Approaches the axis horizontally along t - i s and extrapolates the
    argument to t = 0 with a polynomial ladder fit.  ``eps_ladder`` holds
    the absolute offsets; the default is {1e-3, 1e-4, 1e-5} scaled by the
    distance of -is from the origin (so the approach stays non-tangential
    at every scale).
    """
    s = float(s)
    if s == 0.0:
        raise DomainError("phi is defined for s != 0")
    if eps_ladder is None:
        scale = min(abs(s), 1.0 + abs(s))
        eps_ladder = tuple(t * scale for t in (1e-3, 1e-4, 1e-5))
    ladder = np.asarray(eps_ladder, dtype=float)
    ts, args = [], []
    for t in ladder:
        try:
            v = eval_f(spec, complex(t, -s))
        except (DomainError, OverflowError, ZeroDivisionError):
            continue
        if v == 0.0 or not (math.isfinite(v.real) and math.isfinite(v.imag)):
            continue
        ts.append(t)
        args.append(cmath.phase(v))
    if not ts:
        raise EstimationError(f"boundary angle estimation failed at s={s}")
    args = np.unwrap(np.asarray(args))
    val = float(richardson_zero(np.asarray(ts), args))
    phi = -math.copysign(1.0, s) * val
    return min(max(phi, 0.0), math.pi)


# ---------------------------------------------------------------------------
# analytic bound checks
# ---------------------------------------------------------------------------


def check_function_bounds(spec, samples, fd_slack=1e-3) -> VerifyReport:
    """Check the wedge, magnitude-sandwich and log-derivative bounds.

    For each sample xi in the open right half-plane:

    * -pi/2 + Arg xi <= Arg f(xi) <= pi/2 + Arg xi,
    * the two-sided magnitude sandwich against |f(r)| with r = |xi|,
    * |f'(xi)/f(xi)| <= pi/re(xi) (1 + fd_slack), derivative by central
      finite difference with step 1e-6 |xi|.

    Failures become report entries; nothing is raised.
    """
    rep = VerifyReport("function-bounds")
    for k, xi in enumerate(samples):
        xi = complex(xi)
        if xi.real <= 0.0:
            raise DomainError("bound checks need samples in the open right half-plane")
        f = eval_f(spec, xi)
        arg_xi = cmath.phase(xi)
        arg_f = cmath.phase(f)
        wedge = min(arg_f - (arg_xi - 0.5 * math.pi), (arg_xi + 0.5 * math.pi) - arg_f)
        rep.add(f"arg-wedge[{k}]", wedge, {"xi": str(xi)}, tol=1e-12)

        r = abs(xi)
        fr = abs(eval_f(spec, complex(r)))
        cosang = xi.real / r
        lower = fr * cosang / (2.0 * math.sqrt(2.0))
        upper = fr * 2.0 * math.sqrt(2.0) / cosang
        if fr == 0.0:
            margin = 0.0
        else:
            margin = min(abs(f) - lower, upper - abs(f)) / upper
        rep.add(f"magnitude-sandwich[{k}]", margin, {"xi": str(xi)}, tol=1e-12)

        h = 1e-6 * r
        fp = (eval_f(spec, xi + h) - eval_f(spec, xi - h)) / (2.0 * h)
        bound = math.pi / xi.real * (1.0 + fd_slack)
        ratio = abs(fp / f) if f != 0.0 else math.inf
        rep.add(
            f"log-derivative[{k}]",
            (bound - ratio) / bound,
            {"xi": str(xi), "ratio": ratio},
            tol=1e-12,
        )
    return rep
