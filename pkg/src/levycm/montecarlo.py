"""Exact-path Monte Carlo for atomic-measure specs.

Such a spec is a hyperexponential compound Poisson process plus linear
drift and an optional Brownian part, killed at a constant rate; paths can
be simulated without time discretization.  The supremum over an independent
exponential horizon is computed exactly: linear pieces via their endpoints
and Brownian pieces via inverse-CDF sampling of the bridge maximum, with
the maximum's location drawn from its exact conditional law (a two-piece
inverse-Gaussian mixture).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import MethodUnsupportedError, ValidationError
from .rogers import LevyAtomic, compensator_drift, eval_f

__all__ = [
    "SupSample",
    "McEstimate",
    "LaplaceQuery",
    "TailQuery",
    "JointQuery",
    "simulate_sup_samples",
    "mc_estimates",
]


@dataclass(frozen=True)
class SupSample:
    sup_value: float
    argmax_time: float
    horizon: float
    killed: bool


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    n: int
    seed: int
    query: str


@dataclass(frozen=True)
class LaplaceQuery:
    xi: float


@dataclass(frozen=True)
class TailQuery:
    x: float


@dataclass(frozen=True)
class JointQuery:
    xi: float
    tau: float


def _mixture(spec: LevyAtomic):
    """Jump mixture: per-atom rates w_j/(pi |s_j|) and Exp(|s_j|) sizes."""
    rates = np.array([w / (math.pi * abs(s)) for s, w in spec.atoms])
    scales = np.array([abs(s) for s, _ in spec.atoms])
    signs = np.array([math.copysign(1.0, s) for s, _ in spec.atoms])
    return rates, scales, signs


def _validate_decomposition(spec: LevyAtomic, drift, rates, scales, signs):
    """Reconstruct the exponent from path ingredients and compare to eval_f."""
    for xi in (0.7 + 0.3j, 1.3 - 0.9j):
        val = spec.a * xi * xi - 1j * drift * xi + spec.c
        # compound Poisson part: sum rate_j (1 - E e^{i xi J_j})
        for rate, sc, sg in zip(rates, scales, signs):
            val += rate * (1.0 - sc / (sc - 1j * sg * xi))
        ref = eval_f(spec, xi)
        if abs(val - ref) > 1e-9 * (1.0 + abs(ref)):
            raise ValidationError(
                "atoms", f"path decomposition mismatch at xi={xi}: {val} vs {ref}"
            )


def _ig_sample(rng, mu, lam):
    """Inverse-Gaussian draw (Michael-Schucany-Haas), vectorized."""
    mu = np.asarray(mu, dtype=float)
    lam = np.asarray(lam, dtype=float)
    y = rng.standard_normal(mu.shape) ** 2
    x = mu + mu * mu * y / (2.0 * lam) - (mu / (2.0 * lam)) * np.sqrt(
        4.0 * mu * lam * y + (mu * y) ** 2
    )
    u = rng.uniform(size=mu.shape)
    return np.where(u <= mu / (mu + x), x, mu * mu / np.where(x > 0, x, 1.0))


def _bridge_max(rng, w, var_dt):
    """Maximum above the start of a Brownian bridge with increment w."""
    u = rng.uniform(size=np.shape(w)) if np.ndim(w) else rng.uniform()
    return 0.5 * (w + np.sqrt(w * w - 2.0 * var_dt * np.log(u)))


def _bridge_argmax(rng, m, w, dt, v):
    """Time of the bridge maximum given its height m (vectorized).

    The pre- and post-maximum first-passage times are Levy-stable(1/2)
    with parameters a = m/sqrt(v) and b = (m-w)/sqrt(v); conditioning on
    their sum dt makes G = (dt - T)/T a two-piece generalized inverse
    Gaussian mixture with half-integer index, sampled through IG draws.
    """
    m = np.asarray(m, dtype=float)
    w = np.asarray(w, dtype=float)
    dt = np.asarray(dt, dtype=float)
    a = m / math.sqrt(v)
    b = (m - w) / math.sqrt(v)
    a = np.clip(a, 1e-300, None)
    b = np.clip(b, 1e-300, None)
    pick = rng.uniform(size=m.shape) < a / (a + b)
    mu1 = b / a
    lam1 = b * b / dt
    g_direct = _ig_sample(rng, mu1, lam1)
    mu2 = a / b
    lam2 = a * a / dt
    g_recip = 1.0 / _ig_sample(rng, mu2, lam2)
    g = np.where(pick, g_direct, g_recip)
    t = dt / (1.0 + g)
    t = np.where(m <= 1e-14 * np.abs(w), 0.0, t)
    t = np.where(np.abs(m - w) <= 1e-14 * np.abs(m), dt, t)
    return t


def simulate_sup_samples(spec, sigma, n, seed, shard_size=50000):
    """Supremum and argmax-time samples over Exp(sigma) horizons.

    Deterministic for a fixed (seed, shard_size): shard k uses the child
    generator seeded by (seed, k) and shards are concatenated in order.
    Killing (rate c) truncates the horizon; the supremum is over the
    lifetime.
    """
    if not isinstance(spec, LevyAtomic):
        raise MethodUnsupportedError(
            "exact-path simulation supports atomic-measure specs only"
        )
    if not sigma > 0.0:
        raise ValidationError("sigma", "must be positive")
    n = int(n)
    rates, scales, signs = _mixture(spec)
    drift = spec.b - compensator_drift(spec)
    _validate_decomposition(spec, drift, rates, scales, signs)
    out = []
    n_shards = (n + shard_size - 1) // shard_size
    for shard in range(n_shards):
        m = min(shard_size, n - shard * shard_size)
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), shard])))
        if len(rates) == 0:
            out.extend(_simulate_diffusion_block(spec, drift, sigma, m, rng))
        else:
            out.extend(
                _simulate_jump_block(spec, drift, rates, scales, signs, sigma, m, rng)
            )
    return out


def _horizons(spec, sigma, m, rng):
    s = rng.exponential(1.0 / sigma, size=m)
    if spec.c > 0.0:
        k = rng.exponential(1.0 / spec.c, size=m)
        killed = k < s
        return np.minimum(s, k), killed
    return s, np.zeros(m, dtype=bool)


def _simulate_diffusion_block(spec, drift, sigma, m, rng):
    """No jumps: one drifted Brownian (or linear) segment per sample."""
    horizon, killed = _horizons(spec, sigma, m, rng)
    v = 2.0 * spec.a
    if v == 0.0:
        sup = np.maximum(drift * horizon, 0.0)
        tmax = np.where(drift > 0.0, horizon, 0.0)
    else:
        w = drift * horizon + np.sqrt(v * horizon) * rng.standard_normal(m)
        sup = _bridge_max(rng, w, v * horizon)
        tmax = _bridge_argmax(rng, sup, w, horizon, v)
    return [
        SupSample(float(s), float(t), float(h), bool(k))
        for s, t, h, k in zip(sup, tmax, horizon, killed)
    ]


def _simulate_jump_block(spec, drift, rates, scales, signs, sigma, m, rng):
    horizon, killed = _horizons(spec, sigma, m, rng)
    v = 2.0 * spec.a
    total_rate = float(np.sum(rates))
    probs = rates / total_rate
    out = []
    for i in range(m):
        T = float(horizon[i])
        n_jumps = rng.poisson(total_rate * T)
        times = np.sort(rng.uniform(0.0, T, size=n_jumps))
        comps = rng.choice(len(rates), size=n_jumps, p=probs)
        sizes = signs[comps] * rng.exponential(1.0 / scales[comps])
        best = 0.0
        t_best = 0.0
        x = 0.0
        t_prev = 0.0
        for k in range(n_jumps + 1):
            t_next = float(times[k]) if k < n_jumps else T
            dt = t_next - t_prev
            if dt > 0.0:
                if v > 0.0:
                    w = drift * dt + math.sqrt(v * dt) * rng.standard_normal()
                    m_rel = float(_bridge_max(rng, w, v * dt))
                    if x + m_rel > best:
                        best = x + m_rel
                        t_best = t_prev + float(
                            _bridge_argmax(rng, np.array(m_rel), np.array(w), np.array(dt), v)
                        )
                    x += w
                else:
                    x_end = x + drift * dt
                    if max(x, x_end) > best:
                        best = max(x, x_end)
                        t_best = t_next if drift > 0.0 else t_prev
                    x = x_end
            if k < n_jumps:
                x += float(sizes[k])
                if x > best:
                    best = x
                    t_best = t_next
            t_prev = t_next
        out.append(SupSample(best, t_best, T, bool(killed[i])))
    return out


def mc_estimates(samples, queries, seed=0):
    """Empirical means with standard errors for the requested functionals.

    Killed samples contribute their lifetime supremum and argmax time: the
    kill rate is part of the exponent, so analytic comparisons against the
    same spec match this convention.
    """
    if not samples:
        raise ValidationError("samples", "need a non-empty sample list")
    sup = np.array([s.sup_value for s in samples])
    tmax = np.array([s.argmax_time for s in samples])
    n = len(samples)
    out = []
    for q in queries:
        if isinstance(q, LaplaceQuery):
            y = np.exp(-q.xi * sup)
            label = f"laplace(xi={q.xi:g})"
        elif isinstance(q, TailQuery):
            y = (sup > q.x).astype(float)
            label = f"tail(x={q.x:g})"
        elif isinstance(q, JointQuery):
            y = np.exp(-q.xi * sup - q.tau * tmax)
            label = f"joint(xi={q.xi:g},tau={q.tau:g})"
        else:
            raise ValidationError("queries", f"unknown query {q!r}")
        mean = float(np.mean(y))
        se = float(np.std(y, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
        out.append(McEstimate(mean, se, n, int(seed), label))
    return out
