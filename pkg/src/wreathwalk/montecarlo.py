"""Trajectory simulation of the shuffle at large ``n``.

Trial ``t`` always draws from the same counter-based stream, so results depend only
on ``(seed, trials)`` and not on how trials are split across worker processes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .groups import GroupSpec, WreathElement, make_cyclic, w_mul

MOMENTS_HEADER = ("k", "mean_f", "second_moment_f", "stderr")
COUPON_HEADER = ("C", "threshold", "p_hat", "stderr", "bound")


@dataclass(frozen=True)
class MCConfig:
    n: int
    group: GroupSpec
    trials: int
    steps: int = 0
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.steps < 0:
            raise ValueError("steps must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class CouponOutcome:
    t_all: int
    t_n_extra: int
    t_twisted: int

    def check(self, n):
        assert self.t_twisted == self.t_all + self.t_n_extra
        assert self.t_twisted >= self.t_all >= n


@dataclass(frozen=True)
class FixedPointMoments:
    k: int
    mean: float
    second_moment: float
    stderr: float
    second_moment_stderr: float
    trials: int


def step_shuffle(state: WreathElement, group: GroupSpec, rng: np.random.Generator) -> WreathElement:
    """One move: pick ``i`` in ``1..n`` and ``g`` in ``G`` uniformly, return ``state * s``.

    For ``i = n`` only card ``n`` is recoloured (by ``g``). For ``i < n`` cards ``i``
    and ``n`` swap and are recoloured by ``g`` and ``g^-1``.
    """
    n = state.n
    i = int(rng.integers(1, n + 1))
    g = int(rng.integers(group.order))
    colors = [group.identity] * n
    colors[n - 1] = g
    perm = list(range(1, n + 1))
    if i < n:
        colors[i - 1] = group.inv[g]
        perm[i - 1], perm[n - 1] = n, i
    return w_mul(state, WreathElement(tuple(colors), tuple(perm)), group)


def _chunks(trials, workers):
    size = -(-trials // workers)
    return [(lo, min(size, trials - lo)) for lo in range(0, trials, size)]


def _run(fn, args_for, trials, workers):
    if workers == 1 or trials < 2 * workers:
        return fn(*args_for(0, trials))
    chunks = _chunks(trials, workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_call, [(fn, args_for(lo, cnt)) for lo, cnt in chunks]))
    return np.concatenate(parts)


def _call(job):
    fn, args = job
    return fn(*args)


def fixed_point_samples(cfg: MCConfig, ks) -> np.ndarray:
    """``(trials, len(ks))`` fixed-point counts of the permutation after each ``k``.

    ``ks`` must be non-decreasing; one trajectory per trial is read at every checkpoint.
    """
    ks = [int(k) for k in ks]
    if any(k < 0 for k in ks) or ks != sorted(ks):
        raise ValueError("checkpoints must be non-negative and non-decreasing")
    g = cfg.group
    mul = np.asarray(g.mul, dtype=np.int64)
    inv = np.asarray(g.inv, dtype=np.int64)

    def args_for(lo, count):
        return (cfg.n, mul, inv, g.identity, ks, count, cfg.seed, lo)

    return _run(kernels.walk_fixed_points, args_for, cfg.trials, cfg.workers)


def _moments(k, f):
    f = f.astype(float)
    t = len(f)
    denom = math.sqrt(t)
    sd1 = f.std(ddof=1) if t > 1 else 0.0
    sd2 = (f * f).std(ddof=1) if t > 1 else 0.0
    return FixedPointMoments(k, float(f.mean()), float((f * f).mean()), sd1 / denom, sd2 / denom, t)


def fixed_point_scan(cfg: MCConfig, ks) -> list[FixedPointMoments]:
    order = sorted(set(int(k) for k in ks))
    samples = fixed_point_samples(cfg, order)
    by_k = {k: _moments(k, samples[:, j]) for j, k in enumerate(order)}
    return [by_k[int(k)] for k in ks]


def fixed_point_moments(cfg: MCConfig, k: int) -> FixedPointMoments:
    """Empirical ``E_k(f)`` and ``E_k(f^2)`` with standard errors of the means."""
    return fixed_point_scan(cfg, [k])[0]


def walk_states(cfg: MCConfig, k: int):
    """``(colors, perms)`` after ``k`` steps, 0-based arrays of shape ``(trials, n)``."""
    g = cfg.group
    return kernels.walk_states(
        cfg.n, np.asarray(g.mul, dtype=np.int64), np.asarray(g.inv, dtype=np.int64),
        g.identity, k, cfg.trials, cfg.seed,
    )


def simulate_twisted_coupon(n: int, rng: np.random.Generator) -> CouponOutcome:
    """Draw coupons until all ``n`` types are seen; then, unless the last new type
    was type ``n``, keep drawing until type ``n`` shows up again."""
    if n < 1:
        raise ValueError("n must be >= 1")
    seen = set()
    steps = 0
    last = None
    while len(seen) < n:
        x = int(rng.integers(n))
        steps += 1
        if x not in seen:
            seen.add(x)
            last = x
    extra = 0
    if last != n - 1:
        extra = 1
        while int(rng.integers(n)) != n - 1:
            extra += 1
    return CouponOutcome(steps, extra, steps + extra)


def twisted_coupon_samples(n: int, trials: int, seed: int, workers: int = 1) -> np.ndarray:
    """``(trials, 3)`` rows ``[t_all, t_n_extra, t_twisted]``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _run(kernels.twisted_coupons, lambda lo, cnt: (n, cnt, seed, lo), trials, workers)


def tail_estimate(samples, threshold: int) -> tuple[float, float]:
    """Fraction of samples strictly above ``threshold`` and its binomial standard error."""
    samples = np.asarray(samples)
    if samples.size == 0:
        raise ValueError("samples must be non-empty")
    p = float((samples > threshold).mean())
    return p, math.sqrt(p * (1 - p) / samples.size)


def twisted_tail_bound(C: float) -> float:
    return (math.e + 1) * math.exp(-C / 2)


def coupon_threshold(n: int, C: float) -> int:
    return math.ceil(n * math.log(n) + C * n)


def coupon_tail_rows(n: int, Cs, trials: int, seed: int, workers: int = 1):
    """Rows ``(C, threshold, p_hat, stderr, bound)`` for the twisted collector tail."""
    t = twisted_coupon_samples(n, trials, seed, workers)[:, 2]
    for C in Cs:
        thr = coupon_threshold(n, C)
        p, se = tail_estimate(t, thr)
        yield C, thr, p, se, twisted_tail_bound(C)


def derangement_counts(n):
    d = [1, 0]
    for m in range(2, n + 1):
        d.append((m - 1) * (d[-1] + d[-2]))
    return d[: n + 1]


def uniform_fixed_point_pmf(n: int) -> list[Fraction]:
    """Exact law of the number of fixed points of a uniform permutation of ``n``."""
    d = derangement_counts(n)
    nf = math.factorial(n)
    return [Fraction(math.comb(n, j) * d[n - j], nf) for j in range(n + 1)]


def uniform_fixed_point_tail(n: int, threshold: int) -> float:
    """``P(f >= threshold)`` under the uniform distribution on ``S_n``."""
    pmf = uniform_fixed_point_pmf(n)
    return float(sum(pmf[max(threshold, 0):], Fraction(0)))


def distinguishing_tv_lower(cfg: MCConfig, k: int, threshold: int) -> float:
    """TV lower bound from the event ``{f >= threshold}``, less 3 binomial standard errors."""
    f = fixed_point_samples(cfg, [k])[:, 0]
    p = float((f >= threshold).mean())
    se = math.sqrt(p * (1 - p) / len(f))
    gap = abs(p - uniform_fixed_point_tail(cfg.n, threshold))
    return max(gap - 3 * se, 0.0)


def transpose_top_config(n, trials, seed=0, workers=1):
    return MCConfig(n, make_cyclic(1), trials, 0, seed, workers)
