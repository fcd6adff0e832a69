"""Exact evolution of the shuffle distribution on ``G wr S_n``.

A :class:`Distribution` is a dense vector over the canonical index of the group.
In ``rational`` mode it holds integer numerators over one common denominator, so
every convolution, distance and projection is exact. In ``float`` mode it holds
binary64 probabilities for long scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Context, Decimal
from fractions import Fraction

import numpy as np

from .errors import DimensionError, DomainError, ModeError
from .groups import (
    GroupSpec,
    WreathElement,
    WreathIndex,
    lehmer_unrank,
    make_cyclic,
    w_inv,
)

MODES = ("rational", "float")

SCAN_HEADER = ("k", "tv", "l2sq_exact", "l2sq_spectral", "half_l2_bound")


@dataclass(frozen=True)
class GeneratingMeasure:
    atoms: tuple[tuple[WreathElement, Fraction], ...]
    n: int
    group: GroupSpec

    def __post_init__(self):
        seen = {}
        for x, p in self.atoms:
            x.check(self.group)
            if x.n != self.n:
                raise DimensionError(f"atom has n={x.n}, measure has n={self.n}")
            if p <= 0:
                raise ValueError(f"atom probabilities must be positive, got {p}")
            key = (x.colors, x.perm)
            if key in seen:
                raise ValueError(f"duplicate atom {x}")
            seen[key] = p
        if sum(p for _, p in self.atoms) != 1:
            raise ValueError("atom probabilities must sum to exactly 1")
        object.__setattr__(self, "_lookup", seen)
        object.__setattr__(self, "_steppers", {})

    def prob(self, x: WreathElement) -> Fraction:
        return self._lookup.get((x.colors, x.perm), Fraction(0))

    def is_symmetric(self):
        return all(self.prob(w_inv(x, self.group)) == p for x, p in self.atoms)

    @property
    def elements(self):
        return [x for x, _ in self.atoms]

    @property
    def probabilities(self):
        return [p for _, p in self.atoms]


def build_warp_measure(n: int, g: GroupSpec) -> GeneratingMeasure:
    """Mass ``1/(n|G|)`` on each ``g^(n)`` and each ``(g^-1)^(i) g^(n) (i,n)``, ``i < n``."""
    if n < 1:
        raise DomainError("n must be >= 1")
    p = Fraction(1, n * g.order)
    atoms = []
    for x in range(g.order):
        colors = [g.identity] * n
        colors[n - 1] = x
        atoms.append((WreathElement(tuple(colors), tuple(range(1, n + 1))), p))
    for i in range(1, n):
        perm = list(range(1, n + 1))
        perm[i - 1], perm[n - 1] = n, i
        for x in range(g.order):
            colors = [g.identity] * n
            colors[i - 1] = g.inv[x]
            colors[n - 1] = x
            atoms.append((WreathElement(tuple(colors), tuple(perm)), p))
    return GeneratingMeasure(tuple(atoms), n, g)


def build_transpose_top_measure(n: int) -> GeneratingMeasure:
    """Mass ``1/n`` on the identity and on each ``(i,n)``, as a walk over ``1 wr S_n``."""
    return build_warp_measure(n, make_cyclic(1))


@dataclass(frozen=True, eq=False)
class Distribution:
    """Weights over ``index``; in rational mode ``weights[i] / denominator`` is exact."""

    index: WreathIndex
    weights: np.ndarray
    mode: str = "rational"
    denominator: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ModeError(f"mode must be one of {MODES}, got {self.mode!r}")
        if len(self.weights) != self.index.size:
            raise DimensionError("weight vector does not match the state space")

    @property
    def n(self):
        return self.index.n

    @property
    def group(self):
        return self.index.group

    @property
    def size(self):
        return self.index.size

    def prob(self, i) -> Fraction | float:
        if self.mode == "rational":
            return Fraction(int(self.weights[i]), self.denominator)
        return float(self.weights[i])

    def total(self):
        if self.mode == "rational":
            return Fraction(int(self.weights.sum()), self.denominator)
        return float(self.weights.sum())

    def as_float(self):
        if self.mode == "float":
            return self.weights
        return np.array([int(w) for w in self.weights], dtype=float) / self.denominator

    def reduced(self):
        """Same distribution with numerators and denominator divided by their gcd."""
        if self.mode != "rational":
            return self
        d = math.gcd(self.denominator, *(int(w) for w in self.weights))
        if d == 1:
            return self
        return Distribution(self.index, self.weights // d, "rational", self.denominator // d)

    def __eq__(self, other):
        if not isinstance(other, Distribution) or self.index != other.index:
            return NotImplemented
        if self.mode == other.mode == "rational":
            return bool(
                np.all(self.weights * other.denominator == other.weights * self.denominator)
            )
        return bool(np.array_equal(self.as_float(), other.as_float()))

    __hash__ = None


def point_mass(index: WreathIndex, at: int | None = None, mode="rational") -> Distribution:
    at = index.identity_index if at is None else at
    if mode == "rational":
        w = np.zeros(index.size, dtype=object)
        w[:] = 0
        w[at] = 1
        return Distribution(index, w, "rational", 1)
    if mode == "float":
        w = np.zeros(index.size)
        w[at] = 1.0
        return Distribution(index, w, "float")
    raise ModeError(f"mode must be one of {MODES}, got {mode!r}")


def uniform(index: WreathIndex, mode="rational") -> Distribution:
    if mode == "rational":
        w = np.empty(index.size, dtype=object)
        w[:] = 1
        return Distribution(index, w, "rational", index.size)
    return Distribution(index, np.full(index.size, 1.0 / index.size), "float")


class _Stepper:
    """Cached right-multiplication maps and weights for one measure."""

    def __init__(self, m: GeneratingMeasure, index: WreathIndex):
        if (m.n, m.group) != (index.n, index.group):
            raise DimensionError("measure and distribution live on different groups")
        self.maps = index.right_mul_maps(m.elements)
        probs = m.probabilities
        self.denominator = math.lcm(*(p.denominator for p in probs))
        self.numerators = [int(p * self.denominator) for p in probs]
        self.floats = [float(p) for p in probs]

    def step(self, d: Distribution) -> Distribution:
        if d.mode == "rational":
            new = np.zeros(d.size, dtype=object)
            new[:] = 0
            for target, w in zip(self.maps, self.numerators):
                new[target] += d.weights * w if w != 1 else d.weights
            return Distribution(d.index, new, "rational", d.denominator * self.denominator)
        new = np.zeros(d.size)
        for target, w in zip(self.maps, self.floats):
            new[target] += d.weights * w
        return Distribution(d.index, new, "float")


def _stepper(m, index):
    if index not in m._steppers:
        m._steppers[index] = _Stepper(m, index)
    return m._steppers[index]


def convolve_step(d: Distribution, m: GeneratingMeasure) -> Distribution:
    """One step of the walk: ``new(x s) += d(x) m(s)`` over the atoms ``s``."""
    return _stepper(m, d.index).step(d)


def evolve(m: GeneratingMeasure, kmax: int, mode="rational", index: WreathIndex | None = None):
    """Yield ``(k, P^{*k})`` for ``k = 0..kmax`` starting at the identity."""
    index = WreathIndex(m.n, m.group) if index is None else index
    d = point_mass(index, mode=mode)
    st = _stepper(m, index)
    yield 0, d
    for k in range(1, kmax + 1):
        d = st.step(d)
        yield k, d


def distribution_at(k: int, m: GeneratingMeasure, mode="rational") -> Distribution:
    if k < 0:
        raise ValueError("k must be >= 0")
    for _, d in evolve(m, k, mode):
        pass
    return d


def tv_distance(d: Distribution) -> Fraction | float:
    """Total variation distance to uniform: ``1/2 sum |d(x) - 1/|Omega||``."""
    N = d.size
    if d.mode == "rational":
        D = d.denominator
        s = sum(abs(int(w) * N - D) for w in d.weights)
        return Fraction(s, 2 * D * N)
    return 0.5 * float(np.abs(d.weights - 1.0 / N).sum())


def l2_sq(d: Distribution) -> Fraction | float:
    """Squared l2 distance to uniform: ``|Omega| sum d(x)^2 - 1``."""
    N = d.size
    if d.mode == "rational":
        D = d.denominator
        return Fraction(N * sum(int(w) * int(w) for w in d.weights), D * D) - 1
    return max(N * float(np.dot(d.weights, d.weights)) - 1.0, 0.0)


def l2_distance(d: Distribution) -> tuple[Fraction | float, float]:
    """``(squared distance, distance)``; the square is exact in rational mode."""
    sq = l2_sq(d)
    return sq, math.sqrt(sq)


def project_to_sn(d: Distribution) -> Distribution:
    """Image of ``d`` under ``(g_1..g_n; pi) -> pi``, as a distribution over ``1 wr S_n``."""
    target = WreathIndex(d.n, make_cyclic(1))
    w = d.weights.reshape(d.index.n_colorings, d.index.nfact).sum(axis=0)
    return Distribution(target, w, d.mode, d.denominator)


def transition_matrix(m: GeneratingMeasure, index: WreathIndex | None = None) -> np.ndarray:
    """Dense ``M[x, x s] = m(s)`` (row-stochastic, float)."""
    index = WreathIndex(m.n, m.group) if index is None else index
    M = np.zeros((index.size, index.size))
    rows = np.arange(index.size)
    for target, p in zip(index.right_mul_maps(m.elements), m.probabilities):
        M[rows, target] += float(p)
    return M


def fixed_point_moment(d: Distribution, power: int = 1) -> Fraction | float:
    """``E[f^power]`` where ``f`` counts fixed points of the permutation part of ``d``."""
    sn = project_to_sn(d)
    fixed = [f**power for f in _fixed_point_counts(d.n)]
    if d.mode == "rational":
        return Fraction(sum(int(w) * f for w, f in zip(sn.weights, fixed)), sn.denominator)
    return float(np.dot(sn.weights, fixed))


def _fixed_point_counts(n):
    return [sum(p == i for i, p in enumerate(lehmer_unrank(r, n))) for r in range(math.factorial(n))]


def format_decimal(x, digits=12) -> str:
    """Render a rational or float with ``digits`` significant digits."""
    if isinstance(x, Fraction):
        if x == 0:
            return "0"
        v = Context(prec=digits).divide(Decimal(x.numerator), Decimal(x.denominator))
    else:
        v = Context(prec=digits).create_decimal_from_float(float(x))
    out = format(v, "f") if -7 <= v.adjusted() < digits else format(v, "e")
    if "." in out and "e" not in out:
        out = out.rstrip("0").rstrip(".")
    return out


def format_exact(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def exact_scan(n: int, g: GroupSpec, kmax: int, mode="rational"):
    """Rows ``(k, tv, l2sq_exact, l2sq_spectral, half_l2_bound)`` for ``k = 0..kmax``.

    ``l2sq_spectral`` is always exact; the other columns follow ``mode``.
    """
    from .spectrum import build_full_spectrum, spectral_l2_sq

    m = build_warp_measure(n, g)
    table = build_full_spectrum(n, g)
    for k, d in evolve(m, kmax, mode):
        sq = l2_sq(d)
        yield k, tv_distance(d), sq, spectral_l2_sq(table, k), 0.5 * math.sqrt(sq)
