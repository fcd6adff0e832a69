"""Finite base groups and the wreath product G wr S_n.

Permutations are stored in one-line notation over ``1..n`` and compose as
``(pi eta)(i) = pi(eta(i))``. With that convention the product

    (g_1..g_n; pi)(h_1..h_n; eta) = (g_1 h_{pi^-1(1)} .. g_n h_{pi^-1(n)}; pi eta)

is associative and the generator identities used for irreducibility hold.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .errors import (
    CapacityError,
    ClassCountError,
    ColumnNotBijectiveError,
    DimensionError,
    DimensionSumError,
    InvalidOrderError,
    MissingIdentityError,
    NonAssociativeError,
    RowNotBijectiveError,
    SchemaError,
    TrivialIrrepError,
    UnsupportedOrderError,
)

DEFAULT_STATE_CAP = 10**7
EXHAUSTIVE_ASSOCIATIVITY_LIMIT = 64

# Irrep dimensions of S_m, trivial first.
_SYMMETRIC_IRREP_DIMS = {
    1: (1,),
    2: (1, 1),
    3: (1, 1, 2),
    4: (1, 1, 2, 3, 3),
    5: (1, 1, 4, 4, 5, 5, 6),
}


def state_cap():
    """Exact-mode state cap, overridable through ``WREATH_STATE_CAP``."""
    raw = os.environ.get("WREATH_STATE_CAP")
    return int(raw) if raw else DEFAULT_STATE_CAP


@dataclass(frozen=True)
class IrrepInfo:
    dim: int
    is_trivial: bool = False

    def __post_init__(self):
        if self.dim < 1:
            raise TrivialIrrepError(f"irrep dimension must be positive, got {self.dim}")
        if self.is_trivial and self.dim != 1:
            raise TrivialIrrepError("the trivial irrep must have dimension 1")


@dataclass(frozen=True, eq=False)
class GroupSpec:
    """A finite group given by its multiplication table and irrep dimensions.

    Element ids are dense ``0..order-1``; ``identity`` need not be 0.
    Construction validates every invariant eagerly.
    """

    order: int
    identity: int
    mul: np.ndarray
    irreps: tuple[IrrepInfo, ...]
    name: str = "G"
    inv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        mul = np.asarray(self.mul, dtype=np.int64)
        mul.setflags(write=False)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "irreps", tuple(self.irreps))
        _validate_table(self.order, self.identity, mul)
        inv = np.empty(self.order, dtype=np.int64)
        for x in range(self.order):
            inv[x] = int(np.flatnonzero(mul[x] == self.identity)[0])
        inv.setflags(write=False)
        object.__setattr__(self, "inv", inv)
        _validate_irreps(self)

    @property
    def trivial_index(self):
        return next(i for i, r in enumerate(self.irreps) if r.is_trivial)

    @property
    def irrep_dims(self):
        return tuple(r.dim for r in self.irreps)

    def m(self, a, b):
        return int(self.mul[a, b])

    def __eq__(self, other):
        if not isinstance(other, GroupSpec):
            return NotImplemented
        return (
            self.order == other.order
            and self.identity == other.identity
            and self.irreps == other.irreps
            and np.array_equal(self.mul, other.mul)
        )

    def __hash__(self):
        return hash((self.order, self.identity, self.irreps, self.mul.tobytes()))

    def __repr__(self):
        return f"GroupSpec({self.name}, order={self.order})"


def _validate_table(order, identity, mul):
    if order < 1:
        raise InvalidOrderError(f"order must be positive, got {order}")
    if mul.shape != (order, order):
        raise SchemaError(f"mul must be {order}x{order}, got shape {mul.shape}")
    if mul.min() < 0 or mul.max() >= order:
        raise SchemaError("mul contains ids outside 0..order-1")
    ids = np.arange(order)
    for r in range(order):
        if len(np.unique(mul[r])) != order:
            raise RowNotBijectiveError(f"row {r} of mul is not a permutation")
    for c in range(order):
        if len(np.unique(mul[:, c])) != order:
            raise ColumnNotBijectiveError(f"column {c} of mul is not a permutation")
    if not (0 <= identity < order):
        raise MissingIdentityError(f"identity id {identity} out of range")
    if not (np.array_equal(mul[identity], ids) and np.array_equal(mul[:, identity], ids)):
        raise MissingIdentityError(f"element {identity} is not a two-sided identity")
    _check_associative(mul)


def _check_associative(mul):
    order = mul.shape[0]
    if order <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT:
        lhs = mul[mul]  # lhs[a, b, c] = (ab)c
        rhs = mul[np.arange(order)[:, None, None], mul[None, :, :]]
        bad = np.argwhere(lhs != rhs)
    else:
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, order, size=(3, 20000))
        bad_mask = mul[mul[a, b], c] != mul[a, mul[b, c]]
        bad = np.stack([a, b, c], axis=1)[bad_mask]
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise NonAssociativeError(f"(x{a} x{b}) x{c} != x{a} (x{b} x{c})")


def conjugacy_classes(mul, identity):
    """Partition of element ids into conjugacy classes, from the table alone."""
    mul = np.asarray(mul)
    order = mul.shape[0]
    inv = np.array([int(np.flatnonzero(mul[x] == identity)[0]) for x in range(order)])
    seen = np.zeros(order, dtype=bool)
    classes = []
    for x in range(order):
        if seen[x]:
            continue
        orbit = sorted({int(mul[mul[g, x], inv[g]]) for g in range(order)})
        seen[orbit] = True
        classes.append(orbit)
    return classes


def _validate_irreps(group):
    trivial = [r for r in group.irreps if r.is_trivial]
    if len(trivial) != 1:
        raise TrivialIrrepError(f"expected exactly one trivial irrep, found {len(trivial)}")
    total = sum(r.dim**2 for r in group.irreps)
    if total != group.order:
        raise DimensionSumError(f"sum of squared irrep dims is {total}, order is {group.order}")
    n_classes = len(conjugacy_classes(group.mul, group.identity))
    if n_classes != len(group.irreps):
        raise ClassCountError(
            f"{len(group.irreps)} irreps supplied but the table has {n_classes} conjugacy classes"
        )


def _irreps_from_dims(dims, trivial_index=0):
    return tuple(IrrepInfo(d, i == trivial_index) for i, d in enumerate(dims))


def make_cyclic(m):
    """Z_m with ids ``0..m-1`` under addition mod m."""
    if m < 1:
        raise InvalidOrderError(f"cyclic group order must be >= 1, got {m}")
    ids = np.arange(m)
    mul = (ids[:, None] + ids[None, :]) % m
    return GroupSpec(m, 0, mul, _irreps_from_dims((1,) * m), name=f"Z{m}")


def make_symmetric(m):
    """S_m for m <= 5; elements are the permutations of ``range(m)`` in lexicographic order."""
    if m < 1:
        raise InvalidOrderError(f"symmetric group degree must be >= 1, got {m}")
    if m > 5:
        raise UnsupportedOrderError(f"S_{m} is not built in (m <= 5 supported)")
    perms = list(itertools.permutations(range(m)))
    pos = {p: i for i, p in enumerate(perms)}
    mul = np.array(
        [[pos[tuple(a[b[i]] for i in range(m))] for b in perms] for a in perms],
        dtype=np.int64,
    )
    return GroupSpec(len(perms), 0, mul, _irreps_from_dims(_SYMMETRIC_IRREP_DIMS[m]), name=f"S{m}")


def make_direct_product(a, b):
    """A x B with id ``i * |B| + j`` for the pair (i, j); irreps are the outer tensor products."""
    ia, ib = np.divmod(np.arange(a.order * b.order), b.order)
    mul = a.mul[ia[:, None], ia[None, :]] * b.order + b.mul[ib[:, None], ib[None, :]]
    irreps = tuple(
        IrrepInfo(ra.dim * rb.dim, ra.is_trivial and rb.is_trivial)
        for ra in a.irreps
        for rb in b.irreps
    )
    return GroupSpec(
        a.order * b.order,
        a.identity * b.order + b.identity,
        mul,
        irreps,
        name=f"{a.name}x{b.name}",
    )


def load_cayley_table(document):
    """Build a validated :class:`GroupSpec` from a Cayley-table document.

    ``document`` is a JSON string, a path, or an already-parsed mapping with keys
    ``name, order, identity, mul, irrep_dims, trivial_index``.
    """
    if isinstance(document, Path):
        document = json.loads(document.read_text())
    elif isinstance(document, str):
        document = json.loads(document)
    required = ("name", "order", "identity", "mul", "irrep_dims", "trivial_index")
    missing = [k for k in required if k not in document]
    if missing:
        raise SchemaError(f"missing fields: {', '.join(missing)}")
    order = int(document["order"])
    try:
        mul = np.array(document["mul"], dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"mul is not a rectangular integer table: {exc}") from None
    dims = [int(d) for d in document["irrep_dims"]]
    t_idx = int(document["trivial_index"])
    if not 0 <= t_idx < len(dims):
        raise TrivialIrrepError(f"trivial_index {t_idx} out of range")
    return GroupSpec(
        order, int(document["identity"]), mul, _irreps_from_dims(dims, t_idx), name=str(document["name"])
    )


def dump_cayley_table(group):
    """Inverse of :func:`load_cayley_table` (returns the parsed mapping)."""
    return {
        "name": group.name,
        "order": group.order,
        "identity": group.identity,
        "mul": group.mul.tolist(),
        "irrep_dims": list(group.irrep_dims),
        "trivial_index": group.trivial_index,
    }


# --- wreath product elements -------------------------------------------------


@dataclass(frozen=True)
class WreathElement:
    """``(g_1, ..., g_n; pi)`` with colours as element ids and ``pi`` one-line over 1..n."""

    colors: tuple[int, ...]
    perm: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        object.__setattr__(self, "perm", tuple(int(p) for p in self.perm))
        if len(self.colors) != len(self.perm):
            raise DimensionError("colors and perm have different lengths")
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise ValueError(f"{self.perm} is not a permutation of 1..{len(self.perm)}")

    @property
    def n(self):
        return len(self.perm)

    def check(self, group):
        if any(not 0 <= c < group.order for c in self.colors):
            raise ValueError(f"colour ids {self.colors} not valid for {group.name}")
        return self


def w_identity(n, group):
    return WreathElement((group.identity,) * n, tuple(range(1, n + 1)))


def permutation(perm, group):
    """The element ``(e, ..., e; perm)``."""
    return WreathElement((group.identity,) * len(perm), perm)


def transposition(i, j, n, group):
    perm = list(range(1, n + 1))
    perm[i - 1], perm[j - 1] = perm[j - 1], perm[i - 1]
    return permutation(perm, group)


def color_at(g, i, n, group):
    """``g^{(i)}``: colour ``g`` in position ``i`` (1-based), identity permutation."""
    colors = [group.identity] * n
    colors[i - 1] = g
    return WreathElement(colors, range(1, n + 1))


def w_mul(a, b, group):
    if a.n != b.n:
        raise DimensionError(f"cannot multiply elements of G wr S_{a.n} and G wr S_{b.n}")
    pinv = [0] * a.n
    for i, p in enumerate(a.perm):
        pinv[p - 1] = i
    colors = [group.m(a.colors[i], b.colors[pinv[i]]) for i in range(a.n)]
    perm = [a.perm[b.perm[i] - 1] for i in range(a.n)]
    return WreathElement(colors, perm)


def w_inv(a, group):
    n = a.n
    pinv = [0] * n
    for i, p in enumerate(a.perm):
        pinv[p - 1] = i + 1
    colors = [int(group.inv[a.colors[a.perm[i] - 1]]) for i in range(n)]
    return WreathElement(colors, pinv)


def w_prod(group, *elements):
    out = elements[0]
    for e in elements[1:]:
        out = w_mul(out, e, group)
    return out


# --- enumeration ---------------------------------------------------------------


def lehmer_rank(perm):
    """Lexicographic rank of a 0-based one-line permutation."""
    n = len(perm)
    rank = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if perm[j] < perm[i])
        rank += smaller * math.factorial(n - 1 - i)
    return rank


def lehmer_unrank(rank, n):
    pool = list(range(n))
    out = []
    for i in range(n):
        f = math.factorial(n - 1 - i)
        d, rank = divmod(rank, f)
        out.append(pool.pop(d))
    return out


class WreathIndex:
    """Bijection between ``G wr S_n`` and ``0..|G|^n n! - 1``.

    ``index = colour_code * n! + lehmer_rank(perm)`` where ``colour_code`` reads the
    colours as base-|G| digits, ``colors[0]`` most significant.
    """

    def __init__(self, n, group, cap=None):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.group = group
        self.cap = state_cap() if cap is None else cap
        self.nfact = math.factorial(n)
        self.n_colorings = group.order**n
        self.size = self.n_colorings * self.nfact
        if self.size > self.cap:
            raise CapacityError(self.size, self.cap)
        self._maps = {}

    def __len__(self):
        return self.size

    def __eq__(self, other):
        return isinstance(other, WreathIndex) and self.n == other.n and self.group == other.group

    def __hash__(self):
        return hash((self.n, self.group))

    def index(self, x):
        if x.n != self.n:
            raise DimensionError(f"element has n={x.n}, index is for n={self.n}")
        code = 0
        for c in x.colors:
            code = code * self.group.order + c
        return code * self.nfact + lehmer_rank([p - 1 for p in x.perm])

    def unindex(self, i):
        if not 0 <= i < self.size:
            raise IndexError(f"index {i} outside 0..{self.size - 1}")
        code, rank = divmod(i, self.nfact)
        colors = []
        for _ in range(self.n):
            code, c = divmod(code, self.group.order)
            colors.append(c)
        return WreathElement(colors[::-1], [p + 1 for p in lehmer_unrank(rank, self.n)])

    @property
    def identity_index(self):
        return self.index(w_identity(self.n, self.group))

    def right_mul_map(self, s):
        """Array ``a`` with ``a[index(x)] = index(x * s)`` for every state ``x``."""
        key = (s.colors, s.perm)
        if key not in self._maps:
            self._maps[key] = self.right_mul_maps([s])[0]
        return self._maps[key]

    def right_mul_maps(self, elements):
        colors = np.array([e.colors for e in elements], dtype=np.int64).reshape(len(elements), self.n)
        perms = np.array([[p - 1 for p in e.perm] for e in elements], dtype=np.int64).reshape(
            len(elements), self.n
        )
        return kernels.build_right_mul_maps(self.n, self.group.order, self.group.mul, colors, perms)


def enumerate_index(n, group, cap=None):
    return WreathIndex(n, group, cap)


def parse_group(text):
    """Parse ``cyclic:m``, ``symmetric:m`` or ``cayley:<path>``."""
    kind, _, arg = text.partition(":")
    if kind == "cyclic":
        return make_cyclic(int(arg))
    if kind == "symmetric":
        return make_symmetric(int(arg))
    if kind == "cayley":
        return load_cayley_table(Path(arg))
    raise ValueError(f"unknown group spec {text!r}; use cyclic:m, symmetric:m or cayley:<path>")
