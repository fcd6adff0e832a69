"""Eigenvalues of the warp-transpose-top transition operator.

Every irreducible ``V^mu`` of ``G wr S_n`` is indexed by a Young G-diagram ``mu``.
On the Gelfand-Tsetlin vector of a standard tableau ``T`` the operator acts by
``(c(b_T(n)) + [r_T(n) trivial]) / (n * d_{r_T(n)})``, where ``b_T(n)`` is the box
holding ``n`` and ``r_T(n)`` the irrep labelling its component. Tableaux with ``n``
in the same removable corner share the eigenvalue, so one :class:`SpectrumAtom` per
``(mu, corner)`` pair carries the whole block.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

from .diagrams import (
    Corner,
    YoungGDiagram,
    count_syt_g,
    enumerate_young_g_diagrams,
    removable_corners,
)
from .errors import InvalidCornerError
from .groups import GroupSpec


@dataclass(frozen=True)
class SpectrumAtom:
    value: Fraction
    multiplicity: int
    source_diagram: YoungGDiagram
    source_corner: Corner


@dataclass(frozen=True)
class SpectrumTable:
    atoms: tuple[SpectrumAtom, ...]
    n: int
    group: GroupSpec

    @property
    def total_multiplicity(self):
        return sum(a.multiplicity for a in self.atoms)

    def merged(self):
        """``{value: total multiplicity}`` with colliding atoms combined."""
        out: dict[Fraction, int] = {}
        for a in self.atoms:
            out[a.value] = out.get(a.value, 0) + a.multiplicity
        return dict(sorted(out.items(), reverse=True))

    def eigenvalues(self):
        """Flat float array of all eigenvalues with multiplicity (small cases only)."""
        import numpy as np

        return np.repeat(
            np.array([float(a.value) for a in self.atoms]),
            [a.multiplicity for a in self.atoms],
        )


def _check_corner(mu, c):
    if not 0 <= c.component < len(mu.shapes):
        raise InvalidCornerError(f"component {c.component} out of range for {mu}")
    shape = mu.shapes[c.component]
    if (c.row, c.col, c.content) not in removable_corners(shape):
        raise InvalidCornerError(f"({c.row},{c.col}) is not a removable corner of {shape!r}")


def eigenvalue_at_corner(mu: YoungGDiagram, c: Corner, n: int, g: GroupSpec) -> Fraction:
    _check_corner(mu, c)
    irrep = g.irreps[c.component]
    return Fraction(c.content + int(irrep.is_trivial), n * irrep.dim)


def corner_multiplicity(mu: YoungGDiagram, c: Corner, n: int | None = None) -> int:
    """Number of standard G-tableaux of shape ``mu`` with ``n`` in corner ``c``."""
    _check_corner(mu, c)
    return count_syt_g(mu.remove(c))


def dim_v_mu(mu: YoungGDiagram, g: GroupSpec) -> int:
    out = count_syt_g(mu)
    for shape, d in zip(mu.shapes, g.irrep_dims):
        out *= d**shape.size
    return out


def _dim_v_t(mu, g):
    return math.prod(d**shape.size for shape, d in zip(mu.shapes, g.irrep_dims))


def trivial_diagram(n, g):
    shapes = [()] * len(g.irreps)
    shapes[g.trivial_index] = (n,)
    return YoungGDiagram(tuple(shapes))


def build_full_spectrum(n: int, g: GroupSpec) -> SpectrumTable:
    if n < 1:
        raise ValueError("n must be >= 1")
    atoms = []
    for mu in enumerate_young_g_diagrams(n, len(g.irreps)):
        weight = _dim_v_t(mu, g) * dim_v_mu(mu, g)
        for c in mu.corners():
            atoms.append(
                SpectrumAtom(
                    eigenvalue_at_corner(mu, c, n, g),
                    corner_multiplicity(mu, c) * weight,
                    mu,
                    c,
                )
            )
    return SpectrumTable(tuple(atoms), n, g)


def spectral_trace(table: SpectrumTable, k: int) -> Fraction:
    """``sum(mult * value**k)``, i.e. the trace of the k-th power of the operator."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return sum((a.multiplicity * a.value**k for a in table.atoms), Fraction(0))


def spectral_l2_sq(table: SpectrumTable, k: int) -> Fraction:
    """Squared l2 distance to uniform after ``k`` steps, via Plancherel."""
    if k < 0:
        raise ValueError("k must be >= 0")
    top = trivial_diagram(table.n, table.group)
    return sum(
        (a.multiplicity * a.value ** (2 * k) for a in table.atoms if a.source_diagram != top),
        Fraction(0),
    )


def _format_mu(mu):
    return "|".join("(" + " ".join(map(str, s)) + ")" for s in mu.shapes)


def sorted_atoms(table: SpectrumTable):
    """Atoms by descending value, then descending multiplicity, ties in enumeration order."""
    return sorted(table.atoms, key=lambda a: (-a.value, -a.multiplicity))


def spectrum_rows(table: SpectrumTable):
    for a in sorted_atoms(table):
        c = a.source_corner
        yield (
            f"{a.value.numerator}/{a.value.denominator}",
            str(a.multiplicity),
            _format_mu(a.source_diagram),
            f"{c.component}:{c.row}:{c.col}",
        )


def spectrum_csv(table: SpectrumTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["value", "multiplicity", "mu", "corner"])
    w.writerows(spectrum_rows(table))
    return buf.getvalue()
