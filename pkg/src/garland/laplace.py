"""Weighted cochain calculus on pure complexes.

Cochains of degree i are alternating functions on oriented i-simplices,
stored as one rational per canonical simplex.  The pairing is

    (f, g) = sum_s w(s) f(s) g(s)

over canonical i-simplices, the coboundary is the usual alternating sum

    (df)(v_0..v_{i+1}) = sum_j (-1)^j f(..v_j-hat..),

and the adjoint of d with respect to the pairing is evaluated directly
from its closed form

    (delta g)(s) = sum_{v : [v,s] in X} w([v,s])/w(s) * g([v,s]),

with v prepended to s.  That the two are actually adjoint, (df, g) =
(f, delta g), is a test invariant, not an assumption of the code.  The
Laplacian is delta d acting on degrees 0..n-1; degree n is out of
domain and rejected.

Localization: rho_v restricts to the star of v, rho_alpha sums rho_v
over the vertices of one type, tau_v contracts a degree-i cochain onto
a degree-(i-1) cochain on Lk(v) via (tau_v f)(sigma) = f([v, sigma]).
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .complexes import Complex, orientation_sign
from .errors import (
    DegreeMismatch,
    DegreeOutOfRange,
    SimplexNotFound,
    UnknownType,
    UnknownVertex,
)
from .rationals import QQ, QQ0, qstr


@dataclass
class Cochain:
    complex: Complex
    degree: int
    values: list

    def __post_init__(self):
        if not 0 <= self.degree <= self.complex.dim:
            raise DegreeOutOfRange(
                f"degree {self.degree} outside 0..{self.complex.dim}"
            )
        if len(self.values) != self.complex.num_simplices(self.degree):
            raise DegreeMismatch(
                f"expected {self.complex.num_simplices(self.degree)} values, "
                f"got {len(self.values)}"
            )
        self.values = [QQ(v) for v in self.values]

    @classmethod
    def zeros(cls, c: Complex, degree: int) -> "Cochain":
        return cls(c, degree, [QQ0] * c.num_simplices(degree))

    @classmethod
    def basis(cls, c: Complex, degree: int, k: int) -> "Cochain":
        values = [QQ0] * c.num_simplices(degree)
        values[k] = QQ(1)
        return cls(c, degree, values)

    @classmethod
    def from_simplex_values(cls, c: Complex, degree: int, mapping) -> "Cochain":
        idx = c.index[degree]
        values = [QQ0] * c.num_simplices(degree)
        for s, v in mapping.items():
            values[idx[tuple(s)]] = QQ(v)
        return cls(c, degree, values)

    def evaluate(self, oriented) -> QQ:
        canonical, sign = orientation_sign(oriented)
        idx = self.complex.index[self.degree]
        if canonical not in idx:
            raise SimplexNotFound(f"{canonical} is not a simplex of this complex")
        return QQ(sign) * self.values[idx[canonical]]

    def __add__(self, other: "Cochain") -> "Cochain":
        _check_compatible(self, other)
        return Cochain(
            self.complex, self.degree,
            [a + b for a, b in zip(self.values, other.values)],
        )

    def __sub__(self, other: "Cochain") -> "Cochain":
        _check_compatible(self, other)
        return Cochain(
            self.complex, self.degree,
            [a - b for a, b in zip(self.values, other.values)],
        )

    def scale(self, c) -> "Cochain":
        c = QQ(c)
        return Cochain(self.complex, self.degree, [c * v for v in self.values])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain)
            and self.complex is other.complex
            and self.degree == other.degree
            and self.values == other.values
        )

    def __repr__(self) -> str:
        nz = sum(1 for v in self.values if v)
        return f"Cochain(degree={self.degree}, dim={len(self.values)}, nonzeros={nz})"


def _check_compatible(f: Cochain, g: Cochain) -> None:
    if f.complex is not g.complex:
        raise DegreeMismatch("cochains live on different complexes")
    if f.degree != g.degree:
        raise DegreeMismatch(f"degrees differ: {f.degree} vs {g.degree}")


def inner_product(f: Cochain, g: Cochain):
    """(f, g) = sum over canonical i-simplices of w(s) f(s) g(s)."""
    _check_compatible(f, g)
    ws = f.complex.weights[f.degree]
    return sum(
        (QQ(w) * a * b for w, a, b in zip(ws, f.values, g.values) if a and b),
        QQ0,
    )


def coboundary(f: Cochain) -> Cochain:
    c, i = f.complex, f.degree
    if i >= c.dim:
        raise DegreeOutOfRange(f"coboundary out of degree {i} on a {c.dim}-complex")
    idx = c.index[i]
    out = []
    for t in c.simplices[i + 1]:
        acc = QQ0
        sign = 1
        for j in range(i + 2):
            v = f.values[idx[t[:j] + t[j + 1 :]]]
            if v:
                acc += v if sign > 0 else -v
            sign = -sign
        out.append(acc)
    return Cochain(c, i + 1, out)


def adjoint_delta(g: Cochain) -> Cochain:
    c, i = g.complex, g.degree
    if i < 1:
        raise DegreeOutOfRange("adjoint_delta needs degree >= 1")
    out = [QQ0] * c.num_simplices(i - 1)
    idx = c.index[i - 1]
    wi = c.weights[i]
    wlow = c.weights[i - 1]
    for t, wt, gt in zip(c.simplices[i], wi, g.values):
        if not gt:
            continue
        sign = 1
        for j in range(i + 1):
            k = idx[t[:j] + t[j + 1 :]]
            # [v_j, t\v_j] differs from canonical t by j transpositions
            out[k] += QQ(sign * wt, wlow[k]) * gt
            sign = -sign
    return Cochain(c, i - 1, out)


def laplacian_apply(f: Cochain) -> Cochain:
    c, i = f.complex, f.degree
    if not 0 <= i <= c.dim - 1:
        raise DegreeOutOfRange(
            f"Laplacian acts on degrees 0..{c.dim - 1}, got {i}"
        )
    return adjoint_delta(coboundary(f))


# -- localization -------------------------------------------------------------


def rho_v(f: Cochain, v: int) -> Cochain:
    """Restriction to the star of v: values on simplices not containing v drop to 0."""
    c = f.complex
    if (v,) not in c.index[0]:
        raise UnknownVertex(f"vertex {v} not in complex")
    vals = [
        val if v in s else QQ0
        for s, val in zip(c.simplices[f.degree], f.values)
    ]
    return Cochain(c, f.degree, vals)


def rho_alpha(f: Cochain, types, alpha: int) -> Cochain:
    """Sum of rho_v over the vertices of type alpha.

    `types` maps every vertex id to its type.  On a simplex the result
    multiplies the value by the number of its vertices of type alpha
    (0 or 1 when types within a simplex are distinct, as in a building).
    """
    if alpha not in set(types.values()):
        raise UnknownType(f"no vertex has type {alpha}")
    c = f.complex
    vals = []
    for s, val in zip(c.simplices[f.degree], f.values):
        mult = sum(1 for v in s if types[v] == alpha)
        vals.append(QQ(mult) * val if mult else QQ0)
    return Cochain(c, f.degree, vals)


def tau_v(f: Cochain, v: int) -> Cochain:
    """Contraction onto the link: (tau_v f)(sigma) = f([v, sigma]).

    Returns a cochain of degree i-1 on Lk(v) (use f.complex.vertex_link(v)
    for the relabeling back to original vertex ids).
    """
    c, i = f.complex, f.degree
    if i < 1:
        raise DegreeOutOfRange("tau_v needs degree >= 1")
    if (v,) not in c.index[0]:
        raise UnknownVertex(f"vertex {v} not in complex")
    link, new_to_old = c.vertex_link(v)
    idx = c.index[i]
    out = []
    for sigma in link.simplices[i - 1]:
        glob = tuple(new_to_old[u] for u in sigma)
        pos = bisect_left(glob, v)
        merged = glob[:pos] + (v,) + glob[pos:]
        val = f.values[idx[merged]]
        out.append(val if pos % 2 == 0 else -val)
    return Cochain(link, i - 1, out)


# -- materialized operators ---------------------------------------------------


@dataclass
class LinearOperatorHandle:
    """A linear map between cochain spaces: matrix-free apply + exact entries.

    `entries` is the sparse matrix {(row, col): rational} over canonical
    simplex order; `apply` acts on a plain list of values.  The two views
    agreeing on basis vectors is a test invariant.
    """

    domain_degree: int
    codomain_degree: int
    nrows: int
    ncols: int
    apply: Callable[[list], list]
    entries: dict = field(repr=False)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def dim(self) -> int:
        return self.nrows


def laplacian_entries(c: Complex, i: int) -> dict:
    """Sparse entries of Delta = delta d on C^i: row/col over canonical order."""
    entries: dict = {}
    idx = c.index[i]
    wlow = c.weights[i]
    for t, wt in zip(c.simplices[i + 1], c.weights[i + 1]):
        faces = [idx[f] for f in combinations(t, i + 1)]
        # face k of t (drop the (i+1-k)-th vertex ... combinations yields
        # ascending faces; face dropping vertex j is at position i+1-j
        for j in range(i + 2):
            row = faces_index_drop(faces, i, j)
            sj = 1 if j % 2 == 0 else -1
            for k in range(i + 2):
                col = faces_index_drop(faces, i, k)
                sk = 1 if k % 2 == 0 else -1
                key = (row, col)
                val = entries.get(key, QQ0) + QQ(sj * sk * wt, wlow[row])
                if val:
                    entries[key] = val
                elif key in entries:
                    del entries[key]
    return entries


def faces_index_drop(faces: list[int], i: int, j: int) -> int:
    """Index of the face of t obtained by dropping vertex j.

    combinations(t, i+1) lists faces in lexicographic order, which is
    exactly dropping vertex i+1, i, ..., 0 in reverse: dropping vertex j
    gives the face at position i+1-j.
    """
    return faces[i + 1 - j]


def assemble_matrix(c: Complex, i: int) -> LinearOperatorHandle:
    """The Laplacian on C^i as an operator handle with exact sparse entries."""
    if not 0 <= i <= c.dim - 1:
        raise DegreeOutOfRange(f"Laplacian acts on degrees 0..{c.dim - 1}, got {i}")
    n = c.num_simplices(i)

    def apply(values: list) -> list:
        return laplacian_apply(Cochain(c, i, values)).values

    return LinearOperatorHandle(
        domain_degree=i,
        codomain_degree=i,
        nrows=n,
        ncols=n,
        apply=apply,
        entries=laplacian_entries(c, i),
    )


def coboundary_entries(c: Complex, i: int) -> dict:
    """Sparse +-1 entries of d: C^i -> C^{i+1} over canonical order."""
    if not 0 <= i <= c.dim - 1:
        raise DegreeOutOfRange(f"coboundary entries need 0 <= i < {c.dim}")
    idx = c.index[i]
    entries: dict = {}
    for row, t in enumerate(c.simplices[i + 1]):
        sign = 1
        for j in range(i + 2):
            entries[(row, idx[t[:j] + t[j + 1 :]])] = QQ(sign)
            sign = -sign
    return entries


def dump_matrix_text(handle: LinearOperatorHandle) -> str:
    """Stable text dump: header `nrows ncols degree`, then `row col num/den` lines."""
    lines = [f"{handle.nrows} {handle.ncols} {handle.domain_degree}"]
    for (r, col) in sorted(handle.entries):
        lines.append(f"{r} {col} {qstr(handle.entries[(r, col)])}")
    return "\n".join(lines) + "\n"
