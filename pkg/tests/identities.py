"""Exact-identity battery for the weighted cochain calculus.

Shared by the granular property tests and the acceptance gate.  Every
check is an exact rational equality; failures come back as strings so a
caller can assert on an empty list and still see every violation at once.
"""

import random

from garland.complexes import Complex, from_maximal_simplices
from garland.exactla import dense_from_entries, kernel_basis
from garland.laplace import (
    Cochain,
    adjoint_delta,
    assemble_matrix,
    coboundary,
    inner_product,
    laplacian_apply,
    rho_v,
    tau_v,
)
from garland.rationals import QQ, QQ0
from garland.spectra import minimal_polynomial
from garland.polyq import isolate_real_roots


def random_pure_complex(rng: random.Random) -> Complex:
    """A random pure complex of dimension <= 3 on at most 12 vertices."""
    n = rng.randint(1, 3)
    nv = rng.randint(n + 1, 12)
    pool = list(range(nv))
    count = rng.randint(1, 10)
    tops = set()
    for _ in range(count):
        tops.add(tuple(sorted(rng.sample(pool, n + 1))))
    return from_maximal_simplices(sorted(tops))


def rand_cochain(cx: Complex, degree: int, rng: random.Random) -> Cochain:
    vals = [
        QQ(rng.randrange(-6, 7), rng.choice((1, 1, 2, 3)))
        for _ in range(cx.num_simplices(degree))
    ]
    return Cochain(cx, degree, vals)


def universal_identity_failures(cx: Complex, rng: random.Random, tag: str = "") -> list[str]:
    """All identities that hold on every weighted pure complex.

    Covers: d after d vanishes, (df, g) = (f, delta g), the coface-weight
    identity, the vertex-restriction partition of unity, the two local
    pairing identities for tau_v, and the summation identity that ties
    (Delta f, f) to the star restrictions.
    """
    bad = []
    n = cx.dim
    if not cx.check_weight_identity():
        bad.append(f"{tag}: coface weight identity")
    for i in range(n + 1):
        f = rand_cochain(cx, i, rng)
        g = rand_cochain(cx, i, rng)

        if i <= n - 2:
            if coboundary(coboundary(f)).values != [QQ0] * cx.num_simplices(i + 2):
                bad.append(f"{tag}: d(d f) != 0 at degree {i}")
        if i <= n - 1:
            h = rand_cochain(cx, i + 1, rng)
            if inner_product(coboundary(f), h) != inner_product(f, adjoint_delta(h)):
                bad.append(f"{tag}: (df, h) != (f, delta h) at degree {i}")

        total = Cochain.zeros(cx, i)
        for v in cx.vertices:
            total = total + rho_v(f, v)
        if total != f.scale(QQ(i + 1)):
            bad.append(f"{tag}: sum of rho_v != (i+1) id at degree {i}")

        if i <= n - 1:
            lhs = QQ(i) * inner_product(laplacian_apply(f), f) \
                + QQ(n - i) * inner_product(f, f)
            rhs = QQ0
            for v in cx.vertices:
                rf = rho_v(f, v)
                rhs += inner_product(laplacian_apply(rf), rf)
            if lhs != rhs:
                bad.append(f"{tag}: star-sum identity at degree {i}")

        if i >= 1:
            for v in cx.vertices:
                tf, tg = tau_v(f, v), tau_v(g, v)
                if inner_product(tf, tg) != inner_product(rho_v(f, v), rho_v(g, v)):
                    bad.append(f"{tag}: link pairing of tau_v at degree {i}, v={v}")
                    break
        if 1 <= i <= n - 1:
            for v in cx.vertices:
                rf = rho_v(f, v)
                tf = tau_v(f, v)
                if inner_product(laplacian_apply(rf), rf) != inner_product(
                    laplacian_apply(tf), tf
                ):
                    bad.append(f"{tag}: local Laplacian transfer at degree {i}, v={v}")
                    break
    return bad


def _type_scaled(b, f: Cochain, alpha: int, scale) -> Cochain:
    vals = [
        QQ(scale) * val if b.types[s[0]] == alpha else val
        for s, val in zip(b.complex.simplices[0], f.values)
    ]
    return Cochain(b.complex, 0, vals)


def rational_eigencochains(b, max_per_eigenvalue: int = 2):
    """Exact (c, f) pairs with Delta f = c f, for each rational eigenvalue c."""
    op = assemble_matrix(b.complex, 0)
    iso = isolate_real_roots(minimal_polynomial(op))
    out = []
    for root in iso.roots:
        if not root.is_rational:
            continue
        c = QQ(root.value)
        rows = dense_from_entries(op.nrows, op.ncols, op.entries)
        for j in range(op.nrows):
            rows[j][j] -= c
        basis = kernel_basis(rows)
        vecs = basis[:max_per_eigenvalue]
        if len(basis) >= 2:
            vecs.append([a + QQ(3) * bb for a, bb in zip(basis[0], basis[1])])
        out.append((c, [Cochain(b.complex, 0, v) for v in vecs]))
    return out


def eigencochain_sum_failures(b, tag: str = "") -> list[str]:
    """Type-rescaling sum rule for exact vertex eigencochains.

    For Delta f = c f and f_alpha equal to f except scaled by R on the
    type-alpha vertices, the sum over types of (Delta f_alpha, f_alpha)
    equals [(l - c)(R - 1)^2 + c (R^2 + l)] (f, f), with l = dim.
    """
    bad = []
    ell = b.complex.dim
    for c, cochains in rational_eigencochains(b):
        for f in cochains:
            if laplacian_apply(f) != f.scale(c):
                bad.append(f"{tag}: kernel vector is not an eigencochain for c={c}")
                continue
            ff = inner_product(f, f)
            for R in (QQ(-1), QQ(0), QQ(1), QQ(2), (QQ(ell) - c) / QQ(ell)):
                total = QQ0
                for alpha in range(ell + 1):
                    fa = _type_scaled(b, f, alpha, R)
                    total += inner_product(laplacian_apply(fa), fa)
                expect = ((QQ(ell) - c) * (R - 1) ** 2 + c * (R * R + QQ(ell))) * ff
                if total != expect:
                    bad.append(f"{tag}: sum rule fails for c={c}, R={R}")
    return bad
