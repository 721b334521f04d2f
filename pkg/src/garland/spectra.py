"""Certified spectral data for exact rational operators.

The minimal polynomial is guessed fast and then proved:

  1. Scale the operator to an integer matrix B = L*A (L = lcm of entry
     denominators); the minimal polynomial of B is monic with integer
     coefficients and pulls back to A through x -> L*x.
  2. Over several word-size primes p, run Krylov sequences v, Bv, B^2 v,
     ... mod p for deterministic seed vectors and take the lcm of the
     per-seed annihilators.  Each lcm divides the minimal polynomial of
     B mod p, so its degree is a LOWER bound on deg min_B.
  3. Reconstruct the integer coefficients by balanced CRT across primes
     whose lcm degree is maximal; stop once one more prime leaves the
     reconstruction unchanged.
  4. CERTIFY the candidate by exact evaluation: p(A) e_j = 0 on basis
     vectors.  A certified annihilator whose degree matches the Krylov
     lower bound from step 2 IS the minimal polynomial, so a wrong
     reconstruction can never be accepted, only retried.  If retries
     stall, fall back to exact rational annihilators of all n basis
     vectors, whose lcm is the minimal polynomial by definition.

Certification is exact by one of two equivalent routes:
  * direct big-integer Horner evaluation per basis vector, or
  * multi-modular: with integer coefficients c_k for the cleared
    polynomial q(x) = M * L^d * p(x/L), every entry of q(B) is bounded
    by H = sum_k |c_k| * ||B||_inf^k; verifying q(B) = 0 modulo primes
    whose product exceeds 2H forces q(B) = 0 over Z.  The modular
    passes run on scipy int64 CSR matmuls with primes capped so row
    accumulations cannot overflow.

Callers whose operator commutes with a symmetry group that is
transitive on basis vectors up to sign may pass witness columns: one
basis index per orbit.  p(A) commutes with the group action, so
annihilating the witnesses annihilates every basis vector; the caller
owns that transitivity claim.

Seed vectors are a documented fixed pseudo-random stream: entries of
seed vector `index` are random.Random(f"{seed}:{index}").randrange(-3, 4),
resampled while all-zero.  The certified result is the unique minimal
polynomial, so --seed never changes reported values.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import isqrt, lcm
from random import Random

import numpy as np
from scipy.sparse import csr_matrix

from . import exactla
from .complexes import Complex
from .errors import (
    CertificationFailed,
    NoNonzeroRoot,
    NotSquare,
    NotSquarefree,
)
from .laplace import LinearOperatorHandle, assemble_matrix, coboundary_entries
from .polyq import (
    RatPolynomial,
    RootInterval,
    RootIsolation,
    is_squarefree,
    isolate_real_roots,
)
from .rationals import QQ, QQ0, QQ1, qstr

EXACT_ROUTE_OPS = 5_000_000
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


# -- integer scaling ----------------------------------------------------------


def _integer_scaled(op: LinearOperatorHandle):
    """CSR arrays of B = L * A with exact integer data, plus L."""
    n = op.nrows
    L = 1
    for v in op.entries.values():
        L = lcm(L, int(v.denominator))
    rows: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (r, c), v in op.entries.items():
        scaled = v * L
        rows[r].append((c, int(scaled.numerator)))
    indptr = [0]
    indices: list[int] = []
    data: list[int] = []
    for row in rows:
        row.sort()
        for c, x in row:
            indices.append(c)
            data.append(x)
        indptr.append(len(indices))
    return indptr, indices, data, L


def _matvec_int(n, indptr, indices, data, v):
    out = [0] * n
    for r in range(n):
        acc = 0
        for k in range(indptr[r], indptr[r + 1]):
            x = v[indices[k]]
            if x:
                acc += data[k] * x
        out[r] = acc
    return out


def _seed_values(n: int, index: int, seed: int) -> list[int]:
    rng = Random(f"{seed}:{index}")
    while True:
        v = [rng.randrange(-3, 4) for _ in range(n)]
        if any(v):
            return v


def _annihilator_of_vector(n, indptr, indices, data, L, v0) -> RatPolynomial:
    """Monic annihilator of v0 under A = B/L via first Krylov dependency."""
    basis: list[tuple[int, list, list]] = []  # (pivot, reduced vec, combination)
    w_int = list(v0)
    k = 0
    while True:
        r = [QQ(x) for x in w_int]
        combo = [QQ0] * k + [QQ1]
        # basis vectors were fully reduced at insertion, so insertion order
        # eliminates each pivot exactly once
        for pivot, vec, vcombo in basis:
            c = r[pivot]
            if c:
                for j in range(n):
                    if vec[j]:
                        r[j] -= c * vec[j]
                for j, x in enumerate(vcombo):
                    combo[j] -= c * x
        pivot = next((j for j in range(n) if r[j]), None)
        if pivot is None:
            # sum_j combo[j] B^j v = 0; substitute B = L*A and renormalize
            Lq = QQ(L)
            coeffs = tuple(combo[j] * Lq ** (j - k) for j in range(k + 1))
            return RatPolynomial(coeffs)
        inv = QQ1 / r[pivot]
        vec = [x * inv if x else QQ0 for x in r]
        vcombo = [x * inv for x in combo]
        basis.append((pivot, vec, vcombo))
        w_int = _matvec_int(n, indptr, indices, data, w_int)
        k += 1


# -- modular Krylov -------------------------------------------------------------


def _poly_divmod_mod_p(a: list[int], b: list[int], p: int):
    """Quotient and remainder of dense low-to-high coefficient lists mod p."""
    r = [x % p for x in a]
    db = len(b) - 1
    inv = pow(b[db], p - 2, p)
    q = [0] * max(1, len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        f = r[k + db] * inv % p
        if f:
            q[k] = f
            for j in range(db + 1):
                r[k + j] = (r[k + j] - f * b[j]) % p
    while len(r) > 1 and r[-1] == 0:
        r.pop()
    return q, r


def _poly_gcd_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    b = [x % p for x in b]
    while len(b) > 1 or b[0]:
        _, r = _poly_divmod_mod_p(a, b, p)
        a, b = b, r
    inv = pow(a[-1], p - 2, p)
    return [x * inv % p for x in a]


def _poly_mul_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_lcm_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    g = _poly_gcd_mod_p(a, b, p)
    q, _ = _poly_divmod_mod_p(a, g, p)
    out = _poly_mul_mod_p(q, b, p)
    inv = pow(out[-1], p - 2, p)
    return [x * inv % p for x in out]


def _krylov_annihilator_mod_p(n, bp, p, v0) -> list[int]:
    """Monic annihilator mod p of v0 under B, low-to-high coefficients.

    Same elimination as the exact version, vectorized: stored vectors
    are pivot-normalized and were fully reduced at insertion, so one
    insertion-order pass reduces completely.
    """
    basis: list[tuple[int, np.ndarray]] = []
    combos: list[list[int]] = []
    raw = np.asarray([x % p for x in v0], dtype=np.int64)
    k = 0
    while True:
        # reduce a copy; `raw` must stay B^k v0 for the combos to mean
        # coefficients in the powers of B
        w = raw.copy()
        combo = [0] * k + [1]
        for (pivot, vec), vcombo in zip(basis, combos):
            f = int(w[pivot])
            if f:
                w = (w - f * vec) % p
                for j, x in enumerate(vcombo):
                    combo[j] = (combo[j] - f * x) % p
        nz = np.nonzero(w)[0]
        if len(nz) == 0:
            return combo
        pivot = int(nz[0])
        inv = pow(int(w[pivot]), p - 2, p)
        basis.append((pivot, (w * inv) % p))
        combos.append([x * inv % p for x in combo])
        raw = (bp @ raw) % p
        k += 1


def _minpoly_mod_p(n, indptr_np, indices_np, data, p, seed, max_seeds) -> list[int]:
    """lcm of seed-vector annihilators of B mod p; a divisor of min_{B mod p}."""
    dmod = np.asarray([x % p for x in data], dtype=np.int64)
    bp = csr_matrix((dmod, indices_np, indptr_np), shape=(n, n))
    acc = [1]
    for index in range(max_seeds):
        ann = _krylov_annihilator_mod_p(n, bp, p, _seed_values(n, index, seed))
        new = _poly_lcm_mod_p(acc, ann, p)
        if index > 0 and new == acc:
            break
        acc = new
        if len(acc) - 1 >= n:
            break
    return acc


def _balanced_crt(residues: list[int], primes: list[int]) -> int:
    """The representative in (-M/2, M/2] of the CRT class, M = prod(primes)."""
    m = 1
    for p in primes:
        m *= p
    x = 0
    for r, p in zip(residues, primes):
        mp = m // p
        x = (x + r * mp * pow(mp, p - 2, p)) % m
    return x if 2 * x <= m else x - m


# -- certification ------------------------------------------------------------


def _cleared_coefficients(p: RatPolynomial, L: int) -> list[int]:
    """Integer coefficients of M * L^d * p(x/L), low-to-high."""
    d = p.degree
    M = 1
    for c in p.coeffs:
        M = lcm(M, int(c.denominator))
    out = []
    for k, c in enumerate(p.coeffs):
        v = c * M * QQ(L) ** (d - k)
        assert v.denominator == 1
        out.append(int(v.numerator))
    return out


def _is_prime_u64(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_stream(max_nnz_row: int):
    """Descending primes small enough that a mod-p row accumulation fits int64."""
    cap = min(isqrt((1 << 62) // max(1, max_nnz_row)), (1 << 30) - 1)
    p = cap if cap % 2 else cap - 1
    while p > 2:
        if _is_prime_u64(p):
            yield p
        p -= 2


def _certify_exact(n, indptr, indices, data, coeffs, columns) -> bool:
    for j in columns:
        u = [0] * n
        u[j] = coeffs[-1]
        for k in range(len(coeffs) - 2, -1, -1):
            u = _matvec_int(n, indptr, indices, data, u)
            u[j] += coeffs[k]
        if any(u):
            return False
    return True


def _certify_modular(n, indptr, indices, data, coeffs, columns) -> bool:
    max_nnz = max((indptr[r + 1] - indptr[r] for r in range(n)), default=0)
    binf = max(
        (sum(abs(data[k]) for k in range(indptr[r], indptr[r + 1])) for r in range(n)),
        default=0,
    )
    H = sum(abs(c) * binf**k for k, c in enumerate(coeffs))
    primes = []
    prod = 1
    for p in _prime_stream(max_nnz):
        primes.append(p)
        prod *= p
        if prod > 2 * H:
            break
    indptr_np = np.asarray(indptr, dtype=np.int64)
    indices_np = np.asarray(indices, dtype=np.int64)
    cols_np = np.asarray(columns, dtype=np.int64)
    block = max(1, min(len(cols_np), 4_000_000 // max(1, n)))
    for p in primes:
        dmod = np.asarray([x % p for x in data], dtype=np.int64)
        bp = csr_matrix((dmod, indices_np, indptr_np), shape=(n, n))
        cmod = [c % p for c in coeffs]
        for c0 in range(0, len(cols_np), block):
            cols = cols_np[c0:c0 + block]
            pos = np.arange(len(cols))
            s = np.zeros((n, len(cols)), dtype=np.int64)
            s[cols, pos] = cmod[-1]
            # keep entries in [0, p) entering each matvec so row sums
            # stay below max_nnz * (p-1)^2 < 2**62
            for k in range(len(cmod) - 2, -1, -1):
                s = bp @ s
                s[cols, pos] += cmod[k]
                s %= p
            if np.any(s):
                return False
    return True


def certify_annihilates(n, indptr, indices, data, L, p: RatPolynomial,
                        route: str | None = None, columns=None) -> bool:
    """Exact check that p(A) kills the given basis vectors (A = B/L).

    `columns` defaults to all of them; a caller passing fewer must know
    that a symmetry of A maps those onto the rest, see the module
    docstring.
    """
    if p.is_zero or not p.is_monic:
        return False
    if columns is None:
        columns = range(n)
    coeffs = _cleared_coefficients(p, L)
    if route is None:
        est = len(columns) * (p.degree + 1) * max(1, len(data))
        route = "exact" if est <= EXACT_ROUTE_OPS else "modular"
    if route == "exact":
        return _certify_exact(n, indptr, indices, data, coeffs, columns)
    return _certify_modular(n, indptr, indices, data, coeffs, columns)


# -- minimal polynomial --------------------------------------------------------


def minimal_polynomial(op: LinearOperatorHandle, seed: int = 0,
                       route: str | None = None,
                       witness_columns=None) -> RatPolynomial:
    """Certified minimal polynomial of a square exact-rational operator.

    `witness_columns` restricts the certification to those basis
    vectors; pass it only when a symmetry of the operator carries them
    onto all the others (module docstring).  Never affects the value,
    which is the unique minimal polynomial.
    """
    if not op.is_square:
        raise NotSquare(f"operator is {op.nrows}x{op.ncols}")
    n = op.dim
    if n == 0:
        return RatPolynomial((QQ1,))
    indptr, indices, data, L = _integer_scaled(op)
    indptr_np = np.asarray(indptr, dtype=np.int64)
    indices_np = np.asarray(indices, dtype=np.int64)
    max_nnz = max((indptr[r + 1] - indptr[r] for r in range(n)), default=0)

    def certified(cand: RatPolynomial) -> bool:
        return certify_annihilates(n, indptr, indices, data, L, cand,
                                   route, witness_columns)

    prime_iter = _prime_stream(max_nnz)
    for max_seeds in (5, 10, 20):
        best: dict[int, list[int]] = {}
        best_deg = -1
        prev: list[int] | None = None
        coeffs: list[int] | None = None
        stable = False
        for _ in range(40):
            p = next(prime_iter)
            mp = _minpoly_mod_p(n, indptr_np, indices_np, data, p, seed, max_seeds)
            deg = len(mp) - 1
            if deg > best_deg:
                best, best_deg, prev = {}, deg, None
            if deg == best_deg:
                best[p] = mp
            if len(best) < 2:
                continue
            primes = sorted(best)
            coeffs = [
                _balanced_crt([best[q][k] for q in primes], primes)
                for k in range(best_deg + 1)
            ]
            if coeffs == prev:
                stable = True
                break
            prev = coeffs
        if stable:
            # the lcm degree mod p never exceeds deg min_B, so a
            # certified annihilator of that degree is min_B itself
            cand_b = RatPolynomial(tuple(QQ(c) for c in coeffs))
            cand = cand_b.scale_roots(QQ(1, L))
            if certified(cand):
                return cand
        # unlucky seeds or primes: deepen the seed stream and move to
        # fresh primes
    # exact fallback: the lcm over all basis vectors is the minimal
    # polynomial by definition
    current = RatPolynomial((QQ1,))
    for j in range(n):
        e = [0] * n
        e[j] = 1
        current = current.lcm(_annihilator_of_vector(n, indptr, indices, data, L, e))
    if certified(current):
        return current
    raise CertificationFailed(
        "basis-vector annihilation failed for the assembled candidate"
    )


def squarefree_certify(p: RatPolynomial) -> None:
    if not is_squarefree(p):
        raise NotSquarefree(f"gcd(p, p') is not constant for {p!r}")


def is_eigenvalue(p: RatPolynomial, c) -> bool:
    return p(QQ(c)) == 0


def extract_extremes(iso: RootIsolation) -> tuple[RootInterval, RootInterval]:
    """Smallest and largest nonzero roots (certified intervals or exact)."""
    nonzero = [r for r in iso.roots if not r.is_zero]
    if not nonzero:
        raise NoNonzeroRoot("spectrum is {0}")
    return nonzero[0], nonzero[-1]


# -- reduced cohomology ----------------------------------------------------------


def _coboundary_int_rows(cx: Complex, i: int) -> list[list[int]]:
    nrows = cx.num_simplices(i + 1)
    ncols = cx.num_simplices(i)
    rows = [[0] * ncols for _ in range(nrows)]
    for (r, c), v in coboundary_entries(cx, i).items():
        rows[r][c] = int(v)
    return rows


def reduced_cohomology_ranks(cx: Complex) -> list[int]:
    """Exact ranks of reduced cohomology in degrees 0..n (augmented at -1)."""
    n = cx.dim
    rank_d = [exactla.rank(_coboundary_int_rows(cx, i)) for i in range(n)]
    dims = [cx.num_simplices(i) for i in range(n + 1)]
    out = []
    for i in range(n + 1):
        hi = rank_d[i] if i < n else 0
        lo = 1 if i == 0 else rank_d[i - 1]  # augmentation has rank 1
        out.append(dims[i] - hi - lo)
    return out


def reduced_cohomology_vanishes(cx: Complex, i: int, prime: int = 1_000_003):
    """One-sided mod-p certificate: True certifies rank 0, None is inconclusive.

    Mod-p ranks never exceed rational ranks, so
    dims[i] - rank_p(d_i) - rank_p(d_{i-1}) >= dim H-tilde^i >= 0.
    """
    n = cx.dim
    hi = exactla.rank_mod_p(_coboundary_int_rows(cx, i), prime) if i < n else 0
    if i == 0:
        lo = 1
    else:
        lo = exactla.rank_mod_p(_coboundary_int_rows(cx, i - 1), prime)
    bound = cx.num_simplices(i) - hi - lo
    return True if bound == 0 else None


# -- report -------------------------------------------------------------------


@dataclass
class SpectralReport:
    instance: dict
    degree: int
    dim: int
    minpoly: RatPolynomial
    isolation: RootIsolation
    m: RootInterval
    M: RootInterval
    integer_eigenvalues: dict[int, bool]
    timings: dict[str, float]
    den_bound: int = 0  # rational-root denominator cap used at isolation

    @staticmethod
    def _extreme_json(r: RootInterval) -> dict:
        out = {"lo": qstr(r.lo), "hi": qstr(r.hi)}
        if r.value is not None:
            out["exact"] = qstr(r.value)
        return out

    def to_json_dict(self) -> dict:
        return {
            "instance": self.instance,
            "degree": self.degree,
            "dim": self.dim,
            "minpoly": self.minpoly.serialize(),
            "den_bound": self.den_bound,
            "roots": [r.to_json_dict() for r in self.isolation.roots],
            "m": self._extreme_json(self.m),
            "M": self._extreme_json(self.M),
            "integer_eigenvalues": {
                str(k): v for k, v in sorted(self.integer_eigenvalues.items())
            },
            "timings": self.timings,
        }


def compute_spectral_report(cx: Complex, i: int, width="1/1000000", seed: int = 0,
                            instance: dict | None = None,
                            integer_candidates=None,
                            witness_columns=None) -> SpectralReport:
    """Full certified pipeline for Delta on C^i of cx."""
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    op = assemble_matrix(cx, i)
    timings["assemble_s"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    poly = minimal_polynomial(op, seed=seed, witness_columns=witness_columns)
    timings["minpoly_s"] = time.perf_counter() - t0

    squarefree_certify(poly)
    # rational eigenvalues of A = B/L are integer eigenvalues of B over
    # L, because the minimal polynomial of an integer matrix is monic
    # with integer coefficients
    den_bound = 1
    for v in op.entries.values():
        den_bound = lcm(den_bound, int(v.denominator))
    t0 = time.perf_counter()
    iso = isolate_real_roots(poly, width, den_bound=den_bound)
    timings["isolate_s"] = time.perf_counter() - t0
    if len(iso.roots) != poly.degree:
        raise CertificationFailed(
            "real-root count does not match degree for a symmetric operator"
        )
    m, M = extract_extremes(iso)
    if integer_candidates is None:
        integer_candidates = range(cx.dim + 2)
    table = {int(k): is_eigenvalue(poly, k) for k in integer_candidates}
    return SpectralReport(
        instance=instance or {},
        degree=i,
        dim=op.dim,
        minpoly=poly,
        isolation=iso,
        m=m,
        M=M,
        integer_eigenvalues=table,
        timings=timings,
        den_bound=den_bound,
    )
