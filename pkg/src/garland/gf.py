"""Arithmetic in GF(p^k) for small prime powers.

Elements are dense coefficient vectors over Z_p (low-to-high degree) modulo
a fixed monic irreducible polynomial.  The modulus is pinned to the
lexicographically smallest monic irreducible of degree k, coefficients
compared low-to-high, so a field is reproducible from (p, k) alone:

    GF(2)  -> x
    GF(4)  -> x^2 + x + 1
    GF(9)  -> x^2 + 1

Fields here are tiny (the intended range is q <= 49), so FieldSpec
precomputes full addition/multiplication/inverse tables indexed by the
element's code: the integer whose base-p digits, least significant first,
are the coefficients.  Codes double as the canonical enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import DivisionByZero, InvalidDegree, NonPrimeCharacteristic


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- polynomial helpers over Z_p (dense lists, low-to-high, trimmed) --------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_rem(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo monic m."""
    r = list(a)
    dm = len(m) - 1
    while len(r) - 1 >= dm and r:
        c = r[-1]
        shift = len(r) - 1 - dm
        if c:
            for j, mj in enumerate(m):
                r[shift + j] = (r[shift + j] - c * mj) % p
        r.pop()
    return _trim(r)


def _is_irreducible(m: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(m)//2."""
    deg = len(m) - 1
    if m[0] == 0:  # divisible by x
        return deg == 1
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            div = list(low) + [1]
            if not _poly_rem(m, div, p):
                return False
    return True


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p^k): coefficient vector plus its field."""

    coeffs: tuple[int, ...]
    spec: "FieldSpec"

    def __repr__(self) -> str:
        return f"FieldElement({self.coeffs}, GF({self.spec.q}))"


class FieldSpec:
    """GF(p^k) with the pinned canonical modulus and full operation tables."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        mod = list(self.modulus)
        coeffs = [self._decode(c) for c in range(q)]
        self.add_table = [
            [self._encode(tuple((x + y) % p for x, y in zip(a, b))) for b in coeffs]
            for a in coeffs
        ]
        self.neg_table = [self._encode(tuple((-x) % p for x in a)) for a in coeffs]
        self.mul_table = []
        for a in coeffs:
            row = []
            for b in coeffs:
                prod_ = _poly_rem(_poly_mul(_trim(list(a)), _trim(list(b)), p), mod, p)
                prod_ += [0] * (k - len(prod_))
                row.append(self._encode(tuple(prod_)))
            self.mul_table.append(row)
        self.inv_table = [0] * q
        for a in range(1, q):
            self.inv_table[a] = self.mul_table[a].index(1)

    def _decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def _encode(self, coeffs: tuple[int, ...]) -> int:
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c
        return code

    def element(self, code: int) -> FieldElement:
        return FieldElement(self._decode(code), self)

    def code(self, a: FieldElement) -> int:
        return self._encode(a.coeffs)

    @property
    def zero(self) -> FieldElement:
        return self.element(0)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={self.modulus})"


def make_field(p: int, k: int) -> FieldSpec:
    """Construct GF(p^k) with the canonical modulus.

    The modulus is the lexicographically smallest monic irreducible of
    degree k over Z_p, coefficient tuples compared low-to-high, found by
    exhaustive trial division.
    """
    if not _is_prime(p):
        raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
    if k < 1:
        raise InvalidDegree(f"extension degree must be >= 1, got {k}")
    for low in product(range(p), repeat=k):
        candidate = list(low) + [1]
        if _is_irreducible(candidate, p):
            return FieldSpec(p, k, tuple(candidate))
    raise AssertionError("unreachable: irreducibles of every degree exist")


def field_for_order(q: int) -> FieldSpec:
    """GF(q) for a prime power q, splitting q into p^k automatically."""
    if q < 2:
        raise NonPrimeCharacteristic(f"field order must be >= 2, got {q}")
    p = q
    for cand in range(2, q + 1):
        if cand * cand > q:
            break
        if q % cand == 0:
            p = cand
            break
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return make_field(p, k)


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    spec = a.spec
    return spec.element(spec.add_table[spec.code(a)][spec.code(b)])


def field_neg(a: FieldElement) -> FieldElement:
    spec = a.spec
    return spec.element(spec.neg_table[spec.code(a)])


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    spec = a.spec
    return spec.element(spec.mul_table[spec.code(a)][spec.code(b)])


def field_inv(a: FieldElement) -> FieldElement:
    spec = a.spec
    code = spec.code(a)
    if code == 0:
        raise DivisionByZero("zero has no multiplicative inverse")
    return spec.element(spec.inv_table[code])


def enumerate_field(spec: FieldSpec) -> list[FieldElement]:
    """All elements in lexicographic coefficient order (low-to-high), zero first."""
    return [spec.element(c) for c in range(spec.q)]
