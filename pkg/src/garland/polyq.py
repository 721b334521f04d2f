"""Exact univariate polynomials over Q and certified real-root isolation.

Coefficient vectors are stored low-to-high, which is also the serialized
form: "c0/d0 c1/d1 ..." with every coefficient written as an explicit
fraction.  The zero polynomial serializes as "0/1" and reports degree -1.

Root isolation is Sturm-chain bisection with exact rational endpoints.
On top of the usual interval narrowing there is a certified rational-root
pass that needs no integer factorization: any rational root of a monic
p has denominator dividing D = lcm of p's coefficient denominators, and
two distinct rationals with denominators <= D differ by at least 1/D^2.
Once an isolating interval is narrower than 1/D^2 it contains at most one
such rational, and that rational (if present) is the interval's unique
minimal-denominator element, i.e. its Stern-Brocot "simplest" rational.
Testing p at that single point therefore decides rationality exactly:
p(s) = 0 certifies the root, p(s) != 0 certifies irrationality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from .errors import NotSquarefree
from .rationals import QQ, QQ0, QQ1, ceil_q, floor_q, parse_qstr, qstr


@dataclass(frozen=True)
class RatPolynomial:
    """Dense rational polynomial; coeffs low-to-high with no trailing zeros."""

    coeffs: tuple

    def __post_init__(self):
        cs = [QQ(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- basic structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, x):
        acc = QQ0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "RatPolynomial") -> "RatPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return RatPolynomial(tuple(out))

    def __neg__(self) -> "RatPolynomial":
        return RatPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "RatPolynomial") -> "RatPolynomial":
        return self + (-other)

    def __mul__(self, other: "RatPolynomial") -> "RatPolynomial":
        if self.is_zero or other.is_zero:
            return RatPolynomial(())
        out = [QQ0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return RatPolynomial(tuple(out))

    def scale(self, c) -> "RatPolynomial":
        c = QQ(c)
        return RatPolynomial(tuple(c * a for a in self.coeffs))

    def __divmod__(self, other: "RatPolynomial"):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return RatPolynomial(()), self
        quo = [QQ0] * (dq + 1)
        lead = other.coeffs[-1]
        for shift in range(dq, -1, -1):
            c = rem[shift + other.degree] / lead
            quo[shift] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[shift + j] = rem[shift + j] - c * b
        return RatPolynomial(tuple(quo)), RatPolynomial(tuple(rem))

    def __floordiv__(self, other: "RatPolynomial") -> "RatPolynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "RatPolynomial") -> "RatPolynomial":
        return divmod(self, other)[1]

    def monic(self) -> "RatPolynomial":
        if self.is_zero or self.is_monic:
            return self
        lead = self.coeffs[-1]
        return RatPolynomial(tuple(c / lead for c in self.coeffs))

    def derivative(self) -> "RatPolynomial":
        return RatPolynomial(tuple(QQ(i) * c for i, c in enumerate(self.coeffs) if i))

    def primitive(self) -> "RatPolynomial":
        """Positive rational multiple with coprime integer coefficients.

        Scaling is by a positive factor, so signs of values are
        preserved; remainder sequences are renormalized through this to
        keep coefficient sizes polynomial instead of doubling per step.
        """
        if self.is_zero:
            return self
        den = 1
        for c in self.coeffs:
            den = lcm(den, int(c.denominator))
        nums = [int(c * den) for c in self.coeffs]
        g = 0
        for x in nums:
            g = gcd(g, x)
        return RatPolynomial(tuple(QQ(x // g) for x in nums))

    def gcd(self, other: "RatPolynomial") -> "RatPolynomial":
        a, b = self, other
        while not b.is_zero:
            a, b = b, (a % b).primitive()
        return a.monic()

    def lcm(self, other: "RatPolynomial") -> "RatPolynomial":
        if self.is_zero or other.is_zero:
            return RatPolynomial(())
        g = self.gcd(other)
        return ((self * other) // g).monic()

    def divides(self, other: "RatPolynomial") -> bool:
        if self.is_zero:
            return other.is_zero
        return (other % self).is_zero

    def scale_roots(self, c) -> "RatPolynomial":
        """Monic polynomial whose roots are c times this one's (self monic, c != 0)."""
        c = QQ(c)
        d = self.degree
        return RatPolynomial(tuple(a * c ** (d - i) for i, a in enumerate(self.coeffs)))

    # -- serialization --------------------------------------------------------

    def serialize(self) -> str:
        if self.is_zero:
            return qstr(QQ0)
        return " ".join(qstr(c) for c in self.coeffs)

    @classmethod
    def parse(cls, text: str) -> "RatPolynomial":
        return cls(tuple(parse_qstr(tok) for tok in text.split()))

    @classmethod
    def from_roots(cls, roots) -> "RatPolynomial":
        p = cls((QQ1,))
        for r in roots:
            p = p * cls((-QQ(r), QQ1))
        return p

    def __repr__(self) -> str:
        return f"RatPolynomial({self.serialize()!r})"


def poly_product(factors) -> RatPolynomial:
    out = RatPolynomial((QQ1,))
    for f in factors:
        out = out * (f if isinstance(f, RatPolynomial) else RatPolynomial(tuple(f)))
    return out


def is_squarefree(p: RatPolynomial) -> bool:
    if p.degree <= 1:
        return not p.is_zero
    return p.gcd(p.derivative()).degree == 0


# -- Sturm machinery ----------------------------------------------------------


def sturm_chain(p: RatPolynomial) -> list[RatPolynomial]:
    # primitive renormalization is by positive factors, which keeps the
    # sign-variation counts intact and the coefficients integral
    chain = [p.primitive(), p.derivative().primitive()]
    while not chain[-1].is_zero:
        chain.append((-(chain[-2] % chain[-1])).primitive())
    chain.pop()
    return chain


def _variations(chain: list[RatPolynomial], x) -> int:
    signs = []
    for poly in chain:
        v = poly(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_halfopen(chain: list[RatPolynomial], a, b) -> int:
    """Number of distinct real roots in (a, b], from a squarefree Sturm chain."""
    return _variations(chain, QQ(a)) - _variations(chain, QQ(b))


def root_magnitude_bound(p: RatPolynomial) -> QQ:
    """Cauchy bound: every real root lies strictly inside (-B, B)."""
    lead = p.coeffs[-1]
    return QQ1 + max((abs(c / lead) for c in p.coeffs[:-1]), default=QQ0)


def simplest_between(a, b):
    """The unique minimal-denominator rational strictly inside (a, b)."""
    a, b = QQ(a), QQ(b)
    ia = floor_q(a)
    if QQ(ia) == a:
        # left endpoint is an integer; candidates are a + 1/m
        if b - a > 1:
            return QQ(ia + 1)
        m = floor_q(QQ1 / (b - a)) + 1
        return a + QQ(1, m)
    if QQ(ia + 1) < b:
        return QQ(ia + 1)
    frac_a = a - ia
    frac_b = b - ia
    return QQ(ia) + QQ1 / simplest_between(QQ1 / frac_b, QQ1 / frac_a)


@dataclass(frozen=True)
class RootInterval:
    """One isolated real root: exact rational value, or an open-ish (lo, hi]."""

    lo: QQ
    hi: QQ
    value: object = None  # exact rational when known

    @property
    def is_rational(self) -> bool:
        return self.value is not None

    @property
    def is_zero(self) -> bool:
        return self.value is not None and self.value == 0

    @property
    def width(self):
        return self.hi - self.lo

    def midpoint(self):
        if self.value is not None:
            return QQ(self.value)
        return (self.lo + self.hi) / 2

    def to_json_dict(self) -> dict:
        out = {"lo": qstr(self.lo), "hi": qstr(self.hi), "is_rational": self.is_rational,
               "is_zero": self.is_zero}
        if self.value is not None:
            out["value"] = qstr(self.value)
        return out


@dataclass
class RootIsolation:
    """All real roots of a squarefree polynomial, isolated and sorted."""

    poly: RatPolynomial
    roots: list[RootInterval]
    chain: list[RatPolynomial]

    @property
    def real_root_count(self) -> int:
        return len(self.roots)

    def count_in_halfopen(self, a, b) -> int:
        return count_roots_halfopen(self.chain, a, b)

    def refine(self, width) -> "RootIsolation":
        width = QQ(width)
        out = []
        for r in self.roots:
            if r.value is not None:
                out.append(r)
                continue
            lo, hi = r.lo, r.hi
            while hi - lo > width:
                mid = (lo + hi) / 2
                # mid cannot be a root: rationality was settled at isolation time
                if count_roots_halfopen(self.chain, lo, mid) == 1:
                    hi = mid
                else:
                    lo = mid
            out.append(RootInterval(lo, hi))
        return RootIsolation(self.poly, out, self.chain)


def isolate_real_roots(p: RatPolynomial, width="1/1000000",
                       den_bound: int | None = None) -> RootIsolation:
    """Isolate every real root of squarefree p into disjoint intervals.

    Intervals come out no wider than `width` and every rational root is
    detected exactly (see module docstring for the certificate).

    `den_bound` caps the denominator of any rational root of p.  The
    default, the lcm D of p's coefficient denominators, is always valid
    for monic p but can be enormous; a caller who knows p is the minimal
    polynomial of B/L for an integer matrix B may pass L, since monic
    integer polynomials have only integer rational roots.
    """
    if p.is_zero or not is_squarefree(p):
        raise NotSquarefree(f"root isolation requires a squarefree polynomial, got {p!r}")
    width = QQ(width)
    p = p.monic()

    exact: list[QQ] = []

    # Rational roots surface through deflate-and-restart: every bisection
    # point is zero-tested before it becomes an endpoint, and once an
    # interval is narrow enough the simplest-rational certificate settles
    # rationality, so no up-front root scan is needed.
    while True:
        restart = False
        if p.degree <= 0:
            intervals: list[tuple] = []
            chain = sturm_chain(p) if p.degree >= 0 else [p]
            break
        if den_bound is None:
            denom_bound = lcm(*(int(c.denominator) for c in p.coeffs))
        else:
            denom_bound = int(den_bound)
        target = min(width, QQ(1, 2 * denom_bound * denom_bound))
        chain = sturm_chain(p)
        bound = root_magnitude_bound(p)
        work = [(-bound, bound, count_roots_halfopen(chain, -bound, bound))]
        done: list[tuple] = []
        while work:
            lo, hi, count = work.pop()
            if count == 0:
                continue
            if count == 1:
                # endpoints are never roots (outer bounds are strict,
                # interior endpoints were zero-tested as midpoints), so
                # the lone simple root flips the sign of p and plain sign
                # bisection narrows the interval without the chain
                sign_lo = 1 if p(lo) > 0 else -1
                while hi - lo > target:
                    mid = (lo + hi) / 2
                    v = p(mid)
                    if v == 0:
                        exact.append(mid)
                        p = (p // RatPolynomial((-mid, QQ1))).monic()
                        restart = True
                        break
                    if (1 if v > 0 else -1) == sign_lo:
                        lo = mid
                    else:
                        hi = mid
                if restart:
                    break
                done.append((lo, hi))
                continue
            mid = (lo + hi) / 2
            if p(mid) == 0:
                # exact root hit mid-bisection: deflate and redo isolation
                exact.append(mid)
                p = (p // RatPolynomial((-mid, QQ1))).monic()
                restart = True
                break
            left = count_roots_halfopen(chain, lo, mid)
            work.append((lo, mid, left))
            work.append((mid, hi, count - left))
        if restart:
            continue
        intervals = []
        for lo, hi in done:
            if p(hi) == 0:
                exact.append(hi)
                continue
            s = simplest_between(lo, hi)
            if p(s) == 0:
                exact.append(s)
            else:
                intervals.append((lo, hi))
        break

    # shrink intervals until no previously deflated exact root sits inside,
    # so each interval isolates exactly one root of the ORIGINAL polynomial
    cleaned = []
    for lo, hi in intervals:
        while any(lo < v <= hi for v in exact):
            mid = (lo + hi) / 2
            if count_roots_halfopen(chain, lo, mid) == 1:
                hi = mid
            else:
                lo = mid
        cleaned.append((lo, hi))
    intervals = cleaned

    roots = [RootInterval(v, v, v) for v in exact]
    roots.extend(RootInterval(lo, hi) for lo, hi in intervals)
    roots.sort(key=lambda r: (r.lo, r.hi))
    original = poly_product([RatPolynomial((-v, QQ1)) for v in exact] + [p])
    full_chain = sturm_chain(original)
    return RootIsolation(original, roots, full_chain)
