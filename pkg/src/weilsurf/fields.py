"""Abelian number fields of small degree and how rational primes split in them.

Three shapes are enough for everything downstream: quadratic fields,
biquadratic CM fields Q(sqrt m, sqrt -n), and cyclotomic fields.  All are
Galois over Q, so every prime above p has the same (e, f).
"""

from dataclasses import dataclass
from itertools import combinations

from .arith import (
    euler_phi,
    factorize,
    kronecker_symbol,
    lcm,
    multiplicative_order,
    squarefree_part,
)

RAMIFIED, INERT, SPLIT = "ramified", "inert", "split"


def quadratic_discriminant(d):
    return d if d % 4 == 1 else 4 * d


@dataclass(frozen=True)
class SplittingData:
    e: int
    f: int
    g: int

    @property
    def local_degree(self):
        return self.e * self.f


@dataclass(frozen=True)
class RationalField:
    degree = 1

    def label(self):
        return "Q"

    def quadratic_subfields(self):
        return ()


QQ = RationalField()


@dataclass(frozen=True)
class QuadraticField:
    d: int

    def __post_init__(self):
        if self.d in (0, 1) or squarefree_part(self.d) != self.d:
            raise ValueError(f"Q(sqrt {self.d}) needs squarefree d != 0, 1")

    degree = 2

    @property
    def discriminant(self):
        return quadratic_discriminant(self.d)

    @property
    def is_real(self):
        return self.d > 0

    def label(self):
        return f"Q(sqrt {self.d})"

    def quadratic_subfields(self):
        return (self.d,)


@dataclass(frozen=True)
class BiquadraticCMField:
    """Q(sqrt m, sqrt -n) with m > 1 squarefree and n > 0 squarefree."""

    m: int
    n: int

    def __post_init__(self):
        if self.m <= 1 or squarefree_part(self.m) != self.m:
            raise ValueError(f"m={self.m} must be squarefree and > 1")
        if self.n <= 0 or squarefree_part(self.n) != self.n:
            raise ValueError(f"n={self.n} must be squarefree and positive")

    degree = 4

    @property
    def third(self):
        return squarefree_part(-self.m * self.n)

    def label(self):
        return f"Q(sqrt {self.m}, sqrt -{self.n})"

    def quadratic_subfields(self):
        return (self.m, -self.n, self.third)


@dataclass(frozen=True)
class CyclotomicField:
    n: int

    def __post_init__(self):
        if self.n < 3 or self.n % 4 == 2:
            raise ValueError(f"Q(zeta {self.n}): need n >= 3 and n != 2 mod 4")

    @property
    def degree(self):
        return euler_phi(self.n)

    def label(self):
        return f"Q(zeta {self.n})"

    def quadratic_subfields(self):
        # Q(sqrt d) sits inside Q(zeta n) iff its conductor |disc| divides n
        out = []
        n = self.n
        cands = set()
        odd = [p for p, _ in factorize(n).factors if p != 2]
        # products of p* = (-1)^((p-1)/2) p, possibly times -1, 2, -2
        for k in range(len(odd) + 1):
            for sub in combinations(odd, k):
                base = 1
                for p in sub:
                    base *= p if p % 4 == 1 else -p
                for extra in (1, -1, 2, -2):
                    cands.add(base * extra)
        for d in sorted(cands):
            if d == 1:
                continue
            if n % abs(quadratic_discriminant(d)) == 0:
                out.append(d)
        return tuple(out)


def cyclotomic(n):
    """Q(zeta n) normalized so that n is not 2 mod 4; small n collapse to Q."""
    if n % 4 == 2:
        n //= 2
    if n <= 2:
        return QQ
    return CyclotomicField(n)


def field_degree(field):
    return field.degree


def split_prime_quadratic(p, field):
    if not isinstance(field, QuadraticField):
        field = QuadraticField(field)
    disc = field.discriminant
    if disc % p == 0:
        return RAMIFIED
    return SPLIT if kronecker_symbol(disc, p) == 1 else INERT


def _quadratic_efg(behavior):
    return {
        RAMIFIED: SplittingData(2, 1, 1),
        INERT: SplittingData(1, 2, 1),
        SPLIT: SplittingData(1, 1, 2),
    }[behavior]


def split_prime_biquadratic(p, field):
    """(e, f, g) of p in a V4 field from the behavior in its three subfields."""
    kinds = [split_prime_quadratic(p, QuadraticField(d)) for d in field.quadratic_subfields()]
    ns = kinds.count(SPLIT)
    ni = kinds.count(INERT)
    nr = kinds.count(RAMIFIED)
    # decomposition group D and inertia I inside V4:
    # p splits in the subfield fixed by H exactly when D <= H
    table = {
        (3, 0, 0): SplittingData(1, 1, 4),
        (1, 0, 2): SplittingData(2, 1, 2),
        (1, 2, 0): SplittingData(1, 2, 2),
        (0, 0, 3): SplittingData(4, 1, 1),
        (0, 1, 2): SplittingData(2, 2, 1),
    }
    key = (ns, ni, nr)
    if key not in table:
        raise ValueError(f"impossible subfield pattern {kinds} for p={p} in {field.label()}")
    return table[key]


def split_prime_cyclotomic(p, field):
    n = field.n
    k = 0
    n1 = n
    while n1 % p == 0:
        n1 //= p
        k += 1
    e = euler_phi(p ** k) if k else 1
    f = multiplicative_order(p, n1)
    g = euler_phi(n1) // f
    return SplittingData(e, f, g)


def splitting(p, field):
    """Dispatch on the field shape."""
    if isinstance(field, RationalField):
        return SplittingData(1, 1, 1)
    if isinstance(field, QuadraticField):
        return _quadratic_efg(split_prime_quadratic(p, field))
    if isinstance(field, BiquadraticCMField):
        return split_prime_biquadratic(p, field)
    if isinstance(field, CyclotomicField):
        return split_prime_cyclotomic(p, field)
    raise TypeError(f"unsupported field {field!r}")


def contains_sqrt(field, s):
    """Is Q(sqrt s) a subfield?  s = 1 (or any square) is trivially inside."""
    s = squarefree_part(s)
    if s == 1:
        return True
    return s in field.quadratic_subfields()


def roots_of_unity_order(field):
    """Order of the torsion subgroup of the multiplicative group."""
    if isinstance(field, CyclotomicField):
        return field.n if field.n % 2 == 0 else 2 * field.n
    w = 2
    for k in (3, 4, 8, 12):
        z = cyclotomic(k)
        if z.degree > field.degree:
            continue
        # Q(zeta 5) is cyclic quartic and never sits in these fields
        if all(contains_sqrt(field, d) for d in z.quadratic_subfields()):
            w = lcm(w, k if k % 2 == 0 else 2 * k)
    return w


def fields_equal(a, b):
    if type(a) is not type(b):
        return sorted(a.quadratic_subfields()) == sorted(b.quadratic_subfields()) and a.degree == b.degree
    return a == b


def field_from_label(text):
    """Inverse of ``label`` (also accepts the short CLI forms Qsqrt2, Qzeta8)."""
    t = text.replace(" ", "")
    if t == "Q":
        return QQ
    if t.startswith("Qzeta"):
        return cyclotomic(int(t[5:]))
    if t.startswith("Q(zeta") and t.endswith(")"):
        return cyclotomic(int(t[6:-1]))
    if t.startswith("Qsqrt"):
        return QuadraticField(int(t[5:]))
    if t.startswith("Q(sqrt") and t.endswith(")"):
        parts = t[6:-1].split(",sqrt")
        if len(parts) == 1:
            return QuadraticField(int(parts[0]))
        m, n = int(parts[0]), int(parts[1])
        if m < 0:
            m, n = n, m
        return make_biquadratic(m, -n)
    raise ValueError(f"cannot parse field {text!r}")


def biquadratic_or_smaller(u, v):
    """Field generated by sqrt(u) and sqrt(-v) for positive integers u, v."""
    m = squarefree_part(u)
    n = squarefree_part(v)
    if m == 1:
        return QuadraticField(-n)
    return make_biquadratic(m, n)


def make_biquadratic(m, n):
    """Q(sqrt m, sqrt -n) with the smaller of the two imaginary subfields as n."""
    m = squarefree_part(m)
    n = squarefree_part(n)
    other = -squarefree_part(-m * n)
    return BiquadraticCMField(m, min(n, other))


def lemma_prime_dec(p, a, beta):
    """How p behaves in Q(sqrt(beta^2 - 4q)), q = p^a, read off from (p, a, beta) alone.

    Case list for traces of elliptic Frobenius; everything not listed splits.
    """
    q = p ** a
    if beta * beta >= 4 * q:
        raise ValueError(f"need beta^2 < 4q, got beta={beta}, q={q}")
    root = p ** (a // 2) if a % 2 == 0 else None
    if beta == 0:
        if a % 2 or p == 2:
            return RAMIFIED
        if p % 4 == 3:
            return INERT
    elif a % 2 == 0 and abs(beta) == root:
        if p == 3:
            return RAMIFIED
        if p % 3 == 2:
            return INERT
    elif a % 2 and p in (2, 3) and abs(beta) == p ** ((a + 1) // 2):
        return RAMIFIED
    return SPLIT
