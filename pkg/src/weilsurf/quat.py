"""Quaternion algebras (a, b / F) over Q or a real quadratic field, and their orders.

Base-field numbers are x + y*sqrt(m) with rational x, y; m = 0 stands for Q.
An order is handled through a Z-basis of its underlying lattice (rank 4 over
Z, rank 8 over a quadratic ring), which keeps every check plain integer
linear algebra.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import floor, gcd, isqrt, sqrt

from . import fields as F
from .arith import INF, bad_primes, factorize, hilbert_symbol, is_prime, squarefree_part
from .groups import close_generators


class NotAnOrderError(ValueError):
    pass


class IndefiniteAlgebraError(ValueError):
    pass


# ----------------------------------------------------------------- base field


@dataclass(frozen=True)
class BaseNumber:
    """x + y*sqrt(m); m = 0 means the rationals (then y = 0)."""

    x: Fraction
    y: Fraction = Fraction(0)
    m: int = 0

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))
        if self.m == 0 and self.y:
            raise ValueError("rational base number with a surd part")

    def _lift(self, other):
        if isinstance(other, BaseNumber):
            if other.m != self.m and other.m and self.m:
                raise ValueError(f"mixing Q(sqrt {self.m}) and Q(sqrt {other.m})")
            return other
        return BaseNumber(other, 0, self.m)

    def _m(self, other):
        return self.m or other.m

    def __add__(self, other):
        o = self._lift(other)
        return BaseNumber(self.x + o.x, self.y + o.y, self._m(o))

    __radd__ = __add__

    def __neg__(self):
        return BaseNumber(-self.x, -self.y, self.m)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        m = self._m(o)
        return BaseNumber(self.x * o.x + m * self.y * o.y, self.x * o.y + self.y * o.x, m)

    __rmul__ = __mul__

    def conjugate(self):
        return BaseNumber(self.x, -self.y, self.m)

    def norm(self):
        return self.x * self.x - self.m * self.y * self.y

    def trace(self):
        """Trace down to Q."""
        return 2 * self.x if self.m else self.x

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conjugate()
        return BaseNumber(c.x / n, c.y / n, self.m)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __bool__(self):
        return bool(self.x or self.y)

    def is_integral(self):
        if not self.m:
            return self.x.denominator == 1
        t, n = 2 * self.x, self.norm()
        return t.denominator == 1 and n.denominator == 1

    def sign_at(self, place):
        """Sign under the real embedding sqrt(m) -> +sqrt(m) (place 0) or -sqrt(m) (place 1)."""
        y = self.y if place == 0 else -self.y
        x = self.x
        # sign of x + y*sqrt(m) without floating point
        if y == 0:
            return (x > 0) - (x < 0)
        if x == 0:
            return (y > 0) - (y < 0)
        if (x > 0) == (y > 0):
            return 1 if x > 0 else -1
        big = x * x - self.m * y * y
        if big == 0:
            return 0
        # the term with the larger square wins
        return ((x > 0) - (x < 0)) if big > 0 else ((y > 0) - (y < 0))

    def __str__(self):
        if not self.m or not self.y:
            return str(self.x)
        if not self.x:
            return f"{self.y}*sqrt{self.m}"
        return f"{self.x}{'+' if self.y > 0 else '-'}{abs(self.y)}*sqrt{self.m}"


def base_number(x, y=0, m=0):
    return BaseNumber(Fraction(x), Fraction(y), m)


def _base_degree(m):
    return 2 if m else 1


def _integral_basis(m):
    """Z-basis of the ring of integers of the base field."""
    if not m:
        return [base_number(1)]
    if m % 4 == 1:
        return [base_number(1, 0, m), base_number(Fraction(1, 2), Fraction(1, 2), m)]
    return [base_number(1, 0, m), base_number(0, 1, m)]


def base_discriminant(m):
    return 1 if not m else F.quadratic_discriminant(m)


# --------------------------------------------------------------- the algebra


@dataclass(frozen=True)
class RamificationSet:
    finite: frozenset  # rational primes over Q; (p, k) for the k-th prime above p otherwise
    infinite: frozenset  # "inf" over Q; "real1", "real2" otherwise

    def places(self):
        return set(self.finite) | set(self.infinite)

    def finite_norm(self):
        """Product of the absolute norms of the ramified finite primes."""
        out = 1
        for P in self.finite:
            out *= P if isinstance(P, int) else P[0]
        return out

    def __len__(self):
        return len(self.finite) + len(self.infinite)


@dataclass(frozen=True)
class QuaternionAlgebra:
    a: BaseNumber
    b: BaseNumber
    m: int = 0  # base field Q(sqrt m); 0 for Q

    def __post_init__(self):
        if self.m and (self.m < 2 or squarefree_part(self.m) != self.m):
            raise ValueError("base must be Q or Q(sqrt m) with m > 1 squarefree")
        a, b = self.a, self.b
        if not isinstance(a, BaseNumber):
            a = base_number(a, 0, self.m)
        if not isinstance(b, BaseNumber):
            b = base_number(b, 0, self.m)
        object.__setattr__(self, "a", BaseNumber(a.x, a.y, self.m))
        object.__setattr__(self, "b", BaseNumber(b.x, b.y, self.m))
        if not self.a or not self.b:
            raise ValueError("a and b must be nonzero")

    @property
    def degree(self):
        return _base_degree(self.m)

    def base_label(self):
        return "Q" if not self.m else f"Q(sqrt {self.m})"

    def label(self):
        return f"({self.a},{self.b} / {self.base_label()})"

    def element(self, w=0, x=0, y=0, z=0):
        return QuaternionElement(self, tuple(self._num(c) for c in (w, x, y, z)))

    def _num(self, c):
        if isinstance(c, BaseNumber):
            return BaseNumber(c.x, c.y, self.m)
        if isinstance(c, tuple):
            return base_number(c[0], c[1], self.m)
        return base_number(c, 0, self.m)

    def one(self):
        return self.element(1)

    def is_definite(self):
        places = (0, 1) if self.m else (0,)
        return all(self.a.sign_at(v) < 0 and self.b.sign_at(v) < 0 for v in places)


def quaternion_algebra(a, b, m=0):
    return QuaternionAlgebra(base_number(a, 0, m), base_number(b, 0, m), m)


@dataclass(frozen=True)
class QuaternionElement:
    algebra: QuaternionAlgebra
    coords: tuple  # (w, x, y, z) in the basis 1, i, j, ij

    def __add__(self, other):
        return QuaternionElement(self.algebra, tuple(u + v for u, v in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return QuaternionElement(self.algebra, tuple(u - v for u, v in zip(self.coords, other.coords)))

    def __neg__(self):
        return QuaternionElement(self.algebra, tuple(-u for u in self.coords))

    def scale(self, c):
        c = self.algebra._num(c)
        return QuaternionElement(self.algebra, tuple(c * u for u in self.coords))

    def __mul__(self, other):
        if not isinstance(other, QuaternionElement):
            return self.scale(other)
        a, b = self.algebra.a, self.algebra.b
        w1, x1, y1, z1 = self.coords
        w2, x2, y2, z2 = other.coords
        ab = a * b
        w = w1 * w2 + a * x1 * x2 + b * y1 * y2 - ab * z1 * z2
        x = w1 * x2 + x1 * w2 - b * y1 * z2 + b * z1 * y2
        y = w1 * y2 + y1 * w2 + a * x1 * z2 - a * z1 * x2
        z = w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2
        return QuaternionElement(self.algebra, (w, x, y, z))

    def conjugate(self):
        w, x, y, z = self.coords
        return QuaternionElement(self.algebra, (w, -x, -y, -z))

    def nrd(self):
        a, b = self.algebra.a, self.algebra.b
        w, x, y, z = self.coords
        return w * w - a * x * x - b * y * y + a * b * z * z

    def trd(self):
        return 2 * self.coords[0]

    def is_integral(self):
        return self.trd().is_integral() and self.nrd().is_integral()

    def inverse(self):
        n = self.nrd()
        return self.conjugate().scale(n.inverse())

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coords) + "]"


# ---------------------------------------------------------------- ramification


def _local_rational_invariant_half(a, b, p):
    return hilbert_symbol(a, b, p) == -1


def ramified_places(alg):
    """Places where the algebra ramifies.

    Over a quadratic base only rational a, b are supported at finite places:
    there the local invariant at a prime above p is the Q_p one times the
    local degree, so only split primes can keep it.
    """
    a, b = alg.a, alg.b
    if not alg.m:
        finite = frozenset(p for p in bad_primes(a.x, b.x) if _local_rational_invariant_half(a.x, b.x, p))
        infinite = frozenset([INF]) if hilbert_symbol(a.x, b.x, INF) == -1 else frozenset()
        out = RamificationSet(finite, infinite)
        if len(out) % 2:
            raise AssertionError(f"odd ramification for {alg.label()}")
        return out
    infinite = frozenset(
        f"real{v + 1}" for v in (0, 1) if a.sign_at(v) < 0 and b.sign_at(v) < 0
    )
    if a.y or b.y:
        raise NotImplementedError("finite ramification needs rational a, b over a quadratic base")
    finite = set()
    for p in bad_primes(a.x, b.x):
        if _local_rational_invariant_half(a.x, b.x, p) and F.split_prime_quadratic(p, F.QuadraticField(alg.m)) == F.SPLIT:
            finite |= {(p, 1), (p, 2)}
    return RamificationSet(frozenset(finite), infinite)


def embeds_imag_quadratic_in_Dpinf(d, p):
    """Does Q(sqrt d), d < 0 squarefree, sit inside the definite algebra ramified at p?"""
    if d >= 0:
        raise ValueError("need an imaginary quadratic field (d < 0)")
    if squarefree_part(d) != d:
        raise ValueError(f"d={d} is not squarefree")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return F.split_prime_quadratic(p, F.QuadraticField(d)) != F.SPLIT


def definite_algebra_ramified_at(p):
    """A presentation (a, b / Q) of the definite algebra ramified exactly at p and infinity.

    Tries (-1,-1), (-1,-p), (-2,-p), then (-q,-p) over primes q = 3 mod 4, and
    checks every candidate with Hilbert symbols.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    want = {p, INF}
    cands = [(-1, -1), (-1, -p), (-2, -p)]
    q = 3
    while len(cands) < 200:
        if is_prime(q) and q != p:
            cands.append((-q, -p))
        q += 4
    for a, b in cands:
        alg = quaternion_algebra(a, b)
        if ramified_places(alg).places() == want:
            return alg
    raise AssertionError(f"no presentation found for p={p}")


# ------------------------------------------------------------- linear algebra


def _vector(el):
    """Rational coordinates of an element: (x, y) per quaternion coordinate."""
    out = []
    for c in el.coords:
        out.append(c.x)
        if el.algebra.m:
            out.append(c.y)
    return out


def _from_vector(alg, v):
    if alg.m:
        return alg.element(*((v[2 * k], v[2 * k + 1]) for k in range(4)))
    return alg.element(*v)


def _common_denominator(rows):
    d = 1
    for r in rows:
        for x in r:
            d = d * x.denominator // gcd(d, x.denominator)
    return d


def _hnf(rows):
    """Row Hermite normal form of an integer matrix; zero rows dropped."""
    A = [list(r) for r in rows]
    if not A:
        return []
    ncols = len(A[0])
    out = []
    for col in range(ncols):
        piv = [r for r in A if r[col] != 0]
        rest = [r for r in A if r[col] == 0]
        while len(piv) > 1:
            piv.sort(key=lambda r: abs(r[col]))
            p = piv[0]
            new = [p]
            for r in piv[1:]:
                k = r[col] // p[col]
                r = [u - k * v for u, v in zip(r, p)]
                (new if r[col] else rest).append(r)
            piv = new
        if piv:
            p = piv[0]
            if p[col] < 0:
                p = [-u for u in p]
            out.append(p)
        A = [r for r in rest if any(r)]
    # reduce entries above each pivot
    for i, r in enumerate(out):
        col = next(c for c in range(ncols) if r[c])
        for k in range(i):
            q = out[k][col] // r[col]
            if q:
                out[k] = [u - q * v for u, v in zip(out[k], r)]
    return out


def lattice_basis(vectors):
    """Canonical Z-basis (rational HNF) of the lattice spanned by ``vectors``."""
    d = _common_denominator(vectors)
    ints = [[int(x * d) for x in v] for v in vectors]
    return [tuple(Fraction(x, d) for x in r) for r in _hnf(ints)]


def _solve_left(B, v):
    """Coefficients c with sum c_k B[k] = v (B square, invertible), exact."""
    n = len(B)
    # transpose system: B^T c = v
    M = [[B[k][i] for k in range(n)] + [v[i]] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def _det(M):
    M = [list(r) for r in M]
    n = len(M)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        for r in range(col + 1, n):
            f = M[r][col] / M[col][col]
            if f:
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return det


# ----------------------------------------------------------------------- orders


@dataclass(frozen=True)
class QuaternionOrder:
    algebra: QuaternionAlgebra
    basis: tuple  # generators over the base ring, as given
    zbasis: tuple  # Z-basis of the lattice
    name: str = ""

    @property
    def rank(self):
        return len(self.zbasis)

    def coordinates(self, el):
        return _solve_left([_vector(b) for b in self.zbasis], _vector(el))

    def contains(self, el):
        return all(c.denominator == 1 for c in self.coordinates(el))


def _z_span(alg, gens):
    ring = _integral_basis(alg.m)
    vecs = [_vector(g.scale(w)) for g in gens for w in ring]
    return tuple(_from_vector(alg, v) for v in lattice_basis(vecs))


def _check_order(alg, zbasis):
    if len(zbasis) != 4 * alg.degree:
        raise NotAnOrderError(f"lattice has rank {len(zbasis)}, expected {4 * alg.degree}")
    bad = [str(b) for b in zbasis if not b.is_integral()]
    if bad:
        raise NotAnOrderError(f"non-integral basis elements {bad}")
    probe = QuaternionOrder(alg, (), zbasis)
    if not probe.contains(alg.one()):
        raise NotAnOrderError("lattice does not contain 1")
    for x in zbasis:
        for y in zbasis:
            if not probe.contains(x * y):
                raise NotAnOrderError(f"product {x * y} leaves the lattice")


def make_order(alg, basis, name=""):
    """Order spanned over the base ring by ``basis``; raises NotAnOrderError otherwise."""
    basis = tuple(basis)
    zb = _z_span(alg, basis)
    _check_order(alg, zb)
    return QuaternionOrder(alg, basis, zb, name)


def order_generated(alg, gens, name="", max_rounds=16):
    """Smallest ring containing the base ring and ``gens``; must consist of integral elements."""
    zb = _z_span(alg, list(gens) + [alg.one()])
    for _ in range(max_rounds):
        prods = [x * y for x in zb for y in zb]
        if any(not p.is_integral() for p in prods):
            raise NotAnOrderError("generated ring has non-integral elements")
        new = _z_span(alg, list(zb) + prods)
        if new == zb:
            _check_order(alg, zb)
            return QuaternionOrder(alg, tuple(gens), zb, name)
        zb = new
    raise NotAnOrderError("ring closure did not stabilize")


def _scalar_part(x, y):
    """First coordinate of x*y, without forming the rest of the product."""
    a, b = x.algebra.a, x.algebra.b
    w1, x1, y1, z1 = x.coords
    w2, x2, y2, z2 = y.coords
    return w1 * w2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2


def _trace_gram(order):
    zb = order.zbasis
    n = len(zb)
    G = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            G[i][j] = G[j][i] = (2 * _scalar_part(zb[i], zb[j])).trace()
    return G


def reduced_discriminant(order):
    """Reduced discriminant: an integer over Z; its absolute norm over a quadratic base.

    Uses disc_Z(O) = N(disc_R(O)) * d_F^4 and disc_R = (reduced)^2.
    """
    det = abs(_det(_trace_gram(order)))
    dF = base_discriminant(order.algebra.m)
    val = det / Fraction(dF) ** 4
    if val.denominator != 1:
        raise NotAnOrderError("trace-form determinant not divisible by d_F^4")
    r = isqrt(val.numerator)
    if r * r != val.numerator:
        raise NotAnOrderError(f"discriminant {val} is not a perfect square")
    return r


def is_maximal_order(order, alg=None):
    alg = alg or order.algebra
    return reduced_discriminant(order) == ramified_places(alg).finite_norm()


# ---------------------------------------------------------------- unit search


def _norm_form_gram(order):
    """Gram matrix of T(x) = Tr_{F/Q}(nrd x) on the Z-basis."""
    zb = order.zbasis
    T = [x.nrd().trace() for x in zb]
    n = len(zb)
    G = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = T[i]
        for j in range(i + 1, n):
            s = (zb[i] + zb[j]).nrd().trace()
            G[i][j] = G[j][i] = (s - T[i] - T[j]) / 2
    return G


def _ldl(G):
    """G = U^T D U with U unit upper triangular; returns (d, mu) with mu[i][j] = U[i][j]."""
    n = len(G)
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = G[i][i] - sum(mu[k][i] ** 2 * d[k] for k in range(i))
        if d[i] <= 0:
            raise IndefiniteAlgebraError("norm form is not positive definite")
        for j in range(i + 1, n):
            mu[i][j] = (G[i][j] - sum(mu[k][i] * mu[k][j] * d[k] for k in range(i))) / d[i]
    return d, mu


def short_vectors(G, bound):
    """All integer vectors v with v^T G v <= bound (G positive definite, exact)."""
    d, mu = _ldl(G)
    n = len(G)
    out = []
    v = [0] * n

    def rec(i, rem):
        if i < 0:
            out.append(tuple(v))
            return
        c = sum(mu[i][j] * v[j] for j in range(i + 1, n))
        r = rem / d[i]
        s = sqrt(float(r))
        lo = floor(float(-c) - s) - 1
        hi = floor(float(-c) + s) + 1
        for x in range(lo, hi + 1):
            t = d[i] * (x + c) ** 2
            if t <= rem:
                v[i] = x
                rec(i - 1, rem - t)
        v[i] = 0

    rec(n - 1, Fraction(bound))
    return out


def torsion_units(order):
    """Units of finite order: exactly the elements with nrd = 1 in a definite order."""
    alg = order.algebra
    if not alg.is_definite():
        raise IndefiniteAlgebraError(f"{alg.label()} is not totally definite")
    G = _norm_form_gram(order)
    deg = alg.degree
    out = []
    for v in short_vectors(G, deg):
        el = alg.element()
        for c, b in zip(v, order.zbasis):
            if c:
                el = el + b.scale(c)
        if el.nrd() == base_number(1, 0, alg.m):
            out.append(el)
    return out


def unit_group(order):
    """Torsion units as a ConcreteGroup, built by closing the enumerated set."""
    units = torsion_units(order)
    one = order.algebra.one()
    mul = lambda x, y: x * y  # noqa: E731
    # a few greedy generators keep the closure cheap
    gens, G = [], close_generators([], mul, one)
    for u in units:
        if u not in G:
            gens.append(u)
            G = close_generators(gens, mul, one)
        if G.order == len(units):
            break
    if G.order != len(units):
        raise AssertionError("torsion units are not closed under multiplication")
    return G


# ------------------------------------------------------------ saturation search


def saturate_to_maximal(order, name="", max_steps=12):
    """Grow an order one prime-index step at a time until it is maximal.

    Each step scans x = (sum c_k z_k)/l, 0 <= c_k < l, over the current Z-basis
    z_k in lexicographic order, for the least prime l dividing the excess
    discriminant, and keeps the first integral x whose generated ring is an order.
    """
    alg = order.algebra
    target = ramified_places(alg).finite_norm()
    for _ in range(max_steps):
        disc = reduced_discriminant(order)
        if disc == target:
            return QuaternionOrder(alg, order.zbasis, order.zbasis, name)
        if disc % target:
            raise AssertionError("discriminant not a multiple of the ramified primes")
        ell = factorize(disc // target).primes()[0]
        nxt = None
        zb = order.zbasis
        for cs in product(range(ell), repeat=len(zb)):
            if not any(cs):
                continue
            x = alg.element()
            for c, b in zip(cs, zb):
                if c:
                    x = x + b.scale(Fraction(c, ell))
            if not x.is_integral():
                continue
            try:
                nxt = order_generated(alg, list(zb) + [x], name)
            except NotAnOrderError:
                continue
            break
        if nxt is None:
            raise AssertionError(f"no enlargement found at l={ell}")
        order = nxt
    raise AssertionError("saturation did not finish")


# ----------------------------------------------------------------- catalogue


def _standard_order_p3mod4(p, name):
    alg = quaternion_algebra(-1, -p)
    h = Fraction(1, 2)
    basis = [alg.element(1), alg.element(0, 1), alg.element(h, 0, h), alg.element(0, h, 0, h)]
    return make_order(alg, basis, name)


def maximal_order_Dpinf(p, name=""):
    """A maximal order of the definite algebra ramified at p (built, then certified)."""
    if p == 2:
        return builtin_order("hurwitz_D2")
    if p % 4 == 3:
        return _standard_order_p3mod4(p, name or f"max_D{p}")
    alg = definite_algebra_ramified_at(p)
    start = make_order(alg, [alg.element(1), alg.element(0, 1), alg.element(0, 0, 1), alg.element(0, 0, 0, 1)])
    return saturate_to_maximal(start, name or f"max_D{p}")


def _hurwitz():
    alg = quaternion_algebra(-1, -1)
    h = Fraction(1, 2)
    basis = [alg.element(0, 1), alg.element(0, 0, 1), alg.element(0, 0, 0, 1), alg.element(h, h, h, h)]
    return make_order(alg, basis, "hurwitz_D2")


def _dic24_over_sqrt3():
    alg = quaternion_algebra(-1, -1, 3)
    h = Fraction(1, 2)
    s3h = (0, h)  # sqrt(3)/2
    basis = [
        alg.element(1),
        alg.element(0, 1),
        alg.element(s3h, 0, h),
        alg.element(s3h, s3h, h, h),
    ]
    return make_order(alg, basis, "dic24_over_sqrt3")


def _octa_over_sqrt2():
    alg = quaternion_algebra(-1, -1, 2)
    h = Fraction(1, 2)
    r = (0, h)  # sqrt(2)/2
    basis = [alg.element(1), alg.element(r, r), alg.element(r, 0, r), alg.element(h, h, h, h)]
    return make_order(alg, basis, "octa_over_sqrt2")


def _icosian_over_golden():
    alg = quaternion_algebra(-1, -1, 5)
    lam = base_number(Fraction(1, 2), Fraction(1, 2), 5)
    lam_inv = lam.inverse()
    h = Fraction(1, 2)
    basis = [
        alg.element(1),
        alg.element(0, 1),
        alg.element(lam * h, lam_inv * h, h),
        alg.element(-lam_inv * h, lam * h, 0, h),
    ]
    return make_order(alg, basis, "icosian_over_golden")


def _dic12_over_sqrt11():
    alg = quaternion_algebra(-1, -3, 11)
    h = Fraction(1, 2)
    basis = [alg.element(1), alg.element(0, 1), alg.element(h, 0, h), alg.element(0, h, 0, h)]
    return make_order(alg, basis, "dic12_over_sqrt11")


def _max_d5():
    alg = quaternion_algebra(-2, -5)
    basis = [
        alg.element(1),
        alg.element(0, 1),
        alg.element(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
        alg.element(Fraction(1, 2), Fraction(1, 4), 0, Fraction(1, 4)),
    ]
    return make_order(alg, basis, "max_D5")


BUILTIN_KEYS = (
    "hurwitz_D2",
    "max_D3",
    "dic24_over_sqrt3",
    "octa_over_sqrt2",
    "icosian_over_golden",
    "dic12_over_sqrt11",
    "max_D5",
    "max_D7",
    "max_D11",
    "max_D13",
    "max_D241",
)


@lru_cache(maxsize=None)
def builtin_order(key):
    makers = {
        "hurwitz_D2": _hurwitz,
        "max_D3": lambda: _standard_order_p3mod4(3, "max_D3"),
        "dic24_over_sqrt3": _dic24_over_sqrt3,
        "octa_over_sqrt2": _octa_over_sqrt2,
        "icosian_over_golden": _icosian_over_golden,
        "dic12_over_sqrt11": _dic12_over_sqrt11,
        "max_D5": _max_d5,
        "max_D7": lambda: _standard_order_p3mod4(7, "max_D7"),
        "max_D11": lambda: _standard_order_p3mod4(11, "max_D11"),
        "max_D13": lambda: maximal_order_Dpinf(13, "max_D13"),
        "max_D241": lambda: maximal_order_Dpinf(241, "max_D241"),
    }
    if key not in makers:
        raise KeyError(f"unknown order {key!r}; known: {', '.join(BUILTIN_KEYS)}")
    return makers[key]()


def builtin_orders():
    return {k: builtin_order(k) for k in BUILTIN_KEYS}


def max_order_key(p):
    """Catalogue key of the maximal order used for the algebra ramified at p, if any."""
    key = "hurwitz_D2" if p == 2 else f"max_D{p}"
    return key if key in BUILTIN_KEYS else None
