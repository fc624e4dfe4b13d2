"""q-Weil numbers: minimal polynomials, Newton polygons, local invariants.

A Weil number is given either structurally (sqrt q, a trace beta, a surd
sqrt u + sqrt -v, a scaled root of unity) or by an integer polynomial.  The
endomorphism-algebra descriptor is built from the center field, the Newton
polygon at p, and the archimedean places; no floating point is used.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import fields as F
from .arith import (
    euler_phi,
    is_square,
    lcm,
    padic_valuation,
    prime_power,
    squarefree_part,
)


class NotWeilError(ValueError):
    """The input does not define a q-Weil number."""


class UnsupportedCenterError(ValueError):
    """Center field outside the supported shapes (non-Galois, cyclic quartic...)."""


@dataclass(frozen=True)
class PrimePower:
    p: int
    a: int

    @property
    def q(self):
        return self.p ** self.a

    @property
    def is_square(self):
        return self.a % 2 == 0

    @property
    def sqrt(self):
        """Integer square root of q; only defined when a is even."""
        if self.a % 2:
            raise ValueError(f"{self.q} is not a square")
        return self.p ** (self.a // 2)

    @classmethod
    def of(cls, q):
        pa = prime_power(q)
        if pa is None:
            raise ValueError(f"{q} is not a prime power")
        return cls(*pa)


# ---------------------------------------------------------------- polynomials


@dataclass(frozen=True)
class IntPolynomial:
    """Monic integer polynomial, coefficients listed from the leading term down."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        object.__setattr__(self, "coeffs", c)
        if len(c) < 2 or c[0] != 1:
            raise ValueError(f"need a monic polynomial of degree >= 1, got {c}")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def coeff(self, i):
        """Coefficient of t**i."""
        return self.coeffs[self.degree - i]

    def ascending(self):
        return list(reversed(self.coeffs))

    def __call__(self, x):
        out = 0
        for c in self.coeffs:
            out = out * x + c
        return out

    def __mul__(self, other):
        return IntPolynomial(_mul(self.coeffs, other.coeffs))

    def __pow__(self, k):
        if k < 1:
            raise ValueError("only positive powers")
        res = self.coeffs
        for _ in range(k - 1):
            res = _mul(res, self.coeffs)
        return IntPolynomial(res)

    def __str__(self):
        terms = []
        n = self.degree
        for i, c in enumerate(self.coeffs):
            k = n - i
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("t" if k == 1 else f"t^{k}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        s = terms[0][1] if terms[0][0] == "+" else "-" + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def poly(*coeffs):
    return IntPolynomial(tuple(coeffs))


def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def exact_divide(f, g):
    """f / g for monic integer polynomials (descending lists); None if g does not divide f."""
    f = list(f)
    g = list(g)
    if len(g) > len(f):
        return None
    quot = []
    while len(f) >= len(g):
        c = f[0]  # g is monic
        quot.append(c)
        for i in range(len(g)):
            f[i] -= c * g[i]
        f.pop(0)
    if any(f):
        return None
    return tuple(quot)


def cyclotomic_polynomial(n):
    """Phi_n as a descending coefficient tuple (built by exact division)."""
    num = [1] + [0] * (n - 1) + [-1]
    for d in range(1, n):
        if n % d == 0:
            num = list(exact_divide(num, cyclotomic_polynomial(d)))
    return tuple(num)


# ------------------------------------------------------------ Weil numbers


@dataclass(frozen=True)
class RealSqrtQ:
    sign: int = 1


@dataclass(frozen=True)
class QuadraticTrace:
    beta: int


@dataclass(frozen=True)
class BiquadraticSurd:
    u: int
    v: int


@dataclass(frozen=True)
class ScaledRootOfUnity:
    n: int


@dataclass(frozen=True)
class Polynomial:
    h: IntPolynomial


@dataclass(frozen=True)
class WeilNumberSpec:
    q: PrimePower
    variant: object

    def __post_init__(self):
        v = self.variant
        if isinstance(v, BiquadraticSurd):
            if v.u <= 0 or v.v <= 0 or v.u + v.v != self.q.q:
                raise NotWeilError(f"surd needs u, v > 0 with u + v = q, got {v}")
        if isinstance(v, ScaledRootOfUnity):
            if not self.q.is_square:
                raise NotWeilError("sqrt(q) * zeta needs q to be a square")
            if v.n < 1:
                raise ValueError("root of unity order must be positive")
        if isinstance(v, RealSqrtQ) and v.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def describe(self):
        v = self.variant
        if isinstance(v, RealSqrtQ):
            return ("-" if v.sign < 0 else "") + f"sqrt({self.q.q})"
        if isinstance(v, QuadraticTrace):
            return f"root of t^2 - ({v.beta})t + {self.q.q}"
        if isinstance(v, BiquadraticSurd):
            return f"sqrt({v.u}) + sqrt(-{v.v})"
        if isinstance(v, ScaledRootOfUnity):
            return f"sqrt({self.q.q}) * zeta_{v.n}"
        return f"root of {v.h}"


def weil(q, variant):
    if not isinstance(q, PrimePower):
        q = PrimePower.of(q)
    return WeilNumberSpec(q, variant)


def _sign_ge_zero(A, B, q):
    """Exact test of A + B*sqrt(q) >= 0 for integers A, B and q > 0."""
    if B == 0:
        return A >= 0
    if A >= 0 and B >= 0:
        return True
    if A <= 0 and B <= 0:
        return False
    if A > 0:  # B < 0: need A >= |B| sqrt q
        return A * A >= B * B * q
    return B * B * q >= A * A  # A < 0 < B


def is_weil_poly(h, q):
    """True iff every complex root of h has absolute value sqrt(q)."""
    if not isinstance(q, PrimePower):
        q = PrimePower.of(q)
    Q = q.q
    n = h.degree
    if n == 1:
        c = -h.coeff(0)
        return c * c == Q
    if n == 2:
        c1, c0 = h.coeff(1), h.coeff(0)
        if c0 == Q:
            return c1 * c1 <= 4 * Q
        if c0 == -Q:
            return c1 == 0
        return False
    if n == 4:
        c3, c2, c1, c0 = h.coeff(3), h.coeff(2), h.coeff(1), h.coeff(0)
        if c0 == -Q * Q:
            rest = exact_divide(h.coeffs, (1, 0, -Q))
            return rest is not None and is_weil_poly(IntPolynomial(rest), q)
        if c0 != Q * Q or c1 != Q * c3:
            return False
        # h(t) = t^2 g(t + q/t) with g(s) = s^2 + c3 s + (c2 - 2q)
        b, c = c3, c2 - 2 * Q
        if b * b - 4 * c < 0:
            return False
        if b * b > 16 * Q:  # vertex -b/2 outside [-2 sqrt q, 2 sqrt q]
            return False
        # g(2 sqrt q) = (4q + c) + 2b sqrt q, g(-2 sqrt q) = (4q + c) - 2b sqrt q
        return _sign_ge_zero(4 * Q + c, 2 * b, Q) and _sign_ge_zero(4 * Q + c, -2 * b, Q)
    raise ValueError(f"is_weil_poly supports degrees 1, 2, 4; got {n}")


def minimal_polynomial(spec):
    q = spec.q
    Q = q.q
    v = spec.variant
    if isinstance(v, RealSqrtQ):
        if q.is_square:
            return poly(1, -v.sign * q.sqrt)
        return poly(1, 0, -Q)
    if isinstance(v, QuadraticTrace):
        b = v.beta
        if b * b > 4 * Q:
            raise NotWeilError(f"|beta| > 2 sqrt(q) for beta={b}, q={Q}")
        if b * b == 4 * Q:
            return poly(1, -b // 2)
        return poly(1, -b, Q)
    if isinstance(v, BiquadraticSurd):
        if is_square(v.u):
            s = isqrt(v.u)
            return poly(1, -2 * s, s * s + v.v)
        d = v.u - v.v
        return poly(1, 0, -2 * d, 0, Q * Q)
    if isinstance(v, ScaledRootOfUnity):
        k = euler_phi(v.n)
        if k > 4:
            raise UnsupportedCenterError(f"sqrt(q) zeta_{v.n} has degree {k} > 4")
        phi = cyclotomic_polynomial(v.n)
        s = q.sqrt
        return IntPolynomial(tuple(c * s ** i for i, c in enumerate(phi)))
    if isinstance(v, Polynomial):
        h = v.h
        if h.degree not in (1, 2, 4) or not is_weil_poly(h, q):
            raise NotWeilError(f"{h} is not a {Q}-Weil polynomial")
        if h.degree == 2 and is_square(h.coeff(1) ** 2 - 4 * h.coeff(0)):
            raise NotWeilError(f"{h} is reducible")
        if h.degree == 4 and _quartic_splits(h, Q):
            raise NotWeilError(f"{h} is reducible")
        return h
    raise TypeError(f"unknown variant {v!r}")


def _quartic_splits(h, Q):
    if h.coeff(0) == -Q * Q:
        return True
    c3, c2 = h.coeff(3), h.coeff(2)
    return is_square(c3 * c3 - 4 * (c2 - 2 * Q))


# --------------------------------------------------------- center recognition


def _is_square_rational(x):
    x = Fraction(x)
    return x >= 0 and is_square(x.numerator) and is_square(x.denominator)


def _is_square_in_quadratic(x, y, D):
    """Is x + y sqrt(D) a square in Q(sqrt D)?  x, y rational, D squarefree."""
    x, y = Fraction(x), Fraction(y)
    if y == 0:
        return _is_square_rational(x) or _is_square_rational(x / D)
    N = x * x - D * y * y
    if not _is_square_rational(N):
        return False
    r = Fraction(isqrt(N.numerator), isqrt(N.denominator))
    for rr in (r, -r):
        a = (x + rr) / 2
        b = (x - rr) / 2
        if _is_square_rational(a) and b != 0 and _is_square_rational(b / D):
            return True
    return False


def _quartic_center(h, Q):
    c3, c2 = h.coeff(3), h.coeff(2)
    delta = c3 * c3 - 4 * (c2 - 2 * Q)
    Dp = squarefree_part(delta)
    k = isqrt(delta // Dp)
    # s = (-c3 + k sqrt Dp)/2 ; alpha = s^2 - 4q = x + y sqrt Dp
    x = Fraction(c3 * c3 + k * k * Dp, 4) - 4 * Q
    y = Fraction(-c3 * k, 2)
    N = x * x - Dp * y * y
    if _is_square_rational(N):
        if y == 0:
            return F.make_biquadratic(Dp, -squarefree_part(_num_den(x)))
        r = Fraction(isqrt(N.numerator), isqrt(N.denominator))
        w = (x + r) / 2 if x + r != 0 else (x - r) / 2
        return F.make_biquadratic(Dp, -squarefree_part(_num_den(w)))
    if _is_square_rational(N * Dp) or _is_square_rational(N / Dp):
        # cyclic quartic; Q(zeta 5) = Q(sqrt 5)(sqrt alpha0), alpha0 = (-5 - sqrt 5)/2
        if Dp == 5:
            ax, ay = Fraction(-5, 2), Fraction(-1, 2)
            px = x * ax + 5 * y * ay
            py = x * ay + y * ax
            if _is_square_in_quadratic(px, py, 5):
                return F.CyclotomicField(5)
        raise UnsupportedCenterError(f"cyclic quartic center for {h} is not supported")
    raise UnsupportedCenterError(f"non-Galois quartic center for {h}")


def _num_den(x):
    # squarefree class of a rational: same as numerator * denominator
    x = Fraction(x)
    return x.numerator * x.denominator


def center_field(spec):
    q = spec.q
    v = spec.variant
    if isinstance(v, RealSqrtQ):
        return F.QQ if q.is_square else F.QuadraticField(q.p)
    if isinstance(v, QuadraticTrace):
        disc = v.beta ** 2 - 4 * q.q
        if disc == 0:
            return F.QQ
        return F.QuadraticField(squarefree_part(disc))
    if isinstance(v, BiquadraticSurd):
        return F.biquadratic_or_smaller(v.u, v.v)
    if isinstance(v, ScaledRootOfUnity):
        return F.cyclotomic(v.n)
    h = minimal_polynomial(spec)
    if h.degree == 1:
        return F.QQ
    if h.degree == 2:
        return F.QuadraticField(squarefree_part(h.coeff(1) ** 2 - 4 * h.coeff(0)))
    return _quartic_center(h, q.q)


# -------------------------------------------------------------- Newton polygon


@dataclass(frozen=True)
class NewtonPolygon:
    slopes: tuple  # ((Fraction slope, multiplicity), ...) increasing

    def multiset(self):
        out = []
        for s, m in self.slopes:
            out.extend([s] * m)
        return out


def newton_polygon(h, p):
    """Root valuations (v_p(p) = 1) read off the lower convex hull."""
    coeffs = h.ascending() if isinstance(h, IntPolynomial) else list(h)
    if coeffs[0] == 0:
        raise ValueError("Newton polygon needs a nonzero constant term")
    pts = [(i, padic_valuation(c, p)) for i, c in enumerate(coeffs) if c != 0]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it is on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes = {}
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        s = Fraction(y1 - y2, x2 - x1)
        slopes[s] = slopes.get(s, 0) + (x2 - x1)
    return NewtonPolygon(tuple(sorted(slopes.items())))


# ------------------------------------------------------------ local invariants


@dataclass(frozen=True)
class EndAlgebraDescriptor:
    center: object
    e: int
    invariants: tuple  # ((place tag, Fraction in [0, 1)), ...)
    d: int
    g: int
    albert_type: str
    commutative: bool
    e0: int
    minimal_polynomial: IntPolynomial = field(compare=False, default=None)

    def invariant(self, tag):
        return dict(self.invariants)[tag]

    @property
    def dimension(self):
        """dim over Q of the division algebra: d^2 e."""
        return self.d * self.d * self.e


def _real_root_count(h, q):
    if q.is_square:
        s = q.sqrt
        return sum(1 for c in (s, -s) if h(c) == 0)
    return 2 if exact_divide(h.coeffs, (1, 0, -q.q)) is not None else 0


def local_invariants(spec):
    q = spec.q
    p, a = q.p, q.a
    h = minimal_polynomial(spec)
    K = center_field(spec)
    e = h.degree
    if K.degree != e:
        raise UnsupportedCenterError(f"center degree {K.degree} != deg h = {e}")
    sd = F.splitting(p, K)
    ld = sd.local_degree
    inv = []
    count = 0
    for s, mult in newton_polygon(h, p).slopes:
        if mult % ld:
            raise UnsupportedCenterError(
                f"slope {s} with multiplicity {mult} does not fill primes of local degree {ld}"
            )
        for _ in range(mult // ld):
            count += 1
            inv.append((f"p{count}", (s * ld / a) % 1))
    if count != sd.g:
        raise UnsupportedCenterError(f"{count} slope classes but {sd.g} primes above {p}")
    r = _real_root_count(h, q)
    for i in range(r):
        inv.append((f"real{i + 1}", Fraction(1, 2)))
    for i in range((e - r) // 2):
        inv.append((f"complex{i + 1}", Fraction(0)))
    total = sum(x for _, x in inv) % 1
    if total != 0:
        raise AssertionError(f"invariants {inv} do not sum to 0 mod 1")
    d = lcm(*(x.denominator for _, x in inv))
    if (d * e) % 2:
        raise AssertionError(f"d*e = {d * e} is odd")
    g = d * e // 2
    if r == e:  # totally real center
        e0 = e
        if d == 1:
            kind = "I"
        elif all(x == Fraction(1, 2) for t, x in inv if t.startswith("real")):
            kind = "III"
        else:
            kind = "II"
    else:
        e0 = e // 2
        kind = "IV"
    return EndAlgebraDescriptor(
        center=K,
        e=e,
        invariants=tuple(inv),
        d=d,
        g=g,
        albert_type=kind,
        commutative=(d == 1),
        e0=e0,
        minimal_polynomial=h,
    )


# ------------------------------------------------------- characteristic poly


@dataclass(frozen=True)
class CharPolyReport:
    elementary: bool
    commutative: bool
    supersingular_all_endos: bool
    e: object
    d: object
    g: object
    factors: tuple  # ((IntPolynomial, multiplicity), ...)


def weil_factors(f, q):
    """Split a Weil polynomial of degree 2 or 4 into irreducible Weil factors."""
    Q = q.q
    rest = tuple(f.coeffs)
    out = []

    def peel(div):
        nonlocal rest
        k = 0
        while len(rest) > 1:
            nxt = exact_divide(rest, div)
            if nxt is None:
                break
            rest = nxt
            k += 1
        if k:
            out.append((IntPolynomial(div), k))

    if q.is_square:
        s = q.sqrt
        peel((1, -s))
        peel((1, s))
    else:
        peel((1, 0, -Q))
    n = len(rest) - 1
    if n == 2:
        out.append((IntPolynomial(rest), 1))
    elif n == 4:
        h = IntPolynomial(rest)
        c3, c2 = h.coeff(3), h.coeff(2)
        disc = c3 * c3 - 4 * (c2 - 2 * Q)
        if is_square(disc):
            r = isqrt(disc)
            s1, s2 = (-c3 + r) // 2, (-c3 - r) // 2
            f1, f2 = (1, -s1, Q), (1, -s2, Q)
            if f1 == f2:
                out.append((IntPolynomial(f1), 2))
            else:
                out.append((IntPolynomial(f1), 1))
                out.append((IntPolynomial(f2), 1))
        else:
            out.append((h, 1))
    elif n != 0:
        raise ValueError(f"cannot factor {f} as a Weil polynomial")
    merged = {}
    for fac, k in out:
        merged[fac.coeffs] = merged.get(fac.coeffs, 0) + k
    return tuple((IntPolynomial(c), k) for c, k in sorted(merged.items()))


def analyze_char_poly(f, q):
    if not isinstance(q, PrimePower):
        q = PrimePower.of(q)
    if f.degree not in (2, 4):
        raise ValueError("characteristic polynomials of degree 2 or 4 only")
    facs = weil_factors(f, q)
    for h, _ in facs:
        if not is_weil_poly(h, q):
            raise NotWeilError(f"factor {h} of {f} fails the Weil condition")
    elementary = len(facs) == 1
    commutative = all(k == 1 for _, k in facs)
    ss_all = elementary and facs[0][0].degree == 1 and q.is_square
    e = d = g = None
    if elementary:
        h, k = facs[0]
        desc = local_invariants(WeilNumberSpec(q, Polynomial(h)))
        e, d, g = desc.e, desc.d, desc.g
    return CharPolyReport(elementary, commutative, ss_all, e, d, g, facs)


# ---------------------------------------------------------------- Albert table

# (char 0 rule, char p rule) as functions of (e or e0, d, g)
_ALBERT = {
    "I": (lambda e, d, g: g % e == 0, lambda e, d, g: g % e == 0),
    "II": (lambda e, d, g: g % (2 * e) == 0, lambda e, d, g: g % (2 * e) == 0),
    "III": (lambda e, d, g: g % (2 * e) == 0, lambda e, d, g: g % e == 0),
    "IV": (lambda e, d, g: g % (e * d * d) == 0, lambda e, d, g: g % (e * d) == 0),
}


def albert_constraints(kind, e, d, g, char):
    """Divisibility condition of the Albert table; ``char`` is 0 or "p"."""
    if kind not in _ALBERT:
        raise ValueError(f"unknown Albert type {kind!r}")
    rule = _ALBERT[kind][0 if char == 0 else 1]
    return rule(e, d, g)


def parse_pi(text, q):
    """CLI grammar: sqrt | -sqrt | beta:<int> | surd:<u>,<v> | zeta:<n> | poly:<c_n,...,c_0>."""
    if not isinstance(q, PrimePower):
        q = PrimePower.of(q)
    t = text.strip()
    if t in ("sqrt", "+sqrt"):
        return WeilNumberSpec(q, RealSqrtQ(1))
    if t == "-sqrt":
        return WeilNumberSpec(q, RealSqrtQ(-1))
    kind, _, arg = t.partition(":")
    if kind == "beta":
        return WeilNumberSpec(q, QuadraticTrace(int(arg)))
    if kind == "surd":
        u, v = (int(x) for x in arg.split(","))
        return WeilNumberSpec(q, BiquadraticSurd(u, v))
    if kind == "zeta":
        return WeilNumberSpec(q, ScaledRootOfUnity(int(arg)))
    if kind == "poly":
        return WeilNumberSpec(q, Polynomial(IntPolynomial(tuple(int(x) for x in arg.split(",")))))
    raise ValueError(f"cannot parse Weil number spec {text!r}")
