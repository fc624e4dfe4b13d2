"""Finite subgroups of division rings: the metacyclic groups G_{m,r}.

G_{m,r} = <a, b | a^m = 1, b^n = a^t, b a b^-1 = a^r> with n the order of r
mod m, s = gcd(r - 1, m) and t = m / s.  When r = 1 the group is taken to be
cyclic of order m with n = s = 1.  For m = 2 the only residue is r = 1 = -1,
and the order-4 group (b^2 = a) needs n = 2 passed explicitly.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import fields as F
from .arith import factorize, multiplicative_order, padic_valuation
from .groups import FiniteGroupId, cyclic_id, named_id, parse_id, reference_fingerprint

# rule tags recorded in an EmbeddingVerdict
C1_FAIL = "C1-fail"
C2_FAIL = "C2-fail"
ANTIPODAL = "antipodal"  # n = s = 2 and r = -1 mod m
ODD_PRIME_WITNESS = "odd-prime-witness"
TWO_WITNESS = "two-witness"
SQUAREFREE_NONCYCLIC = "squarefree-noncyclic"
FULL_ORDER = "full-order-semidirect"

EMBEDDABLE_RULES = (ANTIPODAL, ODD_PRIME_WITNESS, TWO_WITNESS)


@dataclass(frozen=True)
class DicyclicParams:
    m: int
    r: int
    n: int
    s: int
    t: int
    cyclic_convention: bool = False

    @property
    def order(self):
        return self.m * self.n


@dataclass(frozen=True)
class PrimeData:
    p: int
    alpha: int
    n_p: int
    delta_p: int
    gamma_p: object  # None for p = 2


@dataclass(frozen=True)
class EmbeddingVerdict:
    embeddable: bool
    rule_fired: str
    witness: object = None  # PrimeData, or None

    def __post_init__(self):
        if self.embeddable != (self.rule_fired in EMBEDDABLE_RULES):
            raise ValueError(f"rule {self.rule_fired} inconsistent with embeddable={self.embeddable}")


def dicyclic_params(m, r, n=None):
    if m < 1:
        raise ValueError("m must be positive")
    if gcd(r, m) != 1:
        raise ValueError(f"gcd({r}, {m}) != 1")
    r %= m
    if n is None:
        if r == 1 % m:
            return DicyclicParams(m, r, 1, 1, m, cyclic_convention=True)
        n = multiplicative_order(r, m)
    elif pow(r, n, m) != 1 % m:
        raise ValueError(f"{r}^{n} is not 1 mod {m}")
    s = gcd(r - 1, m)
    return DicyclicParams(m, r, n, s, m // s)


def prime_data(params, p):
    m, r = params.m, params.r
    alpha = padic_valuation(m, p)
    rest = m // p ** alpha
    return PrimeData(
        p=p,
        alpha=alpha,
        n_p=multiplicative_order(r, rest),
        delta_p=multiplicative_order(p, rest),
        gamma_p=None if p == 2 else multiplicative_order(2, p),
    )


def _odd_part(x):
    while x % 2 == 0:
        x //= 2
    return x


def check_C1(P):
    return gcd(P.n, P.t) == 1 and gcd(P.s, P.t) == 1


def check_C2(P):
    if P.n % 2 or P.m % 4 or P.s % 2:
        return False
    if (P.n // 2) % 2 == 0 or (P.s // 2) % 2 == 0:
        return False
    two_part = P.m // _odd_part(P.m)
    return gcd(P.n, P.t) == 2 and gcd(P.s, P.t) == 2 and (P.r + 1) % two_part == 0


def _primes(x):
    return factorize(x).primes() if x > 1 else []


def _witness_for(P, q, c2):
    """First prime p | m meeting the existence clause for the prime q | n."""
    for p in _primes(P.m):
        data = prime_data(P, p)
        if data.n_p % q == 0:
            continue
        if p != 2:
            # (p^delta - 1)/s need not be an integer; test q against its reduced numerator
            x = Fraction(p ** data.delta_p - 1, P.s)
            if x.numerator % q != 0:
                return data, ODD_PRIME_WITNESS
        elif q == 2 and c2 and (P.m // 4) % 2 == 1 and data.delta_p % 2 == 1:
            return data, TWO_WITNESS
    return None, None


def unique_prime_candidates(P, q):
    """Primes p | m with q not dividing n_p (there is at most one)."""
    return [p for p in _primes(P.m) if prime_data(P, p).n_p % q]


def squarefree_order_obstruction(order, cyclic):
    """A noncyclic group of squarefree order never embeds in a division ring."""
    if cyclic:
        return False
    return all(e == 1 for _, e in factorize(order).factors)


def full_order_obstruction(m, n, r):
    """<a, b | a^m = b^n = 1, b a b^-1 = a^r> does not embed when r has order exactly n mod m."""
    return n > 1 and gcd(r, m) == 1 and multiplicative_order(r, m) == n


def is_cyclic(P):
    if P.r % P.m != 1 % P.m:
        return False
    # abelian: Z^2 / <(m, 0), (-t, n)> is cyclic iff gcd(m, t, n) = 1
    return gcd(gcd(P.m, P.t), P.n) == 1


def embeds_in_division_ring(m, r, n=None):
    P = m if isinstance(m, DicyclicParams) else dicyclic_params(m, r, n)
    c1, c2 = check_C1(P), check_C2(P)
    if c1 or c2:
        if P.n == 2 and P.s == 2 and (P.r + 1) % P.m == 0:
            return EmbeddingVerdict(True, ANTIPODAL)
        witness, rule = None, None
        ok = True
        for q in _primes(P.n):
            w, rl = _witness_for(P, q, c2)
            if w is None:
                ok = False
                break
            if witness is None:
                witness, rule = w, rl
        if ok:
            return EmbeddingVerdict(True, rule or ODD_PRIME_WITNESS, witness)
    # not embeddable: report the most specific obstruction available
    if squarefree_order_obstruction(P.order, is_cyclic(P)):
        return EmbeddingVerdict(False, SQUAREFREE_NONCYCLIC)
    if P.s == 1 and full_order_obstruction(P.m, P.n, P.r):
        return EmbeddingVerdict(False, FULL_ORDER)
    return EmbeddingVerdict(False, C2_FAIL if c2 else C1_FAIL)


_DICYCLIC_NAMES = {4: "Q8", 6: "Dic12", 8: "Dic16", 10: "Dic20", 12: "Dic24"}


def group_id(P):
    """Catalogue name when the presentation is one of the small named groups."""
    if is_cyclic(P):
        return cyclic_id(P.order)
    if P.n == 2 and (P.r + 1) % P.m == 0 and P.m in _DICYCLIC_NAMES:
        return named_id(_DICYCLIC_NAMES[P.m])
    return FiniteGroupId("Unknown", args=(("G", P.m, P.r, P.n),))


@dataclass(frozen=True)
class DicyclicCase:
    params: DicyclicParams
    regime: object  # "C1", "C2" or None
    verdict: EmbeddingVerdict
    group: FiniteGroupId


def survey_small_dicyclic(max_m):
    """Every (m, r) with 2 <= m <= max_m and r of order 2 mod m (r = 1 for m = 2)."""
    if max_m > 64:
        raise ValueError("desk-scale survey: max_m <= 64")
    out = []
    for m in range(2, max_m + 1):
        for r in range(1, m):
            if gcd(r, m) != 1 or (r * r) % m != 1 % m:
                continue
            if r == 1 and m != 2:
                continue
            P = dicyclic_params(m, r, n=2)
            regime = "C1" if check_C1(P) else "C2" if check_C2(P) else None
            out.append(DicyclicCase(P, regime, embeds_in_division_ring(P, None), group_id(P)))
    return out


def enumerate_small_dicyclic(max_m, regime=None):
    """Embeddable G_{m,r} with n = 2, optionally restricted to one regime."""
    return [
        c
        for c in survey_small_dicyclic(max_m)
        if c.verdict.embeddable and (regime is None or c.regime == regime)
    ]


def tetrahedral_product_admissible(m, r=1):
    """Can T* x G_{m,r} sit in a division ring?  Needs gcd(|G|, 6) = 1 and odd order of 2 mod p."""
    if m == 1:
        return True
    P = dicyclic_params(m, r)
    if gcd(P.order, 6) != 1:
        return False
    if not is_cyclic(P) and not embeds_in_division_ring(P, None).embeddable:
        return False
    return all(multiplicative_order(2, p) % 2 == 1 for p in _primes(m))


# --------------------------------------------- quaternion algebras, dim <= 8

CYCLIC_ORDERS = (2, 4, 6, 8, 10, 12)
NONCYCLIC_METACYCLIC = ("Q8", "Dic12", "Dic16", "Dic20", "Dic24")

# an element of order k generates K(zeta_k), of degree <= 2 over K only if
# zeta_k + zeta_k^-1 already lies in K
_REAL_CYCLOTOMIC_SQRT = {1: 1, 2: 1, 3: 1, 4: 1, 6: 1, 5: 5, 10: 5, 8: 2, 12: 3}


def admits_element_of_order(k, center):
    s = _REAL_CYCLOTOMIC_SQRT.get(k)
    if s is None:
        return False
    return F.contains_sqrt(center, s)


def quaternion_finite_subgroups(center):
    """Finite subgroups of a quaternion division algebra over ``center`` with dim_Q <= 8."""
    if center.degree > 2:
        raise ValueError(f"center {center.label()} makes the algebra too big (dim_Q > 8)")
    out = [cyclic_id(k) for k in CYCLIC_ORDERS]
    out += [named_id(x) for x in NONCYCLIC_METACYCLIC]
    out.append(named_id("Tstar"))
    if F.contains_sqrt(center, 2):
        out.append(named_id("Ostar"))
    if F.contains_sqrt(center, 5):
        out.append(named_id("Istar"))
    return out


def simple_surface_subgroups(desc):
    """Candidate finite subgroups of End^0(X)^x for a simple abelian surface X."""
    if desc.g != 2:
        raise ValueError(f"not a surface: g={desc.g}")
    dim = desc.d * desc.d * desc.e
    if dim == 4:
        return [cyclic_id(k) for k in CYCLIC_ORDERS]
    if dim == 8:
        return quaternion_finite_subgroups(desc.center)
    raise ValueError(f"End^0 of a simple surface has dimension 4 or 8, got {dim}")


def real_quadratic_embeds(d, ramified):
    """Does Q(sqrt d), d > 1, embed in the quaternion algebra over Q ramified at ``ramified``?

    It does iff no ramified place splits in it; the real place always splits.
    """
    if d <= 1:
        raise ValueError("real quadratic field needs d > 1")
    K = F.QuadraticField(d)
    for v in ramified:
        if v == "inf":
            return False
        if F.split_prime_quadratic(v, K) == F.SPLIT:
            return False
    return True


# proper supergroups among the quaternion-case candidates (checked constructively in tests)
PROPER_SUPERGROUPS = {
    "Cyclic(2)": ("Cyclic(4)", "Cyclic(6)", "Cyclic(8)", "Cyclic(10)", "Cyclic(12)", "Q8", "Dic12", "Dic16", "Dic20", "Dic24", "Tstar", "Ostar", "Istar"),
    "Cyclic(4)": ("Cyclic(8)", "Cyclic(12)", "Q8", "Dic12", "Dic16", "Dic20", "Dic24", "Tstar", "Ostar", "Istar"),
    "Cyclic(6)": ("Cyclic(12)", "Dic12", "Dic24", "Tstar", "Ostar", "Istar"),
    "Cyclic(8)": ("Dic16", "Ostar"),
    "Cyclic(10)": ("Dic20", "Istar"),
    "Cyclic(12)": ("Dic24",),
    "Q8": ("Dic16", "Dic24", "Tstar", "Ostar", "Istar"),
    "Dic12": ("Dic24", "Ostar", "Istar"),
    "Dic16": ("Ostar",),
    "Dic20": ("Istar",),
    "Dic24": (),
    "Tstar": ("Ostar", "Istar"),
    "Ostar": (),
    "Istar": (),
}


def admissible_in_quaternion(gid, center):
    """Every element order of the group must be realizable over ``center``."""
    if gid.tag == "Ostar" and not F.contains_sqrt(center, 2):
        return False
    if gid.tag == "Istar" and not F.contains_sqrt(center, 5):
        return False
    return all(admits_element_of_order(k, center) for k, _ in reference_fingerprint(gid).histogram)


def maximal_in_quaternion(gid, center):
    """Admissible over ``center`` with no admissible proper supergroup."""
    if not admissible_in_quaternion(gid, center):
        return False
    return not any(admissible_in_quaternion(parse_id(h), center) for h in PROPER_SUPERGROUPS[gid.name()])
