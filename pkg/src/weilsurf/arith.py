"""Exact integer and rational helpers used by every other module.

Nothing here touches floating point.  Rationals are ``fractions.Fraction``,
which is already normalized with a positive denominator.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

MAX_FACTOR_INPUT = 2 ** 63
_TRIAL_LIMIT = 2 ** 16

# Deterministic Miller-Rabin witnesses, correct for every n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

INF = "inf"


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple  # ((prime, exponent), ...), primes increasing

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors}")
            last = p
            prod *= p ** e
        if prod != self.value:
            raise ValueError(f"factors do not multiply to {self.value}")

    def as_dict(self):
        return dict(self.factors)

    def primes(self):
        return [p for p, _ in self.factors]


def is_probable_prime(n):
    """Deterministic primality test for the desk-scale range."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


is_prime = is_probable_prime


def _pollard_rho(n):
    # Brent's variant with a fixed sequence of constants: repeatable output.
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        y, r, g = 2, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                prod = 1
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    prod = prod * abs(x - y) % n
                g = gcd(prod, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1


def factorize(n):
    """Factor 1 <= n <= 2**63: trial division by small primes, then rho."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"factorize expects a positive integer, got {n!r}")
    if n > MAX_FACTOR_INPUT:
        raise ValueError(f"{n} is outside the supported range (<= 2**63)")
    out = {}
    m = n
    for p in (2, 3):
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    f = 5
    step = 2
    while f * f <= m and f <= _TRIAL_LIMIT:
        while m % f == 0:
            out[f] = out.get(f, 0) + 1
            m //= f
        f += step
        step = 6 - step
    # every factor left is coprime to all primes below f
    stack = [m] if m > 1 else []
    while stack:
        k = stack.pop()
        if k < f * f or is_probable_prime(k):
            out[k] = out.get(k, 0) + 1
        else:
            d = _pollard_rho(k)
            stack.extend([d, k // d])
    return Factorization(n, tuple(sorted(out.items())))


def prime_power(q):
    """Return (p, a) with q = p**a, or None when q is not a prime power."""
    if q < 2:
        return None
    fac = factorize(q).factors
    if len(fac) != 1:
        return None
    return fac[0]


def multiplicative_order(r, m):
    """Least n >= 1 with r**n == 1 (mod m)."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if m == 1:
        return 1
    if gcd(r, m) != 1:
        raise ValueError(f"gcd({r}, {m}) != 1")
    r %= m
    lam = euler_phi(m)
    n = lam
    # shrink phi(m) prime by prime; the order divides phi(m)
    for p, _ in factorize(lam).factors:
        while n % p == 0 and pow(r, n // p, m) == 1:
            n //= p
    return n


def euler_phi(n):
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    out = n
    for p, _ in factorize(n).factors:
        out = out // p * (p - 1)
    return out


def kronecker_symbol(a, n):
    """Kronecker symbol (a/n) for arbitrary integers, not both zero."""
    if a == 0 and n == 0:
        raise ValueError("kronecker symbol (0/0) is undefined")
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # now n odd positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _as_fraction(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def padic_valuation(x, p):
    """v_p of a nonzero rational."""
    x = _as_fraction(x)
    if x == 0:
        raise ValueError("valuation of zero is undefined")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def squarefree_part(n):
    """Squarefree kernel with sign kept: -8 -> -2, 12 -> 3."""
    if n == 0:
        raise ValueError("squarefree part of 0 is undefined")
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factorize(abs(n)).factors:
        if e % 2:
            out *= p
    return sign * out


def is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


def lcm(*xs):
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def _unit_split(x, p):
    """Write x = p**v * u with u a p-adic unit; returns (v, u) as (int, Fraction)."""
    x = _as_fraction(x)
    v = padic_valuation(x, p)
    u = x / Fraction(p) ** v
    return v, u


def _unit_residue(u, modulus):
    # u is a p-adic unit rational; reduce num/den modulo a power of p
    return u.numerator * pow(u.denominator, -1, modulus) % modulus


def hilbert_symbol(a, b, place):
    """Local Hilbert symbol (a, b)_v for nonzero rationals a, b.

    ``place`` is a prime number or the string ``"inf"``.
    """
    a, b = _as_fraction(a), _as_fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if place == INF:
        return -1 if (a < 0 and b < 0) else 1
    p = place
    alpha, u = _unit_split(a, p)
    beta, v = _unit_split(b, p)
    if p == 2:
        uu = _unit_residue(u, 8)
        vv = _unit_residue(v, 8)
        eps_u = (uu - 1) // 2 % 2
        eps_v = (vv - 1) // 2 % 2
        om_u = (uu * uu - 1) // 8 % 2
        om_v = (vv * vv - 1) // 8 % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    uu = _unit_residue(u, p)
    vv = _unit_residue(v, p)
    eps = (p - 1) // 2
    sign = -1 if (alpha * beta * eps) % 2 else 1
    leg_u = kronecker_symbol(uu, p) if beta % 2 else 1
    leg_v = kronecker_symbol(vv, p) if alpha % 2 else 1
    return sign * leg_u * leg_v


def bad_primes(*xs):
    """Primes dividing 2 * numerators * denominators of the given rationals."""
    n = 2
    for x in xs:
        x = _as_fraction(x)
        n *= abs(x.numerator) * x.denominator
    return factorize(n).primes()


def fraction_str(x):
    x = _as_fraction(x)
    return f"{x.numerator}/{x.denominator}"
