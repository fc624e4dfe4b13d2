import random
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from weilsurf import fields as F
from weilsurf.arith import squarefree_part
from weilsurf.classify import elliptic_isogeny_classes

PRIMES_100 = list(sympy.primerange(2, 101))
x = sympy.symbols("x")


def quadratic_oracle(p, d):
    """Splitting of p in Q(sqrt d) from x^2 - d (or x^2 - x + (1-d)/4) mod p."""
    poly = x ** 2 - x + (1 - d) // 4 if d % 4 == 1 else x ** 2 - d
    disc = d if d % 4 == 1 else 4 * d
    if disc % p == 0:
        return F.RAMIFIED
    facs = sympy.factor_list(poly, modulus=p)[1]
    return F.SPLIT if len(facs) == 2 else F.INERT


def test_quadratic_examples():
    assert F.split_prime_quadratic(13, F.QuadraticField(-2)) == F.INERT
    assert F.split_prime_quadratic(7, F.QuadraticField(5)) == F.INERT
    assert F.split_prime_quadratic(2, F.QuadraticField(-2)) == F.RAMIFIED
    with pytest.raises(ValueError):
        F.QuadraticField(12)


@pytest.mark.parametrize("d", [-1, -2, -3, -5, -6, -7, -11, -15, -21, 2, 3, 5, 6, 7, 10, 11, 13])
def test_quadratic_vs_factoring(d):
    for p in PRIMES_100:
        assert F.split_prime_quadratic(p, F.QuadraticField(d)) == quadratic_oracle(p, d)


def test_lemma_prime_dec_examples():
    assert F.lemma_prime_dec(3, 2, 3) == F.RAMIFIED
    assert F.lemma_prime_dec(3, 2, 0) == F.INERT
    assert F.lemma_prime_dec(5, 1, 1) == F.SPLIT
    with pytest.raises(ValueError):
        F.lemma_prime_dec(3, 2, 6)


def test_lemma_prime_dec_exhaustive_q_le_49():
    count = 0
    for q in range(2, 50):
        pa = sympy.factorint(q)
        if len(pa) != 1:
            continue
        (p, a), = pa.items()
        for c in elliptic_isogeny_classes(q):
            if c.beta * c.beta >= 4 * q:
                continue
            d = squarefree_part(c.beta * c.beta - 4 * q)
            assert F.lemma_prime_dec(p, a, c.beta) == F.split_prime_quadratic(p, F.QuadraticField(d)), (q, c.beta)
            count += 1
    assert count > 150


def biquadratic_oracle(p, m, n):
    """(e, f, g) from factoring the minimal polynomial of sqrt m + sqrt -n mod p
    when p is unramified; from the subfield discriminants otherwise."""
    subs = [m, -n, squarefree_part(-m * n)]
    discs = [d if d % 4 == 1 else 4 * d for d in subs]
    if all(D % p for D in discs):
        h = x ** 4 - 2 * (m - n) * x ** 2 + (m + n) ** 2
        if (m + n) % p and sympy.discriminant(h, x) % p:
            facs = sympy.factor_list(h, modulus=p)[1]
            degs = {sympy.degree(f, x) for f, _ in facs}
            assert len(degs) == 1
            f = degs.pop()
            return F.SplittingData(1, f, 4 // f)
        # the generator is not p-integral-primitive; fall back to the subfields
        kinds = [quadratic_oracle(p, d) for d in subs]
        f = 2 if F.INERT in kinds else 1
        return F.SplittingData(1, f, 4 // f)
    ram = sum(1 for D in discs if D % p == 0)
    e = 4 if ram == 3 else 2
    rest = [d for d, D in zip(subs, discs) if D % p]
    f = 2 if rest and quadratic_oracle(p, rest[0]) == F.INERT else 1
    return F.SplittingData(e, f, 4 // (e * f))


BIQUAD = [(5, 2), (6, 1), (2, 3), (2, 1), (3, 1), (5, 1), (3, 2), (7, 5), (10, 3), (11, 2)]


@pytest.mark.parametrize("m,n", BIQUAD)
def test_biquadratic_efg(m, n):
    K = F.make_biquadratic(m, n)
    for p in PRIMES_100:
        sd = F.splitting(p, K)
        assert sd.e * sd.f * sd.g == 4
        assert sd == biquadratic_oracle(p, K.m, K.n), (p, K)


def test_biquadratic_random_fifty():
    rng = random.Random(20260101)
    sqfree = [k for k in range(2, 60) if squarefree_part(k) == k]
    done = 0
    while done < 50:
        m, n = rng.choice(sqfree), rng.choice(sqfree)
        if squarefree_part(-m * n) in (-n, m) or m == n:
            continue
        K = F.make_biquadratic(m, n)
        p = rng.choice(PRIMES_100)
        assert F.splitting(p, K) == biquadratic_oracle(p, K.m, K.n)
        done += 1


def test_biquadratic_patterns():
    # split in all three subfields -> complete splitting
    K = F.make_biquadratic(5, 1)  # Q(sqrt 5, i): 29 = 1 mod 4 and a square mod 5
    assert F.splitting(29, K) == F.SplittingData(1, 1, 4)
    assert F.splitting(7, F.make_biquadratic(5, 2)) == F.SplittingData(1, 2, 2)


def cyclotomic_oracle(p, n):
    k, n1 = 0, n
    while n1 % p == 0:
        n1 //= p
        k += 1
    e = sympy.totient(p ** k) if k else 1
    phi = sympy.Poly(sympy.cyclotomic_poly(n1, x), x)
    facs = sympy.factor_list(phi.as_expr(), modulus=p)[1] if n1 > 2 else [(x, 1)]
    f = sympy.degree(facs[0][0], x)
    return F.SplittingData(int(e), int(f), len(facs))


@pytest.mark.parametrize("n", [3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24])
def test_cyclotomic_vs_factoring(n):
    K = F.CyclotomicField(n)
    for p in PRIMES_100:
        sd = F.splitting(p, K)
        assert sd.e * sd.f * sd.g == K.degree
        assert sd == cyclotomic_oracle(p, n), (p, n)


def test_cyclotomic_examples():
    assert F.splitting(2, F.CyclotomicField(8)) == F.SplittingData(4, 1, 1)
    assert F.splitting(5, F.cyclotomic(10)) == F.SplittingData(4, 1, 1)
    assert F.splitting(13, F.CyclotomicField(12)) == F.SplittingData(1, 1, 4)


def test_contains_sqrt():
    assert F.contains_sqrt(F.CyclotomicField(8), 2)
    assert F.contains_sqrt(F.CyclotomicField(8), -1)
    assert F.contains_sqrt(F.CyclotomicField(12), 3)
    assert F.contains_sqrt(F.make_biquadratic(5, 2), 5)
    assert F.contains_sqrt(F.make_biquadratic(5, 2), -10)
    assert not F.contains_sqrt(F.QuadraticField(11), 3)
    assert F.contains_sqrt(F.QQ, 4)


def test_cyclotomic_quadratic_subfields_by_discriminant():
    for n in range(3, 61):
        if n % 4 == 2:
            continue
        K = F.CyclotomicField(n)
        want = set()
        for d in range(-n, n + 1):
            if d in (0, 1) or squarefree_part(d) != d:
                continue
            disc = d if d % 4 == 1 else 4 * d
            if n % abs(disc) == 0:
                want.add(d)
        assert set(K.quadratic_subfields()) == want


def test_roots_of_unity():
    assert F.roots_of_unity_order(F.QuadraticField(-1)) == 4
    assert F.roots_of_unity_order(F.QuadraticField(-3)) == 6
    assert F.roots_of_unity_order(F.QuadraticField(-2)) == 2
    assert F.roots_of_unity_order(F.make_biquadratic(5, 2)) == 2
    assert F.roots_of_unity_order(F.make_biquadratic(6, 1)) == 4
    assert F.roots_of_unity_order(F.make_biquadratic(2, 3)) == 6
    assert F.roots_of_unity_order(F.make_biquadratic(2, 1)) == 8
    assert F.roots_of_unity_order(F.make_biquadratic(3, 1)) == 12
    assert F.roots_of_unity_order(F.cyclotomic(5)) == 10


def test_labels_round_trip():
    for K in (F.QQ, F.QuadraticField(-7), F.make_biquadratic(5, 2), F.CyclotomicField(8)):
        assert F.field_from_label(K.label()) == K
    assert F.field_from_label("Qsqrt2") == F.QuadraticField(2)


@given(st.sampled_from(PRIMES_100), st.integers(min_value=-200, max_value=200))
def test_efg_is_degree(p, d):
    if d in (0, 1) or squarefree_part(d) != d:
        return
    sd = F.splitting(p, F.QuadraticField(d))
    assert sd.e * sd.f * sd.g == 2
