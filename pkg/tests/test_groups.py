import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import factorint
from sympy.combinatorics import Permutation, PermutationGroup

from weilsurf import groups
from weilsurf.groups import (
    CATALOGUE_ORDERS,
    CONSTRUCTIBLE,
    RULE_ONLY,
    GroupTooLarge,
    close_generators,
    compute_catalogue_fingerprints,
    construct,
    cyclic_id,
    direct_product,
    fingerprint,
    identify,
    load_golden_fingerprints,
    named_id,
    parse_id,
    product_fingerprint,
    product_id,
    reference_fingerprint,
    render_golden_fingerprints,
    subgroup_ids,
    wreath_two,
)
from weilsurf.quat import base_number, quaternion_algebra

H = Fraction(1, 2)


# ------------------------------------------------------------------ oracle


def regular_representation(G):
    perms = [Permutation([G.mul(g, x) for x in range(G.order)]) for g in G.generators]
    return PermutationGroup(perms or [Permutation(list(range(G.order)))])


def oracle_fingerprint(G):
    P = regular_representation(G)
    hist = Counter(p.order() for p in P.generate())
    abel = sorted(x for x in P.abelian_invariants() if x > 1)
    return P.order(), sorted(hist.items()), P.center().order(), P.derived_subgroup().order(), abel


def _merge(invs):
    # sympy reports prime-power invariants; fold into invariant factors d1 | d2 | ...
    by_p = {}
    for x in invs:
        (p, e), = factorint(x).items()
        by_p.setdefault(p, []).append(p**e)
    cols = max((len(v) for v in by_p.values()), default=0)
    out = [1] * cols
    for v in by_p.values():
        v.sort(reverse=True)
        for k, x in enumerate(v):
            out[k] *= x
    return sorted(out)


SMALL = [t for t in CONSTRUCTIBLE if CATALOGUE_ORDERS[t] <= 240]


@pytest.mark.parametrize("tag", SMALL)
def test_fingerprint_matches_sympy(tag):
    G = construct(tag)
    fp = fingerprint(G)
    order, hist, center, derived, abel = oracle_fingerprint(G)
    assert fp.order == order == CATALOGUE_ORDERS[tag]
    assert list(fp.histogram) == hist
    assert fp.center == center
    assert fp.derived == derived
    assert sorted(fp.abelianization) == _merge(abel)


def test_fingerprint_invariants_all_catalogue():
    for tag, fp in compute_catalogue_fingerprints().items():
        assert sum(c for _, c in fp.histogram) == fp.order
        assert fp.order % fp.center == 0 and fp.order % fp.derived == 0


# ---------------------------------------------------------------- catalogue


def test_golden_file_matches_constructions():
    path = groups.Path(groups.__file__).with_name("data") / groups.GOLDEN_FINGERPRINTS
    assert load_golden_fingerprints(path) == compute_catalogue_fingerprints()
    assert render_golden_fingerprints(compute_catalogue_fingerprints()) == path.read_text()


def test_sl2f5_extensions_distinct():
    a, b = reference_fingerprint(named_id("SL2F5dot2")), reference_fingerprint(named_id("SL2F5colon2"))
    assert a.order == b.order == 240
    assert a.histogram != b.histogram


def test_no_fingerprint_collisions():
    fps = compute_catalogue_fingerprints()
    assert len(set(fps.values())) == len(fps)


@pytest.mark.parametrize("tag", CONSTRUCTIBLE)
def test_constructions_identify_to_themselves(tag):
    assert identify(construct(tag)) == named_id(tag)


def test_rule_only_groups():
    for tag in RULE_ONLY:
        with pytest.raises(KeyError):
            construct(tag)
        assert named_id(tag).order == CATALOGUE_ORDERS[tag]


def test_identify_is_deterministic():
    a = [identify(construct("Ostar")) for _ in range(3)]
    assert len(set(a)) == 1


def test_unknown_fingerprint():
    # Z/3 x Z/3 is not in the catalogue and is not cyclic
    G = direct_product(construct("Cyclic(3)"), construct("Cyclic(3)"))
    gid = identify(G)
    assert gid.tag == "Unknown"
    assert gid.order == 9


# -------------------------------------------------------------- closures


def test_trivial_group():
    G = close_generators([], lambda x, y: x * y, 1)
    assert G.order == 1


def test_bound_exceeded():
    with pytest.raises(GroupTooLarge):
        close_generators([1], lambda x, y: (x + y) % 50, 0, bound=10)
    with pytest.raises(ValueError):
        close_generators([1], lambda x, y: (x + y) % 5, 0, bound=5000)


def test_q8_from_i_j():
    alg = quaternion_algebra(-1, -1)
    G = close_generators([alg.element(0, 1), alg.element(0, 0, 1)], lambda x, y: x * y, alg.one())
    assert identify(G) == named_id("Q8")


def test_dic12_over_sqrt11_generators():
    alg = quaternion_algebra(-1, -3, 11)
    alpha = alg.element(H, 0, H)
    beta = alg.element(0, 1)
    G = close_generators([alpha, beta], lambda x, y: x * y, alg.one())
    assert G.order == 12
    assert identify(G) == named_id("Dic12")


def test_dic24_over_sqrt3_generators():
    alg = quaternion_algebra(-1, -1, 3)
    alpha = alg.element(base_number(0, H, 3), 0, H)
    beta = alg.element(0, 1)
    G = close_generators([alpha, beta], lambda x, y: x * y, alg.one())
    assert G.order == 24
    assert identify(G) == named_id("Dic24")


def test_cyclic_eight():
    G = close_generators([1], lambda x, y: (x + y) % 8, 0)
    assert identify(G) == cyclic_id(8)


@settings(max_examples=40)
@given(st.integers(1, 60))
def test_cyclic_closure(k):
    G = close_generators([1 % k], lambda x, y: (x + y) % k, 0)
    assert G.order == k
    assert identify(G) == cyclic_id(k)


@pytest.mark.parametrize("tag", ["Q8", "Dic12", "Tstar", "Ostar", "Istar", "GL2F3"])
def test_associativity_sampled(tag):
    G = construct(tag)
    rng = random.Random(tag)
    for _ in range(300):
        a, b, c = (rng.randrange(G.order) for _ in range(3))
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    for i in range(G.order):
        assert G.mul(i, G.inverse(i)) == G.identity


# --------------------------------------------------------------- products


def test_product_id_examples():
    z2 = cyclic_id(2)
    assert product_id(z2, z2) == named_id("Klein")
    assert product_id(z2, cyclic_id(3)) == cyclic_id(6)
    p = product_id(named_id("Dic12"), z2)
    assert p == product_id(z2, named_id("Dic12"))
    assert p.pretty() == "Z/2Z x Dic12"
    t = product_id(named_id("Tstar"), named_id("Tstar"))
    assert t.name() == "Product(Tstar, Tstar)"
    assert t.order == 576


@pytest.mark.parametrize(
    "a,b",
    [("Cyclic(2)", "Dic12"), ("Cyclic(4)", "Tstar"), ("Cyclic(6)", "Cyclic(4)"), ("Dic12", "Dic12"), ("Tstar", "Cyclic(6)")],
)
def test_product_fingerprint_matches_construction(a, b):
    ga, gb = parse_id(a), parse_id(b)
    G = direct_product(construct(ga), construct(gb))
    assert fingerprint(G) == product_fingerprint(reference_fingerprint(ga), reference_fingerprint(gb))
    assert identify(G, products_of=[(ga, gb)]) == product_id(ga, gb)


def test_parse_round_trip():
    names = ["Cyclic(7)", "Klein", "Tstar", "Product(Cyclic(2), Dic12)", "Product(Tstar, Tstar)", "Product(Cyclic(4), Cyclic(6))"]
    for n in names:
        assert parse_id(n).name() == n
    assert parse_id("Z6") == cyclic_id(6)
    with pytest.raises(ValueError):
        parse_id("NotAGroup")
    with pytest.raises(ValueError):
        cyclic_id(0)


def test_wreath_products():
    assert identify(wreath_two(construct("Tstar"))) == named_id("WreathSL2F3")
    assert identify(wreath_two(construct("Dic12"))) == named_id("WreathDic12")
    assert wreath_two(construct("Cyclic(6)")).order == 72


def test_subgroup_ids():
    G = construct("Ostar")
    found = subgroup_ids(G, [named_id("Q8"), named_id("Dic16"), named_id("Dic12"), named_id("Dic20")])
    assert found == {named_id("Q8"), named_id("Dic16"), named_id("Dic12")}
