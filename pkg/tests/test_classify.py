import time
from itertools import product

import pytest
import sympy as sp
from sympy.ntheory.factor_ import core

from weilsurf import classify, quat
from weilsurf.classify import (
    ORDINARY,
    PIPELINES,
    SS_ALL,
    SS_PARTIAL,
    UncertifiedOrderError,
    WitnessError,
    certify_imag_quadratic,
    certify_quaternion_order,
    class_aut_group,
    elliptic_aut_groups,
    elliptic_endo_ring_families,
    elliptic_isogeny_classes,
    existence_conditions,
    find_class,
    load_golden_tables,
    matches_golden,
    order_construction_rules,
)
from weilsurf.groups import cyclic_id, named_id, parse_id, product_id
from weilsurf.weil import PrimePower


# ------------------------------------------------------------------ oracle
# Count points on every Weierstrass curve over a small field and collect the traces.

MODULI = {4: (2, (1, 1)), 8: (2, (1, 0, 1)), 9: (3, (2, 0))}  # t^2 = t + 1, t^3 = t + 1, t^2 = -1


def field_elements(q):
    if q not in MODULI:
        return list(range(q)), (lambda x, y: (x + y) % q), (lambda x, y: (x * y) % q), 0, 1
    p, low = MODULI[q]
    n = len(low)
    elems = list(product(range(p), repeat=n))

    def add(x, y):
        return tuple((u + v) % p for u, v in zip(x, y))

    def mul(x, y):
        # coefficients low degree first; reduce t^n = sum low[k] t^k
        c = [0] * (2 * n - 1)
        for i, u in enumerate(x):
            for j, v in enumerate(y):
                c[i + j] += u * v
        for d in range(2 * n - 2, n - 1, -1):
            top, c[d] = c[d], 0
            for k, w in enumerate(low):
                c[d - n + k] += top * w
        return tuple(v % p for v in c[:n])

    zero = tuple([0] * n)
    one = tuple([1] + [0] * (n - 1))
    return elems, add, mul, zero, one


def brute_force_traces(q):
    """Traces q + 1 - #E(F_q) over all smooth Weierstrass curves.

    A singular Weierstrass cubic has its unique singular point over F_q, so
    smoothness is checked by scanning F_q-points for a common zero of F, F_x, F_y.
    """
    elems, add, mul, zero, one = field_elements(q)
    char = PrimePower.of(q).p

    def smul(n, x):
        out = zero
        for _ in range(n % char):
            out = add(out, x)
        return out

    def neg(x):
        return smul(char - 1, x)

    traces = set()
    if char == 2:
        # every curve is y^2 + xy = x^3 + a2 x^2 + a6 or y^2 + a3 y = x^3 + a4 x + a6
        coeff_sets = [(one, a2, zero, zero, a6) for a2, a6 in product(elems, repeat=2)]
        coeff_sets += [(zero, zero, a3, a4, a6) for a3, a4, a6 in product(elems, repeat=3)]
    else:
        coeff_sets = ((zero, a2, zero, a4, a6) for a2, a4, a6 in product(elems, repeat=3))
    for a1, a2, a3, a4, a6 in coeff_sets:
        count, smooth = 1, True
        for x in elems:
            x2 = mul(x, x)
            rhs = add(add(add(mul(x2, x), mul(a2, x2)), mul(a4, x)), a6)
            lin = add(mul(a1, x), a3)
            fx = add(neg(smul(3, x2)), add(neg(smul(2, mul(a2, x))), neg(a4)))
            for y in elems:
                if add(mul(y, y), mul(lin, y)) != rhs:
                    continue
                count += 1
                if add(smul(2, y), lin) == zero and add(mul(a1, y), fx) == zero:
                    smooth = False
                    break
            if not smooth:
                break
        if smooth:
            traces.add(q + 1 - count)
    return traces


BRUTE_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13, 17]


@pytest.mark.parametrize("q", BRUTE_Q)
def test_traces_match_point_counts(q):
    assert {c.beta for c in elliptic_isogeny_classes(q)} == brute_force_traces(q)


# ------------------------------------------------------------ elliptic classes


def _kinds(q):
    return {c.beta: (c.kind, c.condition) for c in elliptic_isogeny_classes(q)}


def test_q3_classes():
    k = _kinds(3)
    assert set(k) == {-3, -2, -1, 0, 1, 2, 3}
    for b in (1, -1, 2, -2):
        assert k[b] == (ORDINARY, 1)
    assert k[3] == k[-3] == (SS_PARTIAL, 4)
    assert k[0] == (SS_PARTIAL, 5)
    assert find_class(3, 2).end_label() == "Q(sqrt -2)"


def test_q4_classes():
    k = _kinds(4)
    assert k[4] == k[-4] == (SS_ALL, 2)
    assert k[2] == k[-2] == (SS_PARTIAL, 3)
    assert k[0] == (SS_PARTIAL, 5)


def test_q2_has_zero_trace():
    assert _kinds(2)[0] == (SS_PARTIAL, 5)


def test_q_upper_bound():
    with pytest.raises(ValueError):
        elliptic_isogeny_classes(PrimePower.of(2**31 + 11))


def _prime_powers(limit):
    return [n for n in range(2, limit + 1) if len(sp.factorint(n)) == 1]


@pytest.mark.parametrize("q", _prime_powers(49))
def test_condition_exclusivity_audit(q):
    pp = PrimePower.of(q)
    accepted = {c.beta for c in elliptic_isogeny_classes(pp)}
    bound = int(sp.floor(2 * sp.sqrt(q)))
    for beta in range(-bound - 2, bound + 3):
        conds = existence_conditions(pp, beta)
        if beta in accepted:
            assert len(conds) == 1
        elif beta * beta <= 4 * q:
            assert conds == ()
    # beyond the Hasse bound nothing is accepted
    assert all(b * b <= 4 * q for b in accepted)


@pytest.mark.parametrize("q", _prime_powers(64))
def test_kind_rules(q):
    pp = PrimePower.of(q)
    for c in elliptic_isogeny_classes(pp):
        if c.beta % pp.p:
            assert c.kind == ORDINARY
        elif pp.a % 2 == 0 and abs(c.beta) == 2 * pp.sqrt:
            assert c.kind == SS_ALL
            assert c.end_label() == f"D_{{{pp.p},inf}}"
        else:
            assert c.kind == SS_PARTIAL


def _unit_count(d):
    # roots of unity in Q(sqrt d), d < 0 squarefree
    return {-1: 4, -3: 6}.get(d, 2)


@pytest.mark.parametrize("q", [2, 3, 5, 7, 11, 13, 25, 27, 49])
def test_non_quaternion_aut_groups(q):
    for c in elliptic_isogeny_classes(q):
        if c.kind == SS_ALL:
            continue
        disc = c.beta**2 - 4 * q
        assert disc < 0
        sqf = -int(core(-disc))
        g, _ = class_aut_group(c)
        assert g == cyclic_id(_unit_count(sqf))


def test_aut_group_examples():
    assert class_aut_group(find_class(9, 6))[0] == named_id("Dic12")
    assert class_aut_group(find_class(9, -6))[0] == named_id("Dic12")
    assert class_aut_group(find_class(4, 4))[0] == named_id("Tstar")
    sixes = [c for c in elliptic_isogeny_classes(7) if c.end_label() == "Q(sqrt -3)"]
    assert sixes and all(class_aut_group(c)[0] == cyclic_id(6) for c in sixes)


def test_aut_group_union_over_witness_fields():
    found = set()
    for q in (3, 4, 5, 7, 9):
        found |= set(elliptic_aut_groups(q))
    assert found == {cyclic_id(2), cyclic_id(4), cyclic_id(6), named_id("Dic12"), named_id("Tstar")}


def test_ss_all_over_larger_prime_uses_saturated_order():
    # p = 13 and 241 need the searched maximal orders
    assert class_aut_group(find_class(169, 26))[0] == cyclic_id(2)
    assert class_aut_group(find_class(25, 10))[0] == cyclic_id(6)
    assert class_aut_group(find_class(49, 14))[0] == cyclic_id(4)


def test_endo_families():
    assert elliptic_endo_ring_families(find_class(5, 1)) == "every order containing pi"
    assert elliptic_endo_ring_families(find_class(4, 4)) == "every maximal order"
    assert "conductor is prime to p" in elliptic_endo_ring_families(find_class(3, 0))


# -------------------------------------------------------------- certificates


def test_certificates():
    c = certify_imag_quadratic(-15)
    assert "Z[(1+sqrt-15)/2]" in c.description
    m = order_construction_rules("matrix", c)
    assert m.maximal and m.description.startswith("M2(")
    s = order_construction_rules("direct_sum", certify_imag_quadratic(-2), certify_imag_quadratic(-11))
    assert s.maximal and "Z[sqrt-2]" in s.description and "Z[(1+sqrt-11)/2]" in s.description
    q = certify_quaternion_order(quat.builtin_order("hurwitz_D2"))
    assert order_construction_rules("passthrough", q) is q


def test_uncertified_component():
    with pytest.raises(UncertifiedOrderError):
        certify_quaternion_order(quat.builtin_order("dic12_over_sqrt11"))
    bad = classify.OrderCertificate("naive", "none", False)
    with pytest.raises(UncertifiedOrderError):
        order_construction_rules("direct_sum", certify_imag_quadratic(-1), bad)
    with pytest.raises(ValueError):
        order_construction_rules("passthrough", certify_imag_quadratic(-1), certify_imag_quadratic(-2))
    with pytest.raises(ValueError):
        order_construction_rules("tensor", certify_imag_quadratic(-1))


# ----------------------------------------------------------------- pipelines


EXPECTED_COUNTS = {2: 5, 10: 11, 11: 14, 12: 9, 13: 20}


@pytest.fixture(scope="module")
def verified_reports():
    return {t: fn(verify=True) for t, fn in PIPELINES.items()}


@pytest.mark.parametrize("table", sorted(PIPELINES))
def test_pipeline_matches_golden(table, verified_reports):
    report = verified_reports[table]
    assert len(report.groups) == EXPECTED_COUNTS[table]
    assert matches_golden(table, report)
    assert len(report.witnesses) == EXPECTED_COUNTS[table]
    assert [w.group for w in report.witnesses] == list(report.groups)


def test_table2_p_constraints(verified_reports):
    notes = verified_reports[2].notes["p_constraint"]
    assert [notes[n] for n in ("Cyclic(2)", "Cyclic(4)", "Cyclic(6)", "Dic12", "Tstar")] == [None, None, None, 3, 2]


def test_table10_witnesses(verified_reports):
    ws = verified_reports[10].witnesses
    assert all(w.constructive and w.maximal_order for w in ws)
    assert ws[3].q == 4 and ws[3].weil == "zeta:8"
    assert ws[6].algebra == "(-1,-3 / Q(sqrt 11))"
    assert any("saturated" in c for c in ws[6].checks)
    assert ws[10].q == 5 and any("120 torsion units" in c for c in ws[10].checks)
    absorbed = verified_reports[10].notes["absorbed"]
    assert set(absorbed) == {"Q8", "Dic16", "Dic20"}


def test_table11_exclusion(verified_reports):
    notes = verified_reports[11].notes
    assert notes["dropped"] == (("Dic12", "Tstar"),)
    assert notes["pairs"] == 15
    groups = verified_reports[11].groups
    assert product_id(named_id("Dic12"), named_id("Tstar")) not in groups
    assert groups[0] == named_id("Klein")
    assert groups[3] == product_id(cyclic_id(2), named_id("Dic12"))
    assert groups[13] == product_id(named_id("Tstar"), named_id("Tstar"))


def test_table11_row1_algebra(verified_reports):
    w = verified_reports[11].witnesses[0]
    assert w.q == 3 and w.algebra == "Q(sqrt -2) + Q(sqrt -11)"


def test_table12_screens(verified_reports):
    ws = verified_reports[12].witnesses
    assert ws[5].q == 17 and ws[5].algebra == "M2(Q(sqrt -2))"
    assert ws[2].q == 25 and ws[2].algebra == "M2(Q(sqrt -21))"
    for g in verified_reports[12].groups:
        assert set(sp.factorint(g.order)) <= {2, 3}


def test_table13_assembly(verified_reports):
    r = verified_reports[13]
    assert r.notes["identity"] == "6+2+5+2+5=20"
    assert r.notes["real_dihedral_embeds"] == {"D5": False, "D8": False, "D10": False, "D12": False}
    assert r.witnesses[0].q == 4 and r.groups[0] == named_id("TwoMinus1Plus4Alt5")
    assert r.witnesses[15].q == 49 and r.groups[15] == named_id("Istar")
    assert {w.q for w in r.witnesses[13:15]} == {58081}
    assert any("7 is inert in Q(sqrt 5)" in c for c in r.witnesses[15].checks)
    kept = {(a, b): k for a, b, _, k in r.notes["reducible"]}
    assert kept[("Tstar", "Tstar")] and not kept[("Cyclic(2)", "Cyclic(2)")]


def test_pipelines_fast():
    t = time.time()
    for fn in PIPELINES.values():
        fn(verify=True)
    assert time.time() - t < 60


def test_witness_error_names_row(monkeypatch):
    rows = list(classify.ELLIPTIC_ROWS)
    rows[3] = ("Dic12", 9, 5)
    monkeypatch.setattr(classify, "ELLIPTIC_ROWS", tuple(rows))
    with pytest.raises(WitnessError, match="table 2 row 4"):
        classify.elliptic_table(verify=True)


def test_witness_error_table10(monkeypatch):
    rows = list(classify.SIMPLE_ROWS)
    rows[0] = ("Cyclic(2)", 7, "beta:3", None)
    monkeypatch.setattr(classify, "SIMPLE_ROWS", tuple(rows))
    with pytest.raises(WitnessError, match="table 10 row 1"):
        classify.simple_surface_maximal_groups(verify=True)


# -------------------------------------------------------------- golden data


def test_golden_render_round_trip(tmp_path):
    # the packaged fixture is written by hand; it must parse to what the pipelines render
    path = classify.Path(classify.__file__).with_name("data") / classify.GOLDEN_TABLES
    rendered = tmp_path / "rendered.txt"
    rendered.write_text(classify.render_golden_tables())
    assert load_golden_tables(rendered) == load_golden_tables(path)
    assert {t: len(v) for t, v in load_golden_tables(path).items()} == EXPECTED_COUNTS


def test_golden_dir_override(tmp_path, monkeypatch):
    text = classify.render_golden_tables().replace("10 11 Istar", "10 11 Ostar")
    (tmp_path / classify.GOLDEN_TABLES).write_text(text)
    monkeypatch.setenv("WEILSURF_GOLDEN_DIR", str(tmp_path))
    golden = load_golden_tables()
    assert not matches_golden(10, classify.simple_surface_maximal_groups(), golden)
    assert matches_golden(11, classify.product_nonisogenous_maximal_groups(), golden)


def test_matches_golden_is_order_insensitive():
    report = classify.ordinary_square_maximal_groups()
    shuffled = classify.MaximalAutReport(report.case, tuple(reversed(report.groups)))
    assert matches_golden(12, shuffled)
    short = classify.MaximalAutReport(report.case, report.groups[:-1])
    assert not matches_golden(12, short)
    assert parse_id("Cyclic(2)") in load_golden_tables()[2]
