from __future__ import annotations

import json

import pytest

from primegraph import odpipeline as od
from primegraph.arith import Factorization
from primegraph.catalog import l4_order_formula, order, parse_group_token
from primegraph.errors import ValidationError
from primegraph.graph import degree_pattern
from primegraph.spectra import gk_alternating, gk_symmetric, prime_graph, symmetric_order


def test_delta_profile_l4_23():
    prof = od.delta_profile(l4_order_formula(23))
    assert prof.delta == (5, 7, 53, 79)
    assert prof.delta_of[79] == (5, 7, 53)
    assert prof.delta_of[7] == (5, 53, 79)
    assert od.delta_profile(Factorization.parse("2^3*3^2")).delta == ()


@pytest.mark.parametrize("n,expected", [(15, True), (6, False), (255, True), (1, True), (12, False)])
def test_is_cyclic_number(n, expected):
    from primegraph.arith import factor

    assert od.is_cyclic_number(factor(n)) is expected


def test_forced_neighbours_reduce_to_delta():
    f = l4_order_formula(23)
    prof = od.delta_profile(f)
    for p in prof.delta:
        forced = set(od.forced_neighbours(f, p))
        assert set(prof.delta_of[p]) == forced & set(prof.delta)


def test_forced_neighbours_of_151_include_11():
    assert {7, 11, 41} <= set(od.forced_neighbours(l4_order_formula(32), 151))


def test_realizations_counts():
    row = od.l4_rows()[19]
    graphs = list(od.realizations(row.order.primes, row.pattern))
    assert len(graphs) == 3
    assert all(degree_pattern(g) == row.pattern for g in graphs)
    assert len(set(graphs)) == 3


def test_realizations_required_edges():
    vs, pat = (2, 3, 5, 7), (1, 1, 1, 1)
    assert len(list(od.realizations(vs, pat))) == 3
    assert len(list(od.realizations(vs, pat, [(2, 3)]))) == 1
    assert not od.realizable(vs, pat, [(2, 3), (2, 5)])


@pytest.mark.parametrize(
    "max_prime,allowed,expected",
    [
        (181, {2, 3, 5, 19, 127, 181}, {"L_2(19^2)", "S_4(19)", "L_4(19)"}),
        (79, {2, 3, 5, 7, 11, 23, 53, 79}, {"L_3(23)", "L_4(23)"}),
        (151, {2, 3, 5, 7, 11, 31, 41, 151}, {"L_3(32)", "L_4(32)"}),
    ],
)
def test_candidates(max_prime, allowed, expected):
    assert {c.name for c in od.candidate_simple_groups(max_prime, allowed)} == expected


def test_candidates_alternating_exclusion():
    # A_5..A_6 need primes 2,3,5 only
    names = {c.name for c in od.candidate_simple_groups(5, {2, 3, 5})}
    assert {"A_5", "A_6"} <= names
    names = {c.name for c in od.candidate_simple_groups(13, {2, 3, 5, 13})}
    assert not any(n.startswith("A_") for n in names)


def test_candidates_needs_max_prime_allowed():
    with pytest.raises(ValueError):
        od.candidate_simple_groups(181, {2, 3})


def test_non_od_witness_a10_j2():
    a10 = parse_group_token("A10")
    w = od.non_od_witness(order(a10), degree_pattern(gk_alternating(10)),
                          order(parse_group_token("J2")), prime_graph(parse_group_token("J2")), "J2")
    assert w is not None and w.construction == "Z_3 x J2"


@pytest.mark.parametrize("n", [9, 10, 16, 27])
def test_non_od_witness_symmetric(n):
    w = od.non_od_witness(symmetric_order(n), degree_pattern(gk_symmetric(n)),
                          order(parse_group_token(f"A{n}")), gk_alternating(n), f"A_{n}")
    assert w is not None and w.construction == f"Z_2 x A_{n}"


def test_non_od_witness_needs_full_degree():
    # in S_8 the prime 2 misses 7, so Z_2 x A_8 is not forced
    w = od.non_od_witness(symmetric_order(8), degree_pattern(gk_symmetric(8)),
                          order(parse_group_token("A8")), gk_alternating(8))
    assert w is None


def test_non_od_witness_identical_groups():
    g = parse_group_token("A10")
    assert od.non_od_witness(order(g), degree_pattern(gk_alternating(10)), order(g), gk_alternating(10)) is None


def test_verify_table2_examples():
    r = od.verify_table2(19)
    assert r.verdict == "pass"
    assert "(4, 4, 4, 3, 1, 2)" in " ".join(a.details for a in r.assertions)
    assert od.verify_table2(32).verdict == "pass"
    with pytest.raises(ValidationError):
        od.verify_table2(21)


def test_case_q31():
    r = od.verify_theorem_case(31)
    assert r.verdict == "pass"
    by = {a.label: a for a in r.assertions}
    assert any("L_3(31)" in k and "13, 37" in k for k in by)
    assert any("residual |G|/|L_4(31)| = 1" == k for k in by)


def test_case_q23_delta_bounds():
    r = od.verify_theorem_case(23)
    labels = [a.label for a in r.assertions if a.kind == "degree-bound"]
    assert "deg(79) < |Delta(79)|" in labels and "deg(7) < |Delta(7)|" in labels
    assert r.verdict == "pass"


def test_case_q25_notes_and_exact_residual():
    r = od.verify_theorem_case(25)
    assert r.verdict == "pass"
    assert any("|G|/|^2D_4(5)| = 13" in a.label for a in r.assertions)
    assert any("q = 25" in d for d in r.discrepancies)


def test_case_reports_serialize_in_field_order():
    doc = od.verify_theorem_case(19).as_dict()
    assert list(doc)[:3] == ["case", "assertions", "verdict"]
    assert json.loads(json.dumps(doc)) == doc


def test_case_assertion_failure_is_recorded_not_raised(monkeypatch):
    spec = od.CASES[31]
    broken = od.CaseSpec(**{**spec.__dict__, "delta_claims": ((331, (13,)),)})
    monkeypatch.setitem(od.CASES, 31, broken)
    r = od.verify_theorem_case(31)
    assert r.verdict == "fail"
    assert any(not a.passed and "Delta(331)" in a.label for a in r.assertions)


def test_unknown_case():
    with pytest.raises(ValidationError):
        od.verify_theorem_case(41)
