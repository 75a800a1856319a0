from __future__ import annotations

import pytest

from primegraph import liedeg
from primegraph.arith import is_prime_power, prime_set
from primegraph.catalog import Classical, Exceptional, SuzukiRee, parse_group_token, pi_of
from primegraph.errors import CharacteristicUnsupported
from primegraph.spectra import prime_graph

ODD_Q = [q for q in range(3, 82, 2) if is_prime_power(q)]


def test_l4_19_degrees():
    g = parse_group_token("L4(19)")
    p, two = liedeg.deg_p(g), liedeg.deg_2(g)
    assert (p.vertex, p.value) == (19, 3) and p.removed == (127, 181)
    assert (two.vertex, two.value) == (2, 4) and two.removed == (127,)


def test_a1_deg_p_is_zero():
    for q in ODD_Q:
        if q > 3:
            assert liedeg.deg_p(Classical("A", 2, q)).value == 0


def test_2g2_deg_3():
    assert liedeg.deg_p(SuzukiRee("2G2", 27)).value == 1


def test_2b2_and_2f4_deg_2():
    assert liedeg.deg_2(SuzukiRee("2B2", 8)).value == 0
    r = liedeg.deg_2(SuzukiRee("2F4", 8))
    assert r.value == 4 == len(prime_set(8**4 - 1))


def test_classical_at_even_q_is_unsupported():
    with pytest.raises(CharacteristicUnsupported):
        liedeg.deg_2(parse_group_token("L4(32)"))


def test_cross_check_examples():
    assert liedeg.cross_check_degree(Classical("A", 2, 13)).status == "agree"
    c = liedeg.cross_check_degree(parse_group_token("L4(19)"))
    assert c.status == "agree" and c.formula == {19: 3, 2: 4}
    c = liedeg.cross_check_degree(SuzukiRee("2G2", 27))
    assert c.status == "known-discrepancy"
    assert c.formula[2] == 2 and c.spectrum[2] == 3


def test_formula_matches_spectrum_sweep():
    groups = [Classical("A", 2, q) for q in range(5, 201) if is_prime_power(q)]
    groups += [SuzukiRee("2B2", q) for q in (8, 32, 128)] + [SuzukiRee("2F4", q) for q in (8, 32)]
    groups += [parse_group_token(f"L4({q})") for q in (19, 23, 25, 27, 29, 31, 37)]
    for g in groups:
        assert liedeg.cross_check_degree(g).status == "agree", g


def test_2d2_reads_off_by_one_against_l2_q2():
    # 2D2(q) = L2(q^2); the closed form for deg(2) counts p, which is not a neighbour
    for q in (3, 5, 7, 9, 11, 13, 25):
        g = Classical("2D", 2, q)
        r = liedeg.deg_2(g)
        assert r.warning == liedeg.TWO_D2_WARNING
        h = prime_graph(Classical("A", 2, q * q))
        assert r.value == h.degree(2) + 1


def _all_groups():
    for fam, ns in (("A", range(2, 13)), ("2A", range(3, 13)), ("B", range(2, 13)), ("C", range(2, 13)),
                    ("D", range(4, 13)), ("2D", range(2, 13))):
        for n in ns:
            for q in ODD_Q:
                if (fam, n, q) != ("A", 2, 3):
                    yield Classical(fam, n, q)
    for fam in ("G2", "F4", "E6", "2E6", "E7", "E8", "3D4"):
        for q in ODD_Q:
            yield Exceptional(fam, q)


def test_branch_totality_and_consistency():
    seen = set()
    for g in _all_groups():
        size = len(pi_of(g))
        for f in (liedeg.deg_p, liedeg.deg_2):
            r = f(g)
            assert r.consistent(), (g, r)
            assert 0 <= r.value <= size - 1
            seen.add(r.branch)
    assert len(seen) >= 40


def test_branch_labels_are_unique_per_clause():
    # one label per (group, vertex): no result may mention two clauses
    for g in _all_groups():
        assert ";" not in liedeg.deg_2(g).branch
