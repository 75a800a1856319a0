from __future__ import annotations

import pytest

from primegraph import catalog
from primegraph.arith import Factorization, factor, is_prime_power, primes_upto
from primegraph.catalog import (
    Alternating,
    Classical,
    Named,
    SuzukiRee,
    alternating_order,
    l4_order_formula,
    load_candidate_table,
    order,
    out_order_claims,
    packaged_candidates,
    parse_group_token,
    pi_of,
)
from primegraph.errors import DatasetMissing, ParseError, UnknownGroupToken, ValidationError


@pytest.mark.parametrize(
    "token,expected",
    [
        ("L4(19)", Classical("A", 4, 19)),
        ("A3(19)", Classical("A", 4, 19)),
        ("L_4(19)", Classical("A", 4, 19)),
        ("S4(19)", Classical("C", 2, 19)),
        ("U3(29^2)", Classical("2A", 3, 841)),
        ("O7(23)", Classical("B", 3, 23)),
        ("O8+(23)", Classical("D", 4, 23)),
        ("O_8^+(23)", Classical("D", 4, 23)),
        ("^2D_4(5)", Classical("2D", 4, 5)),
        ("2B2(8)", SuzukiRee("2B2", 8)),
        ("Sz(8)", SuzukiRee("2B2", 8)),
        ("A13", Alternating(13)),
        ("J2", Named("J2")),
        ("HJ", Named("J2")),
    ],
)
def test_parse_group_token(token, expected):
    assert parse_group_token(token) == expected


def test_parse_rejects_non_prime_power():
    with pytest.raises(UnknownGroupToken, match="21 is not a prime power"):
        parse_group_token("L4(21)")


def test_parse_unknown_token_suggests():
    with pytest.raises(UnknownGroupToken) as exc:
        parse_group_token("Lx(5)")
    assert exc.value.suggestions


def test_parse_even_orthogonal_needs_sign():
    with pytest.raises(UnknownGroupToken) as exc:
        parse_group_token("O8(5)")
    assert exc.value.suggestions == ["O8+(5)", "O8-(5)"]


@pytest.mark.parametrize(
    "token,text",
    [
        ("L4(19)", "2^7*3^7*5^2*19^6*127*181"),
        ("L3(23)", "2^5*3*7*11^2*23^3*79"),
        ("L2(5)", "2^2*3*5"),
        ("A10", "2^7*3^4*5^2*7"),
        ("J2", "2^7*3^3*5^2*7"),
    ],
)
def test_order(token, text):
    assert order(parse_group_token(token)) == Factorization.parse(text)


def test_pi_of():
    assert pi_of(parse_group_token("L4(19)")) == (2, 3, 5, 19, 127, 181)
    assert pi_of(Alternating(13)) == (2, 3, 5, 7, 11, 13)
    assert pi_of(SuzukiRee("2B2", 8)) == (2, 5, 7, 13)


@pytest.mark.parametrize("n,text", [(5, "2^2*3*5"), (10, "2^7*3^4*5^2*7"), (7, "2^3*3^2*5*7")])
def test_alternating_order(n, text):
    assert alternating_order(n) == Factorization.parse(text)


def test_pi_alternating_is_all_primes_upto_n():
    for n in range(5, 201):
        assert pi_of(Alternating(n)) == primes_upto(n)


def test_order_B_equals_C():
    for n in range(2, 7):
        for q in (3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27):
            assert order(Classical("B", n, q)) == order(Classical("C", n, q))


def test_l4_formula_matches_order_polynomial():
    for q in range(2, 65):
        if is_prime_power(q):
            assert l4_order_formula(q) == order(Classical("A", 4, q))


def test_orders_match_brute_product():
    # |L2(q)| = q(q^2-1)/gcd(2,q-1), |Sz(q)| = q^2(q^2+1)(q-1)
    for q in (5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32):
        d = 1 if q % 2 == 0 else 2
        assert order(Classical("A", 2, q)).value == q * (q * q - 1) // d
    for q in (8, 32, 128):
        assert order(SuzukiRee("2B2", q)).value == q * q * (q * q + 1) * (q - 1)


def test_out_order_claims():
    assert out_order_claims("L_3(27)") == 6
    assert out_order_claims("L_3(32)") == 10
    assert out_order_claims("L3(23)") == 4
    assert out_order_claims("M_11") is None


def test_standard_out_order_disagrees_for_l3_23():
    assert catalog.standard_out_order(parse_group_token("L3(23)")) == 2
    assert catalog.standard_out_order(parse_group_token("L3(27)")) == 6


def test_packaged_table_records():
    recs = {r.name: r for r in packaged_candidates()}
    assert recs["L_3(23)"].order == Factorization.parse("2^5*3*7*11^2*23^3*79")
    assert recs["L_3(23)"].max_prime == 79
    assert recs["E_8(2)"].max_prime == 331


def test_packaged_records_self_consistent():
    for rec in packaged_candidates():
        assert factor(rec.order.value) == rec.order
        assert rec.order.max_prime == rec.max_prime


def test_table_disagreements_are_exactly_the_errata():
    names = {name for name, _, _ in catalog.crosscheck_candidate_orders()}
    assert names == set(catalog.CANDIDATE_ERRATA)


def test_empty_candidate_file(tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("# nothing\n")
    assert load_candidate_table(p) == []


def test_candidate_file_errors(tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("L_2(7) | 7 | 2^3*3*7\nbroken line\n")
    with pytest.raises(ParseError) as exc:
        load_candidate_table(p)
    assert exc.value.line == 2
    p.write_text("L_2(7) | 5 | 2^3*3*7\n")
    with pytest.raises(ValidationError, match="L_2\\(7\\)"):
        load_candidate_table(p)


def test_missing_dataset(isolated_data):
    with pytest.raises(DatasetMissing):
        packaged_candidates()
