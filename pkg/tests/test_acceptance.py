"""Acceptance criteria, one test per criterion (criterion 7 is split per witness).

Each test records a one-line verdict; ``conftest.pytest_terminal_summary``
prints them after the run, and ``python tests/test_acceptance.py`` prints
them directly.
"""

from __future__ import annotations

import random
import time

import pytest
import sympy

from primegraph import liedeg
from primegraph import odpipeline as od
from primegraph.arith import FactorConfig, factor, is_prime, load_factor_table, primitive_prime_divisors
from primegraph.catalog import l4_order_formula, order, parse_group_token
from primegraph.errors import FactorizationIncomplete
from primegraph.graph import (
    check_theta_equality,
    compact_form,
    degree_pattern,
    export_graph,
    independence_number,
    parse_compact_dot,
    vartheta,
)
from primegraph.spectra import gk_alternating, gk_symmetric, l4_rows, prime_graph, prime_graph_from_spectrum, symmetric_order

try:
    from .conftest import DATA, COMPACT_NODES
    from .test_properties import brute_independence
except ImportError:  # run as a script
    from conftest import DATA, COMPACT_NODES
    from test_properties import brute_independence

RESULTS: dict[str, str] = {}


def record(name: str, ok: bool, detail: str) -> None:
    RESULTS[name] = f"{name}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(RESULTS[name])
    assert ok, detail


def _l4(q):
    return parse_group_token(f"L4({q})")


EXPECTED_CANDIDATES = {
    19: {"L_2(19^2)", "S_4(19)", "L_4(19)"},
    23: {"L_3(23)", "L_4(23)"},
    25: {"L_2(5^4)", "S_4(5^2)", "^2D_4(5)", "L_4(5^2)"},
    27: {"L_3(27)", "L_4(27)"},
    29: {"L_2(29^2)", "S_4(29)", "L_4(29)"},
    31: {"L_3(31)", "L_4(31)"},
    32: {"L_3(32)", "L_4(32)"},
    37: {"L_2(37^2)", "S_4(37)", "L_4(37)"},
}


def test_criterion_1_l4_rows():
    bad, slow = [], []
    for q, row in sorted(l4_rows().items()):
        t0 = time.perf_counter()
        ok = l4_order_formula(q) == row.order
        ok &= degree_pattern(prime_graph_from_spectrum(row.spectrum)) == row.pattern
        if not ok:
            bad.append(q)
        if time.perf_counter() - t0 > 1:
            slow.append(q)
    record("criterion 1 (L4 row reproduction)", not bad and not slow and len(l4_rows()) == 8,
           f"mismatched q: {bad}, over 1 s: {slow}")


def test_criterion_2_degree_formulas():
    from primegraph.cli import crosscheck_groups

    statuses = {name: liedeg.cross_check_degree(parse_group_token(name)).status for name in crosscheck_groups()}
    # the criterion names 2F4(8); 2F4(32) is also checked
    known = sorted(n for n, s in statuses.items() if s == "known-discrepancy")
    bad = sorted(n for n, s in statuses.items() if s == "mismatch")
    skipped = sorted(n for n, s in statuses.items() if s == "skipped")
    ok = not bad and known == ["2G2(243)", "2G2(27)"] and skipped == ["L4(32)"]
    record("criterion 2 (closed-form degrees vs spectra)", ok,
           f"{len(statuses)} groups; mismatches {bad}; known {known}; skipped {skipped}")


def test_criterion_3_theta_bounds():
    from primegraph.cli import bounds_graphs

    graphs = bounds_graphs()
    failures = [g.label for g in graphs if not check_theta_equality(g).holds]
    equality_cases = [gk_alternating(n) for n in (5, 7, 9, 12, 13)]
    equality_cases += [prime_graph(parse_group_token(t)) for t in ("L2(8)", "L2(16)", "L2(13)", "L2(25)", "2B2(8)")]
    not_equal = [g.label for g in equality_cases
                 if not (check_theta_equality(g).principal_complete and vartheta(g) == check_theta_equality(g).upper)]
    record("criterion 3 (vartheta bounds)", not failures and not not_equal,
           f"{len(graphs)} graphs; outside bounds {failures}; equality cases short of the upper bound {not_equal}")


def test_criterion_4_zsigmondy():
    t0 = time.perf_counter()
    empty = {(a, m) for a in range(2, 31) for m in range(1, 13) if not primitive_prime_divisors(a, m)}
    r = primitive_prime_divisors(61, 6).primes
    dt = time.perf_counter() - t0
    record("criterion 4 (Zsigmondy sweep)", empty == {(2, 1), (3, 1), (2, 6)} and r == (7, 523) and dt < 10,
           f"empty at {sorted(empty)}, R_6(61) = {list(r)}, {dt:.2f} s")


def test_criterion_5_candidate_lists():
    bad = {}
    for q, want in EXPECTED_CANDIDATES.items():
        spec = od.CASES[q]
        found = od.candidate_simple_groups(spec.key_prime, spec.allowed, l4_order_formula(q))
        got = {parse_group_token(c.name) for c in found}
        if got != {parse_group_token(n) for n in want}:
            bad[q] = sorted(c.name for c in found)
    record("criterion 5 (candidate lists)", not bad, f"differing lists: {bad}")


def test_criterion_6_case_suites():
    t0 = time.perf_counter()
    reports = {q: od.verify_theorem_case(q) for q in od.L4_Q}
    dt = time.perf_counter() - t0
    failed = {q: [a.label for a in r.assertions if not a.passed] for q, r in reports.items() if r.verdict != "pass"}
    d79 = od.delta_profile(l4_order_formula(23)).delta_of[79]
    n = sum(len(r.assertions) for r in reports.values())
    record("criterion 6 (case suites)", not failed and d79 == (5, 7, 53) and dt < 60,
           f"{n} assertions, failing {failed}, Delta(79) = {set(d79)}, {dt:.2f} s")


@pytest.mark.parametrize("n", [9, 12])
def test_criterion_7_symmetric_witness(n):
    w = od.non_od_witness(symmetric_order(n), degree_pattern(gk_symmetric(n)),
                          order(parse_group_token(f"A{n}")), gk_alternating(n), f"A_{n}")
    deg2 = gk_symmetric(n).degree(2)
    record(f"criterion 7 (S_{n} vs A_{n} witness)", w is not None,
           f"witness {w.construction if w else None}; deg(2) in GK(S_{n}) = {deg2} of {len(gk_symmetric(n).vertices) - 1}")


def test_criterion_7_a10_j2_and_negative_control():
    a10, j2 = parse_group_token("A10"), parse_group_token("J2")
    w = od.non_od_witness(order(a10), degree_pattern(gk_alternating(10)), order(j2), prime_graph(j2), "J2")
    # S_8: deg(2) = 2 < 3, so the quotient prime lacks full degree
    neg = od.non_od_witness(symmetric_order(8), degree_pattern(gk_symmetric(8)),
                            order(parse_group_token("A8")), gk_alternating(8), "A_8")
    ok = w is not None and w.construction == "Z_3 x J2" and neg is None
    record("criterion 7 (A_10 vs J2 witness, negative control)", ok,
           f"witness {w.construction if w else None}; S_8 control {neg}")


def test_criterion_8_properties():
    notes = []
    # factor round trip on 10^4 random inputs below 10^40
    rng = random.Random(20261015)
    cfg = FactorConfig(rho_iterations=1 << 11, rho_attempts=2)
    complete = incomplete = 0
    ok = True
    for _ in range(10_000):
        n = rng.randrange(1, 10**40)
        try:
            f = factor(n, cfg)
            ok &= f.value == n and all(is_prime(p) for p in f.primes)
            complete += 1
        except FactorizationIncomplete as exc:
            ok &= exc.partial.value * exc.cofactor == n and not sympy.isprime(exc.cofactor)
            incomplete += 1
    table = load_factor_table(DATA / "structured_factors.txt")
    tcfg = FactorConfig(rho_iterations=1 << 11, rho_attempts=2, table=table)
    for m, f in table.entries.items():
        ok &= factor(m * 2**7 * 3**7 * 127, tcfg) == f * factor(2**7 * 3**7 * 127)
    notes.append(f"round trip {complete} complete + {incomplete} exact partial, {len(table)} table inputs")

    from primegraph.cli import bounds_graphs

    graphs = bounds_graphs() + [prime_graph(_l4(q)) for q in od.L4_Q]
    ok &= all(vartheta(g) % 2 == 0 and sum(degree_pattern(g)) == vartheta(g) for g in graphs)
    small = [g for g in graphs if len(g.vertices) <= 16]
    ok &= all(independence_number(g)[0] == brute_independence(g) for g in small)
    notes.append(f"{len(graphs)} graphs symmetric with even vartheta, {len(small)} independence checks")

    for q, nodes in COMPACT_NODES.items():
        g = prime_graph(_l4(q))
        p = 2 if q == 32 else {25: 5, 27: 3}.get(q, q)
        ok &= compact_form(g, keep=(p,))[0] == nodes
        ok &= parse_compact_dot(export_graph(g, "dot", keep=(p,))) == g
    notes.append("8 compact L4 exports lossless")
    record("criterion 8 (property suites)", bool(ok), "; ".join(notes))


if __name__ == "__main__":  # pragma: no cover
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion")]
    for fn in tests:
        params = [(9,), (12,)] if fn is test_criterion_7_symmetric_witness else [()]
        for args in params:
            try:
                fn(*args)
            except AssertionError:
                pass
    sys.exit(0 if all("PASS" in v for v in RESULTS.values()) else 1)
