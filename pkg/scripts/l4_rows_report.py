"""Print each L4(q) row: order, derived degree pattern, compact form and DOT export."""

from __future__ import annotations

import argparse

from primegraph.arith import is_prime_power
from primegraph.graph import compact_form, degree_pattern, export_graph, independence_number, t_of_vertex
from primegraph.spectra import l4_rows, prime_graph_from_spectrum


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dot", action="store_true", help="also print the compact DOT export")
    args = ap.parse_args()
    for q, row in sorted(l4_rows().items()):
        g = prime_graph_from_spectrum(row.spectrum, f"L4({q})")
        p = is_prime_power(q)[0]
        nodes, links = compact_form(g, keep=(p,))
        t, w = independence_number(g)
        print(f"L4({q})  |S| = {row.order}")
        print(f"  D(S) = {degree_pattern(g)}  stored {row.pattern}")
        print(f"  t = {t} via {w}, t(2) = {t_of_vertex(g, 2)}")
        print(f"  compact nodes {['{' + ','.join(map(str, c)) + '}' for c in nodes]}, {len(links)} links")
        if args.dot:
            print(export_graph(g, "dot", keep=(p,)))


if __name__ == "__main__":
    main()
