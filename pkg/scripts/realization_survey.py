"""How tightly does D(G) pin down GK(G)?

For each L4(q) row, enumerate every graph on pi(G) with the stored degree
pattern, and for each exponent-one prime p ask whether some such graph joins
p to all of its forced neighbours.
"""

from __future__ import annotations

from primegraph import odpipeline as od
from primegraph.graph import independence_number, t_of_vertex


def main() -> None:
    for q, row in sorted(od.l4_rows().items()):
        vs, pat = row.order.primes, row.pattern
        graphs = list(od.realizations(vs, pat))
        t = min(independence_number(g)[0] for g in graphs)
        t2 = min(t_of_vertex(g, 2) for g in graphs)
        print(f"L4({q}): {len(graphs)} graphs realize {pat}; min t = {t}, min t(2) = {t2}")
        prof = od.delta_profile(row.order)
        for p in prof.delta:
            forced = od.forced_neighbours(row.order, p)
            delta_ok = od.realizable(vs, pat, [(p, r) for r in prof.delta_of[p]])
            forced_ok = od.realizable(vs, pat, [(p, r) for r in forced])
            print(f"  {p:>4}: Delta = {list(prof.delta_of[p])} {'realizable' if delta_ok else 'impossible'}; "
                  f"forced = {list(forced)} {'realizable' if forced_ok else 'impossible'}")


if __name__ == "__main__":
    main()
