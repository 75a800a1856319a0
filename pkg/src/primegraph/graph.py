"""Prime-graph analytics: degrees, theta and its bounds, components,
independent sets, majorization and exports."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidComplement, ParseError, TooLarge, UnknownVertex, ValidationError, VertexMismatch

INDEPENDENCE_CAP = 24

DegreePattern = tuple[int, ...]


@dataclass(frozen=True)
class PrimeGraph:
    """Undirected loop-free graph on ascending primes.

    ``edges`` holds pairs ``(p, q)`` with ``p < q``.
    """

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]] = frozenset()
    label: str = field(default="", compare=False)

    def __post_init__(self):
        vs = self.vertices
        if any(a >= b for a, b in zip(vs, vs[1:])):
            raise ValidationError(f"vertices must be strictly increasing: {vs}")
        vset = set(vs)
        for p, q in self.edges:
            if p >= q:
                raise ValidationError(f"edge {(p, q)} is a loop or not ordered")
            if p not in vset or q not in vset:
                raise ValidationError(f"edge {(p, q)} leaves the vertex set")

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]], label: str = "") -> "PrimeGraph":
        es = set()
        for p, q in edges:
            if p == q:
                raise ValidationError(f"self-loop at {p}")
            es.add((min(p, q), max(p, q)))
        return cls(tuple(sorted(set(vertices))), frozenset(es), label)

    @classmethod
    def complete(cls, vertices: Iterable[int], label: str = "") -> "PrimeGraph":
        vs = sorted(set(vertices))
        return cls(tuple(vs), frozenset(combinations(vs, 2)), label)

    def adjacent(self, p: int, q: int) -> bool:
        return (min(p, q), max(p, q)) in self.edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        if v not in self.vertices:
            raise UnknownVertex(v)
        return tuple(u for u in self.vertices if u != v and self.adjacent(u, v))

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def induced(self, vs: Iterable[int]) -> "PrimeGraph":
        keep = set(vs)
        return PrimeGraph(
            tuple(v for v in self.vertices if v in keep),
            frozenset(e for e in self.edges if e[0] in keep and e[1] in keep),
            self.label,
        )

    def is_clique(self, vs: Iterable[int] | None = None) -> bool:
        vs = self.vertices if vs is None else sorted(vs)
        return all(self.adjacent(a, b) for a, b in combinations(vs, 2))


def degree_pattern(g: PrimeGraph) -> DegreePattern:
    deg = dict.fromkeys(g.vertices, 0)
    for p, q in g.edges:
        deg[p] += 1
        deg[q] += 1
    return tuple(deg[v] for v in g.vertices)


def vartheta(g: PrimeGraph) -> int:
    return 2 * len(g.edges)


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple[tuple[int, ...], ...]
    principal_index: int | None

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)

    @property
    def principal(self) -> tuple[int, ...] | None:
        return None if self.principal_index is None else self.components[self.principal_index]


def components(g: PrimeGraph) -> ComponentDecomposition:
    """Connected components ordered by least vertex; 2's component is flagged."""
    adj = {v: set() for v in g.vertices}
    for p, q in g.edges:
        adj[p].add(q)
        adj[q].add(p)
    seen: set[int] = set()
    comps = []
    for v in g.vertices:
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    principal = next((i for i, c in enumerate(comps) if 2 in c), None)
    return ComponentDecomposition(tuple(comps), principal)


# --------------------------------------------------------------------------
# theta bounds


def theta_bounds(component_sizes: Sequence[int], principal_size_first: bool = True) -> tuple[int, int]:
    """``(lower, upper)`` with upper = sum n_i(n_i-1), lower = upper - (n1-1)(n1-2).

    n1 is ``component_sizes[0]`` when ``principal_size_first``; otherwise
    there is no principal component and the largest size is used, which
    gives the weakest lower bound.
    """
    sizes = list(component_sizes)
    if not sizes or any(n < 1 for n in sizes):
        raise ValueError("component sizes must be positive and non-empty")
    upper = sum(n * (n - 1) for n in sizes)
    n1 = sizes[0] if principal_size_first else max(sizes)
    return upper - (n1 - 1) * (n1 - 2), upper


@dataclass(frozen=True)
class ThetaReport:
    vartheta: int
    lower: int
    upper: int
    principal_complete: bool

    @property
    def within_bounds(self) -> bool:
        return self.lower <= self.vartheta <= self.upper

    @property
    def holds(self) -> bool:
        # complete principal component forces equality at the top
        return self.within_bounds and (not self.principal_complete or self.vartheta == self.upper)


def check_theta_equality(g: PrimeGraph) -> ThetaReport:
    dec = components(g)
    if dec.principal_index is None:
        sizes, first = dec.sizes, False
        complete = all(g.is_clique(c) for c in dec.components)
    else:
        i = dec.principal_index
        sizes = (dec.sizes[i],) + dec.sizes[:i] + dec.sizes[i + 1:]
        first = True
        complete = g.is_clique(dec.components[i])
    lo, hi = theta_bounds(sizes, first)
    return ThetaReport(vartheta(g), lo, hi, complete)


def frobenius_vartheta(nK: int, nC: int, complement_solvable: bool) -> int:
    """theta of a Frobenius group with kernel on nK primes, complement on nC."""
    if nK < 1 or nC < 1:
        raise ValueError("prime counts must be positive")
    total = nK * (nK - 1) + nC * (nC - 1)
    if complement_solvable:
        return total
    if nC < 3:
        raise InvalidComplement("a non-solvable complement involves at least the primes 2, 3, 5")
    return total - 2


# --------------------------------------------------------------------------
# independent sets


def _masks(g: PrimeGraph) -> list[int]:
    idx = {v: i for i, v in enumerate(g.vertices)}
    nb = [0] * len(g.vertices)
    for p, q in g.edges:
        nb[idx[p]] |= 1 << idx[q]
        nb[idx[q]] |= 1 << idx[p]
    return nb


def _max_independent(nb: list[int], allowed: int) -> int:
    """Bitmask of the lexicographically least maximum independent subset of ``allowed``.

    Include-first search over ascending vertices visits sets in lexicographic
    order, so keeping only strict improvements yields the least witness.
    """
    best = [0, -1]

    def go(cand: int, chosen: int, size: int) -> None:
        if size + bin(cand).count("1") <= best[1]:
            return
        if not cand:
            best[0], best[1] = chosen, size
            return
        low = cand & -cand
        i = low.bit_length() - 1
        go(cand & ~low & ~nb[i], chosen | low, size + 1)
        go(cand & ~low, chosen, size)

    go(allowed, 0, 0)
    return best[0]


def _unmask(g: PrimeGraph, mask: int) -> tuple[int, ...]:
    return tuple(v for i, v in enumerate(g.vertices) if mask >> i & 1)


def _check_size(g: PrimeGraph) -> None:
    if len(g.vertices) > INDEPENDENCE_CAP:
        raise TooLarge(f"{len(g.vertices)} vertices exceeds the exhaustive-search cap of {INDEPENDENCE_CAP}")


def independence_number(g: PrimeGraph) -> tuple[int, tuple[int, ...]]:
    _check_size(g)
    nb = _masks(g)
    w = _unmask(g, _max_independent(nb, (1 << len(nb)) - 1))
    return len(w), w


def max_independent_containing(g: PrimeGraph, r: int) -> tuple[int, ...]:
    if r not in g.vertices:
        raise UnknownVertex(r)
    _check_size(g)
    nb = _masks(g)
    i = g.vertices.index(r)
    rest = ((1 << len(nb)) - 1) & ~nb[i] & ~(1 << i)
    return tuple(sorted((r,) + _unmask(g, _max_independent(nb, rest))))


def t_of_vertex(g: PrimeGraph, r: int) -> int:
    return len(max_independent_containing(g, r))


def is_independent(g: PrimeGraph, vs: Iterable[int]) -> bool:
    return not any(g.adjacent(a, b) for a, b in combinations(sorted(vs), 2))


def full_degree_set(g: PrimeGraph) -> tuple[int, ...]:
    n = len(g.vertices)
    return tuple(v for v, d in zip(g.vertices, degree_pattern(g)) if d == n - 1)


def degree_majorized_by(a: PrimeGraph, b: PrimeGraph) -> bool:
    if a.vertices != b.vertices:
        raise VertexMismatch(f"{a.vertices} vs {b.vertices}")
    return all(x <= y for x, y in zip(sorted(degree_pattern(a)), sorted(degree_pattern(b))))


def clique_closure(g: PrimeGraph) -> PrimeGraph:
    """Disjoint union of complete graphs on the components of ``g``."""
    es = set()
    for c in components(g).components:
        es.update(combinations(c, 2))
    return PrimeGraph(g.vertices, frozenset(es), g.label)


# --------------------------------------------------------------------------
# export


def twin_classes(g: PrimeGraph, keep: Iterable[int] = ()) -> list[tuple[int, ...]]:
    """Group vertices with equal closed neighbourhoods, ordered by least member.

    Vertices in ``keep`` always get a node of their own.
    """
    keep = set(keep)
    groups: dict[object, list[int]] = {}
    for v in g.vertices:
        key = ("kept", v) if v in keep else frozenset(g.neighbors(v) + (v,))
        groups.setdefault(key, []).append(v)
    return sorted((tuple(vs) for vs in groups.values()), key=lambda c: c[0])


def compact_form(g: PrimeGraph, keep: Iterable[int] = ()) -> tuple[list[tuple[int, ...]], list[tuple[int, int]]]:
    nodes = twin_classes(g, keep)
    links = [
        (i, j)
        for i, j in combinations(range(len(nodes)), 2)
        if g.adjacent(nodes[i][0], nodes[j][0])
    ]
    return nodes, links


def _graph_dict(g: PrimeGraph) -> dict:
    return {
        "vertices": [str(v) for v in g.vertices],
        "edges": [[str(p), str(q)] for p, q in sorted(g.edges)],
        "degree_pattern": list(degree_pattern(g)),
        "vartheta": vartheta(g),
        "components": [[str(v) for v in c] for c in components(g).components],
    }


def export_graph(g: PrimeGraph, format: str = "edges", keep: Iterable[int] = ()) -> str:
    """Serialize as ``edges`` (one ``p q`` pair per line), ``json`` or compact ``dot``.

    ``keep`` lists vertices the compact form must not merge into a twin class.
    """
    if format == "edges":
        lines = [f"{p} {q}" for p, q in sorted(g.edges)]
        lone = [str(v) for v in g.vertices if not any(v in e for e in g.edges)]
        return "\n".join(lines + lone) + "\n"
    if format == "json":
        return json.dumps(_graph_dict(g), indent=2) + "\n"
    if format == "dot":
        nodes, links = compact_form(g, keep)
        name = g.label or "GK"
        out = [f'graph "{name}" {{']
        for k, c in enumerate(nodes):
            out.append(f'  n{k} [label="{",".join(map(str, c))}"];')
        for i, j in links:
            out.append(f"  n{i} -- n{j};")
        out.append("}")
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown export format {format!r}")


_NODE = re.compile(r'^\s*n(\d+)\s*\[label="([\d,]+)"\];\s*$')
_LINK = re.compile(r"^\s*n(\d+)\s*--\s*n(\d+);\s*$")


def parse_compact_dot(text: str) -> PrimeGraph:
    """Expand a compact export back to the full graph."""
    nodes: dict[int, list[int]] = {}
    es: set[tuple[int, int]] = set()
    links = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if m := _NODE.match(line):
            members = [int(x) for x in m.group(2).split(",")]
            nodes[int(m.group(1))] = members
            es.update(combinations(sorted(members), 2))
        elif m := _LINK.match(line):
            links.append((int(m.group(1)), int(m.group(2)), lineno))
        elif line.strip() and not line.strip().startswith(("graph", "}")):
            raise ParseError(f"unrecognised line {line!r}", lineno)
    for i, j, lineno in links:
        if i not in nodes or j not in nodes:
            raise ParseError(f"link to undeclared node", lineno)
        for a in nodes[i]:
            for b in nodes[j]:
                es.add((min(a, b), max(a, b)))
    verts = [v for vs in nodes.values() for v in vs]
    return PrimeGraph.from_edges(verts, es)
