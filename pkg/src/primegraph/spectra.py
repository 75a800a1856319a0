"""Spectra mu(G), divisibility membership in omega(G), and prime graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from pathlib import Path

from . import catalog
from .arith import Factorization, factor, iroot, is_prime_power, primes_upto
from .catalog import Alternating, Classical, GroupId, Named, SuzukiRee
from .errors import DatasetMissing, ParseError, UnsupportedGroup, ValidationError
from .graph import DegreePattern, PrimeGraph


@dataclass(frozen=True)
class Spectrum:
    """Divisibility-maximal element orders.

    ``dropped`` keeps members that were supplied but divide another member;
    they are removed so the antichain invariant holds.
    """

    mu: tuple[int, ...]
    source: str = ""
    dropped: tuple[int, ...] = ()

    def __post_init__(self):
        if any(m < 1 for m in self.mu):
            raise ValidationError("spectrum members must be positive")
        for a, b in combinations(self.mu, 2):
            if b % a == 0 or a % b == 0:
                raise ValidationError(f"{a} and {b} are comparable; mu must be an antichain")

    @classmethod
    def from_members(cls, members, source: str = "") -> "Spectrum":
        ms = sorted(set(members))
        keep = [m for m in ms if not any(o != m and o % m == 0 for o in ms)]
        gone = [m for m in ms if m not in keep]
        return cls(tuple(keep), source, tuple(gone))

    @property
    def primes(self) -> tuple[int, ...]:
        ps: set[int] = set()
        for m in self.mu:
            ps.update(factor(m).primes)
        return tuple(sorted(ps))


def omega_contains(s: Spectrum, x: int) -> bool:
    if x < 1:
        raise ValueError("element orders are positive")
    return any(m % x == 0 for m in s.mu)


def prime_graph_from_spectrum(s: Spectrum, label: str = "") -> PrimeGraph:
    vs = s.primes
    es = [(p, q) for p, q in combinations(vs, 2) if omega_contains(s, p * q)]
    return PrimeGraph.from_edges(vs, es, label or s.source)


def gk_alternating(n: int) -> PrimeGraph:
    """GK(A_n): odd p ~ q iff p + q <= n, and 2 ~ p iff p + 4 <= n."""
    if n < 5:
        raise ValueError("A_n is simple only for n >= 5")
    vs = primes_upto(n)
    es = []
    for p, q in combinations(vs, 2):
        if (p == 2 and q + 4 <= n) or (p != 2 and p + q <= n):
            es.append((p, q))
    return PrimeGraph.from_edges(vs, es, f"A_{n}")


def gk_symmetric(n: int) -> PrimeGraph:
    """GK(S_n): distinct primes p ~ q iff p + q <= n."""
    if n < 2:
        raise ValueError("need n >= 2")
    vs = primes_upto(n)
    es = [(p, q) for p, q in combinations(vs, 2) if p + q <= n]
    return PrimeGraph.from_edges(vs, es, f"S_{n}")


def symmetric_order(n: int) -> Factorization:
    return factor(math.factorial(n))


def _sqrt_exact(n: int) -> int:
    r, exact = iroot(n, 2)
    if not exact:
        raise ValueError(f"{n} is not a square")
    return r


def _mu_a1(q: int) -> list[int]:
    p, _ = is_prime_power(q)
    if p == 2:
        return [2, q - 1, q + 1]
    return [p, (q - 1) // 2, (q + 1) // 2]


def _mu_a2(q: int) -> list[int]:
    p, _ = is_prime_power(q)
    if p == 2:
        raise UnsupportedGroup("the stored A_2(q) spectrum covers odd q only")
    if (q - 1) % 3 == 0:
        return [q - 1, p * (q - 1) // 3, (q * q - 1) // 3, (q * q + q + 1) // 3]
    return [p * (q - 1), q * q - 1, q * q + q + 1]


def _mu_suzuki_ree(g: SuzukiRee) -> list[int]:
    q = g.q
    if g.family == "2B2":
        r = _sqrt_exact(2 * q)
        return [4, q - 1, q - r + 1, q + r + 1]
    if g.family == "2G2":
        r = _sqrt_exact(3 * q)
        return [6, 9, q - 1, (q + 1) // 2, q - r + 1, q + r + 1]
    r = _sqrt_exact(2 * q)
    r3 = _sqrt_exact(2 * q**3)
    return [
        12, 16, 2 * (q + 1), 4 * (q - 1), 4 * (q + r + 1), 4 * (q - r + 1),
        q * q - 1, q * q + 1, q * q - q + 1, (q - 1) * (q + r + 1), (q - 1) * (q - r + 1),
        q * q + r3 + q + r + 1, q * q - r3 + q - r + 1,
    ]


# --------------------------------------------------------------------------
# stored L4(q) rows


@dataclass(frozen=True)
class L4Row:
    q: int
    order: Factorization
    spectrum: Spectrum
    pattern: DegreePattern


def _split_rows(path: Path):
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                yield lineno, [c.strip() for c in line.split("|")]


def _row_q(name: str, lineno: int, path: Path) -> int:
    g = catalog.parse_group_token(name)
    if not (isinstance(g, Classical) and g.family == "A" and g.n == 4):
        raise ParseError(f"expected an L4(q) row name, got {name!r}", lineno, path)
    return g.q


def _product(text: str) -> int:
    # members are written as products of integer powers, not necessarily prime ("9")
    total = 1
    for term in text.replace("·", "*").split("*"):
        base, _, exp = term.strip().partition("^")
        total *= int(base) ** int(exp or 1)
    return total


def load_l4_spectra(path: str | Path | None = None) -> dict[int, Spectrum]:
    path = Path(path) if path else catalog.data_file("l4_spectra.txt")
    out = {}
    for lineno, cells in _split_rows(path):
        if len(cells) != 2:
            raise ParseError("expected 'L4(q) | m ; m ; ...'", lineno, path)
        q = _row_q(cells[0], lineno, path)
        try:
            members = [_product(m) for m in cells[1].split(";")]
        except ValueError as exc:
            raise ParseError(f"bad spectrum member: {exc}", lineno, path) from exc
        out[q] = Spectrum.from_members(members, f"L4({q}) table")
    return out


def load_l4_rows(path: str | Path | None = None, spectra_path: str | Path | None = None) -> dict[int, L4Row]:
    path = Path(path) if path else catalog.data_file("l4_orders.txt")
    spectra = load_l4_spectra(spectra_path)
    rows = {}
    for lineno, cells in _split_rows(path):
        if len(cells) != 3:
            raise ParseError("expected 'L4(q) | order | d1,d2,...'", lineno, path)
        q = _row_q(cells[0], lineno, path)
        try:
            order = Factorization.parse(cells[1])
            pattern = tuple(int(x) for x in cells[2].split(","))
        except (ValueError, ValidationError) as exc:
            raise ParseError(str(exc), lineno, path) from exc
        if q not in spectra:
            raise ValidationError(f"L4({q}) has an order row but no spectrum row")
        rows[q] = L4Row(q, order, spectra[q], pattern)
    return rows


@lru_cache(maxsize=None)
def _packaged_rows() -> dict[int, L4Row]:
    return load_l4_rows()


def l4_rows() -> dict[int, L4Row]:
    return _packaged_rows()


catalog.register_cache(_packaged_rows)


# --------------------------------------------------------------------------
# dispatch


def spectrum_of(g: GroupId) -> Spectrum:
    if isinstance(g, Classical) and g.family == "A" and g.n == 2:
        return Spectrum.from_members(_mu_a1(g.q), "A1 formula")
    if isinstance(g, Classical) and g.family == "A" and g.n == 3:
        return Spectrum.from_members(_mu_a2(g.q), "A2 formula")
    if isinstance(g, SuzukiRee):
        return Spectrum.from_members(_mu_suzuki_ree(g), f"{g.family} formula")
    if isinstance(g, Classical) and g.family == "A" and g.n == 4:
        try:
            rows = l4_rows()
        except DatasetMissing:
            rows = {}
        if g.q in rows:
            return rows[g.q].spectrum
    raise UnsupportedGroup(f"no stored spectrum for {catalog.display_name(g)}")


def has_spectrum(g: GroupId) -> bool:
    try:
        spectrum_of(g)
    except UnsupportedGroup:
        return False
    return True


def prime_graph(g: GroupId) -> PrimeGraph:
    """GK(g) from whichever exact source is available."""
    name = catalog.display_name(g)
    if isinstance(g, Alternating):
        return gk_alternating(g.n)
    if isinstance(g, Named):
        comps = catalog.named_components(g)
        es = [e for c in comps for e in combinations(sorted(c), 2)]
        return PrimeGraph.from_edges([v for c in comps for v in c], es, name)
    return prime_graph_from_spectrum(spectrum_of(g), name)
