"""Finite simple groups: identifiers, orders and prime sets.

Lie-type orders are assembled from cyclotomic factors ``Phi_d(q)``, each
factored separately, so only moderately sized integers are ever factored.
"""

from __future__ import annotations

import difflib
import math
import os
from contextlib import contextmanager
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Union

from .arith import (
    Factorization,
    cyclotomic_value,
    factor,
    is_prime_power,
    primes_upto,
)
from .errors import (
    DatasetMissing,
    InvalidGroup,
    ParseError,
    UnknownGroupToken,
    UnsupportedGroup,
    ValidationError,
)

CLASSICAL_FAMILIES = ("A", "2A", "B", "C", "D", "2D")
EXCEPTIONAL_FAMILIES = ("G2", "F4", "E6", "2E6", "E7", "E8", "3D4")
SUZUKI_REE_FAMILIES = ("2B2", "2G2", "2F4")

DATA_ENV = "PRIMEGRAPH_DATA"
_PACKAGED_DATA = Path(__file__).parent / "data"
_data_dir: Path | None = None
_dependent_caches: list = []


def data_dir() -> Path:
    """Directory holding the packaged tables; ``PRIMEGRAPH_DATA`` overrides."""
    if _data_dir is not None:
        return _data_dir
    env = os.environ.get(DATA_ENV)
    return Path(env) if env else _PACKAGED_DATA


def set_data_dir(path: str | Path | None) -> None:
    global _data_dir
    _data_dir = Path(path) if path is not None else None
    _load_named.cache_clear()
    _cached_candidates.cache_clear()
    for fn in _dependent_caches:
        fn.cache_clear()


@contextmanager
def using_data_dir(path: str | Path | None):
    """Temporarily point dataset lookups at ``path`` (``None`` leaves them alone)."""
    if path is None:
        yield data_dir()
        return
    previous = _data_dir
    set_data_dir(path)
    try:
        yield data_dir()
    finally:
        set_data_dir(previous)


def register_cache(fn) -> None:
    """Clear ``fn``'s lru_cache whenever the data directory changes."""
    _dependent_caches.append(fn)


def data_file(name: str) -> Path:
    path = data_dir() / name
    if not path.exists():
        raise DatasetMissing(f"dataset {name!r} not found in {data_dir()}")
    return path


# --------------------------------------------------------------------------
# group identifiers

def _fmt_q(q: int) -> str:
    p, f = is_prime_power(q)
    return str(q) if f == 1 else f"{p}^{f}"


@dataclass(frozen=True)
class Classical:
    """``A``: L_n(q) = A_{n-1}(q); ``2A``: U_n(q) = 2A_{n-1}(q); ``B``, ``C``,
    ``D``, ``2D``: rank ``n``."""

    family: str
    n: int
    q: int
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.family not in CLASSICAL_FAMILIES:
            raise InvalidGroup(f"unknown classical family {self.family!r}")
        _check_q(self.q)
        low = {"A": 2, "2A": 3, "B": 2, "C": 2, "D": 3, "2D": 2}[self.family]
        if self.n < low:
            raise InvalidGroup(f"{self.family} needs n >= {low}, got {self.n}")
        if (self.family, self.n, self.q) in {("A", 2, 2), ("A", 2, 3), ("2A", 3, 2), ("B", 2, 2), ("C", 2, 2)}:
            raise InvalidGroup(f"{self.lie_name} is not simple")

    @property
    def p(self) -> int:
        return is_prime_power(self.q)[0]

    @property
    def lie_name(self) -> str:
        if self.family == "A":
            return f"A_{self.n - 1}({_fmt_q(self.q)})"
        if self.family == "2A":
            return f"^2A_{self.n - 1}({_fmt_q(self.q)})"
        if self.family == "2D":
            return f"^2D_{self.n}({_fmt_q(self.q)})"
        return f"{self.family}_{self.n}({_fmt_q(self.q)})"

    @property
    def name(self) -> str:
        q = _fmt_q(self.q)
        n = self.n
        return {
            "A": f"L_{n}({q})",
            "2A": f"U_{n}({q})",
            "B": f"O_{2 * n + 1}({q})",
            "C": f"S_{2 * n}({q})",
            "D": f"O_{2 * n}^+({q})",
            "2D": f"O_{2 * n}^-({q})",
        }[self.family]


@dataclass(frozen=True)
class Exceptional:
    family: str
    q: int
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.family not in EXCEPTIONAL_FAMILIES:
            raise InvalidGroup(f"unknown exceptional family {self.family!r}")
        _check_q(self.q)
        if self.family == "G2" and self.q == 2:
            raise InvalidGroup("G_2(2) is not simple")

    @property
    def p(self) -> int:
        return is_prime_power(self.q)[0]

    @property
    def lie_name(self) -> str:
        tw, rest = (self.family[0], self.family[1:]) if self.family[0] in "23" else ("", self.family)
        return f"{'^' + tw if tw else ''}{rest[0]}_{rest[1:]}({_fmt_q(self.q)})"

    name = lie_name


@dataclass(frozen=True)
class SuzukiRee:
    family: str
    q: int
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.family not in SUZUKI_REE_FAMILIES:
            raise InvalidGroup(f"unknown Suzuki/Ree family {self.family!r}")
        pp = is_prime_power(self.q)
        want = 3 if self.family == "2G2" else 2
        if not pp or pp[0] != want or pp[1] % 2 == 0:
            raise InvalidGroup(f"{self.family} needs q = {want}^(2k+1), got {self.q}")
        if pp[1] == 1:
            raise InvalidGroup(f"{self.family}({self.q}) is not simple")

    @property
    def p(self) -> int:
        return 3 if self.family == "2G2" else 2

    @property
    def lie_name(self) -> str:
        return f"^2{self.family[1]}_{self.family[2]}({_fmt_q(self.q)})"

    name = lie_name


@dataclass(frozen=True)
class Alternating:
    n: int
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 5:
            raise InvalidGroup("alternating groups are simple from degree 5")

    @property
    def name(self) -> str:
        return f"A_{self.n}"

    lie_name = name


@dataclass(frozen=True)
class Named:
    name: str
    label: str | None = field(default=None, compare=False)

    lie_name = property(lambda self: self.name)


GroupId = Union[Classical, Exceptional, SuzukiRee, Alternating, Named]
LieType = (Classical, Exceptional, SuzukiRee)


def _check_q(q: int) -> None:
    if not isinstance(q, int) or not is_prime_power(q):
        raise InvalidGroup(f"q = {q} is not a prime power")


def display_name(g: GroupId) -> str:
    """The user's spelling when known, else the canonical name."""
    return g.label or g.name


# --------------------------------------------------------------------------
# orders

def _minus(m: int) -> list[int]:
    # q^m - 1 = prod_{d | m} Phi_d(q)
    return [d for d in range(1, m + 1) if m % d == 0]


def _plus(m: int) -> list[int]:
    # q^m + 1 = prod_{d | 2m, d not dividing m} Phi_d(q)
    return [d for d in range(1, 2 * m + 1) if (2 * m) % d == 0 and m % d]


def order_shape(g: GroupId) -> tuple[int, list[int], int]:
    """``(N, [d, ...], divisor)`` with ``|G| = q^N * prod Phi_d(q) / divisor``."""
    if isinstance(g, Classical):
        n, q = g.n, g.q
        if g.family == "A":
            ds = [d for i in range(2, n + 1) for d in _minus(i)]
            return n * (n - 1) // 2, ds, math.gcd(n, q - 1)
        if g.family == "2A":
            ds = [d for i in range(2, n + 1) for d in (_minus(i) if i % 2 == 0 else _plus(i))]
            return n * (n - 1) // 2, ds, math.gcd(n, q + 1)
        if g.family in ("B", "C"):
            ds = [d for i in range(1, n + 1) for d in _minus(2 * i)]
            return n * n, ds, math.gcd(2, q - 1)
        ds = [d for i in range(1, n) for d in _minus(2 * i)]
        if g.family == "D":
            return n * (n - 1), ds + _minus(n), math.gcd(4, q**n - 1)
        return n * (n - 1), ds + _plus(n), math.gcd(4, q**n + 1)
    if isinstance(g, Exceptional):
        q = g.q
        fam = g.family
        if fam == "G2":
            return 6, _minus(6) + _minus(2), 1
        if fam == "F4":
            return 24, [d for m in (12, 8, 6, 2) for d in _minus(m)], 1
        if fam == "E6":
            return 36, [d for m in (12, 9, 8, 6, 5, 2) for d in _minus(m)], math.gcd(3, q - 1)
        if fam == "2E6":
            ds = [d for m in (12, 8, 6, 2) for d in _minus(m)] + _plus(9) + _plus(5)
            return 36, ds, math.gcd(3, q + 1)
        if fam == "E7":
            return 63, [d for m in (18, 14, 12, 10, 8, 6, 2) for d in _minus(m)], math.gcd(2, q - 1)
        if fam == "E8":
            return 120, [d for m in (30, 24, 20, 18, 14, 12, 8, 2) for d in _minus(m)], 1
        if fam == "3D4":
            # q^8 + q^4 + 1 = Phi_3 Phi_6 Phi_12
            return 12, [3, 6, 12] + _minus(6) + _minus(2), 1
    if isinstance(g, SuzukiRee):
        if g.family == "2B2":
            return 2, [4, 1], 1
        if g.family == "2G2":
            return 3, _plus(3) + [1], 1
        if g.family == "2F4":
            return 12, _plus(6) + _minus(4) + _plus(3) + [1], 1
    raise UnsupportedGroup(f"no order formula for {g!r}")


@lru_cache(maxsize=None)
def _phi_factor(d: int, q: int) -> Factorization:
    return factor(cyclotomic_value(d, q))


def order(g: GroupId) -> Factorization:
    """Exact factored order of the simple group ``g``.

    >>> str(order(Classical("A", 4, 19)))
    '2^7*3^7*5^2*19^6*127*181'
    """
    if isinstance(g, Alternating):
        return alternating_order(g.n)
    if isinstance(g, Named):
        rec = _load_named().get(_norm_named(g.name))
        if rec is None:
            raise UnsupportedGroup(f"no stored order for {g.name!r}")
        return rec[0]
    N, ds, div = order_shape(g)
    p, f = is_prime_power(g.q)
    total = Factorization(((p, f * N),))
    for d in ds:
        total = total * _phi_factor(d, g.q)
    return total / factor(div)


def pi_of(g: GroupId) -> tuple[int, ...]:
    return order(g).primes


def alternating_order(n: int) -> Factorization:
    """``n!/2`` factored with Legendre's formula."""
    if n < 5:
        raise InvalidGroup("alternating_order needs n >= 5")
    acc = {}
    for p in primes_upto(n):
        e, pk = 0, p
        while pk <= n:
            e += n // pk
            pk *= p
        acc[p] = e
    acc[2] -= 1
    return Factorization.from_dict(acc)


def l4_order_formula(q: int) -> Factorization:
    """``q^6 (q^2-1)(q^3-1)(q^4-1) / (4, q-1)`` factored from its integer value."""
    value = q**6 * (q**2 - 1) * (q**3 - 1) * (q**4 - 1) // math.gcd(4, q - 1)
    return factor(value)


# --------------------------------------------------------------------------
# outer automorphisms

_OUT_CLAIMS = {
    "L_3(23)": 4,
    "L_3(27)": 6,
    "L_3(32)": 10,
    "^2D_4(5)": 4,
}


def out_order_claims(name: str) -> int | None:
    """|Out(S)| as asserted in the L4(q) case analysis, when recorded."""
    try:
        g = parse_group_token(name)
    except UnknownGroupToken:
        return _OUT_CLAIMS.get(name)
    for key, value in _OUT_CLAIMS.items():
        if parse_group_token(key) == g:
            return value
    return None


def standard_out_order(g: GroupId) -> int | None:
    """``d * f * g`` for linear and unitary groups; ``None`` elsewhere."""
    if not isinstance(g, Classical):
        return None
    p, f = is_prime_power(g.q)
    if g.family == "A":
        return math.gcd(g.n, g.q - 1) * f * (2 if g.n >= 3 else 1)
    if g.family == "2A":
        return math.gcd(g.n, g.q + 1) * 2 * f
    return None


# --------------------------------------------------------------------------
# parsing

_Q = r"(\d+)(?:\^(\d+))?"
_LIE = re.compile(r"^([23]?)([A-Z][a-z]?)(\d*)([+-]?)\(" + _Q + r"\)$")
_ALT = re.compile(r"^(?:A|Alt)(\d+)$", re.IGNORECASE)

def _normalize(token: str) -> str:
    t = token.strip()
    for a, b in (("²", "2"), ("³", "3"), ("⁺", "+"), ("⁻", "-"), (" ", ""), ("_", ""), ("{", ""), ("}", "")):
        t = t.replace(a, b)
    t = t.replace("^+", "+").replace("^-", "-")
    if t.startswith("^"):
        t = t[1:]
    # O+8(q) -> O8+(q)
    t = re.sub(r"^O([+-])(\d+)", r"O\2\1", t)
    return t


def parse_group_token(token: str) -> GroupId:
    """Parse ``"L4(19)"``, ``"A3(19)"``, ``"2B2(8)"``, ``"O_8^+(23)"``, ``"A13"``, ``"J2"``...

    ATLAS aliases resolve to Lie families: L_n -> A_{n-1}, U_n -> 2A_{n-1},
    S_{2m} -> C_m, O_{2m+1} -> B_m, O^+_{2m} -> D_m, O^-_{2m} -> 2D_m.
    The original spelling is kept in ``label``.
    """
    t = _normalize(token)
    m = _ALT.match(t)
    if m:
        return Alternating(int(m.group(1)), label=token)
    named = _load_named_safe()
    if _norm_named(t) in named:
        return Named(named[_norm_named(t)][2], label=token)
    m2 = re.match(r"^(Sz|R)\(" + _Q + r"\)$", t)
    if m2:
        q = int(m2.group(2)) ** int(m2.group(3) or 1)
        return _build(lambda: SuzukiRee("2B2" if m2.group(1) == "Sz" else "2G2", q, label=token), token)
    m = _LIE.match(t)
    if not m:
        raise UnknownGroupToken(token, _suggest(token))
    tw, fam, n, sign, qb, qe = m.groups()
    q = int(qb) ** int(qe or 1)
    if not is_prime_power(q):
        raise UnknownGroupToken(token, reason=f"{q} is not a prime power")
    n = int(n) if n else None
    key = tw + fam
    try:
        if key in ("L", "U", "S", "O") and n is not None:
            if key == "L":
                return Classical("A", n, q, label=token)
            if key == "U":
                return Classical("2A", n, q, label=token)
            if key == "S":
                if n % 2:
                    raise UnknownGroupToken(token, reason="symplectic groups have even dimension")
                return Classical("C", n // 2, q, label=token)
            if n % 2:
                return Classical("B", (n - 1) // 2, q, label=token)
            if not sign:
                qs = qb + (f"^{qe}" if qe else "")
                raise UnknownGroupToken(token, [f"O{n}+({qs})", f"O{n}-({qs})"])
            return Classical("D" if sign == "+" else "2D", n // 2, q, label=token)
        if n is None:
            raise UnknownGroupToken(token, _suggest(token))
        if key in ("A", "2A"):
            return Classical(key, n + 1, q, label=token)
        if key in ("B", "C", "D", "2D"):
            return Classical(key, n, q, label=token)
        full = f"{key}{n}"
        if full in EXCEPTIONAL_FAMILIES:
            return Exceptional(full, q, label=token)
        if full in SUZUKI_REE_FAMILIES:
            return SuzukiRee(full, q, label=token)
    except InvalidGroup as exc:
        raise UnknownGroupToken(token, reason=str(exc)) from None
    raise UnknownGroupToken(token, _suggest(token))


def _build(ctor, token):
    try:
        return ctor()
    except InvalidGroup as exc:
        raise UnknownGroupToken(token, reason=str(exc)) from None


_EXAMPLES = ["L4(19)", "A3(19)", "U4(37)", "S4(19)", "O7(23)", "O8+(23)", "O8-(5)", "2D4(5)",
             "G2(23)", "E8(2)", "3D4(7)", "2B2(8)", "2G2(27)", "2F4(8)", "A13", "J2", "M11"]


def _suggest(token: str) -> list[str]:
    head = _normalize(token).split("(")[0]
    heads = {e.split("(")[0]: e for e in _EXAMPLES}
    return [heads[h] for h in difflib.get_close_matches(head, heads, n=3, cutoff=0.3)]


# --------------------------------------------------------------------------
# named groups (sporadic groups with stored orders and clique components)

def _norm_named(name: str) -> str:
    return name.replace("_", "").replace(" ", "").upper()


@lru_cache(maxsize=None)
def _load_named() -> dict[str, tuple[Factorization, tuple[tuple[int, ...], ...], str]]:
    out = {}
    path = data_file("named.txt")
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [s.strip() for s in line.split("|")]
        if len(parts) != 3:
            raise ParseError("expected 'names | order | components'", lineno, path)
        names = [s.strip() for s in parts[0].split(",")]
        order_ = Factorization.parse(parts[1])
        comps = tuple(tuple(int(x) for x in c.split(",")) for c in parts[2].split(";"))
        if sorted(p for c in comps for p in c) != list(order_.primes):
            raise ValidationError(f"{names[0]}: components do not partition the order's primes")
        for nm in names:
            out[_norm_named(nm)] = (order_, comps, names[0])
    return out


def _load_named_safe():
    try:
        return _load_named()
    except DatasetMissing:
        return {}


def named_components(g: Named) -> tuple[tuple[int, ...], ...]:
    rec = _load_named().get(_norm_named(g.name))
    if rec is None:
        raise UnsupportedGroup(f"no stored components for {g.name!r}")
    return rec[1]


# --------------------------------------------------------------------------
# candidate table

@dataclass(frozen=True)
class CandidateRecord:
    name: str
    order: Factorization
    max_prime: int
    source: str = "dataset"

    @property
    def primes(self) -> tuple[int, ...]:
        return self.order.primes


def load_candidate_table(path: str | Path | None = None) -> list[CandidateRecord]:
    """Parse ``name | p | p1^e1*p2^e2*...`` records; ``#`` comments.

    Raises :class:`ParseError` (with line number) on malformed lines and
    :class:`ValidationError` naming the record when ``p`` is not the
    largest prime of the order or a name repeats.
    """
    path = Path(path) if path is not None else data_file("simple_groups.txt")
    if not path.exists():
        raise DatasetMissing(str(path))
    records: list[CandidateRecord] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [s.strip() for s in line.split("|")]
        if len(parts) != 3 or not parts[1].isdigit():
            raise ParseError("expected 'name | p | factorization'", lineno, path)
        name, p, text = parts[0], int(parts[1]), parts[2]
        try:
            f = Factorization.parse(text)
        except ValidationError as exc:
            raise ValidationError(f"record {name!r} (line {lineno}): {exc}") from None
        except ParseError as exc:
            raise ParseError(str(exc), lineno, path) from None
        if f.max_prime != p:
            raise ValidationError(f"record {name!r} (line {lineno}): max prime {f.max_prime} != {p}")
        if name in seen:
            raise ValidationError(f"record {name!r} (line {lineno}): duplicate name")
        seen.add(name)
        records.append(CandidateRecord(name, f, p))
    return records


@lru_cache(maxsize=None)
def _cached_candidates() -> tuple[CandidateRecord, ...]:
    return tuple(load_candidate_table())


def packaged_candidates() -> tuple[CandidateRecord, ...]:
    return _cached_candidates()


# Rows of the packaged table whose stored order disagrees with the order
# polynomial. The polynomial value is the correct one in every case.
CANDIDATE_ERRATA = {
    "L_5(8)": "7^3 should be 7^4",
    "L_6(8)": "7^4 should be 7^5",
    "D_8(19)": "stored order is |D_4(19)|",
    "L_3(31^2)": "31^7 should be 31^6, and the factor 13 is missing",
    "^2D_6(8)": "the factor 109 is missing",
    "E_8(2)": "3^12 should be 3^13, and the factor 73 is missing",
    "U_6(29)": "5^5 should be 5^6",
}


def crosscheck_candidate_orders(records=None) -> list[tuple[str, Factorization, Factorization]]:
    """Records whose stored order differs from the closed-form order.

    Returns ``(name, stored, computed)`` triples; records whose name does not
    parse to a supported family are skipped.
    """
    out = []
    for rec in records if records is not None else packaged_candidates():
        try:
            g = parse_group_token(rec.name)
            computed = order(g)
        except (UnknownGroupToken, UnsupportedGroup):
            continue
        if computed != rec.order:
            out.append((rec.name, rec.order, computed))
    return out
