"""Exact number theory over arbitrary-precision integers.

Factorization, primality, multiplicative orders with the ``e(2, a)``
convention, primitive prime divisors and a few small helpers
(``nu``, ``eta``, p-parts, prime-power detection).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Mapping

try:  # gmpy2 speeds up the rho inner loop; plain ints give identical results
    from gmpy2 import gcd as _gcd, mpz as _mpz
except ImportError:  # pragma: no cover
    _gcd, _mpz = math.gcd, int

from .errors import FactorizationIncomplete, NotCoprime, ParseError, ValidationError

__all__ = [
    "Factorization",
    "FactorConfig",
    "FactorTable",
    "ZsigmondySet",
    "cyclotomic_value",
    "default_config",
    "eta",
    "factor",
    "iroot",
    "is_prime",
    "is_prime_power",
    "load_factor_table",
    "mult_order",
    "nu",
    "p_part",
    "primality_status",
    "prime_pi",
    "primes_upto",
    "primitive_prime_divisors",
    "restricted_ppd",
    "set_default_config",
]

TRIAL_LIMIT = 10**6

# Miller-Rabin with the first twelve primes as bases is exact below
# 3.317e24 (Sorenson & Webster), which covers every 64-bit input.
DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
DETERMINISTIC_BOUND = 1 << 64
# Fixed schedule used above 2**64; results there are strong-probable only.
EXTENDED_BASES = DETERMINISTIC_BASES + (41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


# --------------------------------------------------------------------------
# small primes

@lru_cache(maxsize=None)
def _sieve(limit: int) -> bytearray:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return flags


@lru_cache(maxsize=None)
def primes_upto(limit: int) -> tuple[int, ...]:
    """All primes ``p <= limit`` in increasing order."""
    if limit < 2:
        return ()
    flags = _sieve(limit)
    return tuple(i for i in range(2, limit + 1) if flags[i])


def prime_pi(limit: int) -> int:
    return len(primes_upto(limit))


@lru_cache(maxsize=None)
def _trial_blocks(limit: int, size: int = 256) -> tuple[tuple[int, tuple[int, ...]], ...]:
    # products of consecutive primes, so one gcd screens a whole block
    ps = primes_upto(limit)
    blocks = []
    for i in range(0, len(ps), size):
        chunk = ps[i : i + size]
        blocks.append((math.prod(chunk), chunk))
    return tuple(blocks)


# --------------------------------------------------------------------------
# primality

def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test, exact below ``2**64``.

    Above that bound a fixed schedule of Miller-Rabin bases is used; see
    :func:`primality_status` for how the result should be labelled.
    """
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    if n <= TRIAL_LIMIT:
        return bool(_sieve(TRIAL_LIMIT)[n])
    for p in DETERMINISTIC_BASES:
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = DETERMINISTIC_BASES if n < DETERMINISTIC_BOUND else EXTENDED_BASES
    return all(_strong_probable_prime(n, a, d, s) for a in bases)


def primality_status(n: int) -> str:
    """``"composite"``, ``"prime"`` or ``"strong-probable"`` (n >= 2**64)."""
    if not is_prime(n):
        return "composite"
    return "prime" if n < DETERMINISTIC_BOUND else "strong-probable"


# --------------------------------------------------------------------------
# factorizations

_TERM = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


@dataclass(frozen=True, order=False)
class Factorization:
    """Prime factorization as ``((p1, e1), (p2, e2), ...)`` with ``p1 < p2 < ...``.

    The empty factorization represents 1.
    """

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = 1
        for p, e in self.factors:
            if p <= prev:
                raise ValidationError(f"primes must be strictly increasing, got {self.factors}")
            if e < 1:
                raise ValidationError(f"exponent of {p} must be positive")
            prev = p

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "Factorization":
        return cls(tuple(sorted((p, e) for p, e in d.items() if e)))

    @classmethod
    def parse(cls, text: str, *, check_primes: bool = True) -> "Factorization":
        """Parse ``"2^7*3^7*5^2*19^6*127*181"`` (``·`` and spaces allowed).

        A repeated prime has its exponents added.
        """
        text = text.strip()
        if text in ("", "1"):
            return cls()
        acc: dict[int, int] = {}
        for term in re.split(r"[*·]", text):
            m = _TERM.match(term)
            if not m:
                raise ParseError(f"bad factor term {term!r} in {text!r}")
            p = int(m.group(1))
            e = int(m.group(2) or 1)
            if e == 0:
                continue
            if check_primes and not is_prime(p):
                raise ValidationError(f"{p} in {text!r} is not prime")
            acc[p] = acc.get(p, 0) + e
        return cls.from_dict(acc)

    @property
    def value(self) -> int:
        return math.prod(p**e for p, e in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def max_prime(self) -> int | None:
        return self.factors[-1][0] if self.factors else None

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def divides(self, other: "Factorization") -> bool:
        od = other.as_dict()
        return all(od.get(p, 0) >= e for p, e in self.factors)

    def __mul__(self, other: "Factorization") -> "Factorization":
        acc = self.as_dict()
        for p, e in other.factors:
            acc[p] = acc.get(p, 0) + e
        return Factorization.from_dict(acc)

    def __truediv__(self, other: "Factorization") -> "Factorization":
        """Exact quotient; raises ``ValueError`` when ``other`` does not divide."""
        acc = self.as_dict()
        for p, e in other.factors:
            left = acc.get(p, 0) - e
            if left < 0:
                raise ValueError(f"{other} does not divide {self}")
            acc[p] = left
        return Factorization.from_dict(acc)

    def __pow__(self, k: int) -> "Factorization":
        return Factorization(tuple((p, e * k) for p, e in self.factors)) if k else Factorization()

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


@dataclass(frozen=True, eq=False)
class FactorTable:
    """Validated ``composite -> factorization`` lookup, immutable after load."""

    entries: Mapping[int, Factorization] = field(default_factory=dict)
    source: str | None = None

    def __len__(self) -> int:
        return len(self.entries)

    def lookup(self, n: int) -> Factorization | None:
        return self.entries.get(n)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(sorted({p for f in self.entries.values() for p in f.primes}))


def load_factor_table(path: str | Path) -> FactorTable:
    """Read lines ``<composite> = p1^e1 * p2^e2 * ...``; ``#`` starts a comment."""
    path = Path(path)
    entries: dict[int, Factorization] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected '<n> = <factorization>'", lineno, path)
        lhs, rhs = (s.strip() for s in line.split("=", 1))
        if not lhs.isdigit():
            raise ParseError(f"left side {lhs!r} is not a decimal integer", lineno, path)
        n = int(lhs)
        try:
            f = Factorization.parse(rhs)
        except (ParseError, ValidationError) as exc:
            raise ParseError(str(exc), lineno, path) from None
        if f.value != n:
            raise ParseError(f"product of factors is {f.value}, not {n}", lineno, path)
        entries[n] = f
    return FactorTable(entries, str(path))


@dataclass(frozen=True)
class FactorConfig:
    trial_limit: int = TRIAL_LIMIT
    rho_iterations: int = 1 << 20
    rho_attempts: int = 4
    table: FactorTable | None = None


_default = FactorConfig()


def default_config() -> FactorConfig:
    return _default


def set_default_config(config: FactorConfig) -> None:
    """Install the process-wide default (done once, e.g. by the CLI)."""
    global _default
    _default = config


def iroot(n: int, k: int) -> tuple[int, bool]:
    """Integer k-th root ``floor(n ** (1/k))`` and whether it is exact."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n, True
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x, x**k == n


def _perfect_power(n: int) -> tuple[int, int] | None:
    for k in primes_upto(n.bit_length()):
        r, exact = iroot(n, k)
        if exact:
            return r, k
    return None


def _brent(n: int, c: int, budget: int) -> int | None:
    """One Pollard-Brent run with x0 = 2 and f(x) = x^2 + c; a proper factor or None."""
    n = _mpz(n)
    y, r, q, g = _mpz(2), 1, _mpz(1), 1
    m = 128
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * (x - y) % n
            g = _gcd(q, n)
            k += m
        used += r
        r *= 2
        if used > budget:
            return None
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = _gcd(x - ys, n)
    return int(g) if 1 < g < n else None


def _trial_divide(n: int, limit: int, acc: dict[int, int]) -> int:
    for block, chunk in _trial_blocks(limit):
        if n == 1:
            break
        g = math.gcd(n, block)
        if g > 1:
            for p in chunk:
                if g % p == 0:
                    while n % p == 0:
                        n //= p
                        acc[p] = acc.get(p, 0) + 1
        if chunk[-1] ** 2 > n:
            break
    return n


@lru_cache(maxsize=65536)
def _factor_cached(n: int, config: FactorConfig) -> Factorization:
    acc: dict[int, int] = {}
    rest = _trial_divide(n, config.trial_limit, acc)
    if rest > 1 and config.trial_limit**2 > rest:
        acc[rest] = acc.get(rest, 0) + 1
        rest = 1
    stack = [(rest, 1)] if rest > 1 else []
    stuck: list[int] = []
    while stack:
        m, mult = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            acc[m] = acc.get(m, 0) + mult
            continue
        pp = _perfect_power(m)
        if pp:
            stack.append((pp[0], mult * pp[1]))
            continue
        if config.table is not None:
            hit = config.table.lookup(m)
            if hit is not None:
                for p, e in hit:
                    acc[p] = acc.get(p, 0) + e * mult
                continue
            d = next((p for p in config.table.primes if m % p == 0), None)
            if d is not None:
                stack.extend([(d, mult), (m // d, mult)])
                continue
        d = None
        for c in range(1, config.rho_attempts + 1):
            d = _brent(m, c, config.rho_iterations)
            if d:
                break
        if d:
            stack.extend([(d, mult), (m // d, mult)])
        else:
            stuck.append(m**mult)
    if stuck:
        raise FactorizationIncomplete(n, Factorization.from_dict(acc), math.prod(stuck))
    return Factorization.from_dict(acc)


def factor(n: int, config: FactorConfig | None = None) -> Factorization:
    """Prime factorization of ``n >= 1``.

    Trial division below ``config.trial_limit``, then the optional factor
    table, then Pollard-Brent rho with a fixed iteration budget.
    Raises :class:`FactorizationIncomplete` when a cofactor survives all three.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"factor() needs n >= 1, got {n}")
    if n == 1:
        return Factorization()
    return _factor_cached(n, config or _default)


def prime_set(n: int) -> tuple[int, ...]:
    return factor(n).primes


# --------------------------------------------------------------------------
# orders and Zsigmondy primes

def mult_order(r: int, a: int) -> int:
    """``e(r, a)``: multiplicative order of ``a`` modulo the prime ``r``.

    For ``r = 2`` and odd ``a`` this is 1 when ``a = 1 (mod 4)`` and 2
    otherwise; ``e(2, a)`` for even ``a`` is undefined and raises
    :class:`NotCoprime`.
    """
    if a % r == 0:
        raise NotCoprime(f"{r} divides {a}; e({r}, {a}) is undefined")
    if r == 2:
        return 1 if a % 4 == 1 else 2
    a %= r
    order = r - 1
    for p, _ in factor(r - 1):
        while order % p == 0 and pow(a, order // p, r) == 1:
            order //= p
    return order


def _mobius(n: int) -> int:
    f = factor(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


@lru_cache(maxsize=4096)
def cyclotomic_value(m: int, a: int) -> int:
    """``Phi_m(a)`` via the Moebius product over divisors of ``m``."""
    num, den = 1, 1
    for d in _divisors(m):
        mu = _mobius(m // d)
        if mu == 1:
            num *= a**d - 1
        elif mu == -1:
            den *= a**d - 1
    return num // den


def _divisors(m: int) -> list[int]:
    ds = [1]
    for p, e in factor(m):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


@dataclass(frozen=True)
class ZsigmondySet:
    base: int
    exponent: int
    primes: tuple[int, ...]

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)

    def __contains__(self, r):
        return r in self.primes


@lru_cache(maxsize=4096)
def primitive_prime_divisors(a: int, m: int) -> ZsigmondySet:
    """``R_m(a)``: every prime ``r`` dividing ``a^m - 1`` with ``e(r, a) = m``.

    Only the cyclotomic factor ``Phi_m(a)`` is factored; every prime of
    order ``m`` divides it (the prime 2, when ``m`` is ``e(2, a)``, divides
    ``Phi_1(a)`` or ``Phi_2(a)`` for odd ``a``).

    >>> primitive_prime_divisors(61, 6).primes
    (7, 523)
    """
    if a < 2 or m < 1:
        raise ValueError("need a > 1 and m >= 1")
    f = factor(cyclotomic_value(m, a))
    rs = tuple(r for r in f.primes if a % r and mult_order(r, a) == m)
    return ZsigmondySet(a, m, rs)


def zsigmondy_exceptions(a_max: int, m_max: int) -> list[tuple[int, int]]:
    """Pairs (a, m) where a^m - 1 has no primitive prime divisor (including 2^1 - 1 = 1)."""
    return [
        (a, m)
        for a in range(2, a_max + 1)
        for m in range(1, m_max + 1)
        if not primitive_prime_divisors(a, m)
    ]


def restricted_ppd(primes: Iterable[int], a: int, m: int) -> tuple[int, ...]:
    """Members of ``primes`` whose order ``e(r, a)`` equals ``m``.

    Equal to ``R_m(a) & primes`` without factoring ``a^m - 1``; primes
    dividing ``a`` have no order and are skipped.
    """
    return tuple(r for r in sorted(set(primes)) if a % r and mult_order(r, a) == m)


# --------------------------------------------------------------------------
# small helpers

def nu(m: int) -> int:
    if m < 1:
        raise ValueError("nu is defined on positive integers")
    if m % 4 == 0:
        return m
    if m % 2 == 0:
        return m // 2
    return 2 * m


def eta(m: int) -> int:
    if m < 1:
        raise ValueError("eta is defined on positive integers")
    return m if m % 2 else m // 2


def p_part(m: int, p: int) -> int:
    """Largest power of ``p`` dividing ``m``."""
    if m < 1:
        raise ValueError("p_part needs m >= 1")
    part = 1
    while m % p == 0:
        m //= p
        part *= p
    return part


def is_prime_power(q: int) -> tuple[int, int] | None:
    """``(p, f)`` with ``q = p**f`` and ``p`` prime, or ``None``."""
    if q < 2:
        return None
    if is_prime(q):
        return q, 1
    for k in reversed(primes_upto(q.bit_length())):
        r, exact = iroot(q, k)
        if exact:
            inner = is_prime_power(r)
            if inner:
                return inner[0], inner[1] * k
            return None
    return None
