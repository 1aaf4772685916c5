"""Dickson pairs, the complete residue system ``(q^k - 1)/(q - 1) mod n`` and class counts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, InternalContradiction, ParameterError
from .ff_core import factorize, prime_divisors


class PrimePower(NamedTuple):
    p: int
    l: int
    q: int


class PairCheck(NamedTuple):
    """Outcome of :func:`is_dickson_pair`; ``clause`` is 0 when the pair is valid."""

    ok: bool
    clause: int
    reason: str

    def __bool__(self):
        return self.ok


def as_prime_power(q: int) -> PrimePower | None:
    """``(p, l)`` with ``q == p**l``, or ``None`` when ``q`` is not a prime power."""
    if q < 2:
        raise DomainError(f"prime powers are >= 2, got {q}")
    p = factorize(q)[0]
    l, rest = 0, q
    while rest % p == 0:
        rest //= p
        l += 1
    return PrimePower(p, l, q) if rest == 1 else None


def is_dickson_pair(q: int, n: int) -> PairCheck:
    if q < 2 or n < 1:
        return PairCheck(False, 1, f"need q >= 2 and n >= 1, got ({q}, {n})")
    if as_prime_power(q) is None:
        return PairCheck(False, 1, f"q = {q} is not a prime power")
    for r in prime_divisors(n):
        if (q - 1) % r:
            return PairCheck(False, 2, f"prime divisor {r} of n = {n} does not divide q - 1 = {q - 1}")
    if q % 4 == 3 and n % 4 == 0:
        return PairCheck(False, 3, f"q = {q} is 3 mod 4 and 4 divides n = {n}")
    return PairCheck(True, 0, "valid Dickson pair")


@dataclass(frozen=True)
class DicksonPair:
    q: int
    n: int
    p: int
    l: int
    n_prime_divisors: frozenset[int]

    @classmethod
    def of(cls, q: int, n: int) -> "DicksonPair":
        check = is_dickson_pair(q, n)
        if not check:
            raise ParameterError(f"({q}, {n}) is not a Dickson pair: clause {check.clause}: {check.reason}")
        p, l, _ = as_prime_power(q)
        if math.gcd(q, n) != 1:
            raise InternalContradiction(f"Dickson pair ({q}, {n}) has gcd(q, n) != 1")
        return cls(q, n, p, l, frozenset(prime_divisors(n)))

    @property
    def order(self) -> int:
        return self.q**self.n

    def __str__(self):
        return f"({self.q},{self.n})"


def as_pair(pair) -> DicksonPair:
    if isinstance(pair, DicksonPair):
        return pair
    q, n = pair
    return DicksonPair.of(q, n)


@dataclass(frozen=True)
class ResidueSystem:
    """``residues[k-1] = i(k) mod n`` for ``k = 1..n``; ``inverse[r] = k``."""

    pair: DicksonPair
    residues: tuple[int, ...]
    inverse: tuple[int, ...]

    def residue(self, k: int) -> int:
        return self.residues[k - 1]

    def k_for_residue(self, r: int) -> int:
        return self.inverse[r % self.pair.n]


def index_value(q: int, k: int) -> int:
    """Exact ``i(k) = (q^k - 1)/(q - 1) = 1 + q + ... + q^(k-1)``."""
    return (q**k - 1) // (q - 1)


def residue_indices(pair) -> ResidueSystem:
    pair = as_pair(pair)
    q, n = pair.q, pair.n
    residues, acc = [], 0
    for _ in range(n):
        acc = (acc * q + 1) % n
        residues.append(acc)
    inverse = [0] * n
    seen = [False] * n
    for k, r in enumerate(residues, start=1):
        if seen[r]:
            raise InternalContradiction(f"i(k) mod {n} repeats residue {r} for pair {pair}")
        seen[r] = True
        inverse[r] = k
    return ResidueSystem(pair, tuple(residues), tuple(inverse))


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"euler_phi needs n >= 1, got {n}")
    result = n
    for r in prime_divisors(n):
        result -= result // r
    return result


def mult_order(a: int, n: int) -> int:
    """Smallest ``t >= 1`` with ``a**t = 1 mod n`` (1 when ``n == 1``)."""
    if n < 1:
        raise DomainError(f"modulus must be >= 1, got {n}")
    if math.gcd(a, n) != 1:
        raise DomainError(f"{a} is not a unit modulo {n}")
    if n == 1:
        return 1
    t, x = 1, a % n
    while x != 1:
        x = x * a % n
        t += 1
    return t


def class_count(pair) -> int:
    """Number of non-isomorphic nearfields for the pair: ``phi(n) / ord_n(p)``."""
    pair = as_pair(pair)
    phi = euler_phi(pair.n)
    order = mult_order(pair.p, pair.n)
    if phi % order:
        raise InternalContradiction(f"ord_{pair.n}({pair.p}) = {order} does not divide phi = {phi}")
    return phi // order


def dickson_pairs(max_q: int, max_n: int) -> list[DicksonPair]:
    """All valid pairs with ``2 <= q <= max_q`` and ``1 <= n <= max_n``, by (q, n)."""
    return [DicksonPair.of(q, n) for q in range(2, max_q + 1) for n in range(1, max_n + 1)
            if is_dickson_pair(q, n)]
