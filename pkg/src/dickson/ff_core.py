"""Exact arithmetic in prime fields Z_p and extension fields GF(p^m).

Elements are stored as little-endian coefficient tuples over Z_p in the
polynomial basis ``1, x, ..., x^(m-1)``.  Every element also has an integer
*code* ``sum(c_i * p**i)``, which the vectorised (numpy) routines use.

The modulus defaults to the lexicographically smallest monic irreducible
polynomial of degree ``m`` and the generator to the lexicographically
smallest primitive element, where vectors ``(c_0, ..., c_{m-1})`` are
compared with ``c_0`` most significant.  Both choices are deterministic, so a
given ``(p, m)`` always produces the same field.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DomainError, ParameterError

#: Fields with at most this many elements use a full discrete-log table.
TABLE_LIMIT = 1 << 16

_TRIAL_LIMIT = 10**6
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


# ---------------------------------------------------------------------------
# Integers


def is_prime(n: int) -> bool:
    """Primality by trial division below 2**32, Miller-Rabin above."""
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n % sp == 0:
            return n == sp
    if n < 1 << 32:
        d = 41
        while d * d <= n:
            if n % d == 0 or n % (d + 2) == 0:
                return False
            d += 6
        # 41 + 6k covers residues 5 mod 6 and +2 covers 1 mod 6
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int) -> list[int]:
    if n == 1:
        return []
    if is_prime(n):
        return [n]
    d = _pollard_brent(n)
    return _split(d) + _split(n // d)


def factorize(n: int) -> list[int]:
    """Prime factors of ``n`` with multiplicity, ascending.

    Trial division up to 10**6, then Pollard rho (Brent's variant) on the
    remaining cofactor.

    >>> factorize(8)
    [2, 2, 2]
    """
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    out = []
    for d in (2, 3):
        while n % d == 0:
            out.append(d)
            n //= d
    d = 5
    while d * d <= n and d <= _TRIAL_LIMIT:
        for t in (d, d + 2):
            while n % t == 0:
                out.append(t)
                n //= t
        d += 6
    if n > 1:
        out.extend(_split(n))
    return sorted(out)


def prime_divisors(n: int) -> list[int]:
    return sorted(set(factorize(n)))


# ---------------------------------------------------------------------------
# Polynomials over Z_p (little-endian tuples)


def _trim(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> tuple[int, ...]:
    a = [x % p for x in a]
    df = len(f) - 1
    lead_inv = pow(f[-1], -1, p)
    for d in range(len(a) - 1, df - 1, -1):
        c = a[d] * lead_inv % p
        if c:
            base = d - df
            for i, fi in enumerate(f):
                a[base + i] = (a[base + i] - c * fi) % p
    return _trim(a[:df])


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([x % p for x in out])


def _poly_powmod(a, e: int, f, p: int) -> tuple[int, ...]:
    result: tuple[int, ...] = (1,)
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        e >>= 1
        if e:
            base = _poly_mod(_poly_mul(base, base, p), f, p)
    return result


def _poly_sub(a, b, p: int) -> tuple[int, ...]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a, b, p: int) -> tuple[int, ...]:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return tuple(x * inv % p for x in a)


@dataclass(frozen=True)
class Polynomial:
    """Polynomial over Z_p; ``coefficients[i]`` multiplies ``x**i``."""

    coefficients: tuple[int, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", _trim([int(c) % self.p for c in self.coefficients])
        )

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coefficients) and self.coefficients[-1] == 1

    def padded(self, length: int) -> list[int]:
        return list(self.coefficients) + [0] * (length - len(self.coefficients))

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms) if terms else "0"


def is_irreducible(f: Polynomial) -> bool:
    """Rabin's test: ``x^(p^m) = x mod f`` and ``gcd(x^(p^(m/r)) - x, f) = 1``."""
    m, p = f.degree, f.p
    if m < 1:
        return False
    if m == 1:
        return True
    fc = f.coefficients
    x = (0, 1)
    # frob[j] = x^(p^j) mod f
    frob = [_poly_mod(x, fc, p)]
    for _ in range(m):
        frob.append(_poly_powmod(frob[-1], p, fc, p))
    if frob[m] != _poly_mod(x, fc, p):
        return False
    for r in prime_divisors(m):
        if _poly_gcd(_poly_sub(frob[m // r], x, p), fc, p) != (1,):
            return False
    return True


def _has_root(f: Polynomial) -> bool:
    p = f.p
    for r in range(p):
        acc = 0
        for c in reversed(f.coefficients):
            acc = (acc * r + c) % p
        if acc == 0:
            return True
    return False


def find_irreducible(p: int, m: int) -> Polynomial:
    """Lexicographically smallest monic irreducible of degree ``m`` over Z_p.

    Candidates are ``x^m + c_{m-1} x^(m-1) + ... + c_0`` scanned in
    lexicographic order of ``(c_0, ..., c_{m-1})``.
    """
    if m < 1:
        raise ParameterError(f"degree must be >= 1, got {m}")
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    for tail in itertools.product(range(p), repeat=m):
        # constant term 0 means x | f; a root means a linear factor
        if m > 1 and tail[0] == 0:
            continue
        f = Polynomial(tail + (1,), p)
        if m > 1 and _has_root(f):
            continue
        if is_irreducible(f):
            return f
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


# ---------------------------------------------------------------------------
# Fields and elements


class FieldElement:
    """Immutable element of an :class:`ExtensionField`."""

    __slots__ = ("field", "coefficients")

    def __init__(self, field: "ExtensionField", coefficients: tuple[int, ...]):
        self.field = field
        self.coefficients = coefficients

    def _other(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field.key != self.field.key:
                raise ParameterError(
                    f"elements of different fields: {self.field} and {other.field}"
                )
            return other
        if isinstance(other, int):
            return self.field.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(
            self.field,
            tuple((a + b) % p for a, b in zip(self.coefficients, other.coefficients)),
        )

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple(-a % p for a in self.coefficients))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field._mul(self.coefficients, other.coefficients))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e: int):
        return self.field.pow(self, e)

    def inverse(self) -> "FieldElement":
        return self.field.inv(self)

    def frobenius(self, j: int = 1) -> "FieldElement":
        return self.field.frobenius(self, j)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __bool__(self):
        return not self.is_zero()

    @property
    def code(self) -> int:
        return self.field.code(self)

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.coefficients == other.coefficients and self.field.key == other.field.key

    def __hash__(self):
        return hash((self.field.key, self.coefficients))

    def __repr__(self):
        return f"FieldElement({':'.join(map(str, self.coefficients))} in {self.field})"

    def __str__(self):
        return ":".join(map(str, self.coefficients))


class ExtensionField:
    """The finite field GF(p^m) = Z_p[x] / (modulus).

    Parameters
    ----------
    p, m:
        Characteristic and extension degree.
    modulus:
        Optional monic irreducible polynomial of degree ``m`` (a
        :class:`Polynomial` or little-endian coefficient list).  Defaults to
        :func:`find_irreducible`.
    generator:
        Optional primitive element (element or coefficient list).  Defaults
        to :func:`find_primitive`.
    dlog_backend:
        ``"table"`` or ``"bsgs"``; by default a full table is used when the
        field has at most ``TABLE_LIMIT`` elements.
    """

    def __init__(self, p: int, m: int = 1, modulus=None, generator=None, dlog_backend=None):
        if not is_prime(p):
            raise ParameterError(f"characteristic {p} is not prime")
        if m < 1:
            raise ParameterError(f"extension degree must be >= 1, got {m}")
        if modulus is None:
            modulus = find_irreducible(p, m)
        else:
            if not isinstance(modulus, Polynomial):
                modulus = Polynomial(tuple(modulus), p)
            if modulus.p != p:
                raise ParameterError("modulus characteristic does not match field")
            if modulus.degree != m or not modulus.is_monic:
                raise ParameterError(f"modulus {modulus} is not monic of degree {m}")
            if not is_irreducible(modulus):
                raise ParameterError(f"modulus {modulus} is reducible over Z_{p}")
        self.p = p
        self.m = m
        self.modulus = modulus
        self.key = (p, modulus.coefficients)
        self.order = p**m
        self.unit_order = self.order - 1
        self.factorization = factorize(self.unit_order)
        self._neg_tail = [-c % p for c in modulus.coefficients[:m]]
        self._place = [p**i for i in range(m)]
        self._frob_cache: dict[int, list[tuple[int, ...]]] = {}
        self._log_tables = None
        self.zero = FieldElement(self, (0,) * m)
        self.one = FieldElement(self, (1,) + (0,) * (m - 1))

        if generator is None:
            self.generator = find_primitive(self)
        else:
            g = self.element(generator)
            if not self.is_primitive(g):
                raise ParameterError(f"generator {g} is not primitive in {self}")
            self.generator = g

        if dlog_backend is None:
            dlog_backend = "table" if self.order <= TABLE_LIMIT else "bsgs"
        if dlog_backend not in ("table", "bsgs"):
            raise ParameterError(f"unknown dlog backend {dlog_backend!r}")
        self.dlog_backend = dlog_backend
        if dlog_backend == "table":
            self.log_tables()
        else:
            self._build_bsgs()

    # -- construction helpers -------------------------------------------

    def element(self, value) -> FieldElement:
        """Coerce an int, coefficient sequence or element into this field."""
        if isinstance(value, FieldElement):
            if value.field.key != self.key:
                raise ParameterError(f"{value!r} does not belong to {self}")
            return value if value.field is self else FieldElement(self, value.coefficients)
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, (int(value) % self.p,) + (0,) * (self.m - 1))
        coeffs = [int(c) for c in value]
        if len(coeffs) > self.m:
            raise ParameterError(f"{len(coeffs)} coefficients for a degree-{self.m} field")
        if any(not 0 <= c < self.p for c in coeffs):
            raise ParameterError(f"coefficients must lie in [0, {self.p})")
        return FieldElement(self, tuple(coeffs) + (0,) * (self.m - len(coeffs)))

    def code(self, a: FieldElement) -> int:
        return sum(c * w for c, w in zip(a.coefficients, self._place))

    def from_code(self, code: int) -> FieldElement:
        if not 0 <= code < self.order:
            raise ParameterError(f"code {code} outside [0, {self.order})")
        out = []
        for _ in range(self.m):
            code, r = divmod(code, self.p)
            out.append(r)
        return FieldElement(self, tuple(out))

    def elements(self) -> Iterator[FieldElement]:
        """All elements in lexicographic coefficient order (zero first)."""
        for coeffs in itertools.product(range(self.p), repeat=self.m):
            yield FieldElement(self, coeffs)

    def lex_codes(self) -> np.ndarray:
        """Codes of all elements in the order of :meth:`elements`."""
        grids = np.indices((self.p,) * self.m).reshape(self.m, -1)
        return (np.asarray(self._place, dtype=np.int64)[:, None] * grids).sum(axis=0)

    # -- arithmetic -----------------------------------------------------

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        m, p = self.m, self.p
        if m == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        red = self._neg_tail
        for d in range(2 * m - 2, m - 1, -1):
            c = prod[d] % p
            if c:
                base = d - m
                for i in range(m):
                    prod[base + i] += c * red[i]
        return tuple(x % p for x in prod[:m])

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.element(a) + b

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.element(a) * b

    def pow(self, a: FieldElement, e: int) -> FieldElement:
        a = self.element(a)
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return self.one
        if a.is_zero():
            return self.zero
        e %= self.unit_order
        result = self.one.coefficients
        base = a.coefficients
        while e:
            if e & 1:
                result = self._mul(result, base)
            e >>= 1
            if e:
                base = self._mul(base, base)
        return FieldElement(self, result)

    def inv(self, a: FieldElement) -> FieldElement:
        a = self.element(a)
        if a.is_zero():
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self.pow(a, self.unit_order - 1)

    def _frobenius_columns(self, j: int) -> list[tuple[int, ...]]:
        # column i is psi^j(x^i)
        cols = self._frob_cache.get(j)
        if cols is None:
            if j == 0:
                cols = [FieldElement(self, tuple(int(r == i) for r in range(self.m))).coefficients
                        for i in range(self.m)]
            else:
                prev = self._frobenius_columns(j - 1)
                cols = [self._pow_p(c) for c in prev]
            self._frob_cache[j] = cols
        return cols

    def _pow_p(self, c: tuple[int, ...]) -> tuple[int, ...]:
        return self.pow(FieldElement(self, c), self.p).coefficients if self.m > 1 else c

    def frobenius(self, a: FieldElement, j: int = 1) -> FieldElement:
        """``a ** (p ** j)``, applied as a precomputed Z_p-linear map."""
        a = self.element(a)
        if j < 0:
            raise DomainError(f"Frobenius power must be >= 0, got {j}")
        j %= self.m
        if j == 0:
            return a
        cols = self._frobenius_columns(j)
        out = [0] * self.m
        for ai, col in zip(a.coefficients, cols):
            if ai:
                for r, cr in enumerate(col):
                    out[r] += ai * cr
        return FieldElement(self, tuple(x % self.p for x in out))

    # -- multiplicative structure ----------------------------------------

    def is_primitive(self, a: FieldElement) -> bool:
        a = self.element(a)
        if a.is_zero():
            return False
        if self.pow(a, self.unit_order) != self.one:
            return False
        return all(
            self.pow(a, self.unit_order // r) != self.one for r in set(self.factorization)
        )

    def element_order(self, a: FieldElement) -> int:
        a = self.element(a)
        if a.is_zero():
            raise DomainError("zero has no multiplicative order")
        order = self.unit_order
        for r in set(self.factorization):
            while order % r == 0 and self.pow(a, order // r) == self.one:
                order //= r
        return order

    def _digits(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return np.stack([(codes // w) % self.p for w in self._place], axis=-1)

    def _codes(self, digits: np.ndarray) -> np.ndarray:
        return digits @ np.asarray(self._place, dtype=np.int64)

    def mul_matrix(self, c: FieldElement) -> np.ndarray:
        """Matrix of ``y -> c*y`` acting on coefficient row vectors."""
        c = self.element(c)
        cols = [self._mul(c.coefficients, tuple(int(r == i) for r in range(self.m)))
                for i in range(self.m)]
        return np.array(cols, dtype=np.int64)  # row i = image of x^i

    def log_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """``(exp_codes, log)`` with ``exp_codes[e] = code(g**e)`` and ``log[code] = e``.

        ``log[0]`` is -1.  Powers are generated block-wise: a first block of
        ``~sqrt(N)`` powers by repeated multiplication, then each following
        block by one linear map (multiplication by ``g**B``).
        """
        if self._log_tables is None:
            u = self.unit_order
            block = max(1, math.isqrt(u))
            first, x = [], self.one.coefficients
            for _ in range(block):
                first.append(x)
                x = self._mul(x, self.generator.coefficients)
            step = self.mul_matrix(FieldElement(self, x))
            digits = np.array(first, dtype=np.int64)
            exp = np.empty(block * (-(-u // block)), dtype=np.int64)
            for start in range(0, u, block):
                exp[start:start + block] = self._codes(digits)
                digits = digits @ step % self.p
            exp = exp[:u]
            log = np.full(self.order, -1, dtype=np.int64)
            log[exp] = np.arange(u, dtype=np.int64)
            if int((log >= 0).sum()) != u or log[0] != -1:
                raise AssertionError("generator powers are not a permutation of the units")
            exp.setflags(write=False)
            log.setflags(write=False)
            self._log_tables = (exp, log)
        return self._log_tables

    def _build_bsgs(self):
        u = self.unit_order
        step = math.isqrt(u - 1) + 1 if u > 1 else 1
        baby, x = {}, self.one.coefficients
        for j in range(step):
            baby.setdefault(x, j)
            x = self._mul(x, self.generator.coefficients)
        self._bsgs_step = step
        self._bsgs_baby = baby
        self._bsgs_giant = self.inv(self.pow(self.generator, step))

    def dlog(self, a: FieldElement) -> int:
        """Exponent ``e`` in ``[0, p^m - 1)`` with ``generator ** e == a``."""
        a = self.element(a)
        if a.is_zero():
            raise DomainError("discrete logarithm of zero is undefined")
        if self.dlog_backend == "table":
            return int(self._log_tables[1][self.code(a)])
        return self.bsgs_dlog(a)

    def bsgs_dlog(self, a: FieldElement) -> int:
        """Baby-step/giant-step discrete log, independent of the full table."""
        a = self.element(a)
        if a.is_zero():
            raise DomainError("discrete logarithm of zero is undefined")
        if not hasattr(self, "_bsgs_baby"):
            self._build_bsgs()
        step, baby = self._bsgs_step, self._bsgs_baby
        giant = self._bsgs_giant.coefficients
        cur = a.coefficients
        for i in range(step):
            j = baby.get(cur)
            if j is not None:
                return i * step + j
            cur = self._mul(cur, giant)
        raise AssertionError(f"no discrete log found for {a}")

    def bsgs_dlog_many(self, codes: Iterable[int]) -> np.ndarray:
        """Vectorised baby-step/giant-step over many nonzero element codes."""
        codes = np.asarray(codes, dtype=np.int64)
        if np.any(codes == 0):
            raise DomainError("discrete logarithm of zero is undefined")
        if not hasattr(self, "_bsgs_baby"):
            self._build_bsgs()
        step = self._bsgs_step
        baby_codes = np.array(
            [sum(c * w for c, w in zip(k, self._place)) for k in self._bsgs_baby],
            dtype=np.int64,
        )
        baby_exps = np.array(list(self._bsgs_baby.values()), dtype=np.int64)
        order = np.argsort(baby_codes)
        baby_codes, baby_exps = baby_codes[order], baby_exps[order]
        giant = self.mul_matrix(self._bsgs_giant)

        result = np.full(codes.shape, -1, dtype=np.int64)
        pending = np.arange(codes.size)
        digits = self._digits(codes.ravel())
        flat = result.ravel()
        for i in range(step):
            cur = self._codes(digits)
            idx = np.minimum(np.searchsorted(baby_codes, cur), baby_codes.size - 1)
            hit = baby_codes[idx] == cur
            flat[pending[hit]] = i * step + baby_exps[idx[hit]]
            pending, digits = pending[~hit], digits[~hit]
            if pending.size == 0:
                break
            digits = digits @ giant % self.p
        if pending.size:
            raise AssertionError("baby-step/giant-step left elements unresolved")
        return flat.reshape(codes.shape)

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"GF({self.p}^{self.m}) mod {self.modulus}"


def find_primitive(field: ExtensionField) -> FieldElement:
    """Lexicographically smallest element of multiplicative order ``p^m - 1``.

    Certified by ``a ** ((p^m - 1) / r) != 1`` for every prime ``r | p^m - 1``.
    """
    u = field.unit_order
    primes = sorted(set(field.factorization))
    one = field.one.coefficients
    for coeffs in itertools.product(range(field.p), repeat=field.m):
        if not any(coeffs):
            continue
        a = FieldElement(field, coeffs)
        if all(field.pow(a, u // r).coefficients != one for r in primes):
            return a
    raise AssertionError("unreachable: the unit group of a finite field is cyclic")


def dlog(field: ExtensionField, a: FieldElement) -> int:
    return field.dlog(a)


def frobenius(a: FieldElement, j: int = 1) -> FieldElement:
    return a.field.frobenius(a, j)
