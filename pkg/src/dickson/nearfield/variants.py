"""Generator variants of DN(q, n) and their restricted-isomorphism classes.

Replacing the generator ``g`` by ``g^e`` (``e`` coprime to ``q^n - 1``) can
change the twisted product.  Two variants are identified when a field-power
map ``x -> x^(p^j)`` carries one product onto the other; no other bijections
are tried.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..dickson_pairs import DicksonPair, as_pair, class_count
from ..errors import ParameterError
from ..ff_core import ExtensionField
from .core import DicksonNearfield, default_field
from .verify import QUADRATIC_LIMIT

PAIR_LIMIT = 10**4


def variant_exponents(field: ExtensionField) -> list[int]:
    u = field.unit_order
    return [e for e in range(1, max(u, 2)) if math.gcd(e, u) == 1]


def is_isomorphic_restricted(nf1: DicksonNearfield, nf2: DicksonNearfield,
                             samples: int = PAIR_LIMIT, seed: int = 0) -> int | None:
    """Least ``j`` with ``(a o1 b)^(p^j) = a^(p^j) o2 b^(p^j)`` for all checked pairs.

    All pairs are checked when there are at most ``PAIR_LIMIT`` of them;
    otherwise ``samples`` seeded random pairs (the same pairs for every ``j``).
    """
    if nf1.pair != nf2.pair or nf1.field != nf2.field:
        raise ParameterError("restricted isomorphism needs the same pair and field")
    k1, k2 = nf1.kernel, nf2.kernel
    N = nf1.order
    if N * N <= PAIR_LIMIT:
        a, b = np.divmod(np.arange(N * N, dtype=np.int64), N)
    else:
        a, b = np.random.default_rng(seed).integers(0, N, size=(2, samples), dtype=np.int64)
    prod1 = k1.nf_mul(a, b)
    for j in range(nf1.field.m):
        lhs = k1.frobenius(prod1, j)
        rhs = k2.nf_mul(k1.frobenius(a, j), k1.frobenius(b, j))
        if np.array_equal(lhs, rhs):
            return j
    return None


@dataclass
class VariantClasses:
    pair: DicksonPair
    predicted: int
    representatives: list[DicksonNearfield]
    exponents: list[int]
    members: list[list[int]]

    @property
    def discovered(self) -> int:
        return len(self.representatives)

    @property
    def matches(self) -> bool:
        return self.discovered == self.predicted


def enumerate_variants(pair, field: ExtensionField | None = None,
                       samples: int = PAIR_LIMIT, seed: int = 0) -> VariantClasses:
    """Group the nearfields for every generator ``g^e`` into restricted-isomorphism classes.

    Exponents are scanned in ascending order; each class is represented by
    its smallest exponent.  A count differing from ``phi(n)/ord_n(p)`` is
    reported through :attr:`VariantClasses.matches`, never hidden.
    """
    pair = as_pair(pair)
    if field is None:
        field = default_field(pair.p, pair.l * pair.n)
    if field.order > QUADRATIC_LIMIT:
        raise ParameterError(f"variant enumeration needs q^n <= {QUADRATIC_LIMIT}, got {field.order}")
    reps: list[DicksonNearfield] = []
    members: list[list[int]] = []
    g = field.generator
    for e in variant_exponents(field):
        nf = DicksonNearfield(pair, field, g**e, label=f"exponent:{e}")
        for rep, group in zip(reps, members):
            if is_isomorphic_restricted(rep, nf, samples, seed) is not None:
                group.append(e)
                break
        else:
            reps.append(nf)
            members.append([e])
    return VariantClasses(pair, class_count(pair), reps, [m[0] for m in members], members)


def orbit_key(pair: DicksonPair, e: int) -> int:
    """Smallest element of ``{e * p^j mod n}``.

    The product built from ``g^e`` depends only on ``e mod n`` and the map
    ``x -> x^p`` multiplies that residue by ``p``, so equal keys mean
    restricted-isomorphic variants.
    """
    n = pair.n
    seen, r = set(), e % n
    while r not in seen:
        seen.add(r)
        r = r * pair.p % n
    return min(seen)


def class_exponents(pair, field: ExtensionField | None = None) -> list[int]:
    """Generator exponent of each class representative, in class-index order.

    Small fields run :func:`enumerate_variants`; above ``QUADRATIC_LIMIT`` the
    classes are read off :func:`orbit_key`, which agrees with the enumeration
    wherever both run.
    """
    pair = as_pair(pair)
    if field is None:
        field = default_field(pair.p, pair.l * pair.n)
    if field.order <= QUADRATIC_LIMIT:
        return enumerate_variants(pair, field).exponents
    exps, keys = [], set()
    for e in variant_exponents(field):
        key = orbit_key(pair, e)
        if key not in keys:
            keys.add(key)
            exps.append(e)
            if len(exps) == class_count(pair):
                break
    return exps
