"""Dickson nearfields DN(q, n): GF(q^n) with the twisted product ``a o b = a^(q^k) * b``.

``k = k(b)`` is the coset exponent of ``b``: with ``H = <g^n>``, ``b`` lies in
the coset ``H g^(i(k))`` where ``i(k) = (q^k - 1)/(q - 1)``.  Everything in
this module is the scalar reference path (one element at a time, no lookup
tables); :mod:`dickson.nearfield.kernel` is the vectorised counterpart.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import NamedTuple

from ..dickson_pairs import DicksonPair, ResidueSystem, as_pair, residue_indices
from ..errors import DomainError, InternalContradiction, ParameterError
from ..ff_core import ExtensionField, FieldElement


@lru_cache(maxsize=32)
def default_field(p: int, m: int) -> ExtensionField:
    """The deterministic field GF(p^m), shared between constructions."""
    return ExtensionField(p, m)


class DicksonNearfield:
    """A Dickson nearfield over ``field`` with twist determined by ``generator``.

    The field's own generator only drives its discrete-log machinery; the
    nearfield's cosets are taken relative to ``generator``, which may be any
    primitive element.
    """

    def __init__(self, pair, field: ExtensionField, generator=None, label: str = "default"):
        pair = as_pair(pair)
        if field.p != pair.p or field.m != pair.l * pair.n:
            raise ParameterError(f"{field} does not have order {pair.q}^{pair.n}")
        g = field.generator if generator is None else field.element(generator)
        if not field.is_primitive(g):
            raise ParameterError(f"generator {g} is not primitive")
        self.pair: DicksonPair = pair
        self.field = field
        self.generator = g
        self.label = label
        self.residue_system: ResidueSystem = residue_indices(pair)
        self.q, self.n, self.l, self.p = pair.q, pair.n, pair.l, pair.p
        self.order = field.order
        self.unit_order = field.unit_order
        u = self.unit_order
        self.generator_log = field.dlog(g) if u > 1 else 0
        self.generator_log_inv = pow(self.generator_log, -1, u) if u > 1 else 0
        # b^(u/n) is an n-th root of unity whose index is dlog(b) mod n
        zeta = g ** (u // self.n)
        roots, x = {}, field.one
        for r in range(self.n):
            roots[x.coefficients] = r
            x = x * zeta
        if len(roots) != self.n:
            raise InternalContradiction("n-th roots of unity are not distinct")
        self._root_index = roots
        self._root_exponent = u // self.n

    def __repr__(self):
        return f"DN{self.pair} [{self.label}, g={self.generator}] over {self.field}"

    @cached_property
    def kernel(self):
        from .kernel import NearfieldKernel

        return NearfieldKernel(self)

    def element(self, value) -> FieldElement:
        return self.field.element(value)

    def elements(self):
        return self.field.elements()

    @property
    def zero(self) -> FieldElement:
        return self.field.zero

    @property
    def one(self) -> FieldElement:
        return self.field.one

    def power(self, e: int) -> FieldElement:
        """``generator ** e`` in the field (ordinary multiplication)."""
        return self.generator ** e

    def dlog(self, b) -> int:
        """Discrete log of ``b`` to the base ``generator``."""
        b = self.element(b)
        if self.unit_order == 1:
            if b.is_zero():
                raise DomainError("discrete logarithm of zero is undefined")
            return 0
        return self.field.dlog(b) * self.generator_log_inv % self.unit_order

    def coset_exponent(self, b) -> int:
        """``k`` in ``[1, n]`` with ``b`` in ``H g^(i(k))``."""
        b = self.element(b)
        if b.is_zero():
            raise DomainError("zero lies in no coset of H")
        r = self._root_index[(b ** self._root_exponent).coefficients]
        return self.residue_system.inverse[r]

    def mul(self, a, b) -> FieldElement:
        a, b = self.element(a), self.element(b)
        if a.is_zero() or b.is_zero():
            return self.field.zero
        k = self.coset_exponent(b)
        return self.field.frobenius(a, self.l * k) * b

    def inv(self, a) -> FieldElement:
        a = self.element(a)
        if a.is_zero():
            raise ZeroDivisionError("zero has no inverse in a nearfield")
        found = []
        for k in range(1, self.n + 1):
            x = self.field.frobenius(a, self.l * k).inverse()
            if self.coset_exponent(x) == k:
                found.append(x)
        if len(found) != 1:
            raise InternalContradiction(f"{len(found)} consistent inverse candidates for {a}")
        return found[0]


def construct(pair, generator=None, class_index: int | None = None,
              field: ExtensionField | None = None) -> DicksonNearfield:
    """Build DN(q, n) over the deterministic field of order ``q^n``.

    ``generator`` picks an explicit primitive element; ``class_index`` picks
    the representative of the ``j``-th restricted-isomorphism class (see
    :func:`dickson.nearfield.variants.class_exponents`).  With neither, the
    field's lexicographically smallest primitive element is used.
    """
    pair = as_pair(pair)
    if field is None:
        field = default_field(pair.p, pair.l * pair.n)
    if generator is not None and class_index is not None:
        raise ParameterError("give either an explicit generator or a class index, not both")
    if class_index is not None:
        from .variants import class_exponents

        exps = class_exponents(pair, field)
        if not 0 <= class_index < len(exps):
            raise ParameterError(f"class index {class_index} outside [0, {len(exps)})")
        return DicksonNearfield(pair, field, field.generator ** exps[class_index],
                                label=f"class:{class_index}")
    if generator is not None:
        return DicksonNearfield(pair, field, generator, label="explicit")
    return DicksonNearfield(pair, field, label="default")


def coset_exponent(nf: DicksonNearfield, b) -> int:
    return nf.coset_exponent(b)


def nf_mul(nf: DicksonNearfield, a, b) -> FieldElement:
    return nf.mul(a, b)


def nf_inv(nf: DicksonNearfield, a) -> FieldElement:
    return nf.inv(a)


class CommutatorWitness(NamedTuple):
    a: FieldElement
    b: FieldElement
    lhs: FieldElement
    rhs: FieldElement


def noncommutativity_witness(nf: DicksonNearfield) -> CommutatorWitness:
    """``(g^n, g, g^n o g, g o g^n)`` with ``g^(nq+1) != g^(n+1)``."""
    n, q = nf.n, nf.q
    if n == 1:
        raise DomainError(f"DN{nf.pair} is a field; its product commutes")
    g = nf.generator
    gn = g**n
    lhs, rhs = nf.mul(gn, g), nf.mul(g, gn)
    if lhs != g ** (n * q + 1) or rhs != g ** (n + 1):
        raise InternalContradiction("g^n o g or g o g^n disagrees with the closed form")
    if lhs == rhs:
        raise InternalContradiction(f"g^n and g commute in DN{nf.pair}")
    return CommutatorWitness(gn, g, lhs, rhs)


N9_MODULUS = (1, 0, 1)


def n9_oracle(x: FieldElement, y: FieldElement) -> FieldElement:
    """The 9-element nearfield product: ``x*y`` if ``y`` is a square, else ``x^3 * y``.

    Squareness is decided by brute force over the field, with no reference
    to cosets or discrete logarithms.
    """
    field = x.field
    if field.p != 3 or field.modulus.coefficients != N9_MODULUS:
        raise ParameterError("n9_oracle needs GF(9) built on x^2 + 1")
    y = field.element(y)
    squares = {z * z for z in field.elements()}
    return x * y if y in squares else x * x * x * y
