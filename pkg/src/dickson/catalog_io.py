"""Nearfield descriptors (JSON) and Cayley-table export (CSV).

A descriptor pins everything needed to rebuild a nearfield bit-for-bit:

    {"format_version":1,"p":3,"l":1,"n":2,"modulus":[1,0,1],"generator":[1,1],"label":"default"}

Keys appear in exactly this order, with no whitespace and a trailing newline,
so equal nearfields serialise to identical bytes.  Loading never trusts the
document: the pair, modulus and generator are all re-validated.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass

import numpy as np

from .dickson_pairs import as_prime_power, is_dickson_pair
from .errors import DescriptorParseError, ParameterError, ValidationError
from .ff_core import ExtensionField, FieldElement, Polynomial, is_irreducible, is_prime
from .nearfield.core import DicksonNearfield, default_field
from .nearfield.verify import QUADRATIC_LIMIT

FORMAT_VERSION = 1
_INT_KEYS = ("format_version", "p", "l", "n")
_KEYS = _INT_KEYS + ("modulus", "generator", "label")


@dataclass(frozen=True)
class NearfieldDescriptor:
    format_version: int
    p: int
    l: int
    n: int
    modulus: tuple[int, ...]
    generator: tuple[int, ...]
    label: str

    @classmethod
    def from_nearfield(cls, nf: DicksonNearfield) -> "NearfieldDescriptor":
        m = nf.field.m
        return cls(FORMAT_VERSION, nf.p, nf.l, nf.n,
                   tuple(nf.field.modulus.padded(m + 1)),
                   tuple(nf.generator.coefficients), nf.label)

    def to_json(self) -> str:
        doc = {"format_version": self.format_version, "p": self.p, "l": self.l, "n": self.n,
               "modulus": list(self.modulus), "generator": list(self.generator),
               "label": self.label}
        return json.dumps(doc, separators=(",", ":"), ensure_ascii=False) + "\n"

    @classmethod
    def parse(cls, text: str) -> "NearfieldDescriptor":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DescriptorParseError(exc.msg, exc.lineno, exc.colno) from None
        if not isinstance(doc, dict):
            raise DescriptorParseError("descriptor must be a JSON object")
        missing = [k for k in _KEYS if k not in doc]
        extra = [k for k in doc if k not in _KEYS]
        if missing or extra:
            raise DescriptorParseError(f"missing keys {missing}, unexpected keys {extra}")

        def is_int(v):
            return isinstance(v, int) and not isinstance(v, bool)

        for key in _INT_KEYS:
            if not is_int(doc[key]):
                raise DescriptorParseError(f"{key!r} must be an integer")
        for key in ("modulus", "generator"):
            if not isinstance(doc[key], list) or not all(is_int(c) for c in doc[key]):
                raise DescriptorParseError(f"{key!r} must be an array of integers")
        if not isinstance(doc["label"], str):
            raise DescriptorParseError("'label' must be a string")
        return cls(doc["format_version"], doc["p"], doc["l"], doc["n"],
                   tuple(doc["modulus"]), tuple(doc["generator"]), doc["label"])

    def build(self) -> DicksonNearfield:
        """Re-validate every invariant and construct the nearfield."""
        if self.format_version != FORMAT_VERSION:
            raise ValidationError("format_version", f"unsupported version {self.format_version}")
        p, l, n = self.p, self.l, self.n
        if p < 2 or not is_prime(p):
            raise ValidationError("prime", f"p = {p} is not prime")
        if l < 1 or n < 1:
            raise ValidationError("pair", f"need l >= 1 and n >= 1, got l={l}, n={n}")
        q = p**l
        check = is_dickson_pair(q, n)
        if not check or as_prime_power(q).p != p:
            raise ValidationError("pair", f"({q}, {n}) is not a Dickson pair: {check.reason}")
        m = l * n
        if len(self.modulus) != m + 1 or self.modulus[-1] != 1:
            raise ValidationError("modulus", f"modulus must have {m + 1} coefficients ending in 1")
        if any(not 0 <= c < p for c in self.modulus + self.generator):
            raise ValidationError("coefficients", f"coefficients must lie in [0, {p})")
        modulus = Polynomial(self.modulus, p)
        if not is_irreducible(modulus):
            raise ValidationError("modulus", f"{modulus} is reducible over Z_{p}")
        if len(self.generator) != m:
            raise ValidationError("generator", f"generator must have {m} coefficients")
        default = default_field(p, m)
        if default.modulus == modulus:
            field = default
        else:
            field = ExtensionField(p, m, modulus)
        g = field.element(self.generator)
        if not field.is_primitive(g):
            raise ValidationError("generator", f"{g} is not primitive (order {field.element_order(g) if g else 0})")
        return DicksonNearfield((q, n), field, g, label=self.label)


def _write(text: str, destination) -> None:
    if destination is None:
        return
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _read(source) -> str:
    if hasattr(source, "read"):
        return source.read()
    with open(source, encoding="utf-8") as fh:
        return fh.read()


def save_descriptor(nf: DicksonNearfield, destination=None) -> str:
    """Serialise ``nf``; also write it to ``destination`` (path or file) if given."""
    text = NearfieldDescriptor.from_nearfield(nf).to_json()
    _write(text, destination)
    return text


def parse_descriptor(text: str) -> DicksonNearfield:
    return NearfieldDescriptor.parse(text).build()


def load_descriptor(source: str | os.PathLike) -> DicksonNearfield:
    """Read a descriptor from a path or open file and rebuild the nearfield."""
    return parse_descriptor(_read(source))


# -- Cayley tables ----------------------------------------------------------

_OPS = {"add": "add", "additive": "add", "+": "add",
        "mul": "mul", "multiplicative": "mul", "o": "mul"}


def cayley_codes(nf: DicksonNearfield, operation: str) -> tuple[np.ndarray, np.ndarray]:
    """Header codes and the table of codes; cell ``(i, j)`` is ``header[i] op header[j]``.

    ``mul`` lists elements in ascending dlog order (zero first); ``add`` in
    lexicographic coefficient order.
    """
    op = _OPS.get(operation)
    if op is None:
        raise ParameterError(f"unknown operation {operation!r}; use add or mul")
    if nf.order > QUADRATIC_LIMIT:
        raise ParameterError(f"refusing to export a {nf.order}x{nf.order} table (limit {QUADRATIC_LIMIT})")
    k = nf.kernel
    if op == "mul":
        header = k.dlog_order()
        return header, k.table(header, header)
    header = nf.field.lex_codes()
    return header, k.add(header[:, None], header[None, :])


def _label(field: ExtensionField, code: int) -> str:
    return str(field.from_code(int(code)))


def export_cayley(nf: DicksonNearfield, operation: str = "mul", destination=None) -> str:
    header, table = cayley_codes(nf, operation)
    labels = [_label(nf.field, c) for c in header]
    lookup = dict(zip(header.tolist(), labels))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + labels)
    for label, row in zip(labels, table.tolist()):
        writer.writerow([label] + [lookup[c] if c in lookup else _label(nf.field, c) for c in row])
    text = buf.getvalue()
    _write(text, destination)
    return text


def import_cayley(source, field: ExtensionField):
    """Parse an exported table back into ``(header, {(row, col): cell})`` of field elements."""
    text = source if isinstance(source, str) else _read(source)
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise DescriptorParseError("empty Cayley table")

    def el(s: str) -> FieldElement:
        return field.element([int(c) for c in s.split(":")])

    header = [el(s) for s in rows[0][1:]]
    cells = {}
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != len(header) + 1:
            raise DescriptorParseError(f"row has {len(row)} cells, expected {len(header) + 1}", r, 1)
        a = el(row[0])
        for b, cell in zip(header, row[1:]):
            cells[a, b] = el(cell)
    return header, cells
