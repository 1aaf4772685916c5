"""Axiom sweeps and structural checks over a Dickson nearfield.

Exhaustive sweeps index elements in ascending discrete-log order (zero
first, then ``g^0, g^1, ...``) and scan triples lexicographically in that
order, so the reported witness is always the first violation.  Sampled
sweeps draw all triples up front from ``numpy.random.default_rng(seed)`` and
report the lowest failing sample index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import ParameterError
from ..ff_core import FieldElement
from .core import DicksonNearfield

#: Largest order for cubic (triple) exhaustive sweeps.
EXHAUSTIVE_LIMIT = 625
#: Largest order for quadratic (pair) exhaustive sweeps.
QUADRATIC_LIMIT = 4096
DEFAULT_SAMPLES = 10**6
_CHUNK = 1 << 18


@dataclass
class CheckResult:
    name: str
    mode: str
    sample_count: int
    passed: bool
    witness: tuple[FieldElement, ...] | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "mode": self.mode,
            "sample_count": self.sample_count,
            "passed": self.passed,
            "witness": None if self.witness is None else [str(w) for w in self.witness],
            "detail": self.detail,
        }

    def render(self) -> str:
        line = f"{'PASS' if self.passed else 'FAIL'}  {self.name:<20} {self.mode} ({self.sample_count} cases)"
        if self.detail:
            line += f"  {self.detail}"
        if self.witness is not None:
            line += "  witness=(" + ", ".join(str(w) for w in self.witness) + ")"
        return line


@dataclass
class VerificationReport:
    subject: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"subject": self.subject, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks]}

    def render(self) -> str:
        return "\n".join([f"verification of {self.subject}"] + [c.render() for c in self.checks])


def _elements(nf: DicksonNearfield, codes) -> tuple[FieldElement, ...]:
    return tuple(nf.field.from_code(int(c)) for c in codes)


def _first_row_hit(n_rows: int, bad_for_row: Callable[[int], np.ndarray]):
    """First ``(row, flat_index)`` where ``bad_for_row(row)`` is True."""
    for a in range(n_rows):
        bad = bad_for_row(a)
        if bad.any():
            return a, int(np.argmax(bad))
    return None


def _dlog_tables(nf: DicksonNearfield):
    """Element codes in dlog order plus the o- and +-tables on their positions."""
    k = nf.kernel
    order = k.dlog_order()
    pos = np.empty(order.size, dtype=np.int64)
    pos[order] = np.arange(order.size)
    T = pos[k.table(order, order)]
    A = pos[k.add(order[:, None], order[None, :])]
    return order, T, A


def _exhaustive(nf: DicksonNearfield) -> list[CheckResult]:
    order, T, A = _dlog_tables(nf)
    N = order.size
    idx = np.arange(N)

    def wit(*ix):
        return tuple(nf.field.from_code(int(order[i])) for i in ix)

    def triple(bad_for_a):
        hit = _first_row_hit(N, bad_for_a)
        if hit is None:
            return None
        a, flat = hit
        return wit(a, *divmod(flat, N))

    checks = []

    # (N, +): identity, inverses, commutativity, associativity
    w, detail = None, ""
    bad = np.flatnonzero((A[:, 0] != idx) | (A[0, :] != idx))
    if bad.size:
        w, detail = wit(bad[0]), "additive identity fails"
    if w is None:
        bad = np.flatnonzero(~(A == 0).any(axis=1))
        if bad.size:
            w, detail = wit(bad[0]), "no additive inverse"
    if w is None:
        bad = np.flatnonzero((A != A.T).ravel())
        if bad.size:
            w, detail = wit(*divmod(int(bad[0]), N)), "addition not commutative"
    if w is None:
        w = triple(lambda a: A[A[a]] != A[a][A])
        if w is not None:
            detail = "addition not associative"
    checks.append(CheckResult("additive_group", "exhaustive", N**3, w is None, w, detail))

    w = triple(lambda a: T[T[a]] != T[a][T])
    checks.append(CheckResult("associativity", "exhaustive", N**3, w is None, w,
                              "" if w is None else "(a o b) o c != a o (b o c)"))

    w = triple(lambda a: T[A[a]] != A[T[a][None, :], T])
    checks.append(CheckResult("right_distributivity", "exhaustive", N**3, w is None, w,
                              "" if w is None else "(a + b) o c != a o c + b o c"))

    # position 1 holds g^0 = 1
    bad = np.flatnonzero((T[:, 1] != idx) | (T[1, :] != idx))
    w = wit(bad[0]) if bad.size else None
    checks.append(CheckResult("identity", "exhaustive", N, w is None, w))

    units = idx[1:]
    is_one = T[units] == 1
    x = np.argmax(is_one, axis=1)
    ok = (is_one.sum(axis=1) == 1) & (T[x, units] == 1)
    bad = units[~ok]
    w = wit(bad[0]) if bad.size else None
    checks.append(CheckResult("inverses", "exhaustive", N - 1, w is None, w))

    bad = np.flatnonzero((T[0] != 0) | (T[:, 0] != 0))
    w = wit(bad[0]) if bad.size else None
    checks.append(CheckResult("zero_annihilation", "exhaustive", N, w is None, w))
    return checks


def _sampled(nf: DicksonNearfield, samples: int, seed: int) -> list[CheckResult]:
    k = nf.kernel
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, nf.order, size=(3, samples), dtype=np.int64)
    names = ["additive_group", "associativity", "right_distributivity",
             "identity", "inverses", "zero_annihilation"]
    first: dict[str, tuple] = {}
    counts = dict.fromkeys(names, 0)

    def note(name, bad, *cols):
        counts[name] += bad.size
        if name not in first and bad.any():
            i = int(np.argmax(bad))
            first[name] = _elements(nf, [c[i] for c in cols])

    for start in range(0, samples, _CHUNK):
        a, b, c = draws[:, start:start + _CHUNK]
        ab = k.add(a, b)
        note("additive_group",
             (k.add(ab, c) != k.add(a, k.add(b, c))) | (ab != k.add(b, a))
             | (k.add(a, 0) != a) | (k.add(a, k.neg(a)) != 0), a, b, c)
        note("associativity",
             k.nf_mul(k.nf_mul(a, b), c) != k.nf_mul(a, k.nf_mul(b, c)), a, b, c)
        note("right_distributivity",
             k.nf_mul(ab, c) != k.add(k.nf_mul(a, c), k.nf_mul(b, c)), a, b, c)
        note("identity", (k.nf_mul(a, 1) != a) | (k.nf_mul(1, a) != a), a)
        nz = a[a != 0]
        inv = k.nf_inv(nz)
        note("inverses", (k.nf_mul(nz, inv) != 1) | (k.nf_mul(inv, nz) != 1), nz)
        note("zero_annihilation", (k.nf_mul(a, 0) != 0) | (k.nf_mul(0, a) != 0), a)

    return [CheckResult(name, "sampled", counts[name], name not in first, first.get(name))
            for name in names]


def verify_axioms(nf: DicksonNearfield, mode: str = "exhaustive",
                  samples: int = DEFAULT_SAMPLES, seed: int = 0) -> VerificationReport:
    """Check every nearfield axiom for ``(N, +, o)``.

    ``mode="exhaustive"`` sweeps all triples and needs ``q^n <= 625``;
    ``mode="sampled"`` checks ``samples`` seeded random triples.
    """
    report = VerificationReport(f"DN{nf.pair} [{nf.label}]")
    if mode == "exhaustive":
        if nf.order > EXHAUSTIVE_LIMIT:
            raise ParameterError(
                f"exhaustive sweep needs q^n <= {EXHAUSTIVE_LIMIT}, got {nf.order}; use sampled mode")
        report.checks.extend(_exhaustive(nf))
    elif mode == "sampled":
        if samples < 1:
            raise ParameterError("sample count must be positive")
        report.checks.extend(_sampled(nf, samples, seed))
    else:
        raise ParameterError(f"unknown mode {mode!r}")
    return report


def coupling_property_check(nf: DicksonNearfield, mode: str = "exhaustive",
                            samples: int = DEFAULT_SAMPLES, seed: int = 0) -> CheckResult:
    """``k(a) + k(b) = k(b^(q^k(a)) * a) mod n`` over pairs of nonzero elements.

    This is the coupling identity ``phi_a o phi_b = phi_(phi_a(b) a)`` read on
    exponents: the twists ``x -> x^(q^k)`` agree exactly when ``k`` agrees mod n.
    """
    k = nf.kernel
    n, unit = nf.n, nf.unit_order

    def bad_pairs(la, lb):
        ka, kb = k.coset_of_log(la), k.coset_of_log(lb)
        lc = (lb * k.qpow[ka] + la) % unit
        return (ka + kb - k.coset_of_log(lc)) % n != 0

    if mode == "exhaustive":
        if nf.order > QUADRATIC_LIMIT:
            raise ParameterError(f"exhaustive pair sweep needs q^n <= {QUADRATIC_LIMIT}")
        units = k.dlog_order()[1:]
        logs = k.log[units]
        rows = max(1, _CHUNK // units.size)
        for start in range(0, units.size, rows):
            bad = bad_pairs(logs[start:start + rows, None], logs[None, :])
            if bad.any():
                i, j = divmod(int(np.argmax(bad)), units.size)
                return CheckResult("coupling_identity", mode, units.size**2, False,
                                   _elements(nf, [units[start + i], units[j]]))
        return CheckResult("coupling_identity", mode, units.size**2, True)
    if mode != "sampled":
        raise ParameterError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    a, b = rng.integers(1, nf.order, size=(2, samples), dtype=np.int64)
    bad = bad_pairs(k.log[a], k.log[b])
    w = _elements(nf, [a[np.argmax(bad)], b[np.argmax(bad)]]) if bad.any() else None
    return CheckResult("coupling_identity", mode, samples, w is None, w)


def metacyclic_check(nf: DicksonNearfield) -> CheckResult:
    """``H = <g^n>`` is a cyclic normal subgroup of ``(N^x, o)`` with cyclic quotient of order n."""
    if nf.order > QUADRATIC_LIMIT:
        raise ParameterError(f"metacyclic check needs q^n <= {QUADRATIC_LIMIT}, got {nf.order}")
    k = nf.kernel
    n, unit = nf.n, nf.unit_order
    h_size = unit // n
    H = k.power_codes(n * np.arange(h_size))
    in_H = np.zeros(nf.order, dtype=bool)
    in_H[H] = True
    name = "metacyclic"

    def fail(detail, *codes):
        return CheckResult(name, "exhaustive", unit**2, False, _elements(nf, codes), detail)

    # o agrees with the field product on H x H, hence H is o-closed
    twisted, plain = k.table(H, H), k.mul(H[:, None], H[None, :])
    bad = (twisted != plain) | ~in_H[twisted]
    if bad.any():
        i, j = divmod(int(np.argmax(bad)), h_size)
        return fail("H not closed or o != * on H", H[i], H[j])

    # cyclic: the o-powers of g^n run through H and return to 1 after |H| steps
    gn = k.power_codes(n)
    x, seen = 1, []
    for _ in range(h_size):
        seen.append(x)
        x = int(k.nf_mul(x, gn))
    if x != 1 or len(set(seen)) != h_size or not in_H[seen].all():
        return fail(f"g^n does not generate H cyclically (|H| = {h_size})", gn)

    # normal: (x o h) o x^-1 in H for every unit x and h in H
    units = k.dlog_order()[1:]
    inv = k.nf_inv(units)
    rows = max(1, _CHUNK // h_size)
    for start in range(0, units.size, rows):
        xs, xi = units[start:start + rows, None], inv[start:start + rows, None]
        bad = ~in_H[k.nf_mul(k.nf_mul(xs, H[None, :]), xi)]
        if bad.any():
            i, j = divmod(int(np.argmax(bad)), h_size)
            return fail("H not normal", units[start + i], H[j])

    # quotient: the coset index (dlog mod n) of x o y depends only on those of x and y
    cls = k.dlog(units) % n
    reps = k.power_codes(np.arange(n))
    Q = k.dlog(k.table(reps, reps)) % n
    rows = max(1, _CHUNK // units.size)
    for start in range(0, units.size, rows):
        prod = k.dlog(k.table(units[start:start + rows], units)) % n
        bad = prod != Q[cls[start:start + rows, None], cls[None, :]]
        if bad.any():
            i, j = divmod(int(np.argmax(bad)), units.size)
            return fail("coset product not well defined", units[start + i], units[j])
    c, order = 1 % n, 1
    while c != 0 and order <= n:
        c = int(Q[c, 1 % n])
        order += 1
    if order != n or len(set(cls.tolist())) != n:
        return fail(f"quotient not cyclic of order {n} (coset of g has order {order})", reps[1 % n])
    return CheckResult(name, "exhaustive", unit**2, True,
                       detail=f"|H|={h_size} normal, quotient cyclic of order {n}")


def left_distributivity_witness(nf: DicksonNearfield):
    """First ``(a, b, c)`` in discrete-log order with ``a o (b + c) != a o b + a o c``.

    ``a`` in {0, 1} and ``b = 0`` satisfy the law trivially and are skipped.
    Returns ``None`` when the left law holds everywhere (the field case).
    """
    k = nf.kernel
    order = k.dlog_order()
    N = order.size
    rows = max(1, _CHUNK // N)
    for ai in range(2, N):
        a = order[ai]
        for start in range(1, N, rows):
            b = order[start:start + rows, None]
            # rows > 1 only when a whole row fits in one chunk, so row-major argmax is first
            for cstart in range(0, N, _CHUNK):
                c = order[None, cstart:cstart + _CHUNK]
                bad = k.nf_mul(a, k.add(b, c)) != k.add(k.nf_mul(a, b), k.nf_mul(a, c))
                if bad.any():
                    i, j = divmod(int(np.argmax(bad)), bad.shape[1])
                    return _elements(nf, [a, order[start + i], order[cstart + j]])
    return None
