"""Vectorised nearfield arithmetic on integer element codes.

Nonzero elements are handled through the field's exp/log tables, so a
twisted product is one table lookup on ``q^k * log(a) + log(b)``.  Addition
works digit by digit on the base-``p`` codes.  Arrays of codes broadcast like
ordinary numpy operands.
"""

from __future__ import annotations

import numpy as np

from ..errors import InternalContradiction


def _pair(x, y):
    return np.broadcast_arrays(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64))


class NearfieldKernel:
    def __init__(self, nf):
        field = nf.field
        self.nf = nf
        self.exp, self.log = field.log_tables()
        self.p, self.m = field.p, field.m
        self.order = field.order
        self.unit = field.unit_order
        self.n, self.q, self.l = nf.n, nf.q, nf.l
        self.glog = nf.generator_log
        self.ginv = nf.generator_log_inv
        self.k_of_residue = np.asarray(nf.residue_system.inverse, dtype=np.int64)
        # q^k mod (q^n - 1) for k = 0..n
        self.qpow = np.array([pow(self.q, k, self.unit) for k in range(self.n + 1)], dtype=np.int64)
        self.place = [self.p**i for i in range(self.m)]
        self.one = 1

    # -- additive structure ---------------------------------------------

    def add(self, x, y):
        x, y = _pair(x, y)
        out = np.zeros(x.shape, dtype=np.int64)
        for w in self.place:
            out += ((x // w + y // w) % self.p) * w
        return out

    def neg(self, x):
        x = np.asarray(x, dtype=np.int64)
        out = np.zeros(x.shape, dtype=np.int64)
        for w in self.place:
            out += (-(x // w) % self.p) * w
        return out

    # -- logs and cosets --------------------------------------------------

    def power_codes(self, e):
        """Codes of ``generator ** e`` (nearfield generator, field powers)."""
        e = np.asarray(e, dtype=np.int64)
        return self.exp[(e % self.unit) * self.glog % self.unit]

    def dlog_order(self):
        """All codes: zero, then ``g^0, g^1, ...`` for the nearfield generator."""
        return np.concatenate([[0], self.power_codes(np.arange(self.unit))]).astype(np.int64)

    def dlog(self, x):
        """Discrete log to the nearfield generator; ``x`` must be nonzero."""
        return self.log[np.asarray(x, dtype=np.int64)] * self.ginv % self.unit

    def coset_of_log(self, lx):
        """Coset exponent ``k`` from a log to the *field* generator."""
        return self.k_of_residue[(lx * self.ginv % self.unit) % self.n]

    def coset(self, x):
        return self.coset_of_log(self.log[np.asarray(x, dtype=np.int64)])

    # -- multiplicative structure ----------------------------------------

    def mul(self, x, y):
        x, y = _pair(x, y)
        out = np.zeros(x.shape, dtype=np.int64)
        nz = (x != 0) & (y != 0)
        out[nz] = self.exp[(self.log[x[nz]] + self.log[y[nz]]) % self.unit]
        return out

    def nf_mul(self, x, y):
        x, y = _pair(x, y)
        out = np.zeros(x.shape, dtype=np.int64)
        nz = (x != 0) & (y != 0)
        lx, ly = self.log[x[nz]], self.log[y[nz]]
        k = self.coset_of_log(ly)
        out[nz] = self.exp[(lx * self.qpow[k] + ly) % self.unit]
        return out

    def nf_inv(self, x):
        """Two-sided inverse of nonzero codes by the n-candidate consistency search."""
        x = np.asarray(x, dtype=np.int64)
        lx = self.log[x]
        out = np.full(x.shape, -1, dtype=np.int64)
        hits = np.zeros(x.shape, dtype=np.int64)
        for k in range(1, self.n + 1):
            lc = (-lx * self.qpow[k]) % self.unit
            ok = self.coset_of_log(lc) == k
            out[ok] = self.exp[lc[ok]]
            hits += ok
        if np.any(hits != 1):
            raise InternalContradiction("nearfield inverse search found zero or several candidates")
        return out

    def frobenius(self, x, j: int):
        """``x ** (p ** j)`` on codes."""
        x = np.asarray(x, dtype=np.int64)
        out = np.zeros(x.shape, dtype=np.int64)
        nz = x != 0
        out[nz] = self.exp[self.log[x[nz]] * pow(self.p, j, self.unit) % self.unit]
        return out

    def table(self, rows, cols):
        """``rows[i] o cols[j]`` as a 2-D array."""
        return self.nf_mul(np.asarray(rows)[:, None], np.asarray(cols)[None, :])
