"""Packed int64 backend for exact polynomial products and sums.

Exponent tuples are packed into int64 keys, 5 bits per variable, so numpy
can add exponent vectors and merge duplicate monomials at C speed.  The
backend is only engaged when it can certify exactness: the alphabet must
fit in 63 bits, every exponent must stay below 32, and the running product
of factor L1 norms (an upper bound for every intermediate coefficient)
must stay below 2^62.  Anything else falls back to plain dict arithmetic
on Python ints.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .poly import Polynomial

PACK_BITS = 5
INT64_HEADROOM = 2**62


class FastPathUnavailable(Exception):
    """Packing width or coefficient bound cannot be certified for int64."""


class Packer:
    def __init__(self, m: int, n: int):
        nv = 2 + m + n
        if nv * PACK_BITS > 63 or m * n >= 32:
            raise FastPathUnavailable(f"context ({m}, {n}) too wide to pack")
        self.m, self.n, self.nv = m, n, nv
        self.shifts = [PACK_BITS * k for k in range(nv)]
        self._shift_arr = np.array(self.shifts, dtype=np.int64)
        self._place = np.int64(1) << self._shift_arr

    def pack_poly(self, p: Polynomial) -> tuple[np.ndarray, np.ndarray]:
        items = list(p.items())
        if not items:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        exps = np.array([e for e, _ in items], dtype=np.int64)
        coeffs = np.array([c for _, c in items], dtype=np.int64)
        return exps @ self._place, coeffs

    def unpack(self, keys: np.ndarray, coeffs: np.ndarray) -> Polynomial:
        mask = np.int64((1 << PACK_BITS) - 1)
        mat = ((keys[:, None] >> self._shift_arr[None, :]) & mask).tolist()
        terms = dict(zip(map(tuple, mat), coeffs.tolist()))
        return Polynomial._raw(self.m, self.n, terms)


def merge(keys: np.ndarray, coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Combine duplicate keys and drop zero coefficients."""
    if len(keys) == 0:
        return keys, coeffs
    order = np.argsort(keys, kind="stable")
    sk, sc = keys[order], coeffs[order]
    starts = np.flatnonzero(np.concatenate(([True], sk[1:] != sk[:-1])))
    uk = sk[starts]
    uc = np.add.reduceat(sc, starts)
    keep = uc != 0
    return uk[keep], uc[keep]


def mul_factor(keys, coeffs, fk, fc):
    nk = (keys[:, None] + fk[None, :]).ravel()
    nc = (coeffs[:, None] * fc[None, :]).ravel()
    return merge(nk, nc)


def product(m: int, n: int, factors: Iterable[Polynomial]) -> Polynomial:
    """Exact product of polynomials in context (m, n), packed when possible."""
    fs = list(factors)
    usable = True
    try:
        packer = Packer(m, n)
    except FastPathUnavailable:
        usable = False
    if usable:
        bound = 1
        degree = 0
        for f in fs:
            bound *= max(1, f.l1_norm())
            degree += max(0, f.total_degree())
        usable = bound < INT64_HEADROOM and degree < 32
    if usable:
        keys = np.zeros(1, dtype=np.int64)
        coeffs = np.ones(1, dtype=np.int64)
        for f in fs:
            fk, fc = packer.pack_poly(f)
            keys, coeffs = mul_factor(keys, coeffs, fk, fc)
        return packer.unpack(keys, coeffs)
    out = Polynomial.const(1, m, n)
    for f in fs:
        out = out * f
    return out
