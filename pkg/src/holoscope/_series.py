"""Truncated power-series arithmetic on ascending complex coefficient arrays."""

from __future__ import annotations

import numpy as np

from .errors import PreconditionError


def ps_mul(a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    out = np.convolve(a[: order + 1], b[: order + 1])[: order + 1]
    if len(out) < order + 1:
        out = np.pad(out, (0, order + 1 - len(out)))
    return out


def ps_recip(q: np.ndarray, order: int) -> np.ndarray:
    """Series inverse of q, q[0] != 0, by Newton doubling."""
    if q[0] == 0:
        raise PreconditionError("series reciprocal needs a nonzero constant term")
    r = np.array([1.0 / q[0]], dtype=complex)
    k = 1
    while k <= order:
        k = min(2 * k, order + 1)
        t = ps_mul(q[:k], r, k - 1)
        r = ps_mul(r, np.concatenate(([2.0 - t[0]], -t[1:])), k - 1)
    if len(r) < order + 1:
        r = np.pad(r, (0, order + 1 - len(r)))
    return r[: order + 1]


def ps_polyval(pc: np.ndarray, s: np.ndarray, order: int) -> np.ndarray:
    """Polynomial pc composed with series s, truncated at `order`.

    Horner over pc; cost grows with len(pc) * order^2, fine for the
    truncation caps used here.
    """
    out = np.array([pc[-1]], dtype=complex)
    for ck in pc[-2::-1]:
        out = ps_mul(out, s, order)
        out[0] += ck
    if len(out) < order + 1:
        out = np.pad(out, (0, order + 1 - len(out)))
    return out
