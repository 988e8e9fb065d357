"""Blade-product kernels on bitmask-encoded blades.

A blade over 2n generators is an integer bitmask; bit ``2(j-1)`` is w^j and
bit ``2(j-1)+1`` is its conjugate, so increasing bit order is the canonical
generator order.  The product of blades ``a`` and ``b`` is ``a | b`` with
sign ``(-1)**#{(x, y) : x in a, y in b, x > y}`` and vanishes when they
share a bit.

``wedge_table`` is the batched hot path used by :func:`nilherm.exterior.wedge`.
It is compiled with numba when available; the numpy version is selected by
``NILHERM_DISABLE_NUMBA=1``.
"""

import numpy as np

from ._accel import HAS_NUMBA, njit

MAX_BITS = 62


def blade_sign(a: int, b: int) -> int:
    """Sign of ``a ^ b`` as a canonical blade, 0 when they overlap."""
    if a & b:
        return 0
    inv = 0
    while b:
        low = b & -b
        inv += (a & ~((low << 1) - 1)).bit_count()
        b ^= low
    return -1 if inv & 1 else 1


def _wedge_table_numpy(ma, mb, nbits):
    ma = np.asarray(ma, dtype=np.int64)
    mb = np.asarray(mb, dtype=np.int64)
    shifts = np.arange(nbits, dtype=np.int64)
    bits_a = ((ma[:, None] >> shifts[None, :]) & 1).astype(np.int64)
    bits_b = ((mb[:, None] >> shifts[None, :]) & 1).astype(np.int64)
    # above[i, t] = number of bits of a[i] strictly above position t
    above = np.cumsum(bits_a[:, ::-1], axis=1)[:, ::-1] - bits_a
    inversions = above @ bits_b.T
    signs = np.where(inversions & 1, -1, 1).astype(np.int64)
    overlap = (ma[:, None] & mb[None, :]) != 0
    signs[overlap] = 0
    return ma[:, None] | mb[None, :], signs


if HAS_NUMBA:

    @njit(cache=True)
    def _wedge_table_numba(ma, mb, nbits):
        na = ma.shape[0]
        nb = mb.shape[0]
        out = np.empty((na, nb), dtype=np.int64)
        signs = np.zeros((na, nb), dtype=np.int64)
        for i in range(na):
            a = ma[i]
            for j in range(nb):
                b = mb[j]
                out[i, j] = a | b
                if a & b:
                    continue
                inv = 0
                for t in range(nbits):
                    if (b >> t) & 1:
                        rest = a >> (t + 1)
                        while rest:
                            inv += rest & 1
                            rest >>= 1
                signs[i, j] = -1 if inv & 1 else 1
        return out, signs

    def wedge_table(ma, mb, nbits):
        """``(masks, signs)`` arrays of shape ``(len(ma), len(mb))``."""
        return _wedge_table_numba(
            np.asarray(ma, dtype=np.int64), np.asarray(mb, dtype=np.int64), nbits
        )

else:
    wedge_table = _wedge_table_numpy
