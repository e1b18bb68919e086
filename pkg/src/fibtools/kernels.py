"""Hot inner loops, each in a numba and a pure-numpy flavour.

The public functions dispatch on :func:`fibtools._accel.backend`. Both flavours
perform the same integer or IEEE operations in the same order, so integer
results agree exactly and the random-walk logs agree to the last few ulps
(``log`` itself may differ between libm and numpy).

Random signs come from SplitMix64. Walk ``w`` is seeded with
``mix64(master + (w + 1) * GOLDEN)``; each 64-bit output feeds 32 steps,
two bits per step: bit ``2r`` negates the ``t[k-1]`` term and bit ``2r + 1``
negates the ``t[k-2]`` term.
"""
from __future__ import annotations

import math

import numpy as np

from . import _accel
from ._accel import njit, prange

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

# walks are rescaled by 2**-RESCALE_BITS whenever they pass 2**RESCALE_BITS
RESCALE_BITS = 512
_BIG = 2.0**RESCALE_BITS
_TINY = 2.0**-RESCALE_BITS
_LN2 = math.log(2.0)

_U_GOLDEN = np.uint64(GOLDEN)
_U_MIX1 = np.uint64(MIX1)
_U_MIX2 = np.uint64(MIX2)
_U30 = np.uint64(30)
_U27 = np.uint64(27)
_U31 = np.uint64(31)
_U1 = np.uint64(1)
_U2 = np.uint64(2)
_U3 = np.uint64(3)


def _use_numba() -> bool:
    return _accel.backend() == "numba"


# ---------------------------------------------------------------- SplitMix64


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def splitmix64(state: int) -> tuple[int, int]:
    """Advance ``state`` once; returns ``(new_state, output)``."""
    state = (state + GOLDEN) & MASK64
    return state, mix64(state)


def walk_seed(master_seed: int, index: int) -> int:
    return mix64((master_seed + (index + 1) * GOLDEN) & MASK64)


@njit(cache=True)
def _splitmix_nb(state):
    state = state + _U_GOLDEN
    z = state
    z = (z ^ (z >> _U30)) * _U_MIX1
    z = (z ^ (z >> _U27)) * _U_MIX2
    return state, z ^ (z >> _U31)


def _splitmix_np(state: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    state = state + _U_GOLDEN
    z = (state ^ (state >> _U30)) * _U_MIX1
    z = (z ^ (z >> _U27)) * _U_MIX2
    return state, z ^ (z >> _U31)


# ------------------------------------------------------- random Fibonacci walks


@njit(parallel=True, cache=True)
def _walk_logs_nb(n, seeds, logs, zero):
    for w in prange(seeds.shape[0]):
        state = seeds[w]
        bits = np.uint64(0)
        a = 1.0
        b = 1.0
        scale = 0
        for j in range(n - 2):
            r = j % 32
            if r == 0:
                state, bits = _splitmix_nb(state)
            s = (bits >> np.uint64(2 * r)) & _U3
            c1 = -b if (s & _U1) != 0 else b
            c2 = -a if (s & _U2) != 0 else a
            a = b
            b = c1 + c2
            if abs(a) > _BIG or abs(b) > _BIG:
                a *= _TINY
                b *= _TINY
                scale += 1
        if b == 0.0:
            zero[w] = True
            logs[w] = 0.0
        else:
            zero[w] = False
            logs[w] = (math.log(abs(b)) + scale * RESCALE_BITS * _LN2) / n


def _walk_logs_np(n: int, seeds: np.ndarray, logs: np.ndarray, zero: np.ndarray) -> None:
    state = seeds.copy()
    bits = np.zeros_like(state)
    a = np.ones(seeds.shape[0])
    b = np.ones(seeds.shape[0])
    scale = np.zeros(seeds.shape[0], dtype=np.int64)
    for j in range(n - 2):
        r = j % 32
        if r == 0:
            state, bits = _splitmix_np(state)
        s = (bits >> np.uint64(2 * r)) & _U3
        c1 = np.where((s & _U1) != 0, -b, b)
        c2 = np.where((s & _U2) != 0, -a, a)
        a = b
        b = c1 + c2
        big = (np.abs(a) > _BIG) | (np.abs(b) > _BIG)
        if big.any():
            a = np.where(big, a * _TINY, a)
            b = np.where(big, b * _TINY, b)
            scale += big
    zero[:] = b == 0.0
    with np.errstate(divide="ignore"):
        out = (np.log(np.abs(b)) + scale * RESCALE_BITS * _LN2) / n
    logs[:] = np.where(zero, 0.0, out)


def walk_logs(n: int, seeds: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-walk ``log|t_n| / n`` and a mask of walks that end at zero."""
    seeds = np.ascontiguousarray(seeds, dtype=np.uint64)
    logs = np.empty(seeds.shape[0])
    zero = np.empty(seeds.shape[0], dtype=np.bool_)
    if _use_numba():
        _walk_logs_nb(n, seeds, logs, zero)
    else:
        _walk_logs_np(n, seeds, logs, zero)
    return logs, zero


@njit(parallel=True, cache=True)
def _sign_tree_abs_sum_nb(n):
    depth = n - 2
    top = min(depth, 6)
    rest = depth - top
    n_top = 1 << (2 * top)
    partial = np.zeros(n_top, dtype=np.int64)
    for prefix in prange(n_top):
        a = 1
        b = 1
        for j in range(top):
            s = (prefix >> (2 * j)) & 3
            c = (-b if s & 1 else b) + (-a if s & 2 else a)
            a = b
            b = c
        acc = 0
        for suffix in range(1 << (2 * rest)):
            x = a
            y = b
            for j in range(rest):
                s = (suffix >> (2 * j)) & 3
                c = (-y if s & 1 else y) + (-x if s & 2 else x)
                x = y
                y = c
            acc += abs(y)
        partial[prefix] = acc
    return partial.sum()


def _sign_tree_abs_sum_np(n: int) -> int:
    depth = n - 2
    rest = min(depth, 9)
    top = depth - rest
    total = 0
    for prefix in range(1 << (2 * top)):
        a, b = 1, 1
        for j in range(top):
            s = (prefix >> (2 * j)) & 3
            a, b = b, (-b if s & 1 else b) + (-a if s & 2 else a)
        x = np.array([a], dtype=np.int64)
        y = np.array([b], dtype=np.int64)
        for _ in range(rest):
            # branch order matches sign bits 0..3
            x, y = np.tile(y, 4), np.concatenate((y + x, -y + x, y - x, -y - x))
        total += int(np.abs(y).sum())
    return total


def sign_tree_abs_sum(n: int) -> int:
    """Sum of ``|t_n|`` over every one of the ``4**(n-2)`` sign sequences."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if n == 2:
        return 1
    if _use_numba():
        return int(_sign_tree_abs_sum_nb(n))
    return _sign_tree_abs_sum_np(n)


# ------------------------------------------------------------- balanced words


@njit(cache=True)
def _balance_witness_nb(bits):
    length = bits.shape[0]
    prefix = np.zeros(length + 1, dtype=np.int64)
    for i in range(length):
        prefix[i + 1] = prefix[i] + bits[i]
    for m in range(1, length):
        hi = -1
        lo = length + 1
        i_hi = 0
        i_lo = 0
        for i in range(length - m + 1):
            c = prefix[i + m] - prefix[i]
            if c > hi:
                hi = c
                i_hi = i
            if c < lo:
                lo = c
                i_lo = i
        if hi - lo >= 2:
            return m, i_hi, i_lo
    return -1, -1, -1


def _balance_witness_np(bits: np.ndarray) -> tuple[int, int, int]:
    prefix = np.concatenate(([0], np.cumsum(bits, dtype=np.int64)))
    for m in range(1, bits.shape[0]):
        counts = prefix[m:] - prefix[:-m]
        i_hi = int(np.argmax(counts))
        i_lo = int(np.argmin(counts))
        if counts[i_hi] - counts[i_lo] >= 2:
            return m, i_hi, i_lo
    return -1, -1, -1


def balance_witness(bits: np.ndarray) -> tuple[int, int, int]:
    """First unbalanced window ``(m, i_max, i_min)`` or ``(-1, -1, -1)``.

    Windows are scanned by increasing length ``m``; within a length the first
    window of maximal and of minimal weight are reported.
    """
    bits = np.ascontiguousarray(bits, dtype=np.int64)
    if _use_numba():
        m, i, j = _balance_witness_nb(bits)
        return int(m), int(i), int(j)
    return _balance_witness_np(bits)


@njit(parallel=True, cache=True)
def _count_balanced_nb(n):
    total = 0
    for word in prange(1 << n):
        prefix = np.zeros(n + 1, dtype=np.int64)
        for i in range(n):
            prefix[i + 1] = prefix[i] + ((word >> i) & 1)
        ok = 1
        for m in range(1, n):
            hi = -1
            lo = n + 1
            for i in range(n - m + 1):
                c = prefix[i + m] - prefix[i]
                hi = max(hi, c)
                lo = min(lo, c)
            if hi - lo >= 2:
                ok = 0
                break
        total += ok
    return total


def _count_balanced_np(n: int) -> int:
    words = np.arange(1 << n, dtype=np.int64)
    bits = ((words[:, None] >> np.arange(n)) & 1).astype(np.int8)
    prefix = np.zeros((words.shape[0], n + 1), dtype=np.int8)
    np.cumsum(bits, axis=1, out=prefix[:, 1:])
    ok = np.ones(words.shape[0], dtype=np.bool_)
    for m in range(1, n):
        counts = prefix[:, m:] - prefix[:, :-m]
        ok &= (counts.max(axis=1) - counts.min(axis=1)) <= 1
    return int(ok.sum())


def count_balanced(n: int) -> int:
    """Number of balanced binary words of length ``n`` by full enumeration."""
    if n == 0:
        return 1
    if _use_numba():
        return int(_count_balanced_nb(n))
    return _count_balanced_np(n)


# ------------------------------------------------------- Zeckendorf enumeration


@njit(cache=True)
def _count_nonadjacent_nb(weights, target):
    count = 0
    for mask in range(1 << weights.shape[0]):
        if mask & (mask >> 1):
            continue
        total = 0
        for i in range(weights.shape[0]):
            if (mask >> i) & 1:
                total += weights[i]
        if total == target:
            count += 1
    return count


def _count_nonadjacent_np(weights: np.ndarray, target: int) -> int:
    width = weights.shape[0]
    count = 0
    chunk = 1 << min(width, 20)
    for start in range(0, 1 << width, chunk):
        masks = np.arange(start, start + chunk, dtype=np.int64)
        masks = masks[(masks & (masks >> 1)) == 0]
        bits = (masks[:, None] >> np.arange(width)) & 1
        count += int(np.count_nonzero(bits @ weights == target))
    return count


def count_nonadjacent(weights, target: int) -> int:
    """Count 0/1 vectors without two adjacent ones whose weighted sum is ``target``."""
    weights = np.ascontiguousarray(weights, dtype=np.int64)
    if _use_numba():
        return int(_count_nonadjacent_nb(weights, target))
    return _count_nonadjacent_np(weights, target)


# --------------------------------------------------- Fibonacci residues mod m


@njit(cache=True)
def _residue_mask_nb(m):
    mask = np.zeros(m, dtype=np.bool_)
    a = 0
    b = 1 % m
    period = 0
    while True:
        mask[a] = True
        a, b = b, (a + b) % m
        period += 1
        if a == 0 and b == 1:
            return period, mask


def _fib_mod_pair(k: int, m: int) -> tuple[int, int]:
    # fast doubling for (F_k, F_{k+1}) mod m
    if k == 0:
        return 0, 1 % m
    a, b = _fib_mod_pair(k >> 1, m)
    c = a * ((2 * b - a) % m) % m
    d = (a * a + b * b) % m
    return (d, (c + d) % m) if k & 1 else (c, d)


def _residue_mask_np(m: int, block: int = 1 << 16) -> tuple[int, np.ndarray]:
    mask = np.zeros(m, dtype=np.bool_)
    block = min(block, 6 * m)
    f0 = np.empty(block, dtype=np.int64)
    f1 = np.empty(block, dtype=np.int64)
    a, b = 0, 1 % m
    for j in range(block):
        f0[j], f1[j] = a, b
        a, b = b, (a + b) % m
    fb_prev, fb = _fib_mod_pair(block - 1, m)
    start = 0
    while True:
        hit = np.flatnonzero((f0 == 0) & (f1 == 1 % m))
        hit = hit[hit + start > 0]
        if hit.size:
            stop = int(hit[0])
            mask[f0[:stop]] = True
            return start + stop, mask
        mask[f0] = True
        # F_{j+B} = F_B F_{j+1} + F_{B-1} F_j
        f0, f1 = (fb * f1 + fb_prev * f0) % m, (fb * ((f0 + f1) % m) + fb_prev * f1) % m
        start += block


def residue_mask(m: int) -> tuple[int, np.ndarray]:
    """Pisano period of ``m`` and the boolean mask of residues hit by ``F_n mod m``."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if m >= 1 << 31:
        raise ValueError("modulus too large for the residue kernel")
    if m == 1:
        return 1, np.ones(1, dtype=np.bool_)
    if _use_numba():
        period, mask = _residue_mask_nb(m)
        return int(period), mask
    return _residue_mask_np(m)


# ------------------------------------------------------------- digit parity


@njit(cache=True)
def _even_popcount_upto_nb(x):
    count = 0
    for n in range(1, x + 1):
        v = n
        parity = 0
        while v:
            parity ^= 1
            v &= v - 1
        if parity == 0:
            count += 1
    return count


def _even_popcount_upto_np(x: int, chunk: int = 1 << 22) -> int:
    count = 0
    for start in range(1, x + 1, chunk):
        values = np.arange(start, min(start + chunk, x + 1), dtype=np.uint64)
        count += int(np.count_nonzero((np.bitwise_count(values) & 1) == 0))
    return count


def even_popcount_upto(x: int) -> int:
    """How many ``n`` in ``[1, x]`` have an even number of binary ones."""
    if x < 1:
        return 0
    if _use_numba():
        return int(_even_popcount_upto_nb(x))
    return _even_popcount_upto_np(x)
