"""Numba-accelerated kernels, signature-compatible with numpy_backend.

Loops run in canonical (ascending index) order with early exit, so
witnesses match the numpy backend exactly.
"""

from __future__ import annotations

import numpy as np
from numba import njit
from numba.core import types
from numba.typed import Dict

_FNV_OFFSET = np.uint64(1469598103934665603)
_FNV_PRIME = np.uint64(1099511628211)


@njit(cache=True)
def _additive_closure_core(addm, seed):
    m = addm.shape[0]
    mask = np.zeros(m, np.uint8)
    buf = np.empty(m, np.int32)
    size = 0
    for i in range(seed.size):
        v = seed[i]
        if mask[v] == 0:
            mask[v] = 1
            buf[size] = v
            size += 1
    head = 0
    while head < size:
        a = buf[head]
        row = addm[a]
        j = 0
        while j < size:
            s = row[buf[j]]
            if mask[s] == 0:
                mask[s] = 1
                buf[size] = s
                size += 1
            j += 1
        head += 1
    return np.sort(buf[:size])


def additive_closure(addm, seed):
    return _additive_closure_core(addm, np.asarray(seed, dtype=np.int32))


@njit(cache=True)
def _sum_core(addm, a, b):
    m = addm.shape[0]
    mask = np.zeros(m, np.uint8)
    buf = np.empty(m, np.int32)
    size = 0
    for i in range(a.size):
        row = addm[a[i]]
        for j in range(b.size):
            s = row[b[j]]
            if mask[s] == 0:
                mask[s] = 1
                buf[size] = s
                size += 1
    return np.sort(buf[:size])


def sum_of_submodules(addm, a, b):
    return _sum_core(addm, a, b)


@njit(cache=True)
def coset_min_reps(addm, sub):
    m = addm.shape[0]
    out = np.empty(m, np.int32)
    for i in range(m):
        row = addm[i]
        best = row[sub[0]]
        for j in range(1, sub.size):
            v = row[sub[j]]
            if v < best:
                best = v
        out[i] = best
    return out


@njit(cache=True)
def coset_reps(addm, sub):
    m = addm.shape[0]
    visited = np.zeros(m, np.uint8)
    reps = np.empty(m // max(1, sub.size) + 1, np.int32)
    cnt = 0
    for i in range(m):
        if visited[i] == 0:
            reps[cnt] = i
            cnt += 1
            row = addm[i]
            for j in range(sub.size):
                visited[row[sub[j]]] = 1
    return reps[:cnt]


@njit(cache=True)
def _hash_span(flat, lo, hi):
    h = _FNV_OFFSET
    for i in range(lo, hi):
        h = (h ^ np.uint64(flat[i])) * _FNV_PRIME
    return np.int64(h & np.uint64(0x7FFFFFFFFFFFFFFF))


@njit(cache=True)
def _lattice_core(addm, smul, zero_idx, max_count):
    m = addm.shape[0]
    n = smul.shape[0]
    off = np.zeros(max_count + 2, np.int64)
    flat = np.empty(1 << 16, np.int32)
    table = Dict.empty(types.int64, types.int64)

    mask = np.zeros(m, np.uint8)
    scratch = np.empty(m, np.int32)
    rx_mask = np.zeros(m, np.uint8)
    rx_buf = np.empty(n, np.int32)
    visited = np.zeros(m, np.uint8)

    # seed with the zero submodule
    flat[0] = zero_idx
    used = 1
    count = 1
    off[1] = 1
    table[_hash_span(flat, 0, 1)] = 0

    i = 0
    while i < count:
        alo, ahi = off[i], off[i + 1]
        a_min = flat[alo]
        for t in range(m):
            visited[t] = 0
        for x in range(m):
            if visited[x] == 1:
                continue
            # x is the minimal representative of its coset mod A
            xrow = addm[x]
            for ai in range(alo, ahi):
                visited[xrow[flat[ai]]] = 1
            if x == a_min:
                continue  # the coset of A itself
            # join A + Rx (A + Rx depends on x only mod A)
            rxcnt = 0
            for r in range(n):
                v = smul[r, x]
                if rx_mask[v] == 0:
                    rx_mask[v] = 1
                    rx_buf[rxcnt] = v
                    rxcnt += 1
            for j in range(rxcnt):
                rx_mask[rx_buf[j]] = 0
            cnt = 0
            for ai in range(alo, ahi):
                row = addm[flat[ai]]
                for j in range(rxcnt):
                    v = row[rx_buf[j]]
                    if mask[v] == 0:
                        mask[v] = 1
                        scratch[cnt] = v
                        cnt += 1
            res = np.sort(scratch[:cnt])
            for t in range(cnt):
                mask[res[t]] = 0
            h = _hash_span(res, 0, cnt)
            fresh = True
            while h in table:
                idx = table[h]
                slo, shi = off[idx], off[idx + 1]
                if shi - slo == cnt:
                    same = True
                    for t in range(cnt):
                        if flat[slo + t] != res[t]:
                            same = False
                            break
                    if same:
                        fresh = False
                        break
                h = (h + 0x9E3779B9) & 0x7FFFFFFFFFFFFFFF
            if fresh:
                if count + 1 > max_count:
                    return flat[:used], off[: count + 1], False
                while used + cnt > flat.size:
                    grown = np.empty(flat.size * 2, np.int32)
                    grown[:used] = flat[:used]
                    flat = grown
                flat[used : used + cnt] = res
                used += cnt
                count += 1
                off[count] = used
                table[h] = count - 1
        i += 1
    return flat[:used], off[: count + 1], True


def enumerate_lattice(addm, smul, zero_idx, max_count):
    flat, off, ok = _lattice_core(addm, smul, zero_idx, max_count)
    if not ok:
        return None
    subs = [flat[off[i] : off[i + 1]].copy() for i in range(off.size - 1)]
    subs.sort(key=lambda e: (e.size, e.tobytes()))
    return subs


@njit(cache=True)
def strongly_prime_witness(addm, smul, basis, p_elems, p_mask, xreps):
    m = addm.shape[0]
    n = smul.shape[0]
    k = basis.size
    rx_mask = np.zeros(m, np.uint8)
    nx_mask = np.zeros(m, np.uint8)
    rx_buf = np.empty(m, np.int32)
    nx_buf = np.empty(m, np.int32)
    ideal = np.empty(n, np.int32)
    for xi in range(xreps.size):
        x = xreps[xi]
        rxcnt = 0
        for r in range(n):
            v = smul[r, x]
            if rx_mask[v] == 0:
                rx_mask[v] = 1
                rx_buf[rxcnt] = v
                rxcnt += 1
        nxcnt = 0
        for i in range(p_elems.size):
            row = addm[p_elems[i]]
            for j in range(rxcnt):
                w = row[rx_buf[j]]
                if nx_mask[w] == 0:
                    nx_mask[w] = 1
                    nx_buf[nxcnt] = w
                    nxcnt += 1
        icnt = 0
        for r in range(n):
            good = True
            for b in range(k):
                if nx_mask[smul[r, basis[b]]] == 0:
                    good = False
                    break
            if good:
                ideal[icnt] = r
                icnt += 1
        for j in range(rxcnt):
            rx_mask[rx_buf[j]] = 0
        for j in range(nxcnt):
            nx_mask[nx_buf[j]] = 0
        for yi in range(xreps.size):
            y = xreps[yi]
            good = True
            for t in range(icnt):
                if not p_mask[smul[ideal[t], y]]:
                    good = False
                    break
            if good:
                return x, y
    return -1, -1


@njit(cache=True)
def strongly_semiprime_witness(addm, smul, basis, c_elems, c_mask, xreps):
    m = addm.shape[0]
    n = smul.shape[0]
    k = basis.size
    rx_mask = np.zeros(m, np.uint8)
    nx_mask = np.zeros(m, np.uint8)
    rx_buf = np.empty(m, np.int32)
    nx_buf = np.empty(m, np.int32)
    for xi in range(xreps.size):
        x = xreps[xi]
        rxcnt = 0
        for r in range(n):
            v = smul[r, x]
            if rx_mask[v] == 0:
                rx_mask[v] = 1
                rx_buf[rxcnt] = v
                rxcnt += 1
        nxcnt = 0
        for i in range(c_elems.size):
            row = addm[c_elems[i]]
            for j in range(rxcnt):
                w = row[rx_buf[j]]
                if nx_mask[w] == 0:
                    nx_mask[w] = 1
                    nx_buf[nxcnt] = w
                    nxcnt += 1
        good_x = True
        for r in range(n):
            in_ideal = True
            for b in range(k):
                if nx_mask[smul[r, basis[b]]] == 0:
                    in_ideal = False
                    break
            if in_ideal and not c_mask[smul[r, x]]:
                good_x = False
                break
        for j in range(rxcnt):
            rx_mask[rx_buf[j]] = 0
        for j in range(nxcnt):
            nx_mask[nx_buf[j]] = 0
        if good_x:
            return x
    return -1
