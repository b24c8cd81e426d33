# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops over CSR adjacency arrays.

All arrays are int64. Signatures match :mod:`rainbowgraph._kernels._pykernels`.
"""
import numpy as np

from libc.stdint cimport int64_t, uint8_t


def rainbow_states(const int64_t[::1] indptr, const int64_t[::1] indices,
                   const int64_t[::1] arc_color, int r, int64_t src):
    cdef int64_t n = indptr.shape[0] - 1
    cdef int64_t nm = (<int64_t>1) << r
    seen_arr = np.zeros((n, nm), dtype=np.uint8)
    cdef uint8_t[:, ::1] seen = seen_arr
    queue_arr = np.empty(n * nm, dtype=np.int64)
    cdef int64_t[::1] queue = queue_arr
    cdef int64_t head = 0, tail = 0
    cdef int64_t state, v, mask, a, w, bit, nmask
    seen[src, 0] = 1
    queue[tail] = src * nm
    tail += 1
    with nogil:
        while head < tail:
            state = queue[head]
            head += 1
            v = state // nm
            mask = state - v * nm
            for a in range(indptr[v], indptr[v + 1]):
                bit = (<int64_t>1) << (arc_color[a] - 1)
                if mask & bit:
                    continue
                w = indices[a]
                nmask = mask | bit
                if not seen[w, nmask]:
                    seen[w, nmask] = 1
                    queue[tail] = w * nm + nmask
                    tail += 1
    return seen_arr


def rainbow_reach(const int64_t[::1] indptr, const int64_t[::1] indices,
                  const int64_t[::1] arc_color, int r, int64_t src):
    """Vertices reachable by rainbow walks from ``src``; stops once all are reached."""
    cdef int64_t n = indptr.shape[0] - 1
    cdef int64_t nm = (<int64_t>1) << r
    seen_arr = np.zeros((n, nm), dtype=np.uint8)
    cdef uint8_t[:, ::1] seen = seen_arr
    reached_arr = np.zeros(n, dtype=np.uint8)
    cdef uint8_t[::1] reached = reached_arr
    queue_arr = np.empty(n * nm, dtype=np.int64)
    cdef int64_t[::1] queue = queue_arr
    cdef int64_t head = 0, tail = 0, count = 1
    cdef int64_t state, v, mask, a, w, bit, nmask
    seen[src, 0] = 1
    reached[src] = 1
    queue[tail] = src * nm
    tail += 1
    with nogil:
        while head < tail and count < n:
            state = queue[head]
            head += 1
            v = state // nm
            mask = state - v * nm
            for a in range(indptr[v], indptr[v + 1]):
                bit = (<int64_t>1) << (arc_color[a] - 1)
                if mask & bit:
                    continue
                w = indices[a]
                nmask = mask | bit
                if not seen[w, nmask]:
                    seen[w, nmask] = 1
                    queue[tail] = w * nm + nmask
                    tail += 1
                    if not reached[w]:
                        reached[w] = 1
                        count += 1
    return reached_arr.view(np.bool_)


def bfs_distances(const int64_t[::1] indptr, const int64_t[::1] indices, int64_t src):
    cdef int64_t n = indptr.shape[0] - 1
    dist_arr = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] dist = dist_arr
    queue_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] queue = queue_arr
    cdef int64_t head = 0, tail = 1, v, a, w
    dist[src] = 0
    queue[0] = src
    with nogil:
        while head < tail:
            v = queue[head]
            head += 1
            for a in range(indptr[v], indptr[v + 1]):
                w = indices[a]
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue[tail] = w
                    tail += 1
    return dist_arr


def component_labels(const int64_t[::1] indptr, const int64_t[::1] indices):
    cdef int64_t n = indptr.shape[0] - 1
    label_arr = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] label = label_arr
    queue_arr = np.empty(max(n, 1), dtype=np.int64)
    cdef int64_t[::1] queue = queue_arr
    cdef int64_t s, head, tail, v, a, w, comp = 0
    with nogil:
        for s in range(n):
            if label[s] >= 0:
                continue
            label[s] = comp
            queue[0] = s
            head = 0
            tail = 1
            while head < tail:
                v = queue[head]
                head += 1
                for a in range(indptr[v], indptr[v + 1]):
                    w = indices[a]
                    if label[w] < 0:
                        label[w] = comp
                        queue[tail] = w
                        tail += 1
            comp += 1
    return label_arr


def neighborhood_sizes(const int64_t[::1] indptr, const int64_t[::1] indices,
                       const int64_t[::1] members, const int64_t[::1] offsets):
    cdef int64_t n = indptr.shape[0] - 1
    cdef int64_t k = offsets.shape[0] - 1
    out_arr = np.zeros(k, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    # stamp[v] == 2*j+1: v in set j; == 2*j+2: v already counted for set j
    stamp_arr = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] stamp = stamp_arr
    cdef int64_t j, i, v, a, w, count, inset, counted
    with nogil:
        for j in range(k):
            inset = 2 * j + 1
            counted = 2 * j + 2
            for i in range(offsets[j], offsets[j + 1]):
                stamp[members[i]] = inset
            count = 0
            for i in range(offsets[j], offsets[j + 1]):
                v = members[i]
                for a in range(indptr[v], indptr[v + 1]):
                    w = indices[a]
                    if stamp[w] != inset and stamp[w] != counted:
                        stamp[w] = counted
                        count += 1
            out[j] = count
    return out_arr
