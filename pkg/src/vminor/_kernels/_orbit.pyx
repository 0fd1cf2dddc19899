# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled LC-orbit breadth-first search for graphs with at most 64 vertices.

Same contract as ``_orbit_py.bfs``. Members live in one flat ``uint64`` array
(``n`` words per graph); deduplication uses an open-addressing table of
member indices.
"""

from libc.stdint cimport uint64_t, int64_t, int32_t
from libcpp.vector cimport vector

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    COMPLETE = 0
    FOUND = 1
    TRUNCATED = 2


cdef inline uint64_t _mix(const uint64_t* r, int n) nogil:
    cdef uint64_t h = 0x9E3779B97F4A7C15ULL
    cdef int i
    for i in range(n):
        h ^= r[i] + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2)
        h *= 0xBF58476D1CE4E5B9ULL
    h ^= h >> 31
    return h


cdef inline bint _same(const uint64_t* a, const uint64_t* b, int n) nogil:
    cdef int i
    for i in range(n):
        if a[i] != b[i]:
            return False
    return True


cdef inline bint _hit(const uint64_t* r, uint64_t mask, const uint64_t* target) nogil:
    cdef uint64_t m = mask
    cdef int t
    while m:
        t = __builtin_ctzll(m)
        if (r[t] & mask) != target[t]:
            return False
        m &= m - 1
    return True


cdef class _Table:
    cdef vector[int64_t] slots
    cdef uint64_t cap_mask
    cdef int64_t used

    def __cinit__(self):
        self.slots.assign(1 << 12, -1)
        self.cap_mask = (1 << 12) - 1
        self.used = 0

    cdef int64_t find_or_insert(self, vector[uint64_t]& store, const uint64_t* r, int n, int64_t new_index):
        """Return existing index of ``r`` or -1 after inserting ``new_index``."""
        cdef uint64_t pos = _mix(r, n) & self.cap_mask
        cdef int64_t idx
        while True:
            idx = self.slots[pos]
            if idx < 0:
                self.slots[pos] = new_index
                self.used += 1
                return -1
            if _same(&store[idx * n], r, n):
                return idx
            pos = (pos + 1) & self.cap_mask

    cdef void grow(self, vector[uint64_t]& store, int n):
        cdef uint64_t newcap = (self.cap_mask + 1) * 2
        cdef vector[int64_t] old = self.slots
        cdef uint64_t i, pos
        cdef int64_t idx
        self.slots.assign(newcap, -1)
        self.cap_mask = newcap - 1
        for i in range(old.size()):
            idx = old[i]
            if idx >= 0:
                pos = _mix(&store[idx * n], n) & self.cap_mask
                while self.slots[pos] >= 0:
                    pos = (pos + 1) & self.cap_mask
                self.slots[pos] = idx


def bfs(rows, long long budget, mask=0, target=None, bint collect=False):
    cdef int n = len(rows)
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 vertices")
    cdef vector[uint64_t] store
    cdef vector[int32_t] parent
    cdef vector[int32_t] via
    cdef uint64_t cur[64]
    cdef uint64_t new[64]
    cdef uint64_t tgt[64]
    cdef uint64_t cmask = mask
    cdef bint check = target is not None
    cdef int i, v, u
    cdef uint64_t nb, m
    cdef int64_t head = 0, count, found = -1
    cdef int status = COMPLETE
    cdef _Table table = _Table()
    cdef int64_t idx

    for i in range(n):
        store.push_back(<uint64_t>rows[i])
        tgt[i] = <uint64_t>target[i] if check else 0
    parent.push_back(-1)
    via.push_back(-1)
    table.find_or_insert(store, &store[0], n, 0)
    count = 1
    if check and _hit(&store[0], cmask, tgt):
        status = FOUND
        found = 0
    while status == COMPLETE and head < count:
        for i in range(n):
            cur[i] = store[head * n + i]
        for v in range(n):
            nb = cur[v]
            if nb == 0:
                continue
            for i in range(n):
                new[i] = cur[i]
            m = nb
            while m:
                u = __builtin_ctzll(m)
                new[u] ^= nb & ~((<uint64_t>1) << u)
                m &= m - 1
            if table.used * 2 >= <int64_t>(table.cap_mask + 1):
                table.grow(store, n)
            # append first so the table can compare against the stored copy
            for i in range(n):
                store.push_back(new[i])
            if table.find_or_insert(store, &store[count * n], n, count) >= 0:
                store.resize(count * n)
                continue
            if count >= budget:
                status = TRUNCATED
                break
            parent.push_back(<int32_t>head)
            via.push_back(v)
            count += 1
            if check and _hit(new, cmask, tgt):
                status = FOUND
                found = count - 1
                break
        head += 1

    if status == TRUNCATED:
        return TRUNCATED, count, None, None, None, None
    path = None
    if status == FOUND:
        path = []
        idx = found
        while idx > 0:
            path.append(via[idx])
            idx = parent[idx]
        path.reverse()
    if not collect:
        return status, count, path, None, None, None
    members = []
    for idx in range(count):
        members.append(tuple([store[idx * n + i] for i in range(n)]))
    return status, count, path, members, [parent[i] for i in range(count)], [via[i] for i in range(count)]
