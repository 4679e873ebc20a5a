# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled conformal reduction kernel (int64 storage).

Mirrors ``_pykernels.ReducerSet``.  Inputs whose entries do not fit the
guard band raise OverflowError so the caller can fall back to Python ints.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

# conformal reduction never increases magnitudes, so this bound is sufficient
cdef long long LIMIT = 4611686018427387904  # 2**62


cdef class ReducerSet:
    cdef public int n
    cdef int count
    cdef int capacity
    cdef object _data
    cdef object _first
    cdef long long[:, ::1] data
    cdef int[::1] first

    def __init__(self, int n):
        self.n = n
        self.count = 0
        self.capacity = 64
        self._data = np.zeros((self.capacity, max(n, 1)), dtype=np.int64)
        self._first = np.zeros(self.capacity, dtype=np.int32)
        self.data = self._data
        self.first = self._first

    def __len__(self):
        return self.count

    cdef void _grow(self):
        cdef int newcap = self.capacity * 2
        nd = np.zeros((newcap, max(self.n, 1)), dtype=np.int64)
        nd[:self.capacity] = self._data
        nf = np.zeros(newcap, dtype=np.int32)
        nf[:self.capacity] = self._first
        self._data = nd
        self._first = nf
        self.data = nd
        self.first = nf
        self.capacity = newcap

    def add(self, v):
        cdef int i
        cdef int j0 = -1
        if len(v) != self.n:
            raise ValueError("length mismatch")
        for x in v:
            if x >= LIMIT or x <= -LIMIT:
                raise OverflowError("entry outside int64 guard band")
        if self.count == self.capacity:
            self._grow()
        for i in range(self.n):
            self.data[self.count, i] = v[i]
            if j0 < 0 and v[i] != 0:
                j0 = i
        self.first[self.count] = j0
        self.count += 1
        return self.count - 1

    def vector(self, int k):
        return tuple(int(self.data[k, i]) for i in range(self.n))

    cdef long long _factor(self, int k, long long* s) nogil:
        cdef int i
        cdef int j = self.first[k]
        cdef long long gi, si, q, t = -1, sg
        if j < 0 or s[j] == 0:
            return 0
        sg = 1 if (s[j] > 0) == (self.data[k, j] > 0) else -1
        for i in range(self.n):
            gi = sg * self.data[k, i]
            if gi == 0:
                continue
            si = s[i]
            if si == 0:
                return 0
            if (si > 0) != (gi > 0):
                return 0
            if si < 0:
                si = -si
                gi = -gi
            if gi > si:
                return 0
            q = si // gi
            if t < 0 or q < t:
                t = q
        return sg * t

    cdef bint _load(self, v, long long[::1] buf) except -1:
        cdef int i
        if len(v) != self.n:
            raise ValueError("length mismatch")
        for i in range(self.n):
            x = v[i]
            if x >= LIMIT or x <= -LIMIT:
                raise OverflowError("entry outside int64 guard band")
            buf[i] = x
        return True

    def normal_form(self, v):
        cdef long long[::1] buf = np.zeros(max(self.n, 1), dtype=np.int64)
        cdef long long* s = &buf[0]
        cdef int k, i
        cdef long long t
        cdef bint changed = True, nonzero
        self._load(v, buf)
        with nogil:
            while changed:
                changed = False
                nonzero = False
                for i in range(self.n):
                    if s[i] != 0:
                        nonzero = True
                        break
                if not nonzero:
                    break
                for k in range(self.count):
                    t = self._factor(k, s)
                    if t != 0:
                        for i in range(self.n):
                            s[i] -= t * self.data[k, i]
                        changed = True
        return tuple(int(buf[i]) for i in range(self.n))

    def find_reducer(self, v, int exclude=-1):
        cdef long long[::1] buf = np.zeros(max(self.n, 1), dtype=np.int64)
        cdef long long* s = &buf[0]
        cdef int k
        cdef int found = -1
        self._load(v, buf)
        with nogil:
            for k in range(self.count):
                if k != exclude and self._factor(k, s) != 0:
                    found = k
                    break
        return found
