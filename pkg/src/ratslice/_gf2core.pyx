# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled GF(2) elimination engine.

Same contract as ratslice._gf2py.Elimination (deterministic lowest-row
pivoting, combination tracking, canonical residues) but columns live in
flat C buffers of 64-bit words, so the inner XOR loops run without Python
object churn.  Integers cross the boundary as little-endian bytes.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from cpython.mem cimport PyMem_Free, PyMem_Malloc, PyMem_Realloc
from libc.stdint cimport uint64_t
from libc.string cimport memcpy, memset

cdef extern from *:
    int __builtin_ctzll(unsigned long long)

cdef inline Py_ssize_t _lowest_bit(uint64_t *col, Py_ssize_t nwords):
    cdef Py_ssize_t w
    for w in range(nwords):
        if col[w]:
            return 64 * w + __builtin_ctzll(col[w])
    return -1

cdef inline void _xor_into(uint64_t *dst, uint64_t *src, Py_ssize_t nwords):
    cdef Py_ssize_t w
    for w in range(nwords):
        dst[w] ^= src[w]


cdef class Elimination:
    """Incremental column echelon over GF(2), compiled flavor."""

    cdef public Py_ssize_t nrows
    cdef public Py_ssize_t ncols
    cdef public bint track
    cdef Py_ssize_t nwords, cwords
    cdef Py_ssize_t npivots, capacity
    cdef uint64_t *cols          # pivot columns, nwords words each
    cdef uint64_t *combos        # combination masks, cwords words each
    cdef Py_ssize_t *pivot_of_row
    cdef uint64_t *work          # scratch column
    cdef uint64_t *wcombo        # scratch combination
    cdef uint64_t *out           # scratch residue
    cdef list _kernel            # kernel combination masks as Python ints

    def __cinit__(self, Py_ssize_t nrows, bint track=True):
        self.nrows = nrows
        self.track = track
        self.ncols = 0
        self.npivots = 0
        self.nwords = max((nrows + 63) >> 6, 1)
        self.cwords = 1
        self.capacity = 16
        self.cols = <uint64_t *> PyMem_Malloc(self.capacity * self.nwords * sizeof(uint64_t))
        self.combos = <uint64_t *> PyMem_Malloc(self.capacity * self.cwords * sizeof(uint64_t))
        self.pivot_of_row = <Py_ssize_t *> PyMem_Malloc(max(nrows, 1) * sizeof(Py_ssize_t))
        self.work = <uint64_t *> PyMem_Malloc(self.nwords * sizeof(uint64_t))
        self.wcombo = <uint64_t *> PyMem_Malloc(self.cwords * sizeof(uint64_t))
        self.out = <uint64_t *> PyMem_Malloc(self.nwords * sizeof(uint64_t))
        if (not self.cols or not self.combos or not self.pivot_of_row
                or not self.work or not self.wcombo or not self.out):
            raise MemoryError()
        cdef Py_ssize_t r
        for r in range(nrows):
            self.pivot_of_row[r] = -1
        self._kernel = []

    def __dealloc__(self):
        PyMem_Free(self.cols)
        PyMem_Free(self.combos)
        PyMem_Free(self.pivot_of_row)
        PyMem_Free(self.work)
        PyMem_Free(self.wcombo)
        PyMem_Free(self.out)

    cdef int _grow_combo_words(self, Py_ssize_t need) except -1:
        # Widen every stored combination buffer to at least `need` words.
        cdef Py_ssize_t newc = self.cwords
        while newc < need:
            newc *= 2
        cdef uint64_t *fresh = <uint64_t *> PyMem_Malloc(self.capacity * newc * sizeof(uint64_t))
        if not fresh:
            raise MemoryError()
        memset(fresh, 0, self.capacity * newc * sizeof(uint64_t))
        cdef Py_ssize_t i
        for i in range(self.npivots):
            memcpy(fresh + i * newc, self.combos + i * self.cwords,
                   self.cwords * sizeof(uint64_t))
        PyMem_Free(self.combos)
        self.combos = fresh
        cdef uint64_t *wc = <uint64_t *> PyMem_Realloc(self.wcombo, newc * sizeof(uint64_t))
        if not wc:
            raise MemoryError()
        self.wcombo = wc
        self.cwords = newc
        return 0

    cdef int _grow_capacity(self) except -1:
        cdef Py_ssize_t newcap = self.capacity * 2
        cdef uint64_t *nc = <uint64_t *> PyMem_Realloc(
            self.cols, newcap * self.nwords * sizeof(uint64_t))
        if not nc:
            raise MemoryError()
        self.cols = nc
        cdef uint64_t *nb = <uint64_t *> PyMem_Realloc(
            self.combos, newcap * self.cwords * sizeof(uint64_t))
        if not nb:
            raise MemoryError()
        self.combos = nb
        self.capacity = newcap
        return 0

    cdef int _load(self, object value, uint64_t *dst, Py_ssize_t nwords) except -1:
        cdef bytes raw = value.to_bytes(nwords * 8, "little")
        memcpy(dst, <char *> raw, nwords * 8)
        return 0

    cdef object _dump(self, uint64_t *src, Py_ssize_t nwords):
        cdef bytes raw = PyBytes_FromStringAndSize(<char *> src, nwords * 8)
        return int.from_bytes(raw, "little")

    @property
    def rank(self):
        return self.npivots

    @property
    def kernel_combos(self):
        return list(self._kernel)

    def add_column(self, col):
        cdef Py_ssize_t combo_words, row, idx
        if col >> self.nrows:
            raise ValueError("column has bits outside the row range")
        combo_words = ((self.ncols + 1) + 63) >> 6
        if combo_words > self.cwords:
            self._grow_combo_words(combo_words)
        self._load(col, self.work, self.nwords)
        memset(self.wcombo, 0, self.cwords * sizeof(uint64_t))
        self.wcombo[self.ncols >> 6] = (<uint64_t> 1) << (self.ncols & 63)
        self.ncols += 1
        row = _lowest_bit(self.work, self.nwords)
        while row >= 0:
            idx = self.pivot_of_row[row]
            if idx < 0:
                if self.npivots == self.capacity:
                    self._grow_capacity()
                memcpy(self.cols + self.npivots * self.nwords, self.work,
                       self.nwords * sizeof(uint64_t))
                memcpy(self.combos + self.npivots * self.cwords, self.wcombo,
                       self.cwords * sizeof(uint64_t))
                self.pivot_of_row[row] = self.npivots
                self.npivots += 1
                return
            _xor_into(self.work, self.cols + idx * self.nwords, self.nwords)
            if self.track:
                _xor_into(self.wcombo, self.combos + idx * self.cwords, self.cwords)
            row = _lowest_bit(self.work, self.nwords)
        if self.track:
            self._kernel.append(self._dump(self.wcombo, self.cwords))

    def reduce(self, target):
        # Local scratch: reduce() is read-only on the echelon and safe to
        # call from several threads once the columns are all added.
        cdef Py_ssize_t row, idx
        cdef uint64_t *work
        cdef uint64_t *out
        if target >> self.nrows:
            raise ValueError("target has bits outside the row range")
        work = <uint64_t *> PyMem_Malloc(self.nwords * sizeof(uint64_t))
        out = <uint64_t *> PyMem_Malloc(self.nwords * sizeof(uint64_t))
        if not work or not out:
            PyMem_Free(work)
            PyMem_Free(out)
            raise MemoryError()
        try:
            self._load(target, work, self.nwords)
            memset(out, 0, self.nwords * sizeof(uint64_t))
            row = _lowest_bit(work, self.nwords)
            while row >= 0:
                idx = self.pivot_of_row[row]
                if idx < 0:
                    out[row >> 6] |= (<uint64_t> 1) << (row & 63)
                    work[row >> 6] ^= (<uint64_t> 1) << (row & 63)
                else:
                    _xor_into(work, self.cols + idx * self.nwords, self.nwords)
                row = _lowest_bit(work, self.nwords)
            return self._dump(out, self.nwords)
        finally:
            PyMem_Free(work)
            PyMem_Free(out)

    def solve(self, target):
        cdef Py_ssize_t row, idx
        cdef uint64_t *work
        cdef uint64_t *combo
        if not self.track:
            raise ValueError("engine built without tracking")
        if target >> self.nrows:
            raise ValueError("target has bits outside the row range")
        work = <uint64_t *> PyMem_Malloc(self.nwords * sizeof(uint64_t))
        combo = <uint64_t *> PyMem_Malloc(self.cwords * sizeof(uint64_t))
        if not work or not combo:
            PyMem_Free(work)
            PyMem_Free(combo)
            raise MemoryError()
        try:
            self._load(target, work, self.nwords)
            memset(combo, 0, self.cwords * sizeof(uint64_t))
            row = _lowest_bit(work, self.nwords)
            while row >= 0:
                idx = self.pivot_of_row[row]
                if idx < 0:
                    return None
                _xor_into(work, self.cols + idx * self.nwords, self.nwords)
                _xor_into(combo, self.combos + idx * self.cwords, self.cwords)
                row = _lowest_bit(work, self.nwords)
            return self._dump(combo, self.cwords)
        finally:
            PyMem_Free(work)
            PyMem_Free(combo)

    def contains(self, target):
        return self.reduce(target) == 0
