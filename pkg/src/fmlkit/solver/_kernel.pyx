# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Native search kernel; same contract and counters as ``_pysearch.Search``.

Constraints arrive as ``(kind, scope, predicate, lit_pos, lit_pol)``:
kind 0 calls ``predicate``; kind 1 is a clause over existence literals;
kind 2 is "guard absent or exactly one member present" with the guard at
``lit_pos[0]``. Existence is read off the value index (index 0 holds 0).
"""

from libc.stdlib cimport calloc, free
from libc.string cimport memset
from libc.stdint cimport uint64_t
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF

cdef extern from *:
    int __builtin_clzll(unsigned long long) nogil


cdef enum:
    KIND_PREDICATE = 0
    KIND_CLAUSE = 1
    KIND_EXACTLY_ONE = 2


cdef class Search:
    cdef int n
    cdef int words
    cdef int *size
    cdef int *idx
    cdef uint64_t *conf
    cdef char *found
    cdef char *need_value
    cdef int *level_start
    cdef int *kind
    cdef int *scope_start
    cdef int *scope
    cdef int *lit_start
    cdef int *lit_pos
    cdef char *lit_pol
    cdef list domains
    cdef list predicates
    cdef list values
    cdef int level
    cdef bint started
    cdef bint done
    cdef public long long nodes
    cdef public long long checks
    cdef public long long solutions

    def __cinit__(self, domains, levels):
        cdef int n = len(domains)
        cdef int total = 0, nscope = 0, nlit = 0
        cdef int i, j, c, s, l
        self.n = n
        self.words = (n + 63) // 64 if n > 0 else 1
        self.domains = [tuple(d) for d in domains]
        self.values = [None] * n
        self.predicates = []
        for level in levels:
            for entry in level:
                total += 1
                nscope += len(entry[1])
                nlit += len(entry[3])

        self.size = <int *> calloc(n + 1, sizeof(int))
        self.idx = <int *> calloc(n + 1, sizeof(int))
        self.conf = <uint64_t *> calloc(<size_t> (n + 1) * self.words, sizeof(uint64_t))
        self.found = <char *> calloc(n + 1, sizeof(char))
        self.need_value = <char *> calloc(n + 1, sizeof(char))
        self.level_start = <int *> calloc(n + 2, sizeof(int))
        self.kind = <int *> calloc(total + 1, sizeof(int))
        self.scope_start = <int *> calloc(total + 2, sizeof(int))
        self.scope = <int *> calloc(nscope + 1, sizeof(int))
        self.lit_start = <int *> calloc(total + 2, sizeof(int))
        self.lit_pos = <int *> calloc(nlit + 1, sizeof(int))
        self.lit_pol = <char *> calloc(nlit + 1, sizeof(char))
        if (not self.size or not self.idx or not self.conf or not self.found
                or not self.need_value or not self.level_start or not self.kind
                or not self.scope_start or not self.scope or not self.lit_start
                or not self.lit_pos or not self.lit_pol):
            raise MemoryError()

        c = 0
        s = 0
        l = 0
        for i in range(n):
            self.size[i] = len(self.domains[i])
            self.level_start[i] = c
            for entry in levels[i]:
                k, scope, pred, lpos, lpol = entry
                if len(lpol) != len(lpos):
                    raise ValueError("literal positions and polarities differ in length")
                self.kind[c] = k
                self.scope_start[c] = s
                for j in scope:
                    self.scope[s] = j
                    s += 1
                    if k == KIND_PREDICATE:
                        self.need_value[j] = 1
                self.lit_start[c] = l
                for j in range(len(lpos)):
                    self.lit_pos[l] = lpos[j]
                    self.lit_pol[l] = 1 if lpol[j] else 0
                    l += 1
                self.predicates.append(pred)
                c += 1
        self.level_start[n] = c
        self.scope_start[c] = s
        self.lit_start[c] = l
        self.nodes = 0
        self.checks = 0
        self.solutions = 0

    def __dealloc__(self):
        free(self.size)
        free(self.idx)
        free(self.conf)
        free(self.found)
        free(self.need_value)
        free(self.level_start)
        free(self.kind)
        free(self.scope_start)
        free(self.scope)
        free(self.lit_start)
        free(self.lit_pos)
        free(self.lit_pol)

    cdef int _test(self, int c) except -1:
        """1 when constraint ``c`` holds for the current indices, else 0."""
        cdef int k = self.kind[c]
        cdef int a, b, j, present
        cdef object args, v
        if k == KIND_CLAUSE:
            a = self.lit_start[c]
            b = self.lit_start[c + 1]
            for j in range(a, b):
                if (self.idx[self.lit_pos[j]] > 0) == self.lit_pol[j]:
                    return 1
            return 0
        if k == KIND_EXACTLY_ONE:
            a = self.lit_start[c]
            b = self.lit_start[c + 1]
            if self.idx[self.lit_pos[a]] == 0:
                return 1
            present = 0
            for j in range(a + 1, b):
                if self.idx[self.lit_pos[j]] > 0:
                    present += 1
            return 1 if present == 1 else 0
        a = self.scope_start[c]
        b = self.scope_start[c + 1]
        args = PyTuple_New(b - a)
        for j in range(a, b):
            v = self.values[self.scope[j]]
            Py_INCREF(v)
            PyTuple_SET_ITEM(args, j - a, v)
        return 1 if self.predicates[c](*args) else 0

    cdef inline void _blame(self, int i, int c):
        cdef int j, p
        cdef uint64_t *row = self.conf + <size_t> i * self.words
        for j in range(self.scope_start[c], self.scope_start[c + 1]):
            p = self.scope[j]
            if p != i:
                row[p >> 6] |= (<uint64_t> 1) << (p & 63)

    cdef inline int _latest(self, int i):
        cdef int w
        cdef uint64_t *row = self.conf + <size_t> i * self.words
        cdef uint64_t x
        for w in range(self.words - 1, -1, -1):
            x = row[w]
            if x:
                return w * 64 + 63 - __builtin_clzll(x)
        return -1

    cdef int _advance(self) except -1:
        """Move to the next solution; 1 if one was found, 0 when exhausted."""
        cdef int n = self.n
        cdef int W = self.words
        cdef int i, k, c, h, w, ok
        cdef uint64_t *row
        cdef uint64_t *dst
        cdef tuple dom
        if self.done:
            return 0
        if n == 0:
            self.done = True
            self.solutions += 1
            return 1
        if not self.started:
            self.started = True
            i = 0
            self.idx[0] = -1
            memset(self.conf, 0, W * sizeof(uint64_t))
            self.found[0] = 0
        else:
            i = n - 1
        while True:
            dom = <tuple> self.domains[i]
            k = self.idx[i] + 1
            ok = 0
            while k < self.size[i]:
                self.idx[i] = k
                if self.need_value[i]:
                    self.values[i] = dom[k]
                self.nodes += 1
                ok = 1
                for c in range(self.level_start[i], self.level_start[i + 1]):
                    self.checks += 1
                    if not self._test(c):
                        self._blame(i, c)
                        ok = 0
                        break
                if ok:
                    break
                k += 1
            self.idx[i] = k

            if ok:
                if i == n - 1:
                    self.solutions += 1
                    memset(self.found, 1, n)
                    return 1
                i += 1
                self.idx[i] = -1
                memset(self.conf + <size_t> i * W, 0, W * sizeof(uint64_t))
                self.found[i] = 0
                continue

            if self.found[i]:
                if i == 0:
                    self.done = True
                    return 0
                i -= 1
                continue
            h = self._latest(i)
            if h < 0:
                self.done = True
                return 0
            row = self.conf + <size_t> i * W
            dst = self.conf + <size_t> h * W
            for w in range(W):
                dst[w] |= row[w]
            dst[h >> 6] &= ~((<uint64_t> 1) << (h & 63))
            i = h

    def __iter__(self):
        return self

    def __next__(self):
        cdef int j
        if not self._advance():
            raise StopIteration
        out = PyTuple_New(self.n)
        for j in range(self.n):
            v = self.idx[j]
            Py_INCREF(v)
            PyTuple_SET_ITEM(out, j, v)
        return out

    def count(self):
        cdef long long total = 0
        while self._advance():
            total += 1
        return total
