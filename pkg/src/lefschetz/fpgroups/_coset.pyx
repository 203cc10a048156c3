# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled HLT coset enumeration kernel; mirrors ``_coset_py.hlt_enumerate``."""

from libc.stdlib cimport malloc, realloc, free


cdef class _Table:
    cdef int *t
    cdef int *parent
    cdef int *queue
    cdef long n, cap, ncols, max_cosets, qlen

    def __cinit__(self, long ncols, long max_cosets):
        self.ncols = ncols
        self.max_cosets = max_cosets
        self.cap = 1024 if max_cosets > 1024 else max_cosets
        self.t = <int *> malloc(self.cap * ncols * sizeof(int))
        self.parent = <int *> malloc(self.cap * sizeof(int))
        self.queue = <int *> malloc(self.cap * sizeof(int))
        if self.t == NULL or self.parent == NULL or self.queue == NULL:
            raise MemoryError()
        cdef long i
        for i in range(ncols):
            self.t[i] = -1
        self.parent[0] = 0
        self.n = 1
        self.qlen = 0

    def __dealloc__(self):
        free(self.t)
        free(self.parent)
        free(self.queue)

    cdef int grow(self) except -1:
        cdef long newcap = self.cap * 2
        if newcap > self.max_cosets:
            newcap = self.max_cosets
        cdef int *nt = <int *> realloc(self.t, newcap * self.ncols * sizeof(int))
        if nt == NULL:
            raise MemoryError()
        self.t = nt
        cdef int *np_ = <int *> realloc(self.parent, newcap * sizeof(int))
        if np_ == NULL:
            raise MemoryError()
        self.parent = np_
        cdef int *nq = <int *> realloc(self.queue, newcap * sizeof(int))
        if nq == NULL:
            raise MemoryError()
        self.queue = nq
        self.cap = newcap
        return 0

    cdef inline int rep(self, int c):
        cdef int r = c, nxt
        while self.parent[r] != r:
            r = self.parent[r]
        while self.parent[c] != r:
            nxt = self.parent[c]
            self.parent[c] = r
            c = nxt
        return r

    cdef inline void merge(self, int a, int b):
        a = self.rep(a)
        b = self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.queue[self.qlen] = b
        self.qlen += 1

    cdef void coincidence(self, int a, int b):
        cdef long i = 0, x, nc = self.ncols
        cdef int e, f, e1, f1, t, xi
        self.merge(a, b)
        while i < self.qlen:
            e = self.queue[i]
            i += 1
            for x in range(nc):
                f = self.t[e * nc + x]
                if f < 0:
                    continue
                xi = x ^ 1
                self.t[f * nc + xi] = -1
                e1 = self.rep(e)
                f1 = self.rep(f)
                t = self.t[e1 * nc + x]
                if t >= 0:
                    self.merge(f1, t)
                else:
                    t = self.t[f1 * nc + xi]
                    if t >= 0:
                        self.merge(e1, t)
                    else:
                        self.t[e1 * nc + x] = f1
                        self.t[f1 * nc + xi] = e1
        self.qlen = 0

    cdef int define(self, int c, int x) except -2:
        cdef long nc = self.ncols, k
        if self.n >= self.max_cosets:
            return -1
        if self.n >= self.cap:
            self.grow()
        for k in range(nc):
            self.t[self.n * nc + k] = -1
        self.parent[self.n] = <int> self.n
        self.t[c * nc + x] = <int> self.n
        self.t[self.n * nc + (x ^ 1)] = c
        self.n += 1
        return 0

    cdef int scan_and_fill(self, int a, int *w, int L) except -2:
        cdef long nc = self.ncols
        cdef int f = a, b = a, i = 0, j = L - 1
        while True:
            while i <= j and self.t[f * nc + w[i]] >= 0:
                f = self.t[f * nc + w[i]]
                i += 1
            if i > j:
                if f != a:
                    self.coincidence(f, a)
                return 0
            while j >= i and self.t[b * nc + (w[j] ^ 1)] >= 0:
                b = self.t[b * nc + (w[j] ^ 1)]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return 0
            if i == j:
                self.t[f * nc + w[i]] = b
                self.t[b * nc + (w[i] ^ 1)] = f
                return 0
            if self.define(f, w[i]) < 0:
                return -1


def hlt_enumerate(long ncols, relators, long max_cosets):
    cdef _Table T = _Table(ncols, max_cosets)
    cdef long nrel = len(relators), total = 0, r, k, a, x
    cdef int *lens = <int *> malloc((nrel + 1) * sizeof(int))
    cdef int *offs = <int *> malloc((nrel + 1) * sizeof(int))
    for r in range(nrel):
        total += len(relators[r])
    cdef int *words = <int *> malloc((total + 1) * sizeof(int))
    cdef long pos = 0
    cdef bint full = False
    try:
        for r in range(nrel):
            offs[r] = pos
            lens[r] = len(relators[r])
            for k in range(lens[r]):
                words[pos] = relators[r][k]
                pos += 1
        a = 0
        while a < T.n and not full:
            if T.parent[a] == a:
                for r in range(nrel):
                    if T.scan_and_fill(a, words + offs[r], lens[r]) < 0:
                        full = True
                        break
                    if T.parent[a] != a:
                        break
                if not full and T.parent[a] == a:
                    for x in range(ncols):
                        if T.t[a * ncols + x] < 0:
                            if T.define(a, x) < 0:
                                full = True
                                break
            a += 1
        if full:
            return -1, None
        live = [c for c in range(T.n) if T.parent[c] == c]
        index = {c: k for k, c in enumerate(live)}
        flat = []
        for c in live:
            for x in range(ncols):
                t = T.t[c * ncols + x]
                flat.append(index[T.rep(t)] if t >= 0 else -1)
        return len(live), flat
    finally:
        free(lens)
        free(offs)
        free(words)
