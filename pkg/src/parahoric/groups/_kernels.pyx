# distutils: language = c++
"""Compiled kernels: packed modular matrices and flag-orbit passes.

Same interface as _kernels_py; matrices and flag keys are packed into
64-bit words (entries of Z/p^h in ceil(log2 p^h) bits), which keeps the
orbit hash map and the representative store compact enough for the
million-point coset spaces.
"""

from libc.stdint cimport int64_t, uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

IMPLEMENTATION = "cython"



cdef inline int _nmod(long v, int mod) noexcept:
    cdef long r = v % mod
    if r < 0:
        r += mod
    return <int> r

from parahoric.groups._kernels_py import BudgetExceeded


def mat_identity(int n):
    return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


cdef inline int _bits_for(int mod):
    cdef int b = 1
    while (1 << b) < mod:
        b += 1
    return b


cdef void _mul_arr(const int* a, const int* b, int* out, int n, int mod) noexcept:
    cdef int i, j, k, acc
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc += a[i * n + k] * b[k * n + j]
            out[i * n + j] = acc % mod


def mat_mul(a, b, int n, int mod):
    cdef int aa[16]
    cdef int bb[16]
    cdef int cc[16]
    cdef int i
    for i in range(n * n):
        aa[i] = _nmod(a[i], mod)
        bb[i] = _nmod(b[i], mod)
    _mul_arr(aa, bb, cc, n, mod)
    return tuple(cc[i] for i in range(n * n))


cdef class _Ring:
    """Inverse table for the units of Z/p^h (mod <= a few hundred)."""
    cdef public int mod, p
    cdef vector[int] inv

    def __init__(self, int mod, int p):
        cdef int x, y
        self.mod = mod
        self.p = p
        self.inv.resize(mod)
        for x in range(mod):
            self.inv[x] = 0
        for x in range(1, mod):
            if x % p:
                for y in range(1, mod):
                    if (x * y) % mod == 1:
                        self.inv[x] = y
                        break


cdef int _line_canon(const int* col, int* out, int n, _Ring ring) except -1:
    cdef int i, r = -1, s
    for i in range(n):
        if col[i] % ring.p:
            r = i
            break
    if r < 0:
        raise ValueError("column is not unimodular")
    s = ring.inv[col[r]]
    for i in range(n):
        out[i] = (col[i] * s) % ring.mod
    return 0


def line_canon(col, int mod, int p):
    cdef _Ring ring = _Ring(mod, p)
    cdef int cc[8]
    cdef int out[8]
    cdef int n = len(col), i
    for i in range(n):
        cc[i] = _nmod(col[i], mod)
    _line_canon(cc, out, n, ring)
    return tuple(out[i] for i in range(n))


cdef int _flag_arr(const int* g, int* key, int n, int k, _Ring ring) except -1:
    """Canonical flag coordinates of the first k columns of g (3n ints max)."""
    cdef int u[8]
    cdef int v[8]
    cdef int i, r1, r2, s, t, mod = ring.mod, p = ring.p
    for i in range(n):
        u[i] = g[i * n]
    _line_canon(u, key, n, ring)
    if k == 1:
        return n
    for i in range(n):
        u[i] = g[i * n]
        v[i] = g[i * n + 1]
    r1 = -1
    for i in range(n):
        if u[i] % p:
            r1 = i
            break
        if v[i] % p:
            for t in range(n):
                s = u[t]
                u[t] = v[t]
                v[t] = s
            r1 = i
            break
    if r1 < 0:
        raise ValueError("columns do not span a free plane")
    s = ring.inv[u[r1]]
    for i in range(n):
        u[i] = (u[i] * s) % mod
    t = v[r1]
    for i in range(n):
        v[i] = (v[i] - t * u[i]) % mod
        if v[i] < 0:
            v[i] += mod
    r2 = -1
    for i in range(n):
        if i != r1 and v[i] % p:
            r2 = i
            break
    if r2 < 0:
        raise ValueError("columns do not span a free plane")
    s = ring.inv[v[r2]]
    for i in range(n):
        v[i] = (v[i] * s) % mod
    t = u[r2]
    for i in range(n):
        u[i] = (u[i] - t * v[i]) % mod
        if u[i] < 0:
            u[i] += mod
    for i in range(n):
        key[n + i] = u[i]
        key[2 * n + i] = v[i]
    return 3 * n


def flag_key(g, int n, int mod, int p, int k):
    cdef _Ring ring = _Ring(mod, p)
    cdef int gg[16]
    cdef int key[24]
    cdef int i, m
    for i in range(n * n):
        gg[i] = _nmod(g[i], mod)
    m = _flag_arr(gg, key, n, k, ring)
    return tuple(key[i] for i in range(m))


cdef class FlagOrbit:
    """Packed-word flag orbit; interface mirrors the pure-Python twin."""

    cdef public int n, mod, p, k
    cdef int bits, n2, keylen
    cdef _Ring ring
    cdef vector[uint64_t] _reps
    cdef unordered_map[uint64_t, int64_t] _index

    def __init__(self, int n, int mod, int p, int k):
        self.n = n
        self.mod = mod
        self.p = p
        self.k = k
        self.bits = _bits_for(mod)
        self.n2 = n * n
        self.keylen = n if k == 1 else 3 * n
        if self.n2 * self.bits > 64 or self.keylen * self.bits > 64:
            raise ValueError("packing exceeds 64 bits; use the python kernel")
        self.ring = _Ring(mod, p)

    cdef uint64_t _pack(self, const int* vals, int count) noexcept:
        cdef uint64_t w = 0
        cdef int i
        for i in range(count):
            w |= (<uint64_t> vals[i]) << (i * self.bits)
        return w

    cdef void _unpack(self, uint64_t w, int* out, int count) noexcept:
        cdef uint64_t mask = ((<uint64_t> 1) << self.bits) - 1
        cdef int i
        for i in range(count):
            out[i] = <int> ((w >> (i * self.bits)) & mask)

    cdef uint64_t _flag_of(self, const int* mat) except? 0:
        cdef int key[24]
        cdef int m = _flag_arr(mat, key, self.n, self.k, self.ring)
        return self._pack(key, m)

    def build(self, gens, max_points):
        cdef vector[uint64_t] packed_gens
        cdef int gmat[16]
        cdef int cur[16]
        cdef int out[16]
        cdef int i
        cdef uint64_t key, w
        cdef int64_t head = 0
        for gen in gens:
            for i in range(self.n2):
                gmat[i] = _nmod(gen[i], self.mod)
            packed_gens.push_back(self._pack(gmat, self.n2))
        self._reps.clear()
        self._index.clear()
        for i in range(self.n2):
            cur[i] = 1 if i % (self.n + 1) == 0 else 0
        self._reps.push_back(self._pack(cur, self.n2))
        self._index[self._flag_of(cur)] = 0
        cdef size_t gi
        cdef int64_t limit = max_points
        while head < <int64_t> self._reps.size():
            self._unpack(self._reps[head], cur, self.n2)
            head += 1
            for gi in range(packed_gens.size()):
                self._unpack(packed_gens[gi], gmat, self.n2)
                _mul_arr(gmat, cur, out, self.n, self.mod)
                key = self._flag_of(out)
                if self._index.find(key) == self._index.end():
                    self._index[key] = <int64_t> self._reps.size()
                    self._reps.push_back(self._pack(out, self.n2))
                    if <int64_t> self._reps.size() > limit:
                        raise BudgetExceeded(
                            f"flag orbit exceeded {max_points} points"
                        )
        return self._reps.size()

    def __len__(self):
        return self._reps.size()

    @property
    def reps(self):
        return _RepView(self)

    def rep(self, int64_t i):
        cdef int cur[16]
        self._unpack(self._reps[i], cur, self.n2)
        return tuple(cur[j] for j in range(self.n2))

    def locate(self, mat):
        cdef int cur[16]
        cdef int i
        for i in range(self.n2):
            cur[i] = _nmod(mat[i], self.mod)
        return self._index[self._flag_of(cur)]

    def apply_left(self, s, int64_t i):
        cdef int smat[16]
        cdef int cur[16]
        cdef int out[16]
        cdef int j
        for j in range(self.n2):
            smat[j] = _nmod(s[j], self.mod)
        self._unpack(self._reps[i], cur, self.n2)
        _mul_arr(smat, cur, out, self.n, self.mod)
        return self._index[self._flag_of(out)]

    def apply_right(self, int64_t i, x):
        cdef int xmat[16]
        cdef int cur[16]
        cdef int out[16]
        cdef int j
        for j in range(self.n2):
            xmat[j] = _nmod(x[j], self.mod)
        self._unpack(self._reps[i], cur, self.n2)
        _mul_arr(cur, xmat, out, self.n, self.mod)
        return self._index[self._flag_of(out)]

    def quotient(self, right_gens):
        cdef int64_t size = self._reps.size()
        cdef vector[int64_t] parent
        cdef vector[uint64_t] packed
        cdef int xmat[16]
        cdef int cur[16]
        cdef int out[16]
        cdef int64_t i, j, ri, rj
        cdef size_t gi
        cdef int m
        parent.resize(size)
        for i in range(size):
            parent[i] = i
        for gen in right_gens:
            for m in range(self.n2):
                xmat[m] = _nmod(gen[m], self.mod)
            packed.push_back(self._pack(xmat, self.n2))
        for i in range(size):
            self._unpack(self._reps[i], cur, self.n2)
            for gi in range(packed.size()):
                self._unpack(packed[gi], xmat, self.n2)
                _mul_arr(cur, xmat, out, self.n, self.mod)
                j = self._index[self._flag_of(out)]
                ri = _find(parent, i)
                rj = _find(parent, j)
                if ri != rj:
                    parent[ri] = rj
        return [_find(parent, i) for i in range(size)]

    def left_orbit_labels(self, left_gens, labels=None):
        cdef int64_t size = self._reps.size()
        cdef vector[int64_t] labs
        cdef vector[int64_t] parent
        cdef vector[uint64_t] packed
        cdef vector[int64_t] seen_for
        cdef int smat[16]
        cdef int cur[16]
        cdef int out[16]
        cdef int64_t i, j, c, ri, rj
        cdef size_t gi
        cdef int m
        labs.resize(size)
        parent.resize(size)
        seen_for.resize(size)
        if labels is None:
            for i in range(size):
                labs[i] = i
        else:
            for i in range(size):
                labs[i] = labels[i]
        for i in range(size):
            parent[i] = i
            seen_for[i] = 0
        for gen in left_gens:
            for m in range(self.n2):
                smat[m] = _nmod(gen[m], self.mod)
            packed.push_back(self._pack(smat, self.n2))
        for i in range(size):
            c = labs[i]
            if seen_for[c]:
                continue
            seen_for[c] = 1
            self._unpack(self._reps[i], cur, self.n2)
            for gi in range(packed.size()):
                self._unpack(packed[gi], smat, self.n2)
                _mul_arr(smat, cur, out, self.n, self.mod)
                j = self._index[self._flag_of(out)]
                ri = _find(parent, c)
                rj = _find(parent, labs[j])
                if ri != rj:
                    parent[ri] = rj
        return [_find(parent, labs[i]) for i in range(size)]


cdef int64_t _find(vector[int64_t]& parent, int64_t i) noexcept:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


class _RepView:
    """Sequence view over the packed representative store."""

    def __init__(self, orbit):
        self._orbit = orbit

    def __getitem__(self, i):
        return self._orbit.rep(i)

    def __len__(self):
        return len(self._orbit)
