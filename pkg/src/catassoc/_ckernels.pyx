# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``; same signatures and outputs."""
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy


cdef void _rotate(const unsigned char* code, unsigned char* out, Py_ssize_t size,
                  const int* adj_off, const int* adj, int p, int c) noexcept nogil:
    cdef int e, u, par
    memcpy(out, code, size)
    out[c] = code[p]
    out[p] = c + 2
    for e in range(adj_off[p], adj_off[p + 1]):
        u = adj[e]
        if code[u] == 0:
            continue
        while u != c and u != p:
            par = code[u]
            if par < 2:
                break
            par -= 2
            if par == c:
                out[u] = p + 2
                break
            u = par


cdef int* _int_array(seq) except NULL:
    cdef Py_ssize_t k, n = len(seq)
    cdef int* buf = <int*> malloc((n + 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    for k in range(n):
        buf[k] = seq[k]
    return buf


def rotate_code(bytes code, adj_off, adj, int p, int c):
    cdef Py_ssize_t size = len(code)
    cdef int* off = _int_array(adj_off)
    cdef int* nb = _int_array(adj)
    cdef bytearray out = bytearray(size)
    cdef unsigned char* dst = out
    try:
        _rotate(code, dst, size, off, nb, p, c)
    finally:
        free(off)
        free(nb)
    return bytes(out)


def rotation_graph(list codes, adj_off, adj):
    cdef dict index = {code: k for k, code in enumerate(codes)}
    cdef int* off = _int_array(adj_off)
    cdef int* nb = _int_array(adj)
    cdef Py_ssize_t size = len(codes[0]) if codes else 0
    cdef bytearray scratch = bytearray(size)
    cdef unsigned char* dst = scratch
    cdef const unsigned char* src
    cdef Py_ssize_t c
    cdef bytes code
    offsets = [0]
    targets = []
    try:
        for code in codes:
            src = code
            for c in range(size):
                if src[c] >= 2:
                    _rotate(src, dst, size, off, nb, src[c] - 2, c)
                    targets.append(index[bytes(scratch)])
            offsets.append(len(targets))
    finally:
        free(off)
        free(nb)
    return offsets, targets


cdef void _bfs(const int* off, const int* tgt, int count, int source,
               int* dist, int* queue) noexcept nogil:
    cdef int head = 0, tail = 0, u, v, e, du
    for u in range(count):
        dist[u] = -1
    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u] + 1
        for e in range(off[u], off[u + 1]):
            v = tgt[e]
            if dist[v] < 0:
                dist[v] = du
                queue[tail] = v
                tail += 1


def bfs(offsets, targets, int source):
    cdef int count = len(offsets) - 1
    cdef int* off = _int_array(offsets)
    cdef int* tgt = _int_array(targets)
    cdef int* dist = <int*> malloc((count + 1) * sizeof(int))
    cdef int* queue = <int*> malloc((count + 1) * sizeof(int))
    try:
        if dist == NULL or queue == NULL:
            raise MemoryError()
        _bfs(off, tgt, count, source, dist, queue)
        return [dist[k] for k in range(count)]
    finally:
        free(off)
        free(tgt)
        free(dist)
        free(queue)


def eccentricities(offsets, targets):
    cdef int count = len(offsets) - 1
    cdef int* off = _int_array(offsets)
    cdef int* tgt = _int_array(targets)
    cdef int* dist = <int*> malloc((count + 1) * sizeof(int))
    cdef int* queue = <int*> malloc((count + 1) * sizeof(int))
    cdef int* ecc = <int*> malloc((count + 1) * sizeof(int))
    cdef int* far = <int*> malloc((count + 1) * sizeof(int))
    cdef int s, k, best, arg
    try:
        if dist == NULL or queue == NULL or ecc == NULL or far == NULL:
            raise MemoryError()
        with nogil:
            for s in range(count):
                _bfs(off, tgt, count, s, dist, queue)
                best = -1
                arg = 0
                for k in range(count):
                    if dist[k] > best:
                        best = dist[k]
                        arg = k
                ecc[s] = best
                far[s] = arg
        return [ecc[k] for k in range(count)], [far[k] for k in range(count)]
    finally:
        free(off)
        free(tgt)
        free(dist)
        free(queue)
        free(ecc)
        free(far)


def optimal_bst_tables(weights):
    cdef Py_ssize_t n = len(weights)
    cdef Py_ssize_t w = n + 2
    cdef long long* pre = <long long*> malloc((n + 1) * sizeof(long long))
    cdef long long* cost = <long long*> malloc(w * w * sizeof(long long))
    cdef int* root = <int*> malloc(w * w * sizeof(int))
    cdef Py_ssize_t i, j, r, length, k
    cdef long long best, val, total
    cdef int best_r
    try:
        if pre == NULL or cost == NULL or root == NULL:
            raise MemoryError()
        pre[0] = 0
        for k in range(n):
            pre[k + 1] = pre[k] + <long long> weights[k]
        for k in range(w * w):
            cost[k] = 0
            root[k] = 0
        for i in range(1, n + 1):
            cost[i * w + i] = pre[i] - pre[i - 1]
            root[i * w + i] = <int> i
        for length in range(2, n + 1):
            for i in range(1, n - length + 2):
                j = i + length - 1
                total = pre[j] - pre[i - 1]
                best = -1
                best_r = 0
                for r in range(root[i * w + j - 1], root[(i + 1) * w + j] + 1):
                    val = cost[i * w + r - 1] + cost[(r + 1) * w + j]
                    if best < 0 or val < best:
                        best = val
                        best_r = <int> r
                cost[i * w + j] = best + total
                root[i * w + j] = best_r
        table = [[root[i * w + j] for j in range(w)] for i in range(w)]
        return (cost[1 * w + n] if n else 0), table
    finally:
        free(pre)
        free(cost)
        free(root)


def wilber_lambdas(left, right, parent, sigma):
    cdef Py_ssize_t n = len(left) - 1
    cdef int* lf = _int_array(left)
    cdef int* rt = _int_array(right)
    cdef int* par = _int_array(parent)
    cdef int* last = <int*> malloc((n + 1) * sizeof(int))
    cdef long long* lam = <long long*> malloc((n + 1) * sizeof(long long))
    cdef int u, below, side, x
    cdef Py_ssize_t k
    try:
        if last == NULL or lam == NULL:
            raise MemoryError()
        for k in range(n + 1):
            last[k] = -1
            lam[k] = 0
        for x in sigma:
            u = x
            below = 0
            while u:
                if lf[u] and rt[u]:
                    if below == 0:
                        side = 0
                    elif below == lf[u]:
                        side = 1
                    else:
                        side = 2
                    if last[u] >= 0 and last[u] != side:
                        lam[u] += 1
                    last[u] = side
                below = u
                u = par[u]
        return [lam[k] for k in range(n + 1)]
    finally:
        free(lf)
        free(rt)
        free(par)
        free(last)
        free(lam)
