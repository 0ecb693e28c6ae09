# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels, behaviorally identical to ``_pykernels``.

Bitmask routines require at most 64 local vertices; the selector in
``kernels.py`` routes larger graphs to the Python twin.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int lowest_zero(uint64_t used) nogil:
    return __builtin_ctzll(~used)


cdef class _Search:
    cdef int m
    cdef uint64_t *local
    cdef signed char *colors
    cdef int *order
    cdef int depth
    cdef uint64_t full
    cdef set seen
    cdef dict found
    cdef tuple vertices

    def __cinit__(self, int m):
        self.m = m
        self.local = <uint64_t *> malloc(max(m, 1) * sizeof(uint64_t))
        self.colors = <signed char *> malloc(max(m, 1) * sizeof(signed char))
        self.order = <int *> malloc(max(m, 1) * sizeof(int))
        if not self.local or not self.colors or not self.order:
            raise MemoryError()

    def __dealloc__(self):
        free(self.local)
        free(self.colors)
        free(self.order)

    cdef void dfs(self, uint64_t colored):
        cdef int p, c
        cdef uint64_t used, nb, low
        cdef bytes key = (<char *> self.colors)[:self.m]
        if colored == self.full:
            if key not in self.found:
                self.found[key] = tuple([self.vertices[self.order[i]] for i in range(self.depth)])
            return
        if key in self.seen:
            return
        self.seen.add(key)
        for p in range(self.m):
            if (colored >> p) & 1:
                continue
            used = 0
            nb = self.local[p] & colored
            while nb:
                low = nb & (~nb + 1)
                used |= (<uint64_t> 1) << self.colors[__builtin_ctzll(low)]
                nb ^= low
            c = lowest_zero(used)
            self.colors[p] = c
            self.order[self.depth] = p
            self.depth += 1
            self.dfs(colored | ((<uint64_t> 1) << p))
            self.depth -= 1
            self.colors[p] = -1


def prefix_colorings(masks, vertices):
    cdef int m = len(vertices)
    cdef int i, j
    cdef _Search s = _Search(m)
    cdef uint64_t lm
    s.vertices = tuple(vertices)
    s.seen = set()
    s.found = {}
    s.depth = 0
    s.full = ((<uint64_t> 1) << m) - 1 if m < 64 else <uint64_t> 0xFFFFFFFFFFFFFFFF
    for i in range(m):
        s.colors[i] = -1
        lm = 0
        mask = masks[vertices[i]]
        for j in range(m):
            if (mask >> vertices[j]) & 1:
                lm |= (<uint64_t> 1) << j
        s.local[i] = lm
    s.dfs(0)
    out = []
    for key, order in s.found.items():
        out.append((tuple([(<signed char> b) for b in key]), order))
    return out


cdef int _extend(uint64_t *adj, signed char *colors, int *suffix, int slen, int top) nogil:
    cdef int t, v, c
    cdef uint64_t used, nb, low
    for t in range(slen):
        v = suffix[t]
        used = 0
        nb = adj[v]
        while nb:
            low = nb & (~nb + 1)
            c = colors[__builtin_ctzll(low)]
            if c >= 0:
                used |= (<uint64_t> 1) << c
            nb ^= low
        c = lowest_zero(used)
        colors[v] = c
        if c > top:
            top = c
    return top + 1


def extend_count(masks, base, suffix):
    best_i, best = best_extension(masks, [base], suffix)
    return best


def best_extension(masks, bases, suffix):
    cdef int n = len(masks)
    cdef int slen = len(suffix)
    cdef int i, j, top, count, best = -1, best_i = -1
    cdef uint64_t *adj = <uint64_t *> malloc(max(n, 1) * sizeof(uint64_t))
    cdef signed char *colors = <signed char *> malloc(max(n, 1) * sizeof(signed char))
    cdef int *suf = <int *> malloc(max(slen, 1) * sizeof(int))
    if not adj or not colors or not suf:
        free(adj); free(colors); free(suf)
        raise MemoryError()
    try:
        for i in range(n):
            adj[i] = <uint64_t> masks[i]
        for i in range(slen):
            suf[i] = suffix[i]
        for i, base in enumerate(bases):
            top = -1
            for j in range(n):
                colors[j] = base[j]
                if colors[j] > top:
                    top = colors[j]
            count = _extend(adj, colors, suf, slen, top)
            if count > best:
                best = count
                best_i = i
    finally:
        free(adj); free(colors); free(suf)
    return best_i, max(best, 0)


def max_flow(int node_count, tails, heads, caps, int source, int sink):
    cdef int arc_count = len(tails)
    cdef int i, a, b, e, v, w, head, tail, pushed
    cdef int64_t total = 0
    cdef int *to = <int *> malloc(max(2 * arc_count, 1) * sizeof(int))
    cdef int64_t *cap = <int64_t *> malloc(max(2 * arc_count, 1) * sizeof(int64_t))
    cdef int *start = <int *> malloc((node_count + 1) * sizeof(int))
    cdef int *edges = <int *> malloc(max(2 * arc_count, 1) * sizeof(int))
    cdef int *fill = <int *> malloc((node_count + 1) * sizeof(int))
    cdef int *level = <int *> malloc(max(node_count, 1) * sizeof(int))
    cdef int *it = <int *> malloc(max(node_count, 1) * sizeof(int))
    cdef int *queue = <int *> malloc(max(node_count, 1) * sizeof(int))
    cdef int *path = <int *> malloc(max(node_count, 1) * sizeof(int))
    cdef int depth
    cdef int64_t bottleneck
    if not (to and cap and start and edges and fill and level and it and queue and path):
        free(to); free(cap); free(start); free(edges); free(fill)
        free(level); free(it); free(queue); free(path)
        raise MemoryError()
    try:
        for v in range(node_count + 1):
            start[v] = 0
        for i in range(arc_count):
            a = tails[i]
            b = heads[i]
            to[2 * i] = b
            cap[2 * i] = caps[i]
            to[2 * i + 1] = a
            cap[2 * i + 1] = 0
            start[a + 1] += 1
            start[b + 1] += 1
        for v in range(node_count):
            start[v + 1] += start[v]
        for v in range(node_count + 1):
            fill[v] = start[v]
        # arc order per node matches the Python twin: insertion order
        for i in range(arc_count):
            a = tails[i]
            b = heads[i]
            edges[fill[a]] = 2 * i
            fill[a] += 1
            edges[fill[b]] = 2 * i + 1
            fill[b] += 1
        with nogil:
            while True:
                for v in range(node_count):
                    level[v] = -1
                level[source] = 0
                queue[0] = source
                head = 0
                tail = 1
                while head < tail:
                    v = queue[head]
                    head += 1
                    for i in range(start[v], start[v + 1]):
                        e = edges[i]
                        w = to[e]
                        if cap[e] > 0 and level[w] < 0:
                            level[w] = level[v] + 1
                            queue[tail] = w
                            tail += 1
                if level[sink] < 0:
                    break
                for v in range(node_count):
                    it[v] = start[v]
                while True:
                    depth = 0
                    v = source
                    pushed = 0
                    while True:
                        if v == sink:
                            bottleneck = cap[path[0]]
                            for i in range(1, depth):
                                if cap[path[i]] < bottleneck:
                                    bottleneck = cap[path[i]]
                            for i in range(depth):
                                cap[path[i]] -= bottleneck
                                cap[path[i] ^ 1] += bottleneck
                            total += bottleneck
                            pushed = 1
                            break
                        i = it[v]
                        while i < start[v + 1]:
                            e = edges[i]
                            if cap[e] > 0 and level[to[e]] == level[v] + 1:
                                break
                            i += 1
                        it[v] = i
                        if i < start[v + 1]:
                            path[depth] = edges[i]
                            depth += 1
                            v = to[edges[i]]
                            continue
                        if depth == 0:
                            break
                        level[v] = -1
                        depth -= 1
                        e = path[depth]
                        v = to[e ^ 1]
                        it[v] += 1
                    if not pushed:
                        break
        flows = [caps[i] - cap[2 * i] for i in range(arc_count)]
    finally:
        free(to); free(cap); free(start); free(edges); free(fill)
        free(level); free(it); free(queue); free(path)
    return int(total), flows
