"""Pure-Python hot kernels; reference behavior for the compiled twin.

Graphs here are small and given as bitmask adjacency over local indices.
Colors are 0-based and ``-1`` marks an uncolored vertex.
"""

from __future__ import annotations


def prefix_colorings(masks, vertices):
    """All distinct first-fit colorings of ``G[vertices]`` over every ordering.

    Orderings are explored depth-first, trying vertices in the given order;
    two partial orderings that leave the same partial coloring have the same
    completions, so each partial state is expanded once.  Returns a list of
    ``(colors, ordering)`` pairs in discovery order, where ``colors`` is aligned
    with ``vertices`` and ``ordering`` is the first ordering reaching it.
    """
    m = len(vertices)
    pos = {v: i for i, v in enumerate(vertices)}
    local = []
    for v in vertices:
        mask = masks[v]
        lm = 0
        for u, i in pos.items():
            if (mask >> u) & 1:
                lm |= 1 << i
        local.append(lm)
    colors = [-1] * m
    order = []
    seen = set()
    found = {}

    def dfs(colored):
        if colored == (1 << m) - 1:
            key = tuple(colors)
            if key not in found:
                found[key] = tuple(vertices[i] for i in order)
            return
        key = tuple(colors)
        if key in seen:
            return
        seen.add(key)
        for p in range(m):
            if (colored >> p) & 1:
                continue
            used = 0
            nb = local[p] & colored
            while nb:
                low = nb & -nb
                used |= 1 << colors[low.bit_length() - 1]
                nb ^= low
            c = (~used & (used + 1)).bit_length() - 1
            colors[p] = c
            order.append(p)
            dfs(colored | (1 << p))
            order.pop()
            colors[p] = -1

    dfs(0)
    return list(found.items())


def extend_count(masks, base, suffix):
    """Number of colors after first-fit extends ``base`` along ``suffix``."""
    colors = list(base)
    top = max(colors, default=-1)
    for v in suffix:
        used = 0
        nb = masks[v]
        while nb:
            low = nb & -nb
            c = colors[low.bit_length() - 1]
            if c >= 0:
                used |= 1 << c
            nb ^= low
        c = (~used & (used + 1)).bit_length() - 1
        colors[v] = c
        if c > top:
            top = c
    return top + 1


def best_extension(masks, bases, suffix):
    """Index of the base coloring whose suffix extension uses most colors, and that count.

    Ties keep the earliest base; returns ``(-1, 0)`` for an empty batch.
    """
    best_i, best = -1, -1
    for i, base in enumerate(bases):
        count = extend_count(masks, base, suffix)
        if count > best:
            best_i, best = i, count
    return best_i, max(best, 0)


def max_flow(node_count, tails, heads, caps, source, sink):
    """Dinic's blocking-flow max flow; returns ``(value, per-arc flow list)``."""
    arc_count = len(tails)
    to = [0] * (2 * arc_count)
    cap = [0] * (2 * arc_count)
    adj = [[] for _ in range(node_count)]
    for i in range(arc_count):
        a, b = tails[i], heads[i]
        to[2 * i] = b
        cap[2 * i] = caps[i]
        to[2 * i + 1] = a
        adj[a].append(2 * i)
        adj[b].append(2 * i + 1)

    total = 0
    while True:
        level = [-1] * node_count
        level[source] = 0
        queue = [source]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for e in adj[v]:
                w = to[e]
                if cap[e] > 0 and level[w] < 0:
                    level[w] = level[v] + 1
                    queue.append(w)
        if level[sink] < 0:
            break
        it = [0] * node_count
        while True:
            path = []
            v = source
            pushed = 0
            while True:
                if v == sink:
                    pushed = min(cap[e] for e in path)
                    for e in path:
                        cap[e] -= pushed
                        cap[e ^ 1] += pushed
                    break
                lst = adj[v]
                i = it[v]
                while i < len(lst):
                    e = lst[i]
                    if cap[e] > 0 and level[to[e]] == level[v] + 1:
                        break
                    i += 1
                it[v] = i
                if i < len(lst):
                    e = lst[i]
                    path.append(e)
                    v = to[e]
                    continue
                if not path:
                    break
                level[v] = -1
                e = path.pop()
                v = to[e ^ 1]
                it[v] += 1
            if pushed == 0:
                break
            total += pushed
    flows = [caps[i] - cap[2 * i] for i in range(arc_count)]
    return total, flows
