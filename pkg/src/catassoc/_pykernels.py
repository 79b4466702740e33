"""Pure-Python implementations of the hot kernels.

Mirrors ``_ckernels.pyx`` function for function; ``kernels`` picks one at import.

Search trees are passed to the rotation-graph kernels as ``bytes`` codes: byte
``k`` is 0 if vertex ``k`` is absent, 1 if it is the root, ``q + 2`` if its
parent is ``q``.  The graph comes as CSR arrays ``(adj_off, adj)``.
"""
from collections import deque

ABSENT_CODE = 0
ROOT_CODE = 1


def rotate_code(code, adj_off, adj, p, c):
    out = bytearray(code)
    out[c] = code[p]
    out[p] = c + 2
    for e in range(adj_off[p], adj_off[p + 1]):
        u = adj[e]
        if code[u] == ABSENT_CODE:
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
    return bytes(out)


def rotation_graph(codes, adj_off, adj):
    """CSR adjacency of the rotation graph over ``codes``; every tree edge is one neighbor."""
    index = {code: k for k, code in enumerate(codes)}
    offsets = [0]
    targets = []
    for code in codes:
        for c, pc in enumerate(code):
            if pc >= 2:
                targets.append(index[rotate_code(code, adj_off, adj, pc - 2, c)])
        offsets.append(len(targets))
    return offsets, targets


def bfs(offsets, targets, source):
    dist = [-1] * (len(offsets) - 1)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for e in range(offsets[u], offsets[u + 1]):
            v = targets[e]
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


def eccentricities(offsets, targets):
    """Per source: (eccentricity, index of the first node at that distance)."""
    ecc = []
    far = []
    for s in range(len(offsets) - 1):
        dist = bfs(offsets, targets, s)
        best = max(dist)
        ecc.append(best)
        far.append(dist.index(best))
    return ecc, far


def optimal_bst_tables(weights):
    """Knuth's interval DP; returns (optimal cost, root table).

    ``root[i][j]`` (1-based, ``i <= j``) is the leftmost optimal root of
    ``[i, j]``.  The search for it is confined to
    ``[root[i][j-1], root[i+1][j]]``.
    """
    n = len(weights)
    pre = [0] * (n + 1)
    for k, w in enumerate(weights):
        pre[k + 1] = pre[k] + w
    cost = [[0] * (n + 2) for _ in range(n + 2)]
    root = [[0] * (n + 2) for _ in range(n + 2)]
    for i in range(1, n + 1):
        cost[i][i] = weights[i - 1]
        root[i][i] = i
    for length in range(2, n + 1):
        for i in range(1, n - length + 2):
            j = i + length - 1
            total = pre[j] - pre[i - 1]
            best = -1
            best_r = 0
            for r in range(root[i][j - 1], root[i + 1][j] + 1):
                val = cost[i][r - 1] + cost[r + 1][j]
                if best < 0 or val < best:
                    best = val
                    best_r = r
            cost[i][j] = best + total
            root[i][j] = best_r
    return cost[1][n], root


def wilber_lambdas(left, right, parent, sigma):
    """lambda(S, u, sigma) for every key u (1-based lists, index 0 unused)."""
    n = len(left) - 1
    last = [-1] * (n + 1)
    lam = [0] * (n + 1)
    for x in sigma:
        # walk from x to the root; `side` is x's category relative to u
        u = x
        below = 0
        while u:
            if left[u] and right[u]:
                if below == 0:
                    side = 0
                elif below == left[u]:
                    side = 1
                else:
                    side = 2
                if last[u] >= 0 and last[u] != side:
                    lam[u] += 1
                last[u] = side
            below = u
            u = parent[u]
    return lam
