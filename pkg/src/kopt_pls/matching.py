"""Maximum cardinality matching in general graphs (Edmonds' blossom algorithm)."""

from __future__ import annotations

from collections import deque


def maximum_matching(n: int, edges) -> list[int]:
    """Return ``mate`` with ``mate[v]`` the partner of v, or -1 if v is exposed.

    The matching is first seeded greedily in edge order, then augmented along shortest
    alternating paths with blossom contraction, so the result is deterministic.
    """
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    mate = [-1] * n
    for u, v in edges:
        if mate[u] == -1 and mate[v] == -1:
            mate[u], mate[v] = v, u

    def find_augmenting(root):
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        queue = deque([root])

        def lca(a, b):
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if mate[a] == -1:
                    break
                a = parent[mate[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[mate[b]]

        def mark_path(v, b, child, blossom):
            while base[v] != b:
                blossom[base[v]] = blossom[base[mate[v]]] = True
                parent[v] = child
                child = mate[v]
                v = parent[mate[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        return to, parent
                    used[mate[to]] = True
                    queue.append(mate[to])
        return -1, parent

    for root in range(n):
        if mate[root] != -1:
            continue
        end, parent = find_augmenting(root)
        while end != -1:
            pv = parent[end]
            nxt = mate[pv]
            mate[end], mate[pv] = pv, end
            end = nxt
    return mate


def brute_force_matching_size(n: int, edges) -> int:
    """Exhaustive maximum matching size; meant as an oracle for small graphs."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)

    memo: dict[frozenset, int] = {}

    def best(free: frozenset) -> int:
        if free in memo:
            return memo[free]
        for v in sorted(free):
            nbrs = adj[v] & free
            if nbrs:
                break
        else:
            memo[free] = 0
            return 0
        rest = free - {v}
        result = best(rest)
        for u in sorted(nbrs):
            result = max(result, 1 + best(rest - {u}))
        memo[free] = result
        return result

    return best(frozenset(range(n)))
