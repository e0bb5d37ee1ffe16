"""Matrix-tree theorem oracle with exact integer determinants.

Counts here never use the recurrences; they only look at the explicit
graph, which is what makes them a useful cross-check.
"""

from __future__ import annotations

from typing import Iterable

from .graph import MGraph

IntMatrix = list[list[int]]


class DisconnectedGraphError(ValueError):
    pass


def laplacian_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> IntMatrix:
    """Multigraph Laplacian; repeated edges add up, self-loops are dropped."""
    L = [[0] * n for _ in range(n)]
    for u, v in edges:
        if u == v:
            continue
        L[u][u] += 1
        L[v][v] += 1
        L[u][v] -= 1
        L[v][u] -= 1
    return L


def laplacian(g: MGraph) -> IntMatrix:
    return laplacian_from_edges(g.n, g.edges())


def minor(m: IntMatrix, k: int) -> IntMatrix:
    """Delete row and column ``k``."""
    return [row[:k] + row[k + 1:] for i, row in enumerate(m) if i != k]


def det_exact(m: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination.

    Pivot is the first nonzero entry at or below the diagonal; every division
    is exact, so the result does not depend on that choice.
    """
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        rowk = a[k]
        pk = rowk[k]
        tail = rowk[k + 1:]
        for i in range(k + 1, n):
            rowi = a[i]
            f = rowi[k]
            if f == 0:
                rowi[k + 1:] = [x * pk // prev for x in rowi[k + 1:]]
            else:
                rowi[k + 1:] = [(x * pk - f * y) // prev for x, y in zip(rowi[k + 1:], tail)]
            rowi[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def count_trees(g: MGraph, root: int = 0) -> int:
    count = det_exact(minor(laplacian(g), root))
    if count == 0:
        raise DisconnectedGraphError("graph is disconnected")
    return count


def identify(n: int, edges: Iterable[tuple[int, int]], u: int, v: int) -> tuple[int, list[tuple[int, int]]]:
    """Merge ``v`` into ``u``; parallel edges are kept, the u-v edge becomes a loop."""
    hi = max(u, v)
    lo = min(u, v)

    def relabel(x: int) -> int:
        if x == hi:
            return lo
        return x - 1 if x > hi else x

    return n - 1, [(relabel(a), relabel(b)) for a, b in edges]


def count_separating_2forests(g: MGraph, u: int, v: int) -> int:
    """Spanning forests of two trees with ``u`` and ``v`` in different trees.

    These are in bijection with spanning trees of the graph where ``u`` and
    ``v`` are identified.
    """
    if u == v:
        raise ValueError("u and v must differ")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError("vertex out of range")
    n, edges = identify(g.n, g.edges(), u, v)
    if n == 1:
        return 1
    return det_exact(minor(laplacian_from_edges(n, edges), 0))


def det_mod(m: IntMatrix, p: int) -> int:
    """Determinant over GF(p) by sparse Gaussian elimination.

    Pivots are taken from the sparsest remaining row (Markowitz style), which
    keeps fill-in small on the treewidth-2 Laplacians of M(t).
    """
    n = len(m)
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {j: set() for j in range(n)}
    for i, row in enumerate(m):
        entries = {j: x % p for j, x in enumerate(row) if x % p}
        rows[i] = entries
        for j in entries:
            cols[j].add(i)

    det = 1
    perm: dict[int, int] = {}
    while rows:
        r = min(rows, key=lambda i: (len(rows[i]), i))
        prow = rows.pop(r)
        if not prow:
            return 0
        c = min(prow, key=lambda j: (len(cols[j]), j))
        pivot = prow[c]
        perm[r] = c
        det = det * pivot % p
        inv = pow(pivot, -1, p)
        for j in prow:
            cols[j].discard(r)
        for i in list(cols[c]):
            row = rows[i]
            f = row[c] * inv % p
            for j, x in prow.items():
                val = (row.get(j, 0) - f * x) % p
                if val:
                    if j not in row:
                        cols[j].add(i)
                    row[j] = val
                elif j in row:
                    del row[j]
                    cols[j].discard(i)
        del cols[c]

    # sign of the row -> column permutation
    seen = set()
    parity = 0
    for start in perm:
        if start in seen:
            continue
        length = 0
        x = start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        parity ^= (length - 1) & 1
    return (-det) % p if parity else det


def count_trees_mod(g: MGraph, p: int, root: int = 0) -> int:
    return det_mod(minor(laplacian(g), root), p)

