"""Canonical labeling of quivers.

The canonical key of a quiver is a byte string that is equal for two quivers
exactly when they are isomorphic (related by a vertex relabeling).  Keys are
computed by iterative partition refinement on signed-weight neighbourhood
colourings, followed by backtracking over the remaining label choices, taking
the lexicographically least serialization of the upper triangle.  Exact,
dependency-free, deterministic across runs and platforms; the factorial worst
case never materialises at the sizes used here (n <= 32, sparse quivers).

Key layout: byte 0 is n, followed by the n*(n-1)/2 upper-triangle entries of
the canonical matrix, each offset by +128 (so |weights| must stay < 128).
"""

from __future__ import annotations

from .core import Quiver, QuiverError


def _refine(adj, colors, n):
    """Refine a colouring until stable; returns dense canonical colour ranks."""
    ncls = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            nb = sorted((colors[u], w) for u, w in adj[v])
            sigs.append((colors[v], tuple(nb)))
        order = {s: r for r, s in enumerate(sorted(set(sigs)))}
        colors = [order[s] for s in sigs]
        k = len(order)
        if k == ncls or k == n:
            return colors
        ncls = k


def _serialize(b, colors, n):
    """Upper-triangle bytes of b under the labelling induced by colours."""
    vert = [0] * n
    for v in range(n):
        vert[colors[v]] = v
    out = bytearray()
    for i in range(n):
        row = b[vert[i]]
        for j in range(i + 1, n):
            out.append(row[vert[j]] + 128)
    return bytes(out)


def canonical_key_rows(b) -> bytes:
    """Canonical key for a raw row-tuple matrix (hot path)."""
    n = len(b)
    if n == 1:
        return bytes([1])
    adj = []
    for row in b:
        entries = tuple((u, w) for u, w in enumerate(row) if w)
        adj.append(entries)
        for _, w in entries:
            if not -127 <= w <= 127:
                raise QuiverError(f"weight {w} out of canonical-key range")
    colors = _refine(adj, [0] * n, n)
    best: bytes | None = None

    stack = [colors]
    while stack:
        colors = stack.pop()
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = None
        for c in sorted(counts):
            if counts[c] > 1:
                target = c
                break
        if target is None:
            key = _serialize(b, colors, n)
            if best is None or key < best:
                best = key
            continue
        # Individualize each vertex of the first non-singleton cell in turn.
        for v in range(n):
            if colors[v] == target:
                split = [2 * c + (0 if u == v else 1) for u, c in enumerate(colors)]
                stack.append(_refine(adj, split, n))
    assert best is not None
    return bytes([n]) + best


def canonical_key(q: Quiver) -> bytes:
    """Isomorphism-invariant key of a quiver."""
    return canonical_key_rows(q.b)


def key_to_quiver(key: bytes) -> Quiver:
    """Reconstruct the canonical representative quiver from its key."""
    n = key[0]
    expected = 1 + n * (n - 1) // 2
    if len(key) != expected:
        raise QuiverError(f"key length {len(key)} does not match n={n}")
    b = [[0] * n for _ in range(n)]
    pos = 1
    for i in range(n):
        for j in range(i + 1, n):
            w = key[pos] - 128
            pos += 1
            b[i][j] = w
            b[j][i] = -w
    return Quiver(tuple(tuple(row) for row in b))


def are_isomorphic(q1: Quiver, q2: Quiver) -> bool:
    """True iff some vertex bijection maps one matrix onto the other."""
    if q1.n != q2.n:
        return False
    return canonical_key_rows(q1.b) == canonical_key_rows(q2.b)
