"""Core quiver values: exchange matrices, mutation, seeds, and the text format.

A quiver is a directed multigraph with no loops and no 2-cycles.  Parallel
arrows are stored as positive integer weights in a skew-symmetric matrix b,
where b[i][j] > 0 means b[i][j] arrows i -> j.  The encoding makes loops and
2-cycles unrepresentable, and mutation becomes a pure arithmetic rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

FAMILIES = ("A", "D", "E", "A-tilde", "D-tilde", "E-tilde")

Rows = tuple  # tuple[tuple[int, ...], ...]; alias used in hot-path helpers


class QuiverError(ValueError):
    """Malformed quiver data, arrow list, or seed specification."""


@dataclass(frozen=True)
class Quiver:
    """Immutable quiver backed by a skew-symmetric integer matrix."""

    b: tuple

    @property
    def n(self) -> int:
        return len(self.b)

    def arrows(self) -> Iterator[tuple[int, int, int]]:
        """Yield (source, target, weight) for every positive entry."""
        for i, row in enumerate(self.b):
            for j, w in enumerate(row):
                if w > 0:
                    yield (i, j, w)

    def matrix(self) -> list[list[int]]:
        return [list(row) for row in self.b]

    def __repr__(self) -> str:  # compact: list arrows, not the matrix
        arcs = ", ".join(f"{s}->{t}" + (f"x{w}" if w > 1 else "") for s, t, w in self.arrows())
        return f"Quiver(n={self.n}; {arcs})"


def _validate_rows(rows) -> None:
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise QuiverError(f"row {i} has length {len(row)}, expected {n}")
        if row[i] != 0:
            raise QuiverError(f"loop entry b[{i}][{i}] = {row[i]}")
        for j in range(i + 1, n):
            if row[j] != -rows[j][i]:
                raise QuiverError(f"matrix not skew-symmetric at ({i},{j})")


def from_matrix(matrix: Sequence[Sequence[int]]) -> Quiver:
    """Build a quiver from a full matrix, validating the invariants."""
    rows = tuple(tuple(int(x) for x in row) for row in matrix)
    if len(rows) == 0:
        raise QuiverError("empty matrix")
    _validate_rows(rows)
    return Quiver(rows)


def make_quiver(n: int, arrows: Iterable[tuple[int, int, int]]) -> Quiver:
    """Build a quiver on n vertices from (source, target, weight) arrows.

    Each unordered vertex pair may appear at most once: giving both i->j and
    j->i would encode a 2-cycle, which quivers do not have.
    """
    if n < 1:
        raise QuiverError(f"vertex count must be positive, got {n}")
    b = [[0] * n for _ in range(n)]
    for s, t, w in arrows:
        if not (0 <= s < n and 0 <= t < n):
            raise QuiverError(f"arrow ({s},{t}) out of range for n={n}")
        if s == t:
            raise QuiverError(f"loop arrow at vertex {s}")
        if w <= 0:
            raise QuiverError(f"arrow ({s},{t}) has non-positive weight {w}")
        if b[s][t] != 0 or b[t][s] != 0:
            raise QuiverError(f"vertex pair ({s},{t}) given more than once")
        b[s][t] = w
        b[t][s] = -w
    return Quiver(tuple(tuple(row) for row in b))


def mutate_rows(b, j: int):
    """Mutation at vertex j on a raw row-tuple matrix (hot path, no checks)."""
    bj = b[j]
    out = []
    for i, bi in enumerate(b):
        if i == j:
            out.append(tuple(-x for x in bi))
            continue
        bij = bi[j]
        if bij == 0:
            out.append(bi)
            continue
        row = list(bi)
        row[j] = -bij
        if bij > 0:
            for k, bjk in enumerate(bj):
                if bjk > 0:
                    row[k] += bij * bjk
        else:
            for k, bjk in enumerate(bj):
                if bjk < 0:
                    row[k] -= bij * bjk
        out.append(tuple(row))
    return tuple(out)


def mutate(q: Quiver, j: int) -> Quiver:
    """Return the mutation of q at vertex j.

    Matrix form of the three-step graph rule (compose paths through j,
    reverse arrows at j, cancel 2-cycles):

        b'[i][k] = -b[i][k]                                if i == j or k == j
        b'[i][k] = b[i][k] + sign(b[i][j]) * max(0, b[i][j] * b[j][k])  otherwise
    """
    if not 0 <= j < q.n:
        raise IndexError(f"mutation vertex {j} out of range for n={q.n}")
    return Quiver(mutate_rows(q.b, j))


def mutate_seq(q: Quiver, js: Iterable[int]) -> Quiver:
    """Left-to-right fold of mutate over a vertex sequence."""
    b = q.b
    n = len(b)
    for j in js:
        if not 0 <= j < n:
            raise IndexError(f"mutation vertex {j} out of range for n={n}")
        b = mutate_rows(b, j)
    return Quiver(b)


def permute(q: Quiver, perm: Sequence[int]) -> Quiver:
    """Relabel vertices: vertex i becomes perm[i]."""
    n = q.n
    if sorted(perm) != list(range(n)):
        raise QuiverError(f"not a permutation of 0..{n - 1}: {perm}")
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        pi = perm[i]
        row = q.b[i]
        for j in range(n):
            b[pi][perm[j]] = row[j]
    return Quiver(tuple(tuple(row) for row in b))


# ---------------------------------------------------------------------------
# Text format: line 1 is the vertex count, then one "s t w" line per arrow
# (0-based, weight >= 1), arrows listed in the positive direction only and
# sorted by (s, t) when emitted.  Blank lines and lines starting with '#'
# are ignored on input.


def quiver_to_text(q: Quiver) -> str:
    lines = [str(q.n)]
    lines.extend(f"{s} {t} {w}" for s, t, w in sorted(q.arrows()))
    return "\n".join(lines) + "\n"


def parse_quiver_text(text: str) -> Quiver:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise QuiverError("empty quiver text")
    try:
        n = int(lines[0])
    except ValueError:
        raise QuiverError(f"first line must be the vertex count, got {lines[0]!r}") from None
    arrows = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise QuiverError(f"arrow line must be 's t w', got {ln!r}")
        s, t, w = (int(p) for p in parts)
        arrows.append((s, t, w))
    return make_quiver(n, arrows)


# ---------------------------------------------------------------------------
# Seed quivers, one per family diagram.


@dataclass(frozen=True)
class SeedSpec:
    family: str
    n: int


def _check_family_size(family: str, n: int) -> None:
    if family not in FAMILIES:
        raise QuiverError(f"unknown family {family!r}; expected one of {FAMILIES}")
    minima = {"A": 1, "D": 4, "E": 6, "A-tilde": 3, "D-tilde": 5}
    if family == "E-tilde":
        if n not in (7, 8, 9):
            raise QuiverError(f"E-tilde is only defined on 7, 8, or 9 vertices, got n={n}")
    elif n < minima[family]:
        raise QuiverError(f"family {family} needs n >= {minima[family]}, got n={n}")
    if n > 32:
        raise QuiverError(f"n={n} above the supported range (<= 32)")


def _alternating_chain(m: int) -> list[tuple[int, int, int]]:
    # Even-indexed chain vertices are sources for both their neighbours.
    return [((i, i + 1, 1) if i % 2 == 0 else (i + 1, i, 1)) for i in range(m - 1)]


def _seed_arrows(family: str, n: int, orient: int) -> list[tuple[int, int, int]]:
    if family == "A":
        return [(i, i + 1, 1) for i in range(n - 1)]
    if family == "D":
        arrows = [(i, i + 1, 1) for i in range(n - 3)]
        arrows += [(n - 3, n - 2, 1), (n - 3, n - 1, 1)]
        return arrows
    if family == "E":
        # Chain on vertices 0..n-2 in the alternating orientation, with the
        # extra vertex n-1 hung off chain vertex 2.
        return _alternating_chain(n - 1) + [(2, n - 1, 1)]
    if family == "E-tilde":
        if n == 7:  # three branches of length 2 around vertex 2
            return _alternating_chain(5) + [(2, 5, 1), (5, 6, 1)]
        if n == 8:  # chain of 7 with a leaf at the centre vertex 3
            return _alternating_chain(7) + [(3, 7, 1)]
        return _alternating_chain(8) + [(2, 8, 1)]  # n == 9, same diagram as E_9
    if family == "D-tilde":
        arrows = [(2, 0, 1), (2, 1, 1)]
        arrows += [(i, i + 1, 1) for i in range(2, n - 3)]
        arrows += [(n - 3, n - 2, 1), (n - 3, n - 1, 1)]
        return arrows
    # A-tilde: cycle with n - orient arrows one way and orient the other,
    # drawn as two directed paths from vertex 0 to vertex n - orient.
    q = orient
    if not 1 <= q <= n // 2:
        raise QuiverError(f"A-tilde orientation class must be in 1..{n // 2}, got {q}")
    p = n - q
    arrows = [(i, i + 1, 1) for i in range(p)]
    arrows.append((0, n - 1, 1))
    arrows += [(i, i - 1, 1) for i in range(n - 1, p, -1)]
    return arrows


def seed(family: str, n: int, orient: int = 1) -> Quiver:
    """A fixed-orientation seed quiver for the named diagram.

    Tree diagrams (A, D, E, D-tilde, E-tilde) have orientation-independent
    mutation classes, so a single conventional orientation is returned.  For
    A-tilde the cycle orientation matters: `orient` = q selects the class
    whose cycle has q arrows against the majority direction (1 <= q <= n//2).
    """
    _check_family_size(family, n)
    return make_quiver(n, _seed_arrows(family, n, orient))


def seeds(family: str, n: int) -> list[Quiver]:
    """All seed quivers for (family, n): one per A-tilde orientation class,
    a singleton list for the tree families."""
    _check_family_size(family, n)
    if family == "A-tilde":
        return [seed(family, n, q) for q in range(1, n // 2 + 1)]
    return [seed(family, n)]
