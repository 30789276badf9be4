"""Structural recognizers for simply laced quiver mutation classes.

Recognizers for the path family (every cycle an oriented triangle, degree
caps), the fork family D (four motif subtypes I..IV) and the affine fork
family D-tilde (paired types, the single-central-cycle V family, and the
two-central-cycle VI family).  Each acceptance carries a machine-checkable
certificate: vertex roles plus the motif arcs that witness the match.

The matchers are exact: the test suite compares their acceptance sets against
breadth-first enumeration of the classes on 7..11 vertices, member by member.
Template fine points that the source diagrams leave implicit (which optional
attachments may be empty, where spikes may sit) were resolved against that
oracle; see CALIBRATION.md.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .canonical import canonical_key_rows
from .core import Quiver

D_SUBTYPES = ("I", "II", "III", "IV")
PAIRED_SUBTYPES = (
    "I-I", "I-II", "I-III", "I-IV", "II-II",
    "II-III", "II-IV", "III-III", "III-IV", "IV-IV",
)
DTILDE_SUBTYPES = PAIRED_SUBTYPES + ("V", "Va", "Vb", "V'", "Va'", "Vb'", "VI", "VI'")


@dataclass(frozen=True)
class Certificate:
    """Witness of a structural match: vertex role tags plus motif arcs."""

    roles: dict
    motif_edges: tuple

    def vertices_with(self, role: str) -> list[int]:
        return sorted(v for v, r in self.roles.items() if r == role)

    def one(self, role: str) -> int:
        vs = self.vertices_with(role)
        if len(vs) != 1:
            raise KeyError(f"expected exactly one vertex with role {role!r}, found {vs}")
        return vs[0]


@dataclass(frozen=True)
class TypeVerdict:
    family: str                      # A, D, E, A-tilde, D-tilde, E-tilde, Unknown
    subtype: str | None
    certificate: Certificate | None
    method: str                      # "structural" | "registry-lookup" | "none"
    matched: tuple | None = None     # (family, n) for registry verdicts
    note: str | None = None


class _TooMany(Exception):
    """Cycle search exceeded its budget; the quiver is far outside the
    recognized classes."""


class _Analysis:
    """Derived adjacency views of one quiver, shared by all recognizers."""

    __slots__ = ("b", "n", "out", "inn", "nbrs", "deg", "arc_count", "max_weight", "doubles", "_conn")

    def __init__(self, b):
        self.b = b
        n = len(b)
        self.n = n
        out = [[] for _ in range(n)]
        inn = [[] for _ in range(n)]
        nbrs = [[] for _ in range(n)]
        doubles = []
        m = 0
        maxw = 0
        for i in range(n):
            row = b[i]
            for j in range(i + 1, n):
                w = row[j]
                if w == 0:
                    continue
                m += 1
                if w > 0:
                    out[i].append(j)
                    inn[j].append(i)
                else:
                    out[j].append(i)
                    inn[i].append(j)
                aw = w if w > 0 else -w
                if aw > maxw:
                    maxw = aw
                if aw >= 2:
                    doubles.append((i, j) if w > 0 else (j, i))
                nbrs[i].append(j)
                nbrs[j].append(i)
        self.out = out
        self.inn = inn
        self.nbrs = nbrs
        self.deg = [len(nb) for nb in nbrs]
        self.arc_count = m
        self.max_weight = maxw
        self.doubles = doubles
        self._conn = None

    def connected(self) -> bool:
        if self._conn is None:
            n = self.n
            seen = [False] * n
            seen[0] = True
            stack = [0]
            cnt = 1
            while stack:
                v = stack.pop()
                for u in self.nbrs[v]:
                    if not seen[u]:
                        seen[u] = True
                        cnt += 1
                        stack.append(u)
            self._conn = cnt == n
        return self._conn


def _blocks(a: _Analysis):
    """Biconnected components of the underlying simple graph (edge lists)."""
    n = a.n
    nbrs = a.nbrs
    num = [0] * n
    low = [0] * n
    counter = [0]
    estack: list[tuple[int, int]] = []
    blocks: list[list[tuple[int, int]]] = []

    def dfs(v: int, parent: int) -> None:
        counter[0] += 1
        num[v] = low[v] = counter[0]
        for u in nbrs[v]:
            if u == parent:
                continue
            if num[u] == 0:
                estack.append((v, u))
                dfs(u, v)
                if low[u] < low[v]:
                    low[v] = low[u]
                if low[u] >= num[v]:
                    block = []
                    while True:
                        e = estack.pop()
                        block.append(e)
                        if e == (v, u):
                            break
                    blocks.append(block)
            elif num[u] < num[v]:
                estack.append((v, u))
                if num[u] < low[v]:
                    low[v] = num[u]

    for r in range(n):
        if num[r] == 0:
            dfs(r, -1)
    return blocks


def _oriented_triangle(b, x, y, z) -> bool:
    return (b[x][y] > 0 and b[y][z] > 0 and b[z][x] > 0) or (
        b[x][z] > 0 and b[z][y] > 0 and b[y][x] > 0
    )


def _type_a_impl(a: _Analysis) -> bool:
    if a.n == 1:
        return True
    if not a.connected() or a.max_weight != 1:
        return False
    if max(a.deg) > 4:
        return False
    tri_at = [0] * a.n
    for block in _blocks(a):
        if len(block) == 1:
            continue
        if len(block) != 3:
            return False
        verts = set()
        for u, v in block:
            verts.add(u)
            verts.add(v)
        if len(verts) != 3:
            return False
        x, y, z = verts
        if not _oriented_triangle(a.b, x, y, z):
            return False
        tri_at[x] += 1
        tri_at[y] += 1
        tri_at[z] += 1
    for v in range(a.n):
        d = a.deg[v]
        if d == 4 and tri_at[v] != 2:
            return False
        if d == 3 and tri_at[v] != 1:
            return False
    return True


def _is_connecting(a: _Analysis, v: int) -> bool:
    if a.deg[v] <= 1:
        return True
    if a.deg[v] != 2:
        return False
    x, y = a.nbrs[v]
    return a.b[x][y] != 0 and _oriented_triangle(a.b, v, x, y)


def _induced(b, verts):
    return tuple(tuple(b[u][v] for v in verts) for u in verts)


def _piece_type_a(a: _Analysis, verts, attaches) -> bool:
    """Induced subquiver on verts is in the path family and every attach
    vertex is a connecting vertex of it."""
    vl = sorted(verts)
    idx = {v: i for i, v in enumerate(vl)}
    sub = _Analysis(_induced(a.b, vl))
    if not _type_a_impl(sub):
        return False
    return all(_is_connecting(sub, idx[v]) for v in attaches)


def _components(a: _Analysis, removed) -> list[list[int]]:
    n = a.n
    seen = [False] * n
    for v in removed:
        seen[v] = True
    comps = []
    for r in range(n):
        if seen[r]:
            continue
        comp = [r]
        seen[r] = True
        stack = [r]
        while stack:
            v = stack.pop()
            for u in a.nbrs[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    stack.append(u)
        comps.append(comp)
    return comps


def _component_of(a: _Analysis, start: int, excluded) -> list[int]:
    comp = [start]
    seen = set(excluded)
    seen.add(start)
    stack = [start]
    while stack:
        v = stack.pop()
        for u in a.nbrs[v]:
            if u not in seen:
                seen.add(u)
                comp.append(u)
                stack.append(u)
    return comp


def _chordless_cycles(a: _Analysis, max_cycles: int = 800, max_steps: int = 80000):
    """All oriented chordless cycles (weight-1 arcs, length >= 3), each as a
    vertex tuple starting at its least vertex and following arc direction."""
    b = a.b
    n = a.n
    out = a.out
    cycles = []
    steps = 0
    for s in range(n):
        stack = [(s, (s,))]
        while stack:
            v, path = stack.pop()
            row_v = b[v]
            for u in out[v]:
                if row_v[u] != 1:
                    continue
                if u == s:
                    if len(path) >= 3:
                        cycles.append(path)
                    continue
                if u < s or u in path:
                    continue
                rowu = b[u]
                blocked = False
                for w in path[1:-1]:
                    if rowu[w] != 0:
                        blocked = True
                        break
                if blocked:
                    continue
                if len(path) >= 2 and rowu[s] != 0:
                    if rowu[s] == 1:
                        cycles.append(path + (u,))
                    continue
                steps += 1
                if steps > max_steps or len(cycles) > max_cycles:
                    raise _TooMany
                stack.append((u, path + (u,)))
    return cycles


def _cycle_spikes(a: _Analysis, cycle, double_edge: int | None = None, cap: int = 1):
    """Per-edge spike apexes for a candidate central cycle, or None.

    An apex w of cycle edge u->v closes the oriented triangle u->v->w->u and
    touches the cycle in exactly {u, v}.  Every off-cycle neighbour of every
    cycle vertex must be such an apex; each edge carries at most `cap`
    apexes, except the designated double_edge which may carry two.
    """
    b = a.b
    cycset = set(cycle)
    L = len(cycle)
    apexes: list[list[int]] = [[] for _ in range(L)]
    for i in range(L):
        u = cycle[i]
        v = cycle[(i + 1) % L]
        row_v = b[v]
        for w in a.out[v]:
            if w in cycset or row_v[w] != 1:
                continue
            roww = b[w]
            if roww[u] != 1:
                continue
            if any(roww[x] != 0 for x in cycset if x != u and x != v):
                continue
            apexes[i].append(w)
    for i, ap in enumerate(apexes):
        limit = 2 if i == double_edge else cap
        if len(ap) > limit:
            return None
    assigned = {w for ap in apexes for w in ap}
    for v in cycle:
        for u in a.nbrs[v]:
            if u not in cycset and u not in assigned:
                return None
    return apexes


# ---------------------------------------------------------------------------
# Path family (type A) and its connecting vertices.


def is_type_a(q: Quiver) -> Certificate | None:
    """Certificate iff every cycle is an oriented triangle, no vertex exceeds
    degree four, and degree-3/4 vertices sit on exactly one/two triangles."""
    a = _Analysis(q.b)
    if not _type_a_impl(a):
        return None
    return Certificate(roles={v: "body" for v in range(a.n)}, motif_edges=())


def connecting_vertices(q: Quiver, cert: Certificate | None = None) -> set[int]:
    """Vertices of degree <= 1, plus degree-2 vertices on an oriented
    triangle.  Only defined on quivers accepted by is_type_a."""
    a = _Analysis(q.b)
    if not _type_a_impl(a):
        raise ValueError("connecting vertices are only defined for path-family quivers")
    return {v for v in range(a.n) if _is_connecting(a, v)}


# ---------------------------------------------------------------------------
# End motifs shared by the D matcher and the paired D-tilde matcher.  An end
# is a removable substructure hanging at one attachment vertex: a pendant
# fork (I), a double-triangle block plus its far piece (II), an oriented
# 4-cycle plus its far piece (III), or a spiked central cycle attached
# through one of its spike apexes (IV).


@dataclass
class _End:
    tag: str
    attach: int
    vset: frozenset
    motif: tuple
    roles: dict


def _arc_between(b, u, v):
    return (u, v) if b[u][v] > 0 else (v, u)


def _gen_ends_I(a: _Analysis):
    for c in range(a.n):
        pend = sorted(u for u in a.nbrs[c] if a.deg[u] == 1)
        if len(pend) < 2:
            continue
        for u1, u2 in combinations(pend, 2):
            motif = (_arc_between(a.b, c, u1), _arc_between(a.b, c, u2))
            yield _End("I", c, frozenset((u1, u2)), motif, {u1: "dead", u2: "dead"})


def _gen_ends_II(a: _Analysis):
    b = a.b
    for f in range(a.n):
        row_f = b[f]
        for o in a.out[f]:
            if row_f[o] != 1:
                continue
            mids = [x for x in a.out[o] if b[o][x] == 1 and b[x][f] == 1 and a.deg[x] == 2]
            if len(mids) < 2:
                continue
            for x, y in combinations(sorted(mids), 2):
                motif = ((o, x), (o, y), (x, f), (y, f), (f, o))
                for attach, far in ((o, f), (f, o)):
                    piece = _component_of(a, far, {attach, x, y})
                    if not _piece_type_a(a, piece, (far,)):
                        continue
                    roles = {x: "d", y: "d'", far: "far"}
                    for p in piece:
                        if p != far:
                            roles[p] = "body"
                    yield _End("II", attach, frozenset({x, y}) | frozenset(piece), motif, roles)


def _gen_ends_III(a: _Analysis, cycles):
    for cyc in cycles:
        if len(cyc) != 4:
            continue
        z = cyc
        for o, x, f, y in ((z[0], z[1], z[2], z[3]), (z[1], z[2], z[3], z[0])):
            if a.deg[x] != 2 or a.deg[y] != 2:
                continue
            motif = ((o, x), (x, f), (f, y), (y, o))
            for attach, far in ((o, f), (f, o)):
                piece = _component_of(a, far, {attach, x, y})
                if not _piece_type_a(a, piece, (far,)):
                    continue
                roles = {x: "d", y: "d'", far: "far"}
                for p in piece:
                    if p != far:
                        roles[p] = "body"
                yield _End("III", attach, frozenset({x, y}) | frozenset(piece), motif, roles)


def _cycle_motif(cycle):
    L = len(cycle)
    return tuple((cycle[i], cycle[(i + 1) % L]) for i in range(L))


def _spike_motif(cycle, apexes):
    L = len(cycle)
    arcs = []
    for i, ap in enumerate(apexes):
        u = cycle[i]
        v = cycle[(i + 1) % L]
        for w in ap:
            arcs.append((v, w))
            arcs.append((w, u))
    return tuple(arcs)


def _gen_ends_IV(a: _Analysis, cycles):
    for cyc in cycles:
        sp = _cycle_spikes(a, cyc)
        if sp is None:
            continue
        apexlist = [ap[0] for ap in sp if ap]
        if not apexlist:
            continue
        cycset = set(cyc)
        comps = _components(a, cycset)
        apexset = set(apexlist)
        comp_of = {}
        ok = True
        for comp in comps:
            hits = [w for w in comp if w in apexset]
            if len(hits) != 1:
                ok = False
                break
            comp_of[hits[0]] = comp
        if not ok:
            continue
        piece_ok = {w: _piece_type_a(a, comp_of[w], (w,)) for w in apexlist}
        cyc_roles = {v: f"cycle:1:{i}" for i, v in enumerate(cyc)}
        motif = _cycle_motif(cyc) + _spike_motif(cyc, sp)
        for alpha in apexlist:
            if not all(piece_ok[w] for w in apexlist if w != alpha):
                continue
            vset = set(cycset)
            roles = dict(cyc_roles)
            for w in apexlist:
                if w == alpha:
                    continue
                roles[w] = "apex"
                for p in comp_of[w]:
                    if p != w:
                        roles[p] = "body"
                vset |= set(comp_of[w])
            yield _End("IV", alpha, frozenset(vset), motif, roles)


def _end_isolated(a: _Analysis, end: _End) -> bool:
    """End vertices touch nothing outside the end except the attachment, and
    the arcs at the attachment are exactly the motif arcs."""
    allowed = end.vset | {end.attach}
    for v in end.vset:
        for u in a.nbrs[v]:
            if u not in allowed:
                return False
    expected = {arc for arc in end.motif if end.attach in arc}
    actual = set()
    row = a.b[end.attach]
    for u in end.vset:
        w = row[u]
        if w > 0:
            actual.add((end.attach, u))
        elif w < 0:
            actual.add((u, end.attach))
    return actual == expected


def _all_ends(a: _Analysis, cycles):
    yield from _gen_ends_I(a)
    yield from _gen_ends_II(a)
    yield from _gen_ends_III(a, cycles)
    yield from _gen_ends_IV(a, cycles)


# ---------------------------------------------------------------------------
# Type D: one end plus a path-family body at the attachment.


def is_type_d(q: Quiver) -> tuple[str, Certificate] | None:
    a = _Analysis(q.b)
    return _type_d_impl(a)


def _type_d_impl(a: _Analysis) -> tuple[str, Certificate] | None:
    if a.n < 4 or not a.connected() or a.max_weight != 1:
        return None
    try:
        cycles = _chordless_cycles(a)
    except _TooMany:
        return None
    for end in _all_ends(a, cycles):
        if not _end_isolated(a, end):
            continue
        body = [v for v in range(a.n) if v not in end.vset]
        if not _piece_type_a(a, body, (end.attach,)):
            continue
        roles = {end.attach: "c"}
        for v in body:
            if v != end.attach:
                roles[v] = "body"
        for v, r in end.roles.items():
            roles[v] = "c'" if r == "far" else r
        return end.tag, Certificate(roles, end.motif)
    # A bare oriented chordless cycle through every vertex is the spikeless
    # form of subtype IV.
    if a.arc_count == a.n:
        for cyc in cycles:
            if len(cyc) == a.n:
                roles = {v: f"cycle:1:{i}" for i, v in enumerate(cyc)}
                return "IV", Certificate(roles, _cycle_motif(cyc))
    return None


# ---------------------------------------------------------------------------
# D-tilde family matchers.


def _pieces_of_cycle(a: _Analysis, cycle, apexes_by_edge, bare):
    """Map each apex to its off-cycle component; bare apexes must be isolated
    and the other pieces must be path-family with the apex connecting."""
    comps = _components(a, set(cycle))
    apexset = {w for ap in apexes_by_edge for w in ap}
    pieces = {}
    for comp in comps:
        hits = [w for w in comp if w in apexset]
        if len(hits) != 1:
            return None
        w = hits[0]
        if w in bare:
            if len(comp) != 1:
                return None
        elif not _piece_type_a(a, comp, (w,)):
            return None
        pieces[w] = comp
    if len(pieces) != len(apexset):
        return None
    return pieces


def _fill_central_roles(roles, cycle, skip, apexes_by_edge, pieces):
    for i, v in enumerate(cycle):
        if v not in skip:
            roles[v] = f"cycle:1:{i}"
    for ap in apexes_by_edge:
        for w in ap:
            if w in skip:
                continue
            roles[w] = "apex"
            for p in pieces[w]:
                if p != w:
                    roles[p] = "body"


def _match_v(a: _Analysis, cycles):
    b = a.b
    for s in range(a.n):
        row_s = b[s]
        for t in a.out[s]:
            if row_s[t] != 1:
                continue
            W = [w for w in a.out[t] if b[t][w] == 1 and b[w][s] == 1 and a.deg[w] == 2]
            if len(W) < 2:
                continue
            for d1, d2 in combinations(sorted(W), 2):
                for cyc in cycles:
                    if d1 in cyc or d2 in cyc:
                        continue
                    L = len(cyc)
                    if s not in cyc:
                        continue
                    i = cyc.index(s)
                    if cyc[(i + 1) % L] != t:
                        continue
                    sp = _cycle_spikes(a, cyc, double_edge=i)
                    if sp is None or sorted(sp[i]) != sorted((d1, d2)):
                        continue
                    pieces = _pieces_of_cycle(a, cyc, sp, bare={d1, d2})
                    if pieces is None:
                        continue
                    roles = {}
                    _fill_central_roles(roles, cyc, {s, t}, sp, pieces)
                    roles.update({s: "a", t: "b", d1: "d", d2: "d'"})
                    motif = _cycle_motif(cyc) + _spike_motif(cyc, sp)
                    return "V", Certificate(roles, motif)
    return None


def _masked_flip(a: _Analysis, drop, flip_from, flip_to):
    """Rows with `drop` vertices removed and the arc between flip_from and
    flip_to forced to flip_from -> flip_to; returns (rows, kept vertices)."""
    keep = [v for v in range(a.n) if v not in drop]
    idx = {v: i for i, v in enumerate(keep)}
    rows = [list(r) for r in _induced(a.b, keep)]
    i, j = idx[flip_from], idx[flip_to]
    rows[i][j] = 1
    rows[j][i] = -1
    return tuple(tuple(r) for r in rows), keep


def _match_flipped_central(a: _Analysis, d1, d2, head, tail):
    """Shared tail of the Va/Vb matchers: remove the bare pair {d1, d2},
    force the arc head->tail, and demand a spiked central cycle through that
    arc carrying no spike of its own.  Returns (roles, motif) on the original
    vertex numbering, with head/tail/d1/d2 left untagged."""
    rows2, keep = _masked_flip(a, {d1, d2}, head, tail)
    a2 = _Analysis(rows2)
    idx = {v: i for i, v in enumerate(keep)}
    back = {i2: v for v, i2 in idx.items()}
    try:
        cycles2 = _chordless_cycles(a2)
    except _TooMany:
        return None
    hi, ti = idx[head], idx[tail]
    for cyc in cycles2:
        L = len(cyc)
        if hi not in cyc:
            continue
        i = cyc.index(hi)
        if cyc[(i + 1) % L] != ti:
            continue
        sp = _cycle_spikes(a2, cyc)
        if sp is None or sp[i]:
            continue
        pieces = _pieces_of_cycle(a2, cyc, sp, bare=())
        if pieces is None:
            continue
        covered = set(cyc)
        for comp in pieces.values():
            covered |= set(comp)
        if len(covered) != len(keep):
            continue
        roles: dict = {}
        cyc_real = tuple(back[x] for x in cyc)
        sp_real = [[back[w] for w in ap] for ap in sp]
        pieces_real = {back[w]: [back[p] for p in comp] for w, comp in pieces.items()}
        _fill_central_roles(roles, cyc_real, {head, tail}, sp_real, pieces_real)
        motif = tuple(
            arc for arc in _cycle_motif(cyc_real) if arc != (head, tail)
        ) + _spike_motif(cyc_real, sp_real)
        return roles, motif
    return None


def _match_va(a: _Analysis, cycles):
    for cyc in cycles:
        if len(cyc) != 4:
            continue
        z = cyc
        for k in range(4):
            aa, d, bb, dp = z[k], z[(k + 1) % 4], z[(k + 2) % 4], z[(k + 3) % 4]
            if a.deg[d] != 2 or a.deg[dp] != 2:
                continue
            hit = _match_flipped_central(a, d, dp, aa, bb)
            if hit is not None:
                roles, motif = hit
                roles.update({aa: "a", bb: "b", d: "d", dp: "d'"})
                motif = motif + ((aa, d), (d, bb), (bb, dp), (dp, aa))
                return "Va", Certificate(roles, motif)
    return None


def _match_vb(a: _Analysis):
    b = a.b
    for s in range(a.n):
        row_s = b[s]
        for t in a.out[s]:
            if row_s[t] != 1:
                continue
            W = [w for w in a.out[t] if b[t][w] == 1 and b[w][s] == 1 and a.deg[w] == 2]
            if len(W) < 2:
                continue
            for d1, d2 in combinations(sorted(W), 2):
                hit = _match_flipped_central(a, d1, d2, t, s)
                if hit is not None:
                    roles, motif = hit
                    roles.update({t: "a", s: "b", d1: "d", d2: "d'"})
                    motif = motif + ((s, t), (t, d1), (d1, s), (t, d2), (d2, s))
                    return "Vb", Certificate(roles, motif)
    return None


def _match_five_core(a: _Analysis, aa, bb, d1, d2, carcs, tag, extra_motif):
    """Core {a, b, d, d'} plus a connecting vertex c carrying the rest."""
    b = a.b
    n = a.n
    dset = {aa, bb, d1, d2}
    ab_adjacent = b[aa][bb] != 0
    for c in carcs:
        if c in dset:
            continue
        exp_aa = {d1, d2, c} | ({bb} if ab_adjacent else set())
        exp_bb = {d1, d2, c} | ({aa} if ab_adjacent else set())
        if set(a.nbrs[aa]) != exp_aa or set(a.nbrs[bb]) != exp_bb:
            continue
        if a.deg[d1] != 2 or a.deg[d2] != 2:
            continue
        body = [v for v in range(n) if v not in dset]
        if not _piece_type_a(a, body, (c,)):
            continue
        roles = {aa: "a", bb: "b", d1: "d", d2: "d'", c: "c"}
        for v in body:
            if v != c:
                roles[v] = "body"
        motif = extra_motif + ((bb, c), (c, aa))
        return tag, Certificate(roles, motif)
    return None


def _match_v_prime(a: _Analysis):
    b = a.b
    for aa in range(a.n):
        for bb in range(a.n):
            if aa == bb or b[aa][bb] != 0:
                continue
            mids = [w for w in a.out[aa] if b[aa][w] == 1 and b[w][bb] == 1 and a.deg[w] == 2]
            if len(mids) != 2:
                continue
            d1, d2 = sorted(mids)
            carcs = [c for c in a.out[bb] if b[bb][c] == 1 and b[c][aa] == 1]
            extra = ((aa, d1), (d1, bb), (aa, d2), (d2, bb))
            hit = _match_five_core(a, aa, bb, d1, d2, carcs, "V'", extra)
            if hit is not None:
                return hit
    return None


def _match_va_prime(a: _Analysis):
    b = a.b
    for aa in range(a.n):
        for bb in a.out[aa]:
            if b[aa][bb] != 1:
                continue
            ds = [w for w in a.out[bb] if b[bb][w] == 1 and b[w][aa] == 1 and a.deg[w] == 2]
            dps = [w for w in a.out[aa] if b[aa][w] == 1 and b[w][bb] == 1 and a.deg[w] == 2]
            if len(ds) != 1 or len(dps) != 1:
                continue
            d, dp = ds[0], dps[0]
            carcs = [c for c in a.out[bb] if b[bb][c] == 1 and b[c][aa] == 1 and c != d]
            extra = ((aa, bb), (bb, d), (d, aa), (aa, dp), (dp, bb))
            hit = _match_five_core(a, aa, bb, d, dp, carcs, "Va'", extra)
            if hit is not None:
                return hit
    return None


def _match_vb_prime(a: _Analysis):
    if len(a.doubles) != 1 or a.max_weight != 2:
        return None
    b = a.b
    aa, bb = a.doubles[0]
    W = [w for w in a.out[bb] if b[bb][w] == 1 and b[w][aa] == 1]
    if len(W) != 3:
        return None
    deg2 = sorted(w for w in W if a.deg[w] == 2)
    if len(deg2) < 2:
        return None
    for d1, d2 in combinations(deg2, 2):
        c = next(w for w in W if w not in (d1, d2))
        extra = ((aa, bb), (bb, d1), (d1, aa), (bb, d2), (d2, aa))
        hit = _match_five_core(a, aa, bb, d1, d2, [c], "Vb'", extra)
        if hit is not None:
            return hit
    return None


def _match_vi_prime(a: _Analysis):
    b = a.b
    for c in range(a.n):
        tris = []
        for x in a.out[c]:
            if b[c][x] != 1 or a.deg[x] != 3:
                continue
            for y in a.out[x]:
                if b[x][y] == 1 and b[y][c] == 1 and a.deg[y] == 3:
                    tris.append((x, y))
        for (p, q), (r, s) in combinations(tris, 2):
            if {p, q} & {r, s}:
                continue
            if b[p][s] != 1 or b[r][q] != 1:
                continue
            blockset = {p, q, r, s}
            if any(u not in blockset and u != c for v in blockset for u in a.nbrs[v]):
                continue
            body = [v for v in range(a.n) if v not in blockset]
            if not _piece_type_a(a, body, (c,)):
                continue
            roles = {c: "c", p: "cycle:1:1", q: "cycle:1:2", r: "cycle:2:1", s: "cycle:2:2"}
            for v in body:
                if v != c:
                    roles[v] = "body"
            motif = ((c, p), (p, q), (q, c), (c, r), (r, s), (s, c), (p, s), (r, q))
            return "VI'", Certificate(roles, motif)
    return None


def _match_vi(a: _Analysis, cycles):
    b = a.b
    by_vertex: dict[int, list[int]] = {}
    for ci, cyc in enumerate(cycles):
        for v in cyc:
            by_vertex.setdefault(v, []).append(ci)
    for c in sorted(by_vertex):
        idxs = by_vertex[c]
        for i1, i2 in combinations(idxs, 2):
            c1, c2 = cycles[i1], cycles[i2]
            if len(set(c1) & set(c2)) != 1:
                continue
            L1, L2 = len(c1), len(c2)
            p1 = c1.index(c)
            p2 = c2.index(c)
            a1, b1 = c1[(p1 + 1) % L1], c1[p1 - 1]
            a2, b2 = c2[(p2 + 1) % L2], c2[p2 - 1]
            if b[a1][b2] != 1 or b[a2][b1] != 1:
                continue
            sp1 = _cycle_spikes(a, c1)
            sp2 = _cycle_spikes(a, c2)
            if sp1 is None or sp2 is None:
                continue
            if sp1[p1] != [b2] or sp1[(p1 - 1) % L1] != [a2]:
                continue
            if sp2[p2] != [b1] or sp2[(p2 - 1) % L2] != [a1]:
                continue
            shared1 = {p1, (p1 - 1) % L1}
            shared2 = {p2, (p2 - 1) % L2}
            ord_apexes = {w for j, ap in enumerate(sp1) if j not in shared1 for w in ap}
            ord_apexes |= {w for j, ap in enumerate(sp2) if j not in shared2 for w in ap}
            allverts = set(c1) | set(c2)
            comps = _components(a, allverts)
            pieces = {}
            ok = True
            for comp in comps:
                hits = [w for w in comp if w in ord_apexes]
                if len(hits) != 1 or not _piece_type_a(a, comp, (hits[0],)):
                    ok = False
                    break
                pieces[hits[0]] = comp
            if not ok or len(pieces) != len(ord_apexes):
                continue
            roles = {c: "c"}
            for k, v in enumerate(c1):
                if v != c:
                    roles[v] = f"cycle:1:{(k - p1) % L1}"
            for k, v in enumerate(c2):
                if v != c:
                    roles[v] = f"cycle:2:{(k - p2) % L2}"
            for w in ord_apexes:
                roles[w] = "apex"
                for p in pieces[w]:
                    if p != w:
                        roles[p] = "body"
            sp1_ord = [ap if j not in shared1 else [] for j, ap in enumerate(sp1)]
            sp2_ord = [ap if j not in shared2 else [] for j, ap in enumerate(sp2)]
            motif = (
                _cycle_motif(c1)
                + _cycle_motif(c2)
                + ((a1, b2), (a2, b1))
                + _spike_motif(c1, sp1_ord)
                + _spike_motif(c2, sp2_ord)
            )
            return "VI", Certificate(roles, motif)
    return None


def _match_paired(a: _Analysis, cycles):
    ends = [e for e in _all_ends(a, cycles) if _end_isolated(a, e)]
    order = {t: i for i, t in enumerate(D_SUBTYPES)}
    for e1, e2 in combinations(ends, 2):
        if e1.vset & e2.vset:
            continue
        if e1.attach in e2.vset or e2.attach in e1.vset:
            continue
        body = [v for v in range(a.n) if v not in e1.vset and v not in e2.vset]
        attaches = {e1.attach, e2.attach}
        if not _piece_type_a(a, body, attaches):
            continue
        if order[e2.tag] < order[e1.tag]:
            e1, e2 = e2, e1
        roles = {v: "body" for v in body}
        roles[e1.attach] = "c"
        roles[e2.attach] = "c'" if e2.attach != e1.attach else "c"
        for v, r in e1.roles.items():
            roles[v] = "c''" if r == "far" else r
        for v, r in e2.roles.items():
            if r == "far":
                roles[v] = "c'''"
            elif r.startswith("cycle:1:"):
                roles[v] = "cycle:2:" + r.rsplit(":", 1)[1]
            else:
                roles[v] = r
        tag = f"{e1.tag}-{e2.tag}"
        return tag, Certificate(roles, e1.motif + e2.motif)
    return None


def _affine_matchers(a: _Analysis, cycles):
    yield _match_vi_prime(a)
    yield _match_vi(a, cycles)
    yield _match_v(a, cycles)
    yield _match_va(a, cycles)
    yield _match_vb(a)
    yield _match_v_prime(a)
    yield _match_va_prime(a)
    yield _match_paired(a, cycles)


def is_type_d_affine(q: Quiver) -> tuple[str, Certificate] | None:
    a = _Analysis(q.b)
    return _type_d_affine_impl(a)


def _type_d_affine_impl(a: _Analysis) -> tuple[str, Certificate] | None:
    if a.n < 5 or not a.connected():
        return None
    if a.max_weight > 2 or len(a.doubles) > 1:
        return None
    if a.doubles:
        return _match_vb_prime(a)
    try:
        cycles = _chordless_cycles(a)
    except _TooMany:
        return None
    for hit in _affine_matchers(a, cycles):
        if hit is not None:
            return hit
    return None


def match_affine_all(q: Quiver) -> list[str]:
    """Debug view: every D-tilde subtype whose matcher fires (used to verify
    that the templates are mutually exclusive)."""
    a = _Analysis(q.b)
    if a.n < 5 or not a.connected() or a.max_weight > 2 or len(a.doubles) > 1:
        return []
    if a.doubles:
        hit = _match_vb_prime(a)
        return [hit[0]] if hit else []
    try:
        cycles = _chordless_cycles(a)
    except _TooMany:
        return []
    return [hit[0] for hit in _affine_matchers(a, cycles) if hit is not None]


def find_central_cycles(q: Quiver):
    """Oriented chordless cycles whose every off-cycle attachment is
    spike-shaped, annotated with per-edge apex tuples (up to two apexes on an
    edge, the double-spike case)."""
    a = _Analysis(q.b)
    try:
        cycles = _chordless_cycles(a)
    except _TooMany:
        return []
    out = []
    for cyc in cycles:
        sp = _cycle_spikes(a, cyc, cap=2)
        if sp is not None:
            out.append((cyc, [tuple(ap) for ap in sp]))
    return out


# ---------------------------------------------------------------------------
# Top-level classification.


def classify(q: Quiver, registry=None) -> TypeVerdict:
    """Structural check in the order A, D, D-tilde (ties go to the earlier
    family), then registry lookup for the families without structural
    recognizers."""
    a = _Analysis(q.b)
    if _type_a_impl(a):
        cert = Certificate(roles={v: "body" for v in range(a.n)}, motif_edges=())
        return TypeVerdict("A", None, cert, "structural")
    hit = _type_d_impl(a)
    if hit is not None:
        return TypeVerdict("D", hit[0], hit[1], "structural")
    hit = _type_d_affine_impl(a)
    if hit is not None:
        return TypeVerdict("D-tilde", hit[0], hit[1], "structural")
    if registry is not None:
        key = canonical_key_rows(q.b)
        found = registry.lookup(key)
        if found is not None:
            return TypeVerdict(found[0], None, None, "registry-lookup", matched=found)
        truncated = [
            f"{fam}_{m}" for (fam, m), e in sorted(registry.entries.items())
            if m == q.n and e.truncated
        ]
        note = "no structural or registry match"
        if truncated:
            note += "; truncated entries could not rule out: " + ", ".join(truncated)
        return TypeVerdict("Unknown", None, None, "none", note=note)
    return TypeVerdict("Unknown", None, None, "none", note="no structural match and no registry")
