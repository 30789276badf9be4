"""Breadth-first enumeration of mutation classes up to isomorphism.

Members are deduplicated by canonical key at enqueue time, so the member set
and the first-visit depths are independent of vertex visit order and of the
number of workers.  BFS layers give mutation depth directly: the depth of a
member is the least number of mutations from the seed orientation.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .canonical import canonical_key_rows, key_to_quiver
from .core import Quiver, QuiverError, mutate_rows, seeds

REGISTRY_MAGIC = "quiverlab-registry v1"


@dataclass(frozen=True)
class EnumLimits:
    """Optional enumeration cutoffs.

    max_depth: stop expanding once this BFS depth is fully generated.
    max_members: stop (deterministically) once this many members are known.
    sample_cap/sample_seed: thin the final member set to at most sample_cap
    keys, chosen uniformly without replacement with the given seed.
    """

    max_depth: int | None = None
    max_members: int | None = None
    sample_cap: int | None = None
    sample_seed: int = 0


@dataclass
class MutationClass:
    """An enumerated mutation class: canonical keys with BFS depths."""

    n: int
    seed_key: bytes
    depth_of: dict[bytes, int]
    truncated: bool = False
    limit_hit: str | None = None

    @property
    def members(self) -> set[bytes]:
        return set(self.depth_of)

    def __len__(self) -> int:
        return len(self.depth_of)

    def __contains__(self, key: bytes) -> bool:
        return key in self.depth_of


def member(cls: MutationClass, q: Quiver) -> bool | None:
    """Membership query.  True is always reliable; for a truncated class a
    negative answer is unknown and None is returned instead of False."""
    if canonical_key_rows(q.b) in cls.depth_of:
        return True
    return None if cls.truncated else False


def _expand_chunk(args):
    chunk, n = args
    out = []
    for rows, via in chunk:
        children = []
        for j in range(n):
            if j == via:
                continue  # mutating back at the discovery vertex returns the parent
            child = mutate_rows(rows, j)
            children.append((j, canonical_key_rows(child), child))
        out.append(children)
    return out


def enumerate_class(
    start: Quiver,
    limits: EnumLimits | None = None,
    *,
    workers: int = 1,
) -> MutationClass:
    """BFS over single mutations from `start`, deduplicating up to isomorphism.

    The result is schedule-independent: the same member set and depth map are
    produced for any `workers` value.  Truncation by a limit is recorded on
    the result, never silent.
    """
    limits = limits or EnumLimits()
    n = start.n
    seed_key = canonical_key_rows(start.b)
    depth_of: dict[bytes, int] = {seed_key: 0}
    frontier: list[tuple[tuple, int]] = [(start.b, -1)]
    depth = 0
    truncated = False
    limit_hit = None

    pool = None
    if workers > 1:
        import multiprocessing as mp

        pool = mp.get_context("fork").Pool(workers)
    try:
        while frontier:
            if limits.max_depth is not None and depth >= limits.max_depth:
                truncated, limit_hit = True, "max_depth"
                break
            if pool is None:
                expanded: Iterable = _expand_chunk((frontier, n))
            else:
                size = max(1, (len(frontier) + workers - 1) // workers)
                chunks = [(frontier[i : i + size], n) for i in range(0, len(frontier), size)]
                expanded = (entry for part in pool.map(_expand_chunk, chunks) for entry in part)
            nxt: list[tuple[tuple, int]] = []
            next_depth = depth + 1
            for children in expanded:
                for j, key, child in children:
                    if key in depth_of:
                        continue
                    if limits.max_members is not None and len(depth_of) >= limits.max_members:
                        truncated, limit_hit = True, "max_members"
                        break
                    depth_of[key] = next_depth
                    nxt.append((child, j))
                if truncated:
                    break
            if truncated:
                break
            frontier = nxt
            depth = next_depth
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    cls = MutationClass(n=n, seed_key=seed_key, depth_of=depth_of, truncated=truncated, limit_hit=limit_hit)
    if limits.sample_cap is not None and len(cls) > limits.sample_cap:
        keep = subsample(cls, limits.sample_cap, limits.sample_seed)
        if seed_key not in keep:
            keep[-1] = seed_key  # keep the seed without exceeding the cap
        cls.depth_of = {k: d for k, d in cls.depth_of.items() if k in set(keep)}
        cls.truncated = True
        cls.limit_hit = cls.limit_hit or "sample_cap"
    return cls


def subsample(cls: MutationClass, cap: int, rng_seed: int) -> list[bytes]:
    """Deterministic uniform sample without replacement of min(cap, size) keys,
    returned in sorted order."""
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    keys = sorted(cls.depth_of)
    if cap >= len(keys):
        return keys
    rng = random.Random(rng_seed)
    return sorted(rng.sample(keys, cap))


# ---------------------------------------------------------------------------
# Registry of enumerated classes, keyed by (family, n).


@dataclass
class RegistryEntry:
    family: str
    n: int
    classes: list[MutationClass]
    orients: list[int] | None = None  # A-tilde orientation class per MutationClass

    @property
    def truncated(self) -> bool:
        return any(c.truncated for c in self.classes)

    def members(self) -> set[bytes]:
        out: set[bytes] = set()
        for c in self.classes:
            out |= c.depth_of.keys()
        return out

    def depth_of(self) -> dict[bytes, int]:
        out: dict[bytes, int] = {}
        for c in self.classes:
            out.update(c.depth_of)
        return out

    def orient_of(self) -> dict[bytes, int]:
        out: dict[bytes, int] = {}
        if self.orients is None:
            return out
        for c, q in zip(self.classes, self.orients):
            for k in c.depth_of:
                out[k] = q
        return out

    def size(self) -> int:
        return sum(len(c) for c in self.classes)

    def __contains__(self, key: bytes) -> bool:
        return any(key in c for c in self.classes)


@dataclass
class ClassRegistry:
    entries: dict[tuple[str, int], RegistryEntry] = field(default_factory=dict)

    def get(self, family: str, n: int) -> RegistryEntry | None:
        return self.entries.get((family, n))

    def add(self, entry: RegistryEntry) -> None:
        key = (entry.family, entry.n)
        if key in self.entries:
            raise QuiverError(f"registry already has an entry for {key}")
        self.entries[key] = entry

    def lookup(self, key: bytes) -> tuple[str, int] | None:
        """Find the (family, n) whose class contains this canonical key."""
        n = key[0]
        for (fam, m), entry in sorted(self.entries.items()):
            if m == n and key in entry:
                return (fam, m)
        return None

    def save(self, directory: str | os.PathLike) -> None:
        os.makedirs(directory, exist_ok=True)
        for (fam, n), entry in sorted(self.entries.items()):
            path = os.path.join(directory, f"{fam}_{n}.reg")
            with open(path, "w", encoding="ascii") as fh:
                fh.write(REGISTRY_MAGIC + "\n")
                fh.write(f"family {fam}\n")
                fh.write(f"n {n}\n")
                fh.write(f"classes {len(entry.classes)}\n")
                for idx, cls in enumerate(entry.classes):
                    orient = entry.orients[idx] if entry.orients else 0
                    fh.write(
                        f"class {orient} {len(cls)} {1 if cls.truncated else 0} "
                        f"{cls.limit_hit or '-'} {cls.seed_key.hex()}\n"
                    )
                    for key in sorted(cls.depth_of):
                        fh.write(f"{key.hex()} {cls.depth_of[key]}\n")

    @staticmethod
    def load(directory: str | os.PathLike) -> "ClassRegistry":
        reg = ClassRegistry()
        for name in sorted(os.listdir(directory)):
            if not name.endswith(".reg"):
                continue
            with open(os.path.join(directory, name), encoding="ascii") as fh:
                lines = fh.read().splitlines()
            if not lines or lines[0] != REGISTRY_MAGIC:
                raise QuiverError(f"{name}: not a registry file")
            fam = lines[1].split()[1]
            n = int(lines[2].split()[1])
            nclasses = int(lines[3].split()[1])
            pos = 4
            classes: list[MutationClass] = []
            orients: list[int] = []
            for _ in range(nclasses):
                _, orient, count, trunc, limit, seed_hex = lines[pos].split()
                pos += 1
                depth_of: dict[bytes, int] = {}
                for _ in range(int(count)):
                    khex, d = lines[pos].split()
                    depth_of[bytes.fromhex(khex)] = int(d)
                    pos += 1
                classes.append(
                    MutationClass(
                        n=n,
                        seed_key=bytes.fromhex(seed_hex),
                        depth_of=depth_of,
                        truncated=trunc == "1",
                        limit_hit=None if limit == "-" else limit,
                    )
                )
                orients.append(int(orient))
            entry = RegistryEntry(family=fam, n=n, classes=classes)
            if fam == "A-tilde":
                entry.orients = orients
            reg.add(entry)
        return reg


def default_limits(family: str, n: int) -> EnumLimits:
    """The enumeration protocol used for dataset generation: every family is
    enumerated exhaustively except E on 9+ vertices, which is cut at mutation
    depth 8 from the fixed seed orientation.  The 9-vertex diagram is shared
    between E and E-tilde and gets the same depth-8 cut (its full class has
    7560 members; the depth-8 slice has 4376)."""
    if family == "E" and n >= 10:
        return EnumLimits(max_depth=8)
    if family == "E-tilde" and n == 9:
        return EnumLimits(max_depth=8)
    return EnumLimits()


def build_registry(
    n_range: Iterable[int],
    families: Sequence[str],
    *,
    limits: EnumLimits | None = None,
    workers: int = 1,
    e9_label: str = "E-tilde",
) -> ClassRegistry:
    """Enumerate every requested (family, n) into a registry.

    A-tilde entries are the union of the floor(n/2) cycle-orientation classes,
    tagged per class.  The 9-vertex E diagram coincides with the 9-vertex
    E-tilde diagram, so that class is stored once, under `e9_label`.
    """
    reg = ClassRegistry()
    for n in n_range:
        for family in families:
            fam = family
            if family == "E" and n == 9:
                fam = e9_label
            if fam == "E-tilde" and n not in (7, 8, 9):
                continue
            if reg.get(fam, n) is not None:
                continue
            try:
                starts = seeds(fam, n)
            except QuiverError:
                continue
            lim = limits if limits is not None else default_limits(fam, n)
            classes = [enumerate_class(s, lim, workers=workers) for s in starts]
            entry = RegistryEntry(family=fam, n=n, classes=classes)
            if fam == "A-tilde":
                entry.orients = list(range(1, n // 2 + 1))
                seen: set[bytes] = set()
                for cls in classes:
                    overlap = seen & cls.depth_of.keys()
                    if overlap:
                        raise QuiverError(f"A-tilde orientation classes overlap at n={n}")
                    seen |= cls.depth_of.keys()
            reg.add(entry)
    return reg


def class_quivers(entry: RegistryEntry | MutationClass):
    """Iterate canonical representative quivers of an entry or class."""
    keys = entry.depth_of if isinstance(entry, MutationClass) else entry.depth_of()
    for key in sorted(keys):
        yield key_to_quiver(key)
