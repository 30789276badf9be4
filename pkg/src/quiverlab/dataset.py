"""Dataset export: labeled quiver records in line-delimited JSON.

Protocols mirror the data-generation recipe used for the published class
counts: `train` is the exhaustive classes on 7..10 vertices (plus the small
E diagrams and the depth-8 slice of the 10-vertex E class), `test` is the
11-vertex classes, and `sizegen` enumerates 12..20-vertex classes to depth 6
with a deterministic 100k subsample cap per class.

Records are written in sorted canonical-key order, so repeated exports are
byte-identical.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .canonical import key_to_quiver
from .enumeration import ClassRegistry, EnumLimits, build_registry

SIZEGEN_CAP = 100000


@dataclass(frozen=True)
class DatasetRecord:
    n: int
    matrix: list
    label: str
    depth: int
    split: str
    truncated: bool = False

    def to_json(self) -> str:
        obj = {
            "v": 1,
            "n": self.n,
            "matrix": self.matrix,
            "label": self.label,
            "depth": self.depth,
            "split": self.split,
        }
        if self.truncated:
            obj["truncated"] = True
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def pairs_train() -> list[tuple[str, int]]:
    pairs = [(fam, n) for fam in ("A", "D", "A-tilde", "D-tilde") for n in (7, 8, 9, 10)]
    pairs += [("E-tilde", n) for n in (7, 8, 9)]
    pairs += [("E", n) for n in (6, 7, 8, 10)]
    return pairs


def pairs_test() -> list[tuple[str, int]]:
    return [(fam, 11) for fam in ("A", "D", "E", "A-tilde", "D-tilde")]


def pairs_sizegen(sizes) -> list[tuple[str, int]]:
    return [(fam, n) for n in sizes for fam in ("A", "D", "E", "A-tilde", "D-tilde")]


def protocol_pairs(protocol: str, sizes=None) -> list[tuple[str, int]]:
    if protocol == "train":
        return pairs_train()
    if protocol == "test":
        return pairs_test()
    if protocol == "sizegen":
        return pairs_sizegen(sizes or range(12, 21))
    raise ValueError(f"unknown protocol {protocol!r}")


def build_protocol_registry(protocol: str, sizes=None, workers: int = 1) -> ClassRegistry:
    """Enumerate everything a protocol needs, with its enumeration limits."""
    pairs = protocol_pairs(protocol, sizes)
    if protocol == "sizegen":
        reg = ClassRegistry()
        for n in sorted({n for _, n in pairs}):
            fams = [f for f, m in pairs if m == n]
            sub = build_registry([n], fams, limits=EnumLimits(max_depth=6), workers=workers)
            for entry in sub.entries.values():
                reg.add(entry)
        return reg
    reg = ClassRegistry()
    for n in sorted({n for _, n in pairs}):
        fams = [f for f, m in pairs if m == n]
        sub = build_registry([n], fams, workers=workers)
        for entry in sub.entries.values():
            reg.add(entry)
    return reg


def export_dataset(
    registry: ClassRegistry,
    protocol: str,
    out: str | os.PathLike,
    *,
    sizes=None,
    rng_seed: int = 0,
    cap: int = SIZEGEN_CAP,
) -> int:
    """Write one JSON-lines file for the protocol; returns the record count."""
    import random

    pairs = protocol_pairs(protocol, sizes)
    os.makedirs(out, exist_ok=True)
    path = os.path.join(out, f"{protocol}.jsonl")
    count = 0
    with open(path, "w", encoding="ascii") as fh:
        for fam, n in pairs:
            fam_label = fam
            entry = registry.get(fam, n)
            if entry is None and fam == "E" and n == 9:
                entry = registry.get("E-tilde", 9)
                fam_label = "E-tilde"
            if entry is None:
                raise ValueError(f"registry is missing ({fam}, {n}) needed by {protocol}")
            depth_of = entry.depth_of()
            keys = sorted(depth_of)
            if protocol == "sizegen" and len(keys) > cap:
                rng = random.Random(rng_seed)
                keys = sorted(rng.sample(keys, cap))
            for key in keys:
                q = key_to_quiver(key)
                rec = DatasetRecord(
                    n=n,
                    matrix=q.matrix(),
                    label=fam_label,
                    depth=depth_of[key],
                    split=protocol,
                    truncated=entry.truncated,
                )
                fh.write(rec.to_json() + "\n")
                count += 1
    return count
