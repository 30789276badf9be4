"""quiverlab command line: enumerate | classify | verify | export | serve | mutate."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .canonical import canonical_key
from .classify import classify
from .core import QuiverError, mutate_seq, parse_quiver_text, quiver_to_text
from .dataset import build_protocol_registry, export_dataset, protocol_pairs
from .enumeration import ClassRegistry, EnumLimits, build_registry
from .service import _verdict_payload, serve
from .verify import (
    closure_check,
    mutation_implementation_check,
    oracle_cross_check,
    transition_check,
)


def _load_registry(path: str | None) -> ClassRegistry | None:
    path = path or os.environ.get("QUIVERLAB_REGISTRY")
    if not path:
        return None
    return ClassRegistry.load(path)


def _read_quiver(path: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse_quiver_text(text)


def _parse_sizes(spec: str) -> list[int]:
    out: list[int] = []
    for part in spec.split(","):
        if "-" in part:
            lo, hi = part.split("-")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def cmd_enumerate(args) -> int:
    limits = EnumLimits(max_depth=args.max_depth, max_members=args.max_members)
    use_default = args.max_depth is None and args.max_members is None
    reg = build_registry(
        [args.n], [args.family],
        limits=None if use_default else limits,
        workers=args.workers,
    )
    for (fam, n), entry in sorted(reg.entries.items()):
        line = f"{fam} n={n}: {entry.size()} quivers"
        if entry.orients:
            per = ", ".join(f"q={q}:{len(c)}" for q, c in zip(entry.orients, entry.classes))
            line += f" ({per})"
        if entry.truncated:
            line += " [truncated: " + ",".join(c.limit_hit or "?" for c in entry.classes if c.truncated) + "]"
        print(line)
    if args.out:
        reg.save(args.out)
        print(f"saved to {args.out}")
    return 0


def cmd_classify(args) -> int:
    registry = _load_registry(args.registry)
    for path in args.files:
        q = _read_quiver(path)
        verdict = classify(q, registry)
        payload = _verdict_payload(verdict)
        payload["file"] = path
        if not args.certificate:
            payload.pop("certificate", None)
        print(json.dumps(payload, sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    ns = _parse_sizes(args.n) if args.n else [7]
    ok = True
    for n in ns:
        if args.suite == "mutation":
            report = mutation_implementation_check(args.trials, args.seed)
        else:
            registry = _load_registry(args.registry)
            if registry is None or registry.get("D-tilde", n) is None:
                fams = ["A", "D", "E", "A-tilde", "D-tilde", "E-tilde"]
                registry = build_registry([n], fams, workers=args.workers)
            if args.suite == "oracle":
                for fam in (args.family,) if args.family else ("A", "D", "D-tilde"):
                    report = oracle_cross_check(fam, n, registry)
                    print(report.to_text())
                    ok = ok and report.ok
                continue
            if args.suite == "closure":
                report = closure_check(n, registry)
            else:
                report = transition_check(n, registry)
        print(report.to_text())
        ok = ok and report.ok
        if args.suite == "mutation":
            break
    return 0 if ok else 1


def cmd_export(args) -> int:
    registry = _load_registry(args.registry)
    sizes = _parse_sizes(args.sizes) if args.sizes else None
    needed = protocol_pairs(args.protocol, sizes)
    have = registry is not None and all(
        registry.get(f, n) is not None or (f == "E" and n == 9 and registry.get("E-tilde", 9))
        for f, n in needed
    )
    if not have:
        registry = build_protocol_registry(args.protocol, sizes, workers=args.workers)
    count = export_dataset(
        registry, args.protocol, args.out, sizes=sizes, rng_seed=args.seed, cap=args.cap
    )
    print(f"{count} records -> {os.path.join(args.out, args.protocol + '.jsonl')}")
    return 0


def cmd_serve(args) -> int:
    registry = _load_registry(args.registry)
    print(f"serving on http://{args.host}:{args.port} "
          f"(registry: {'loaded' if registry else 'none'})")
    serve(registry, args.host, args.port, args.static)
    return 0


def cmd_mutate(args) -> int:
    q = _read_quiver(args.file)
    try:
        result = mutate_seq(q, args.at or [])
    except IndexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(quiver_to_text(result))
    if args.key:
        print(canonical_key(result).hex())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quiverlab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("enumerate", help="enumerate a mutation class up to isomorphism")
    pe.add_argument("--family", required=True,
                    choices=["A", "D", "E", "A-tilde", "D-tilde", "E-tilde"])
    pe.add_argument("--n", type=int, required=True)
    pe.add_argument("--max-depth", type=int, default=None)
    pe.add_argument("--max-members", type=int, default=None)
    pe.add_argument("--workers", type=int, default=1)
    pe.add_argument("--out", default=None, help="save the registry entry to this directory")
    pe.set_defaults(fn=cmd_enumerate)

    pc = sub.add_parser("classify", help="classify quiver files (text format)")
    pc.add_argument("--registry", default=None)
    pc.add_argument("--certificate", action="store_true", help="include the witness certificate")
    pc.add_argument("files", nargs="+")
    pc.set_defaults(fn=cmd_classify)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("--suite", required=True, choices=["oracle", "closure", "transitions", "mutation"])
    pv.add_argument("--n", default=None, help="size or size range, e.g. 7 or 7-10")
    pv.add_argument("--family", default=None, help="restrict the oracle suite to one family")
    pv.add_argument("--registry", default=None)
    pv.add_argument("--trials", type=int, default=10000)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--workers", type=int, default=1)
    pv.set_defaults(fn=cmd_verify)

    px = sub.add_parser("export", help="export a labeled dataset")
    px.add_argument("--protocol", required=True, choices=["train", "test", "sizegen"])
    px.add_argument("--out", required=True)
    px.add_argument("--registry", default=None)
    px.add_argument("--sizes", default=None, help="sizegen sizes, e.g. 12-20")
    px.add_argument("--seed", type=int, default=0)
    px.add_argument("--cap", type=int, default=100000)
    px.add_argument("--workers", type=int, default=1)
    px.set_defaults(fn=cmd_export)

    ps = sub.add_parser("serve", help="run the local HTTP service")
    ps.add_argument("--registry", default=None)
    ps.add_argument("--host", default="127.0.0.1")
    ps.add_argument("--port", type=int, default=8787)
    ps.add_argument("--static", default=None, help="serve this directory at / (explorer UI)")
    ps.set_defaults(fn=cmd_serve)

    pm = sub.add_parser("mutate", help="apply a mutation sequence to a quiver file")
    pm.add_argument("--at", type=int, action="append", help="vertex to mutate at (repeatable)")
    pm.add_argument("--key", action="store_true", help="also print the canonical key")
    pm.add_argument("file", help="quiver text file, or - for stdin")
    pm.set_defaults(fn=cmd_mutate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (QuiverError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
