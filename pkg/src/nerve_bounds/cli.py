"""Batch command-line front end: ``nerve-bounds <command> ...``.

Exit status is 0 when every asserted check holds, 1 when some check fails and
2 on bad parameters or unreadable input.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .construction import build_four_set_example
from .families import generated_families
from .report import (ParseError, arrangement_report, construct_report, dumps, envelope,
                     family_to_dict, lemmas_report, load_family, save_family, verify_report)
from .svg import render_family


def thread_cap() -> int:
    """Parallelism cap from NERVE_BOUNDS_THREADS (default 1)."""
    raw = os.environ.get("NERVE_BOUNDS_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"NERVE_BOUNDS_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"NERVE_BOUNDS_THREADS must be a positive integer, got {raw!r}")
    return value


def _emit(report: dict, out: Optional[str]) -> None:
    text = dumps(report)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    params = {"n": args.n, "d_max": args.d_max}
    body, _, family = construct_report(args.n, args.d_max)
    if args.svg:
        Path(args.svg).write_text(render_family(family, highlight=0), encoding="utf-8")
    if args.family_out:
        save_family(family, args.family_out)
    _emit(envelope("construct", params, body), args.out)
    return 0 if all(body["checks"].values()) and body["bound_report"]["satisfied"] else 1


def cmd_verify(args) -> int:
    params = {"family": Path(args.family).name, "k": args.k, "b": args.b, "chi": args.chi,
              "strategy": args.strategy}
    family = load_family(args.family)
    body = verify_report(family, args.k, args.b, args.chi, args.strategy)
    _emit(envelope("verify", params, body), args.out)
    return 0 if body["ok"] else 1


def cmd_lemmas(args) -> int:
    params = {"v_max": args.vmax, "budget": args.budget}
    body = lemmas_report(args.vmax, args.budget, args.checkpoint, args.threads)
    _emit(envelope("lemmas", params, body), args.out)
    return 0 if body["ok"] else 1


def cmd_arrangement(args) -> int:
    params = {"lines": Path(args.lines).name, "projective": args.projective}
    text = Path(args.lines).read_text(encoding="utf-8")
    _emit(envelope("arrangement", params, arrangement_report(text, args.projective)), args.out)
    return 0


def cmd_example(args) -> int:
    family = build_four_set_example()
    data = family_to_dict(family)
    if args.out:
        save_family(family, args.out)
    else:
        sys.stdout.write(dumps(data))
    return 0


def cmd_generate(args) -> int:
    """Write ``count`` seeded families passing their hypotheses, plus a manifest."""
    if args.count < 1:
        raise ValueError("count must be positive")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = []
    for i, g in enumerate(generated_families(args.seed, args.count)):
        name = f"family-{i:04d}.json"
        save_family(g.family, str(out_dir / name))
        manifest.append({"file": name, "label": g.label, "k": g.k, "b": g.b})
    report = envelope("generate", {"seed": args.seed, "count": args.count}, {"families": manifest})
    (out_dir / "manifest.json").write_text(dumps(report), encoding="utf-8")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nerve-bounds", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="Build the line-arrangement family of size n and report its nerve")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--d-max", type=int, default=4)
    c.add_argument("--svg")
    c.add_argument("--family-out", help="also write the family file")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="Check hypotheses, bounds and witness-graph identities of a family file")
    v.add_argument("--family", required=True)
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--b", type=int, default=1)
    v.add_argument("--chi", type=int)
    v.add_argument("--strategy", choices=["path", "star"], default="path")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    lm = sub.add_parser("lemmas", help="Run the planar-graph lemma checks on the exhaustive corpus")
    lm.add_argument("--vmax", type=int, required=True)
    lm.add_argument("--budget", type=int, default=200, help="decomposition node budget per (graph, t)")
    lm.add_argument("--checkpoint", help="newline-delimited JSON corpus dump")
    lm.add_argument("--out")
    lm.set_defaults(func=cmd_lemmas)

    a = sub.add_parser("arrangement", help="Census of a line arrangement given as 'a b c' records")
    a.add_argument("--lines", required=True)
    a.add_argument("--projective", action="store_true",
                   help="also send the least triangle-incident line to infinity")
    a.add_argument("--out")
    a.set_defaults(func=cmd_arrangement)

    e = sub.add_parser("example", help="Write the four-set example family")
    e.add_argument("--out")
    e.set_defaults(func=cmd_example)

    g = sub.add_parser("generate", help="Write seeded random families that pass their hypotheses")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--count", type=int, default=20)
    g.add_argument("--out-dir", required=True)
    g.set_defaults(func=cmd_generate)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.threads = thread_cap()
        return args.func(args)
    except (ValueError, ParseError, OSError) as exc:
        print(f"nerve-bounds: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
