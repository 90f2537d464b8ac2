"""Command-line front end.

Exit codes: 0 success, 1 theorem mismatch, 2 bad arguments, 3 enumeration
budget exceeded, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from . import circle_cells as cc
from . import degrees
from .complexes import boundary_matrices, homology
from .report import ReportConfig, build_report, render_markdown

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET, EXIT_IO = 0, 1, 2, 3, 4

CACHE_ENV = "EXPCIRCLE_CACHE_DIR"


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "expcircle"


def cache_key(command: str, params: dict) -> str:
    blob = json.dumps({"command": command, "params": params, "version": __version__}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def atomic_write(path: Path, text: str) -> None:
    """Write via a temporary sibling and rename, so readers never see a partial file."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(payload: dict, fmt: str, markdown: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(markdown, end="")


def cmd_homology(args) -> int:
    if args.k < 1:
        print(f"error: --k must be at least 1, got {args.k}", file=sys.stderr)
        return EXIT_USAGE
    groups = homology(boundary_matrices(cc.exp_cell_complex(args.k)))
    n = cc.sphere_dimension(args.k)
    match = groups == cc.sphere_homology(n, length=args.k + 1)
    verdict = "MATCH" if match else "MISMATCH"
    payload = {
        "k": args.k,
        "homology": [g.to_dict() for g in groups],
        "sphere_dimension": n,
        "verdict": verdict,
    }
    md = "\n".join(
        [f"| i | H_i(exp_{args.k}) |", "|---|---|"]
        + [f"| {i} | {g} |" for i, g in enumerate(groups)]
        + ["", f"predicted: S^{n} -- {verdict}", ""]
    )
    _emit(payload, args.format, md)
    return EXIT_OK if match else EXIT_MISMATCH


def cmd_degree(args) -> int:
    if args.k < 1 or args.budget < 1:
        print("error: --k and --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    formula = degrees.degree_formula(args.k, args.d)
    payload = {"k": args.k, "d": args.d, "formula": formula, "oracle": None}
    if args.oracle:
        odd_k = args.k if args.k % 2 else args.k - 1
        try:
            if args.d == -1:
                payload["oracle"] = degrees.degree_oracle_inverse(odd_k)
            elif args.d >= 1:
                payload["oracle"] = degrees.degree_oracle(odd_k, args.d, args.budget)
        except degrees.BudgetExceededError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BUDGET
    agree = payload["oracle"] is None or payload["oracle"] == formula
    md = f"deg exp_{args.k}(z^{args.d}) = {formula}"
    if payload["oracle"] is not None:
        md += f"; oracle {payload['oracle']} ({'MATCH' if agree else 'MISMATCH'})"
    _emit(payload, args.format, md + "\n")
    return EXIT_OK if agree else EXIT_MISMATCH


def cmd_report(args) -> int:
    try:
        config = ReportConfig(args.max_k, Path(args.out) if args.out else None, args.format, args.budget)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cached = None
    entry = cache_dir() / f"{cache_key('report', config.key())}.{config.format}"
    if not args.no_cache and entry.is_file():
        cached = entry.read_text(encoding="utf-8")
    if cached is None:
        report = build_report(config)
        text = json.dumps(report, indent=2, sort_keys=True) + "\n" if config.format == "json" else render_markdown(report)
        if not args.no_cache:
            try:
                atomic_write(entry, text)
            except OSError:
                pass  # the cache is only an optimization
    else:
        text = cached
    if config.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        atomic_write(config.out, text)
    except OSError as exc:
        print(f"error: cannot write {config.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="expcircle", description="Finite subset spaces of the circle.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "md"), default="md")
        p.add_argument("--json", dest="format", action="store_const", const="json")
        p.add_argument("--md", dest="format", action="store_const", const="md")

    p = sub.add_parser("homology", help="integral homology of exp_k(S^1)")
    p.add_argument("--k", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("degree", help="degree of exp_k of z -> z^d")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="also count signed preimages")
    p.add_argument("--budget", type=int, default=degrees.DEFAULT_BUDGET)
    add_format(p)
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("report", help="write the full verification dossier")
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.add_argument("--out", default=None)
    p.add_argument("--budget", type=int, default=10**5)
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
