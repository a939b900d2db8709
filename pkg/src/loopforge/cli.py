"""Command-line front door.  Every command prints the wrapped operation's JSON.

Exit codes: 0 success, 1 property or verification failure, 2 bad input
(parse errors, wrong loop class), 3 group-enumeration cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .errors import CapExceeded, LoopforgeError
from .group import DEFAULT_CAP, FiniteGroup

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
PROPS = ("loop", "bol", "aip", "bruck", "ar")


@dataclass(frozen=True)
class RunConfig:
    cap: int = DEFAULT_CAP
    bound: int | None = None
    threads: int = 1
    fmt: str = "json"

    def __post_init__(self):
        if self.cap < 1 or (self.bound is not None and self.bound < 1):
            raise ValueError("caps and bounds must be positive")
        if self.threads < 1:
            raise ValueError("thread count must be >= 1")
        if self.fmt not in ("text", "json"):
            raise ValueError(f"unknown output format {self.fmt!r}")


def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            nested = isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v)
            if isinstance(v, dict) or nested:
                lines.append(f"{pad}{k}:")
                lines += _render_text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines += _render_text(v, indent + 1)
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(str(x) for x in v)
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def emit(data: dict, cfg: RunConfig, out=None):
    out = sys.stdout if out is None else out
    if cfg.fmt == "json":
        out.write(json.dumps(data, indent=1) + "\n")
    else:
        out.write("\n".join(_render_text(data)) + "\n")


# -- commands ------------------------------------------------------------------------------

def cmd_check(args, cfg: RunConfig) -> tuple[dict, int]:
    from .loop import aip_counterexample, bol_counterexample, read_loop
    X = read_loop(args.file)
    props = PROPS if "all" in args.props else args.props
    verdicts = {}
    for p in props:
        if p == "loop":
            verdicts[p] = {"holds": True}
        elif p == "bol":
            w = bol_counterexample(X)
            verdicts[p] = {"holds": w is None, "witness": w}
        elif p == "aip":
            w = aip_counterexample(X)
            verdicts[p] = {"holds": w is None, "witness": w}
        elif p == "bruck":
            w = bol_counterexample(X)
            w2 = aip_counterexample(X) if w is None else None
            verdicts[p] = {"holds": w is None and w2 is None, "witness": w or w2}
        elif p == "ar":
            from .structure import is_ar_loop
            verdicts[p] = {"holds": is_ar_loop(X, cfg.cap)}
    for v in verdicts.values():
        if v.get("witness") is not None:
            v["witness"] = list(v["witness"])
    ok = all(v["holds"] for v in verdicts.values())
    return {"file": args.file, "order": X.n, "properties": verdicts}, EXIT_OK if ok else EXIT_FAIL


def cmd_envelope(args, cfg: RunConfig) -> tuple[dict, int]:
    from .folder import envelope
    from .loop import read_loop
    f = envelope(read_loop(args.file), cfg.cap)
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(f.dumps() + "\n")
    return f.to_json(), EXIT_OK


def cmd_decompose(args, cfg: RunConfig) -> tuple[dict, int]:
    from .loop import read_loop
    from .structure import decompose
    return decompose(read_loop(args.file)).to_json(), EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> tuple[dict, int]:
    from .loop import read_loop
    from .structure import corollary4_check, theorem1_verify, theorem2_verify
    X = read_loop(args.file)
    if args.theorem == "1":
        rep = theorem1_verify(X, cfg.cap)
    elif args.theorem == "2":
        rep = theorem2_verify(X)
    else:
        rep = corollary4_check(X, cfg.cap)
    return rep.to_json(), EXIT_OK if rep.passed else EXIT_FAIL


def cmd_glauberman(args, cfg: RunConfig) -> tuple[dict, int]:
    from .bruck import TauAut, glauberman_folder
    with open(args.group, encoding="ascii") as fh:
        L = FiniteGroup.from_json(json.load(fh))
    with open(args.aut, encoding="ascii") as fh:
        t = TauAut.from_json(json.load(fh), L)
    f = glauberman_folder(L, t)
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(f.dumps() + "\n")
    return f.to_json(), EXIT_OK


def cmd_enumerate(args, cfg: RunConfig) -> tuple[dict, int]:
    from .enumerate import EnumerationTask, corpus_write, enumerate_loops
    task = EnumerationTask(args.order, args.klass, iso_mode=args.iso,
                           depth=1 if cfg.threads > 1 else 0, workers=cfg.threads)
    loops = enumerate_loops(task, cfg.bound)
    manifest = corpus_write(loops, args.out, args.klass)
    return manifest, EXIT_OK


COMMANDS = {"check": cmd_check, "envelope": cmd_envelope, "decompose": cmd_decompose,
            "verify": cmd_verify, "glauberman": cmd_glauberman, "enumerate": cmd_enumerate}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="loopforge", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("text", "json"), default="json")
    ap.add_argument("--cap", type=int, default=None, help="group-enumeration cap (env LOOPFORGE_CAP)")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--bound", type=int, default=None, help="override the enumeration order bound")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="test loop properties of a .loop file")
    p.add_argument("file")
    p.add_argument("--props", nargs="+", choices=PROPS + ("all",), default=["all"])

    p = sub.add_parser("envelope", help="enveloping folder of a loop as JSON")
    p.add_argument("file")
    p.add_argument("--out")

    p = sub.add_parser("decompose", help="2 / 2' decomposition of a Bruck loop")
    p.add_argument("file")

    p = sub.add_parser("verify", help="run a structure-theorem verifier")
    p.add_argument("file")
    p.add_argument("--theorem", choices=("1", "2", "c4"), required=True)

    p = sub.add_parser("glauberman", help="Bruck folder of an odd group with an involutory automorphism")
    p.add_argument("--group", required=True)
    p.add_argument("--aut", required=True)
    p.add_argument("--out")

    p = sub.add_parser("enumerate", help="write one .loop file per isomorphism class")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--class", dest="klass", default="loop",
                   choices=("loop", "bol", "bruck", "bol+ar"))
    p.add_argument("--iso", choices=("canonical", "pairwise"), default="canonical")
    p.add_argument("--out", required=True)
    return ap


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    cap = args.cap if args.cap is not None else int(os.environ.get("LOOPFORGE_CAP", DEFAULT_CAP))
    err = sys.stderr
    try:
        cfg = RunConfig(cap=cap, bound=args.bound, threads=args.threads, fmt=args.format)
        data, code = COMMANDS[args.command](args, cfg)
    except CapExceeded as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CAP
    except (LoopforgeError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    emit(data, cfg, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
