"""Command-line front end.

Exit status: 0 success, 1 query-level failure (e.g. no compression),
2 usage or configuration error.  Results go to stdout, diagnostics to
stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from .alignment import SearchParams, build_alignments, validate_alignment
from .codec import (Code, alignment_code, complete, decode, encode,
                    recognize)
from .errors import SPError
from .msa import matched_pair_score, msa
from .patterns import KnowledgeBase, Pattern, derive_costs, load_kb
from .render import alignment_dict, candidate_dict, render
from .scoring import relative_probabilities


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(self.format_usage() + f"{self.prog}: error: {message}")


def _shared() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--kb", help="knowledge-base file")
    p.add_argument("--new", help="New pattern as quoted symbols")
    p.add_argument("--new-file", help="file holding a NEW : ... line")
    p.add_argument("--costs", choices=("uniform", "frequency"),
                   default="uniform")
    p.add_argument("--beam", type=int, default=200)
    p.add_argument("--iters", type=int, default=20)
    p.add_argument("--kpair", type=int, default=10)
    p.add_argument("--top", type=int, default=1)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--seed", type=int, default=0,
                   help="reserved; every algorithm is deterministic")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spmodel",
                     description="Multiple-alignment analysis of patterns.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    shared = _shared()
    sub.add_parser("align", parents=[shared],
                   help="rank alignments of New against the KB")
    sub.add_parser("encode", parents=[shared], help="compress New to a code")
    dec = sub.add_parser("decode", parents=[shared],
                         help="expand a code back to contents symbols")
    dec.add_argument("--code", help="code symbols (defaults to --new)")
    sub.add_parser("recognize", parents=[shared],
                   help="best-matching pattern multisets")
    sub.add_parser("complete", parents=[shared],
                   help="infer missing contents symbols")
    m = sub.add_parser("msa", parents=[shared],
                       help="align plain sequences from a file")
    m.add_argument("--file", required=True)
    sub.add_parser("validate", parents=[shared],
                   help="check a KB file (and alignments for --new)")
    return parser


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")


def _params(args) -> SearchParams:
    return SearchParams(args.beam, args.iters, args.kpair, args.exhaustive,
                        args.workers)


def _params_dict(args) -> dict:
    # worker count is left out: output must not depend on it
    return {"beam_width": args.beam, "max_iterations": args.iters,
            "k_pairwise": args.kpair, "exhaustive": args.exhaustive,
            "costs": args.costs, "top": args.top, "seed": args.seed}


def _kb(args) -> KnowledgeBase:
    if not args.kb:
        raise UsageError("--kb is required")
    return load_kb(_read(args.kb))


def _new(args, kb=None) -> Pattern:
    if args.new is not None:
        return Pattern.new(args.new)
    if args.new_file:
        found = load_kb(_read(args.new_file)).new
        if found is None:
            raise UsageError(f"{args.new_file} has no NEW line")
        return found
    if kb is not None and kb.new is not None:
        return kb.new
    raise UsageError("one of --new or --new-file is required")


def _emit(args, out, payload, text_lines):
    if args.json:
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def _cmd_align(args, out, err):
    kb = _kb(args)
    new = _new(args, kb)
    costs = derive_costs(kb, args.costs)
    top = build_alignments(new, kb, costs, _params(args))[:max(1, args.top)]
    probs = relative_probabilities(top)
    payload = {"params": _params_dict(args), "candidates": [
        candidate_dict(c.alignment, c.score, pr,
                       alignment_code(c.alignment).symbols)
        for c, pr in zip(top, probs)]}
    lines = [f"# probabilities are relative to the {len(top)} "
             f"candidate(s) shown"]
    for n, (c, pr) in enumerate(zip(top, probs), start=1):
        lines.append(f"candidate {n}: cd={c.cd:.4f} b_new={c.score.b_new:.4f}"
                     f" b_code={c.score.b_code:.4f} p={pr:.6f}"
                     f" rows={' '.join(c.alignment.pattern_ids) or '-'}")
        lines.extend(render(c.alignment).lines)
        lines.append("")
    baseline_only = len(top[0].alignment.rows) == 1
    if baseline_only:
        lines.append("no compression: only the New-only baseline")
    _emit(args, out, payload, lines)
    return 1 if baseline_only else 0


def _cmd_encode(args, out, err):
    kb = _kb(args)
    new = _new(args, kb)
    costs = derive_costs(kb, args.costs)
    res = encode(new, kb, costs, _params(args))
    payload = {"params": _params_dict(args),
               "code": list(res.code.symbols),
               "source": list(res.code.source),
               "residue": [list(x) for x in res.code.residue],
               "cd": res.score.cd, "b_new": res.score.b_new,
               "b_code": res.score.b_code, "compressed": res.compressed}
    lines = [f"code: {res.code}"]
    if res.code.residue:
        lines.append("residue: " + " ".join(f"{p}:{n}"
                                            for p, n in res.code.residue))
    lines.append(f"cd={res.score.cd:.4f} b_code={res.score.b_code:.4f}")
    if not res.compressed:
        lines.append("no compression achieved")
    _emit(args, out, payload, lines)
    return 0 if res.compressed else 1


def _cmd_decode(args, out, err):
    kb = _kb(args)
    text = args.code if args.code is not None else args.new
    if text is None:
        raise UsageError("--code is required")
    costs = derive_costs(kb, args.costs)
    res = decode(Code(tuple(text.split())), kb, costs, _params(args))
    payload = {"params": _params_dict(args), "symbols": list(res.symbols),
               "ok": res.ok}
    lines = [" ".join(res.symbols)]
    if not res.ok:
        lines.append("code matches nothing")
    _emit(args, out, payload, lines)
    return 0 if res.ok else 1


def _cmd_recognize(args, out, err):
    kb = _kb(args)
    new = _new(args, kb)
    costs = derive_costs(kb, args.costs)
    res = recognize(new, kb, costs, _params(args), top_n=max(1, args.top))
    payload = {"params": _params_dict(args), "results": [
        {"pattern_ids": list(r.pattern_ids), "cd": r.cd,
         "probability": r.probability} for r in res]}
    lines = [f"{' '.join(r.pattern_ids) or '(baseline)'}\tcd={r.cd:.4f}"
             f"\tp={r.probability:.6f}" for r in res]
    _emit(args, out, payload, lines)
    return 0 if any(r.pattern_ids for r in res) else 1


def _cmd_complete(args, out, err):
    kb = _kb(args)
    new = _new(args, kb)
    costs = derive_costs(kb, args.costs)
    res = complete(new, kb, costs, _params(args), top_n=max(1, args.top))
    payload = {"params": _params_dict(args), "results": [
        {"projection": list(c.projection), "inferred": list(c.inferred),
         "cd": c.cd, "probability": c.probability} for c in res]}
    lines = []
    for c in res:
        lines.append(f"cd={c.cd:.4f} p={c.probability:.6f} "
                     f"inferred: {' '.join(c.inferred) or '-'}")
        lines.append("  " + " ".join(c.projection))
    _emit(args, out, payload, lines)
    return 0 if len(res[0].alignment.rows) > 1 else 1


def _cmd_msa(args, out, err):
    kb = load_kb(_read(args.file))
    seqs = ([kb.new] if kb.new is not None else []) + list(kb.patterns)
    costs = derive_costs(KnowledgeBase(tuple(
        Pattern(f"_{n}", p.symbols) for n, p in enumerate(seqs))), args.costs)
    a = msa(seqs, costs, _params(args))
    score = matched_pair_score(a, costs)
    payload = {"params": _params_dict(args), "score": score}
    payload.update(alignment_dict(a))
    _emit(args, out, payload, [f"matched-pair score: {score:.4f}"]
          + list(render(a).lines))
    return 0


def _cmd_validate(args, out, err):
    if not args.kb:
        raise UsageError("--kb is required")
    try:
        kb = load_kb(_read(args.kb))
    except SPError as exc:
        err.write(f"invalid: {exc}\n")
        return 1
    lines = [f"ok: {len(kb)} patterns, {len(kb.alphabet)} symbol names"]
    status = 0
    if args.new is not None or args.new_file or kb.new is not None:
        new = _new(args, kb)
        costs = derive_costs(kb, args.costs)
        for n, c in enumerate(build_alignments(new, kb, costs, _params(args))):
            for v in validate_alignment(c.alignment):
                lines.append(f"candidate {n}: {v}")
                status = 1
        if status == 0:
            lines.append("all alignments valid")
    _emit(args, out, {"ok": status == 0, "report": lines}, lines)
    return status


COMMANDS = {"align": _cmd_align, "encode": _cmd_encode,
            "decode": _cmd_decode, "recognize": _cmd_recognize,
            "complete": _cmd_complete, "msa": _cmd_msa,
            "validate": _cmd_validate}


def run_cli(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            err.write(parser.format_usage())
            return 2
        return COMMANDS[args.command](args, out, err)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 2
    except SPError as exc:
        err.write(f"error: {exc}\n")
        return 2


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
