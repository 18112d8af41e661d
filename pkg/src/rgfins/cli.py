"""Command line entry point.

Exit codes: 0 on success, 1 when the input is well formed but the request
cannot be met (irregular class, illegal word, ...), 2 for malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .automaton import DEFAULT_STATE_CAP, build_dfa, counts_up_to, minimize
from .catalog import Store, default_store_path, sweep_table
from .core import Basis, CayleyPermutation, generate_matching_rgfs, generate_rgfs, is_matching_rgf, is_rgf
from .encoding_h import decode_h, encode_h, format_word_h, parse_word_h
from .encoding_v import decode_v, encode_v, format_word_v, parse_word_v
from .errors import InvalidInput, RgfinsError
from .genfunc import gf_from_dfa
from .regularity import DEFAULT_M_MAX, avoided_by_class, classify, refuting_rgf

GF_TERMS = 12


class UsageError(Exception):
    pass


def _basis(text: str) -> Basis:
    try:
        return Basis(text)
    except InvalidInput as exc:
        raise UsageError(f"bad basis {text!r}: {exc}") from None


def _perm(text: str) -> CayleyPermutation:
    try:
        return CayleyPermutation(text)
    except InvalidInput as exc:
        raise UsageError(f"bad Cayley permutation {text!r}: {exc}") from None


def _sizes(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            sizes = list(range(int(lo), int(hi) + 1))
        else:
            sizes = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad size range {text!r}; use 1..5 or 1,2,3") from None
    if not sizes or min(sizes) < 1:
        raise UsageError("basis sizes must be positive")
    return sizes


def _emit(payload: dict, pretty: bool, lines: Sequence[str] | None = None) -> None:
    if pretty and lines is not None:
        print("\n".join(lines))
    else:
        print(json.dumps(payload, sort_keys=True))


def _encoding(value: str) -> str:
    return "vertical" if value in ("v", "vertical") else "horizontal"


def cmd_classify(args) -> int:
    report = classify(_basis(args.basis), args.encoding, args.mode, args.mmax)
    lines = [f"{report.encoding} ({report.mode}): {report.verdict}"]
    lines += [f"  {fam:8} {w or '-'}" for fam, w in report.witnesses.items()]
    if report.reasons:
        lines.append(f"  reason: {report.reason()}")
    _emit(report.to_dict(), args.pretty, lines)
    return 0


def cmd_count(args) -> int:
    basis = _basis(args.basis)
    if args.max_size < 1:
        raise UsageError("--max-size must be at least 1")
    sizes = range(1, args.max_size + 1)
    if args.method == "brute":
        gen = generate_matching_rgfs if args.mode == "matching" else generate_rgfs
        counts = [sum(1 for _ in gen(n, basis)) for n in sizes]
        encoding = None
    else:
        encoding = _pick_encoding(basis, args.encoding, args.mode, args.mmax)
        d = minimize(build_dfa(basis, encoding, args.mode, args.state_cap, args.mmax))
        counts = counts_up_to(d, args.max_size)[1:]
    payload = {
        "basis": basis.text(),
        "mode": args.mode,
        "method": args.method,
        "encoding": encoding,
        "counts": counts,
    }
    _emit(payload, args.pretty, [f"{n:>4} {c}" for n, c in zip(sizes, counts)])
    return 0


def _pick_encoding(basis: Basis, choice: str, mode: str, m_max: int) -> str:
    if choice != "auto":
        return _encoding(choice)
    if mode == "rgf" and classify(basis, "vertical", mode, m_max).regular:
        return "vertical"
    return "horizontal"


def cmd_genfunc(args) -> int:
    basis = _basis(args.basis)
    d = minimize(build_dfa(basis, args.encoding, args.mode, args.state_cap, args.mmax))
    gf = gf_from_dfa(d)
    series = gf.series(GF_TERMS)
    payload = {
        "basis": basis.text(),
        "encoding": d.encoding,
        "mode": d.mode,
        "gf": gf.pretty(),
        "coefficients": gf.coefficient_text(),
        "series": series,
        "states": d.n_states,
    }
    _emit(payload, args.pretty, [gf.pretty(), gf.coefficient_text(), " ".join(map(str, series))])
    return 0


def cmd_encode(args) -> int:
    perm = _perm(args.perm)
    if args.mode == "rgf" and not is_rgf(perm):
        raise InvalidInput(f"{perm} is not an RGF")
    if args.mode == "matching" and not is_matching_rgf(perm):
        raise InvalidInput(f"{perm} is not a matching RGF")
    if _encoding(args.encoding) == "vertical":
        print(format_word_v(encode_v(perm)))
    else:
        print(format_word_h(encode_h(perm)))
    return 0


def cmd_decode(args) -> int:
    vertical = _encoding(args.encoding) == "vertical"
    try:
        word = parse_word_v(args.word) if vertical else parse_word_h(args.word)
    except InvalidInput as exc:
        raise UsageError(str(exc)) from None
    perm = decode_v(word, args.mode) if vertical else decode_h(word, args.mode)
    print(perm)
    return 0


def cmd_avoided(args) -> int:
    gamma, basis = _perm(args.gamma), _basis(args.basis)
    avoided = avoided_by_class(gamma, basis)
    refuting = None if avoided else refuting_rgf(gamma, basis)
    payload = {
        "gamma": str(gamma),
        "basis": basis.text(),
        "avoided": avoided,
        "refuting_rgf": str(refuting) if refuting else None,
    }
    line = "avoided" if avoided else f"not avoided: {refuting} avoids the basis and contains {gamma}"
    _emit(payload, args.pretty, [line])
    return 0


def cmd_sweep(args) -> int:
    if args.pattern_size < 1:
        raise UsageError("--pattern-size must be positive")
    store = Store(args.store or default_store_path(), lenient=args.lenient)
    table = sweep_table(
        store,
        pattern_size=args.pattern_size,
        basis_sizes=_sizes(args.basis_sizes),
        m_max=args.mmax,
        jobs=args.jobs,
    )
    for err in store.skipped:
        print(f"skipped corrupt record: {err}", file=sys.stderr)
    sys.stdout.write(table.to_text() if args.pretty else table.to_csv())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rgfins", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, encoding=True, modes=("rgf", "matching")):
        if encoding:
            p.add_argument("--encoding", choices=("v", "h", "vertical", "horizontal"), required=True)
        p.add_argument("--mode", choices=modes, default=modes[0])
        p.add_argument("--pretty", action="store_true", help="aligned text instead of JSON")

    p = sub.add_parser("classify", help="decide regularity of an insertion encoding")
    p.add_argument("--basis", required=True)
    common(p)
    p.add_argument("--mmax", type=int, default=DEFAULT_M_MAX)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("count", help="class sizes by brute force or by automaton")
    p.add_argument("--basis", required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--method", choices=("brute", "automaton"), default="automaton")
    p.add_argument("--encoding", choices=("auto", "v", "h", "vertical", "horizontal"), default="auto")
    common(p, encoding=False)
    p.add_argument("--mmax", type=int, default=DEFAULT_M_MAX)
    p.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("genfunc", help="rational generating function of a regular class")
    p.add_argument("--basis", required=True)
    common(p)
    p.add_argument("--mmax", type=int, default=DEFAULT_M_MAX)
    p.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP)
    p.set_defaults(func=cmd_genfunc)

    p = sub.add_parser("encode", help="insertion encoding of a Cayley permutation")
    common(p, modes=("cayley", "rgf", "matching"))
    p.add_argument("perm")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="Cayley permutation of an insertion encoding")
    common(p, modes=("cayley", "rgf", "matching"))
    p.add_argument("word")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("avoided", help="is a pattern avoided by every member of an RGF class")
    p.add_argument("--gamma", required=True)
    p.add_argument("--basis", required=True)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_avoided)

    p = sub.add_parser("sweep", help="tabulate regular classes over all bases of small patterns")
    p.add_argument("--pattern-size", type=int, default=3)
    p.add_argument("--basis-sizes", default="1..5")
    p.add_argument("--store", help="JSONL store (default: $RGFINS_STORE or ./rgfins-catalog.jsonl)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--mmax", type=int, default=DEFAULT_M_MAX)
    p.add_argument("--lenient", action="store_true", help="skip corrupt store lines")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rgfins: error: {exc}", file=sys.stderr)
        return 2
    except RgfinsError as exc:
        print(f"rgfins: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
