"""Command-line front end.

Subcommands: classify, convert, hamming, verify, metric, search.  JSON
output (--format json) is the stable machine interface; text output is
human-oriented.  Runs are deterministic: the same invocation with the same
seed produces byte-identical output.

Exit codes: 0 success, 1 invariant failure, 2 input/precondition error,
3 capacity error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .codefile import format_code, read_code
from .errors import CapacityError, NotIsotropicError, ParseError, PreconditionError
from .gf2 import DEFAULT_MAX_ENUM_BITS
from .cliffordrep import DEFAULT_MAX_DENSE_QUBITS
from .qgeometry import ParityClass, classify, extend, puncture, search_self_orthogonal
from .qmetric import (
    filtration,
    gen_full_clifford,
    gen_quantum_hamming,
    gen_semispinorial,
    gen_spinorial,
)
from .stabcode import build_code, build_hamming_subspace, code_report, run_verification

_METRIC_LABELS = ("quantum-hamming", "full-clifford", "spinorial", "semispinorial")


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("ANYONCODEC_SEED")
    return int(env) if env else 0


def _classify_payload(qs) -> dict:
    return {
        "parity_class": qs.parity_class.value,
        "dimension": qs.dimension,
        "even_dimension": qs.even_dimension,
        "odd_coset_rep": None if qs.odd_coset_rep is None else str(qs.odd_coset_rep),
        "witnesses": None,
    }


def _classify_text(qs) -> str:
    if qs.parity_class is ParityClass.ALL_EVEN:
        return f"AllEven, dim {qs.dimension}"
    return (
        f"MixedParity, dim {qs.dimension}, even_dim {qs.even_dimension}, "
        f"u={qs.odd_coset_rep}"
    )


def cmd_classify(args) -> int:
    code = read_code(args.file)
    try:
        qs = classify(code)
    except NotIsotropicError as exc:
        x, y = exc.witness
        payload = {
            "parity_class": None,
            "dimension": code.dimension,
            "even_dimension": None,
            "odd_coset_rep": None,
            "witnesses": [str(x), str(y)],
        }
        _emit(args, payload, [f"not q-isotropic: q({x}, {y}) = 1"])
        return 2
    _emit(args, _classify_payload(qs), [_classify_text(qs)])
    return 0


def cmd_convert(args) -> int:
    code = read_code(args.file)
    if args.direction == "extend":
        out = extend(classify(code))
    else:
        out = puncture(code, args.coordinate).code
    text = format_code(out, header_comment=f"ambient={out.length}")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


def cmd_hamming(args) -> int:
    qs = build_hamming_subspace(args.s)
    sc = build_code(qs)
    report = code_report(sc, max_enum_bits=args.max_enum_bits)
    report["family_parameters"] = f"[[{sc.n},{sc.k}]]_Cl"
    if args.code_out:
        with open(args.code_out, "w", encoding="utf-8") as fh:
            fh.write(format_code(qs.code, header_comment=f"ambient={qs.length}"))
    lines = [
        f"{report['family_parameters']}: modes={sc.modes}, "
        f"stabilizer_dim={qs.dimension}, parity={qs.parity_class.value}",
    ]
    if report["clifford_distance"] is not None:
        lines.append(
            f"clifford_distance={report['clifford_distance']} "
            f"(method={report['distance_method']}, witness={report['logical_minweight_witness']})"
        )
    else:
        lines.append(
            f"clifford_distance>={report['distance_lower_bound']} "
            f"(method={report['distance_method']})"
        )
    census = report["verdict_census"]
    lines.append(
        "census: "
        + ", ".join(f"{name}={census[name]}" for name in sorted(census))
    )
    _emit(args, report, lines)
    return 0


def cmd_verify(args) -> int:
    code = read_code(args.file)
    signs = None
    if args.signs is not None:
        if any(c not in "+-" for c in args.signs) or len(args.signs) != code.dimension:
            raise PreconditionError(
                f"--signs needs {code.dimension} characters over +-, got {args.signs!r}"
            )
        signs = tuple(1 if c == "+" else -1 for c in args.signs)
    results = run_verification(
        code,
        level=args.level,
        signs=signs,
        max_dense_qubits=args.max_dense_qubits,
        seed=_resolve_seed(args),
    )
    payload = {
        "level": args.level,
        "checks": [
            {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
        ],
        "passed": all(r.passed for r in results),
    }
    lines = [
        ("[ok]  " if r.passed else "[FAIL] ") + f"{r.name}: {r.detail}" for r in results
    ]
    lines.append("PASS" if payload["passed"] else "FAIL")
    _emit(args, payload, lines)
    return 0 if payload["passed"] else 1


def cmd_metric(args) -> int:
    if args.label == "quantum-hamming":
        gen = gen_quantum_hamming(args.size)
    elif args.label == "full-clifford":
        gen = gen_full_clifford(args.size)
    elif args.label == "spinorial":
        gen = gen_spinorial(args.size)
    else:
        gen = gen_semispinorial(args.size)
    report = filtration(gen, t_max=args.t_max)
    payload = {
        "label": report.label,
        "dims": list(report.dims),
        "saturation_level": report.saturation_level,
        "ambient_dim": report.ambient_dim,
    }
    sat = (
        f"saturates at level {report.saturation_level}"
        if report.saturation_level is not None
        else "not saturated within the computed levels"
    )
    lines = [
        f"{report.label}: dims " + " ".join(str(d) for d in report.dims) + f" ({sat})",
        f"ambient operator space dimension {report.ambient_dim}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_search(args) -> int:
    seed = _resolve_seed(args)
    found = search_self_orthogonal(args.n, args.d, budget=args.budget, seed=seed)
    if found is None:
        _emit(args, {"found": False, "seed": seed}, ["not found"])
        return 0
    text = format_code(found.code, header_comment=f"ambient={found.length}")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    payload = {"found": True, "seed": seed}
    payload.update(_classify_payload(found))
    lines = [_classify_text(found)]
    if not args.output:
        lines.append(text.rstrip("\n"))
        payload["code_file"] = text
    _emit(args, payload, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument(
        "--seed", type=int, default=None, help="RNG seed (default: $ANYONCODEC_SEED or 0)"
    )
    common.add_argument("--max-enum-bits", type=int, default=DEFAULT_MAX_ENUM_BITS)
    common.add_argument("--max-dense-qubits", type=int, default=DEFAULT_MAX_DENSE_QUBITS)

    parser = argparse.ArgumentParser(
        prog="anyoncodec",
        description="Construct, classify and verify Majorana/Clifford stabilizer codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="parity-classify a subspace file")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("convert", parents=[common], help="extend or puncture a code file")
    p.add_argument("direction", choices=("extend", "puncture"))
    p.add_argument("file")
    p.add_argument("--coordinate", type=int, default=None, help="coordinate to puncture (default: last)")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("hamming", parents=[common], help="build the Hamming-derived code family")
    p.add_argument("s", type=int)
    p.add_argument("--code-out", default=None, help="also write the subspace code file here")
    p.set_defaults(func=cmd_hamming)

    p = sub.add_parser("verify", parents=[common], help="run the invariant checklist on a subspace file")
    p.add_argument("file")
    p.add_argument("--level", choices=("combinatorial", "dense"), default="combinatorial")
    p.add_argument("--signs", default=None, help="per-basis-row signs, e.g. '++-+'")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("metric", parents=[common], help="filtration dimensions for a generating set")
    p.add_argument("label", choices=_METRIC_LABELS)
    p.add_argument("size", type=int, help="qubits (quantum-hamming) or modes (Clifford sets)")
    p.add_argument("--t-max", type=int, default=None)
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("search", parents=[common], help="randomized search for a q-isotropic subspace")
    p.add_argument("n", type=int, help="ambient length of the punctured subspace")
    p.add_argument("d", type=int, help="required dual distance of the extension")
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
