"""Command-line interface.

Subcommands: count, enumerate, gf, terms, recurrence, automaton,
asymptotics, figures, delahaye, verify.  All outputs are deterministic;
timing fields are only added with --timings so identical invocations give
byte-identical output.  Exit codes: 0 success, 1 verification failure,
2 resource/usage errors (the sweep budget can also be set through the
GRIDCUTS_BUDGET environment variable).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import oracle, reference, verify
from .asymptotics import dominant_form, error_profile
from .automaton import (
    Automaton,
    always_rejected_columns,
    build_canonical,
    build_general,
    permutation_similarity_witness,
    to_dot,
    to_json_dict as automaton_json_dict,
    transfer_matrix,
)
from .board import Board, boards_to_svg
from .oracle import BudgetError
from .series import format_bfile, generating_function, recurrence_of, series_terms

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_RESOURCE = 2


@dataclass
class RunConfig:
    """One parsed invocation; validated before any computation starts."""

    command: str
    m: int = 4
    n_values: tuple[int, ...] = ()
    limit: int = 30
    mode: str = "canonical"
    fmt: str = "text"
    budget: int | None = None
    workers: int = 1
    out: str | None = None
    timings: bool = False
    only: tuple[str, ...] | None = None


_FORMATS = {
    "count": {"text", "json"},
    "enumerate": {"text", "json", "ascii", "svg"},
    "gf": {"text", "json"},
    "terms": {"text", "json", "bfile"},
    "recurrence": {"text", "json"},
    "automaton": {"text", "json", "dot"},
    "asymptotics": {"text", "json"},
    "figures": {"text", "json", "ascii", "svg"},
    "delahaye": {"text", "json"},
    "verify": {"text", "json"},
}


def _parse_n_values(value: str) -> tuple[int, ...]:
    text = value.strip()
    matched = re.fullmatch(r"(\d+)-(\d+)", text)
    if matched:
        lo, hi = int(matched.group(1)), int(matched.group(2))
        if hi < lo:
            raise ValueError(f"empty width range {value!r}")
        return tuple(range(lo, hi + 1))
    if re.fullmatch(r"\d+", text):
        return (int(text),)
    raise ValueError(f"bad width {value!r}; use a number or a range like 1-12")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridcuts",
        description="Count and enumerate cuts of an m x n grid into two congruent connected pieces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", dest="fmt", default="text",
                       choices=sorted(_FORMATS[name]))
        p.add_argument("--out", default=None, help="write output to this path")
        return p

    p = add("count", "count boards of the given width(s) by exhaustive sweep")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--n", required=True, help="width, or inclusive range like 1-12")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timings", action="store_true")

    p = add("enumerate", "list every canonical board of one width")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--n", required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)

    p = add("gf", "print the generating function of the chosen machine")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--mode", default="canonical", choices=("canonical", "general"))

    p = add("terms", "series terms of the canonical generating function")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--mode", default="canonical", choices=("canonical", "general"))
    p.add_argument("--limit", type=int, default=30)

    p = add("recurrence", "linear recurrence satisfied by the terms")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--mode", default="canonical", choices=("canonical", "general"))

    p = add("automaton", "build the column machine and report its structure")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--mode", default="canonical", choices=("canonical", "general"))

    p = add("asymptotics", "dominant-pole growth and amplitudes")
    p.add_argument("--limit", type=int, default=30, help="error profile length")

    add("figures", "verify and emit the two reference galleries")

    p = add("delahaye", "closed-form 3 x 2n count next to oracle counts")
    p.add_argument("--n", required=True, help="half-width, 1..6")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)

    p = add("verify", "run the acceptance suite")
    p.add_argument("--only", default=None,
                   help="comma-separated criterion names (default: all)")
    return parser


def parse_config(argv: list[str]) -> RunConfig:
    args = build_parser().parse_args(argv)
    config = RunConfig(command=args.command, fmt=args.fmt, out=args.out)
    if hasattr(args, "m"):
        config.m = args.m
    if hasattr(args, "n"):
        config.n_values = _parse_n_values(args.n)
    if hasattr(args, "limit"):
        config.limit = args.limit
    if hasattr(args, "mode"):
        config.mode = args.mode
    if hasattr(args, "budget"):
        config.budget = args.budget
    if hasattr(args, "workers"):
        config.workers = args.workers
    if hasattr(args, "timings"):
        config.timings = args.timings
    if getattr(args, "only", None):
        config.only = tuple(name.strip() for name in args.only.split(",") if name.strip())
    _validate(config)
    return config


def _validate(config: RunConfig) -> None:
    if config.fmt not in _FORMATS[config.command]:
        raise ValueError(f"format {config.fmt!r} is not valid for {config.command}")
    if config.command in ("count", "enumerate", "delahaye") and not config.n_values:
        raise ValueError("--n is required")
    if any(n < 0 for n in config.n_values):
        raise ValueError("widths must be nonnegative")
    if config.command == "enumerate" and config.m != 4:
        raise ValueError("canonical enumeration is defined for --m 4")
    if config.command in ("terms", "asymptotics") and config.limit < 1:
        raise ValueError("--limit must be at least 1")
    if config.workers < 1:
        raise ValueError("--workers must be at least 1")
    if config.mode == "canonical" and config.m != 4 and config.command in (
        "gf", "terms", "recurrence", "automaton",
    ):
        raise ValueError("the canonical machine is defined for --m 4; use --mode general")


def _machine(config: RunConfig) -> Automaton:
    if config.mode == "canonical":
        return build_canonical(config.m)
    return build_general(config.m)


def _emit(config: RunConfig, text: str) -> None:
    if config.out:
        Path(config.out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(config: RunConfig, data) -> None:
    _emit(config, json.dumps(data, indent=2) + "\n")


# -- commands -----------------------------------------------------------------


def cmd_count(config: RunConfig) -> int:
    reports = [
        oracle.count_report(config.m, n, budget=config.budget, workers=config.workers)
        for n in config.n_values
    ]
    if config.fmt == "json":
        data = [r.to_json_dict(timings=config.timings) for r in reports]
        _emit_json(config, data[0] if len(data) == 1 else data)
    else:
        lines = [
            str(r.canonical) if len(reports) == 1 else f"{r.n} {r.canonical}"
            for r in reports
        ]
        _emit(config, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_enumerate(config: RunConfig) -> int:
    (n,) = config.n_values
    boards = oracle.enumerate_canonical(
        config.m, n, budget=config.budget, workers=config.workers
    )
    if config.fmt == "json":
        _emit_json(config, {
            "m": config.m, "n": n, "count": len(boards),
            "boards": [b.to_json_dict() for b in boards],
        })
    elif not boards:
        _emit(config, "")
    elif config.fmt == "ascii":
        _emit(config, "\n\n".join(b.to_ascii() for b in boards) + "\n")
    elif config.fmt == "svg":
        _emit_svg(config, boards)
    else:
        lines = ["/".join("".join(map(str, row)) for row in b.cells) for b in boards]
        _emit(config, "\n".join(lines) + "\n")
    return EXIT_OK


def _emit_svg(config: RunConfig, boards: list[Board]) -> None:
    if config.out and not config.out.endswith(".svg"):
        directory = Path(config.out)
        directory.mkdir(parents=True, exist_ok=True)
        width = len(str(len(boards) - 1))
        for idx, board in enumerate(boards):
            (directory / f"board_{idx:0{width}d}.svg").write_text(board.to_svg())
    else:
        _emit(config, boards_to_svg(boards))


def cmd_gf(config: RunConfig) -> int:
    gf = generating_function(_machine(config))
    if config.fmt == "json":
        _emit_json(config, gf.to_json_dict())
    else:
        _emit(config, f"numerator:   {gf.numerator}\ndenominator: {gf.denominator}\n")
    return EXIT_OK


def cmd_terms(config: RunConfig) -> int:
    terms = series_terms(generating_function(_machine(config)), config.limit)
    if config.fmt == "json":
        _emit_json(config, terms)
    else:
        # text and b-file agree: "n value" lines, n from 1, newline-terminated
        _emit(config, format_bfile(terms))
    return EXIT_OK


def cmd_recurrence(config: RunConfig) -> int:
    rec = recurrence_of(generating_function(_machine(config)))
    if config.fmt == "json":
        _emit_json(config, rec.to_json_dict())
    else:
        terms = " + ".join(
            f"{-c}*c[n-{i}]" for i, c in enumerate(rec.coefficients[1:], start=1)
        )
        lines = [
            f"order {rec.order}, valid for n >= {rec.valid_from}",
            f"{rec.coefficients[0]}*c[n] = {terms}",
            "initial " + " ".join(f"c{i}={v}" for i, v in enumerate(rec.initial)),
        ]
        _emit(config, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_automaton(config: RunConfig) -> int:
    machine = _machine(config)
    if config.fmt == "dot":
        _emit(config, to_dot(machine))
        return EXIT_OK
    data = automaton_json_dict(machine)
    data["always_rejected_columns"] = [
        {"column": list(col.bits), **facts}
        for col, facts in sorted(
            always_rejected_columns(machine).items(), key=lambda kv: kv[0].encode()
        )
    ]
    if machine.mode == "canonical" and machine.m == 4:
        T = transfer_matrix(machine)
        witness = permutation_similarity_witness(
            T.entries, reference.REFERENCE_TRANSFER_MATRIX
        )
        data["reference_similarity"] = {
            "similar": witness is not None,
            "permutation": witness,
        }
    if config.fmt == "json":
        _emit_json(config, data)
    else:
        lines = [
            f"mode {machine.mode}, m={machine.m}, {len(machine.states)} states, "
            f"{len(machine.transitions)} transitions",
            f"start states: {sorted(machine.start)}",
            f"accept even: {sorted(machine.accept_even)}",
            f"accept odd: {sorted(machine.accept_odd)}",
        ]
        for entry in data["always_rejected_columns"]:
            bits = "".join(map(str, entry["column"]))
            lines.append(
                f"column {bits}: reachable, on accepting paths, never accepting"
            )
        if "reference_similarity" in data:
            sim = data["reference_similarity"]
            lines.append(
                f"reference matrix similarity: {sim['similar']}, permutation {sim['permutation']}"
            )
        _emit(config, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_asymptotics(config: RunConfig) -> int:
    gf = generating_function(build_canonical(4))
    est = dominant_form(gf, amplitude_reference=reference.reference_amplitudes)
    errors = error_profile(gf, est, config.limit)
    if config.fmt == "json":
        _emit_json(config, est.to_json_dict(errors=errors))
    else:
        lines = [
            f"growth      {est.growth:.10f}",
            f"amplitude A {est.amplitude:.6f}",
            f"alternation B {est.alternation:.6f}",
            f"closed-form amplitude check: {est.exact_check}",
            "n  relative error",
        ]
        lines += [f"{n}  {err:.3e}" for n, err in errors]
        _emit(config, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_figures(config: RunConfig) -> int:
    galleries = oracle.regenerate_figures(budget=config.budget)
    boards = galleries["three_by_six"] + galleries["four_by_six"]
    if config.fmt == "json":
        _emit_json(config, {
            "three_by_six": [b.to_json_dict() for b in galleries["three_by_six"]],
            "four_by_six": [b.to_json_dict() for b in galleries["four_by_six"]],
        })
    elif config.fmt == "ascii":
        _emit(config, "\n\n".join(b.to_ascii() for b in boards) + "\n")
    elif config.fmt == "svg":
        _emit_svg(config, boards)
    else:
        lines = ["/".join("".join(map(str, row)) for row in b.cells) for b in boards]
        _emit(config, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_delahaye(config: RunConfig) -> int:
    reports = [
        oracle.delahaye_report(n, budget=config.budget, workers=config.workers)
        for n in config.n_values
    ]
    if config.fmt == "json":
        _emit_json(config, reports[0] if len(reports) == 1 else reports)
    else:
        lines = [
            f"n={r['n']}: formula {r['formula']}, cuts {r['cuts']}, "
            f"orbits {r['orbits']}, canonical {r['canonical']}"
            for r in reports
        ]
        _emit(config, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    results = verify.run(config.only)
    ok = all(r.ok for r in results)
    if config.fmt == "json":
        _emit_json(config, {
            "ok": ok,
            "criteria": [r.to_json_dict() for r in results],
        })
    else:
        lines = []
        for r in results:
            status = "PASS" if r.ok else "FAIL"
            lines.append(f"{status}  {r.name}  ({r.elapsed_s:.2f}s)")
            lines.extend(f"      {msg}" for msg in r.failures)
        lines.append("verification " + ("passed" if ok else "FAILED"))
        _emit(config, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


_COMMANDS = {
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "gf": cmd_gf,
    "terms": cmd_terms,
    "recurrence": cmd_recurrence,
    "automaton": cmd_automaton,
    "asymptotics": cmd_asymptotics,
    "figures": cmd_figures,
    "delahaye": cmd_delahaye,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    try:
        config = parse_config(sys.argv[1:] if argv is None else list(argv))
    except ValueError as exc:
        print(f"gridcuts: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    try:
        return _COMMANDS[config.command](config)
    except BudgetError as exc:
        print(f"gridcuts: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"gridcuts: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except BrokenPipeError:
        # downstream (e.g. `| head`) closed stdout; leave quietly
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
