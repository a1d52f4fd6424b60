"""Command-line entry point.

Three commands:

* ``roots {a2,g2}``: root data plus the classification of proper closed
  symmetric subsystems up to Weyl equivalence.
* ``go-check --space SPEC --metric SPEC``: geodesic-orbit feasibility
  sweep; the exit code carries the verdict.
* ``reproduce {aw-classification,g2-einstein}``: end-to-end report with
  a nonzero exit code when any expected verdict fails.

Reports are deterministic: an identical configuration (flags, seed,
environment overrides) produces byte-identical output.  Exit codes:
0 success / geodesic-orbit consistent, 2 usage or malformed input,
3 non-geodesic-orbit certified, 4 indeterminate, 5 reproduction
mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction as Q

from . import rootsys
from .gocheck import Tolerances, go_check
from .liealg import Subspace, build_su2, build_su3
from .metrics import (
    MetricValidationError,
    ModuleDecomposition,
    make_metric,
)
from .spaces import (
    aloff_wallach,
    aw_go_classify,
    aw_metric,
    g2_decomposition,
    g2_metric,
    reproduce_main_theorem,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NON_GO = 3
EXIT_INDETERMINATE = 4
EXIT_MISMATCH = 5


class UsageError(ValueError):
    """Malformed command line, environment override, or spec string."""


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters shared by every command."""

    command: str
    mode: str
    seed: int
    tol_feas: float
    tol_infeas: float
    tol_einstein: float
    output_path: str | None
    format: str

    def __post_init__(self):
        if self.mode not in ("exact", "float", "auto"):
            raise UsageError(f"unknown mode {self.mode!r}")
        if self.format not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {self.format!r}")
        for label, value in (
            ("--tol-feas", self.tol_feas),
            ("--tol-infeas", self.tol_infeas),
            ("--tol-einstein", self.tol_einstein),
        ):
            if not value > 0:
                raise UsageError(f"{label} must be positive, got {value}")
        if not self.tol_feas < self.tol_infeas:
            raise UsageError(
                "--tol-feas must be strictly below --tol-infeas "
                f"({self.tol_feas} >= {self.tol_infeas})"
            )

    @property
    def tolerances(self) -> Tolerances:
        return Tolerances(
            feasible_rel=self.tol_feas, infeasible_rel=self.tol_infeas
        )


# -- spec parsing -----------------------------------------------------------


def parse_metric_spec(spec: str):
    """Comma-separated positive entries: "p/q" fractions stay exact,
    anything with a decimal point or exponent becomes a float.

    Returns (values, any_decimal).
    """
    entries = []
    any_decimal = False
    parts = spec.split(",")
    if not spec.strip() or not all(p.strip() for p in parts):
        raise UsageError(f"malformed metric spec {spec!r}")
    for tok in parts:
        tok = tok.strip()
        try:
            if "/" in tok:
                num, _, den = tok.partition("/")
                value = Q(int(num), int(den))
            else:
                try:
                    value = Q(int(tok))
                except ValueError:
                    value = float(tok)
                    any_decimal = True
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad metric entry {tok!r}: {exc}") from exc
        if not value > 0:
            raise UsageError(f"metric entries must be positive, got {tok!r}")
        entries.append(value)
    return entries, any_decimal


def _su3_group_target():
    # weights fix the basis normalization only; block structure is shared
    alg = build_su3(2, 1)
    blocks = tuple(
        Subspace.from_indices(alg, idx, label=lab)
        for lab, idx in (
            ("axis-z", (0,)),
            ("axis-x0", (1,)),
            ("plane-12", (2, 3)),
            ("plane-13", (4, 5)),
            ("plane-23", (6, 7)),
        )
    )
    return alg, ModuleDecomposition(parent=alg, blocks=blocks, name="su3 blocks")


def _su2_group_target():
    alg = build_su2()
    blocks = tuple(
        Subspace.from_indices(alg, (i,), label=f"axis{i + 1}") for i in range(3)
    )
    return alg, ModuleDecomposition(parent=alg, blocks=blocks, name="su2 axes")


def build_target(space_spec: str, coefficients):
    """Resolve a space spec into (target, metric, n_expected).

    Grammar: "aw:k,l" | "lie:g2" | "lie:su3" | "lie:su2".
    """
    kind, sep, rest = space_spec.partition(":")
    if not sep:
        raise UsageError(f"malformed space spec {space_spec!r}")
    if kind == "aw":
        try:
            k_str, l_str = rest.split(",")
            k, l = int(k_str), int(l_str)
        except ValueError as exc:
            raise UsageError(f"bad weights in {space_spec!r}: {exc}") from exc
        try:
            aw = aloff_wallach(k, l)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if len(coefficients) != 4:
            raise UsageError(
                f"{space_spec!r} needs 4 metric entries, got {len(coefficients)}"
            )
        return aw.space, aw_metric(aw, *coefficients)
    if kind == "lie":
        if rest == "g2":
            dec = g2_decomposition()
            if len(coefficients) != 5:
                raise UsageError(
                    f"{space_spec!r} needs 5 metric entries, got {len(coefficients)}"
                )
            return dec.algebra, g2_metric(*coefficients, decomposition=dec)
        if rest == "su3":
            alg, blocks = _su3_group_target()
            if len(coefficients) != 5:
                raise UsageError(
                    f"{space_spec!r} needs 5 metric entries, got {len(coefficients)}"
                )
            return alg, make_metric(blocks, coefficients)
        if rest == "su2":
            alg, blocks = _su2_group_target()
            if len(coefficients) != 3:
                raise UsageError(
                    f"{space_spec!r} needs 3 metric entries, got {len(coefficients)}"
                )
            return alg, make_metric(blocks, coefficients)
        raise UsageError(f"unknown group {rest!r} in {space_spec!r}")
    raise UsageError(f"unknown space kind {kind!r} in {space_spec!r}")


# -- output -----------------------------------------------------------------


def render_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _csv_line(*fields) -> str:
    return ",".join(str(f) for f in fields)


def emit(text: str, output_path: str | None) -> None:
    """Write the report to stdout, or atomically to output_path."""
    if output_path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(output_path)) or "."
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    except OSError as exc:
        raise UsageError(f"cannot write to {output_path!r}: {exc}") from exc
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, output_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- commands ---------------------------------------------------------------

_ROOT_BUILDERS = {"a2": rootsys.build_a2, "g2": rootsys.build_g2}


def cmd_roots(args, config: RunConfig) -> int:
    builder = _ROOT_BUILDERS.get(args.system)
    if builder is None:
        print(f"unknown root system {args.system!r}; choose a2 or g2", file=sys.stderr)
        return EXIT_USAGE
    rs = builder()
    classes = rootsys.enumerate_closed_symmetric_subsystems(rs)
    doc = rootsys.to_json_dict(rs)
    doc["closed_symmetric_subsystem_classes"] = [
        {"size": len(sub.roots), "roots": sorted(sub.label_set())} for sub in classes
    ]
    if config.format == "json":
        emit(render_json(doc), config.output_path)
    elif config.format == "csv":
        lines = [_csv_line("class", "size", "roots")]
        for i, sub in enumerate(classes):
            lines.append(_csv_line(i, len(sub.roots), "|".join(sorted(sub.label_set()))))
        emit("\n".join(lines) + "\n", config.output_path)
    else:
        lines = [f"{rs.name}: {len(rs.roots)} roots, rank {rs.rank}"]
        lines.append(
            f"proper closed symmetric subsystems up to Weyl equivalence: {len(classes)}"
        )
        for i, sub in enumerate(classes):
            names = ", ".join(sorted(sub.label_set())) or "(empty)"
            lines.append(f"  class {i}: size {len(sub.roots)}: {names}")
        emit("\n".join(lines) + "\n", config.output_path)
    return EXIT_OK


_VERDICT_EXITS = {
    "go-consistent": EXIT_OK,
    "non-go-certified": EXIT_NON_GO,
    "indeterminate": EXIT_INDETERMINATE,
}


def cmd_go_check(args, config: RunConfig) -> int:
    coefficients, any_decimal = parse_metric_spec(args.metric)
    if config.mode == "exact" and any_decimal:
        raise UsageError(
            "exact mode needs rational metric entries (p/q); got a decimal"
        )
    mode = config.mode
    if mode == "auto":
        mode = "float" if any_decimal else "exact"
    if mode == "float":
        coefficients = [float(c) for c in coefficients]
    target, metric = build_target(args.space, coefficients)
    cert = go_check(
        target,
        metric,
        count=args.samples,
        seed=config.seed,
        exact=(mode == "exact"),
        tolerances=config.tolerances,
    )
    doc = cert.to_json_dict()
    if config.format == "json":
        emit(render_json(doc), config.output_path)
    elif config.format == "csv":
        lines = [_csv_line("sample", "status", "residual_rel", "method")]
        for i, entry in enumerate(doc["checks"]):
            residual = entry["residual_rel"]
            lines.append(
                _csv_line(
                    i,
                    entry["status"],
                    "" if residual is None else repr(residual),
                    entry["method"],
                )
            )
        emit("\n".join(lines) + "\n", config.output_path)
    else:
        lines = [
            f"{doc['target']}: {doc['verdict']} "
            f"({len(doc['checks'])} directions, seed {doc['seed']})"
        ]
        for i, entry in enumerate(doc["checks"]):
            residual = entry["residual_rel"]
            shown = "exact" if residual is None else f"{residual:.3e}"
            lines.append(f"  sample {i}: {entry['status']} residual {shown}")
        emit("\n".join(lines) + "\n", config.output_path)
    return _VERDICT_EXITS[cert.verdict]


def _reproduce_aw(config: RunConfig):
    doc = aw_go_classify(2, 1, seed=config.seed, tolerances=config.tolerances)
    expectations = [
        ("non-go-grid-certified", doc["non_go_grid_all_certified"]),
        ("symbolic-go-confirmed", doc["symbolic_go_confirmed"]),
        ("obstruction-probes-consistent", doc["obstruction_probes_consistent"]),
    ]
    return doc, expectations


def _reproduce_g2(config: RunConfig):
    doc = reproduce_main_theorem(
        seed=config.seed,
        einstein_tolerance=config.tol_einstein,
        tolerances=config.tolerances,
    )
    expectations = [(c["name"], c["passed"]) for c in doc["checks"]]
    return doc, expectations


def cmd_reproduce(args, config: RunConfig) -> int:
    runners = {"aw-classification": _reproduce_aw, "g2-einstein": _reproduce_g2}
    runner = runners.get(args.target)
    if runner is None:
        print(
            f"unknown reproduction target {args.target!r}; "
            "choose aw-classification or g2-einstein",
            file=sys.stderr,
        )
        return EXIT_USAGE
    doc, expectations = runner(config)
    if config.format == "json":
        emit(render_json(doc), config.output_path)
    elif config.format == "csv":
        lines = [_csv_line("check", "passed")]
        for name, ok in expectations:
            lines.append(_csv_line(name, str(ok).lower()))
        emit("\n".join(lines) + "\n", config.output_path)
    else:
        lines = [f"{args.target}: {len(expectations)} checks"]
        for name, ok in expectations:
            lines.append(f"  {'PASS' if ok else 'FAIL'}  {name}")
        emit("\n".join(lines) + "\n", config.output_path)
    failing = [name for name, ok in expectations if not ok]
    if failing:
        for name in failing:
            print(f"mismatch: {name}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


# -- argument plumbing ------------------------------------------------------


def _env(name: str, fallback):
    return os.environ.get("GOMETRICS_" + name, fallback)


def _env_float(name: str, fallback: float) -> float:
    raw = _env(name, None)
    if raw is None:
        return fallback
    try:
        return float(raw)
    except ValueError as exc:
        raise UsageError(f"GOMETRICS_{name} must be a number, got {raw!r}") from exc


def _env_int(name: str, fallback: int) -> int:
    raw = _env(name, None)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"GOMETRICS_{name} must be an integer, got {raw!r}") from exc


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--mode",
        choices=("exact", "float"),
        default=_env("MODE", None),
        help="arithmetic mode; default: exact for rational metrics, "
        "float when any entry is a decimal",
    )
    parser.add_argument("--seed", type=int, default=None, help="sampling seed")
    parser.add_argument(
        "--tol-feas", type=float, default=None, help="feasibility residual bound"
    )
    parser.add_argument(
        "--tol-infeas", type=float, default=None, help="infeasibility residual bound"
    )
    parser.add_argument(
        "--tol-einstein", type=float, default=None, help="Einstein deviation bound"
    )
    parser.add_argument(
        "--out", default=None, help="write the report to this file (atomic)"
    )
    parser.add_argument(
        "--format", choices=("json", "csv", "text"), default=None, help="output format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gometrics",
        description="geodesic-orbit certificates for compact homogeneous spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_roots = sub.add_parser("roots", help="root system data and subsystem classes")
    p_roots.add_argument("system", help="a2 or g2")
    _add_common_flags(p_roots)

    p_go = sub.add_parser("go-check", help="geodesic-orbit feasibility sweep")
    p_go.add_argument(
        "--space",
        required=True,
        help='target space: "aw:k,l", "lie:g2", "lie:su3", or "lie:su2"',
    )
    p_go.add_argument(
        "--metric",
        required=True,
        help='comma-separated positive coefficients, rationals ("11/9") or decimals',
    )
    p_go.add_argument(
        "--samples", type=int, default=24, help="number of sampled directions"
    )
    _add_common_flags(p_go)

    p_rep = sub.add_parser("reproduce", help="end-to-end reproduction reports")
    p_rep.add_argument("target", help="aw-classification or g2-einstein")
    _add_common_flags(p_rep)

    return parser


def make_config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        mode=args.mode if args.mode is not None else "auto",
        seed=args.seed if args.seed is not None else _env_int("SEED", 0),
        tol_feas=(
            args.tol_feas if args.tol_feas is not None else _env_float("TOL_FEAS", 1e-9)
        ),
        tol_infeas=(
            args.tol_infeas
            if args.tol_infeas is not None
            else _env_float("TOL_INFEAS", 1e-3)
        ),
        tol_einstein=(
            args.tol_einstein
            if args.tol_einstein is not None
            else _env_float("TOL_EINSTEIN", 1e-5)
        ),
        output_path=args.out if args.out is not None else _env("OUT", None),
        format=args.format if args.format is not None else _env("FORMAT", "json"),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "roots": cmd_roots,
        "go-check": cmd_go_check,
        "reproduce": cmd_reproduce,
    }
    try:
        config = make_config(args)
        return handlers[args.command](args, config)
    except (UsageError, MetricValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
