"""Command-line pipeline over the analysis stages.

Six subcommands form a strict chain — each runs everything the previous one
runs and adds one stage on top:

    spectrum    rightmost characteristic root per spatial mode (CSV + report)
    locate      two-parameter search for the steady/oscillatory double point
    normalform  critical eigenvectors and third-order reduced coefficients
    classify    planar unfolding: case label, critical lines, region inventory
    simulate    direct runs started at the predicted patterns (CSV + report)
    validate    simulate plus the aggregate pass/fail scoreboard

Every run writes ``report_<subcommand>.txt`` into the output directory — a
single structured text document that parses back losslessly.  Two runs with
the same configuration produce byte-identical reports except for the
timestamp, which lives in the segregated ``meta`` field.  Plot-ready data
(dispersion curves, mode amplitudes, final fields) is written as plain CSV.

Exit status is nonzero exactly when a diagnosed failure is raised; the
message names the pipeline stage and the module the failure came from.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import math
import os
import re
import sys
from contextlib import contextmanager
from dataclasses import asdict, dataclass

import numpy as np

from .amplitude import (
    classify_degeneracy,
    critical_lines,
    reduce_pitchfork,
    reduce_transcritical,
    region_inventory,
    region_samples,
)
from .basis import inner_product_table
from .eigensystem import normalized_quadruple
from .errors import AnalysisError, ConfigParse, DegenerateCoefficient
from .locator import locate
from .model import ModelSpec, schnakenberg_builtin
from .modelfile import load_model
from .normalform import compute_h, cubic_coefficients
from .report import (
    Report,
    amplitude_summary,
    critical_point_summary,
    eigensystem_summary,
    emit,
    lines_summary,
    model_summary,
    normalform_summary,
    region_summary,
    scoreboard_summary,
)
from .simulator import SimConfig, validate_predictions
from .spectral import char_matrix_context, det_and_derivative, dispersion_scan

__all__ = [
    "RunConfig",
    "resolve_model",
    "classification_body",
    "run",
    "main",
    "STAGES",
]

#: pipeline order; each subcommand includes all stages before it
STAGES = ("spectrum", "locate", "normalform", "classify", "simulate", "validate")

#: radius of the region samples in the canonical unfolding plane
DEFAULT_DISTANCE = 0.01

#: which package module implements each pipeline stage (error provenance)
_STAGE_MODULE = {
    "config": "cli",
    "model": "model",
    "spectrum": "spectral",
    "locate": "locator",
    "eigensystem": "eigensystem",
    "normalform": "normalform",
    "classify": "amplitude",
    "simulate": "simulator",
    "report": "report",
}


# ---------------------------------------------------------------------------
# run configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters of one pipeline run.

    ``model`` is the single model source: either a path to an existing model
    description file or a built-in family name with optional numeric
    arguments, e.g. ``schnakenberg(1, 2, 4)``.  ``guess`` is the optional
    starting point ``(param1, param2, rate)`` for the two-parameter search;
    when absent the model's base parameters plus a scan of the oscillatory
    mode's characteristic determinant supply it.  ``out`` must name a
    directory this process can create files in.
    """

    subcommand: str
    model: str = "schnakenberg"
    k1: int = 1
    k2: int = 0
    guess: tuple | None = None
    tol_root: float = 1e-10
    k_scan: int = 20
    samples_per_region: int = 1
    out: str = "."
    seed: int = 0

    def __post_init__(self):
        if self.subcommand not in STAGES:
            raise ConfigParse(
                f"unknown subcommand {self.subcommand!r}; expected one of {', '.join(STAGES)}"
            )
        if not isinstance(self.model, str) or not self.model.strip():
            raise ConfigParse("exactly one model source is required (name or file path)")
        if self.guess is not None:
            if len(self.guess) != 3:
                raise ConfigParse(
                    "guess must be three numbers: param1,param2,rate"
                )
            object.__setattr__(self, "guess", tuple(float(g) for g in self.guess))
        for label, value in (("k1", self.k1), ("k2", self.k2)):
            if not isinstance(value, int) or value < 0:
                raise ConfigParse(f"{label} must be a nonnegative integer, got {value!r}")
        if not (0.0 < self.tol_root <= 1e-2):
            raise ConfigParse(f"tol-root must lie in (0, 1e-2], got {self.tol_root}")
        if self.k_scan < 1:
            raise ConfigParse(f"k-scan must be at least 1, got {self.k_scan}")
        if self.samples_per_region < 1:
            raise ConfigParse(
                f"samples-per-region must be at least 1, got {self.samples_per_region}"
            )
        if not isinstance(self.seed, int):
            raise ConfigParse(f"seed must be an integer, got {self.seed!r}")
        _check_out_writable(self.out)


def _check_out_writable(out: str) -> None:
    """Reject output locations that cannot receive files.

    The directory itself may not exist yet; the nearest existing ancestor
    must be a writable directory and no non-directory may sit on the path.
    """
    path = os.path.abspath(out)
    probe = path
    while not os.path.exists(probe):
        parent = os.path.dirname(probe)
        if parent == probe:
            break
        probe = parent
    if not os.path.isdir(probe):
        raise ConfigParse(f"output path {out!r} collides with a non-directory: {probe}")
    if not os.access(probe, os.W_OK):
        raise ConfigParse(f"output directory {out!r} is not writable")


# ---------------------------------------------------------------------------
# model resolution
# ---------------------------------------------------------------------------


def _schnakenberg_family(*args: float) -> ModelSpec:
    if len(args) > 5:
        raise ConfigParse(
            "schnakenberg(...) takes at most five numbers: a, b, d, delay, diffusion-ratio"
        )
    defaults = (1.0, 2.0, 4.0, 0.2, 0.002)
    values = tuple(args) + defaults[len(args):]
    return schnakenberg_builtin(*values)


_FAMILIES = {"schnakenberg": _schnakenberg_family}

_NAME_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_-]*)\s*(?:\((.*)\))?\s*$")


def resolve_model(source: str) -> ModelSpec:
    """Turn the single model source string into a model description.

    An existing file path is parsed as a model description file; otherwise
    the string must name a built-in family, optionally with numeric
    arguments in parentheses.  A string that is both an existing file and a
    family name is ambiguous and rejected.
    """
    match = _NAME_RE.match(source)
    named = match is not None and match.group(1).lower() in _FAMILIES
    if os.path.isfile(source):
        if named:
            raise ConfigParse(
                f"model source {source!r} is both an existing file and a built-in "
                "family name; give a qualified path (e.g. ./" + source + ")"
            )
        return load_model(source)
    if named:
        text = match.group(2)
        args = []
        if text is not None and text.strip():
            for token in text.split(","):
                try:
                    args.append(float(token))
                except ValueError:
                    raise ConfigParse(
                        f"bad numeric argument {token.strip()!r} in model source {source!r}"
                    ) from None
        return _FAMILIES[match.group(1).lower()](*args)
    raise ConfigParse(
        f"model source {source!r} is neither an existing file nor a built-in family "
        f"(available: {', '.join(sorted(_FAMILIES))})"
    )


def default_guess(spec: ModelSpec, k2: int) -> tuple:
    """Starting point for the search when none is given.

    Parameters start at the model's base values; the rate starts at the
    frequency minimizing the oscillatory mode's characteristic determinant
    modulus along the imaginary axis (coarse deterministic grid).
    """
    ctx = char_matrix_context(spec, k2, (0.0, 0.0))
    grid = np.linspace(0.05, 25.0, 800)
    mags = [abs(det_and_derivative(ctx, 1j * float(w))[0]) for w in grid]
    best = float(grid[int(np.argmin(mags))])
    return (float(spec.base_params[0]), float(spec.base_params[1]), best)


# ---------------------------------------------------------------------------
# stage plumbing
# ---------------------------------------------------------------------------


class StageError(Exception):
    """A diagnosed failure annotated with the pipeline stage it came from."""

    def __init__(self, stage: str, err: AnalysisError):
        self.stage = stage
        self.err = err
        super().__init__(str(err))

    def describe(self) -> str:
        module = _STAGE_MODULE.get(self.stage, "?")
        return (
            f"error in stage '{self.stage}' (module {module}): "
            f"{type(self.err).__name__}: {self.err}"
        )


@contextmanager
def _stage(name: str):
    try:
        yield
    except AnalysisError as err:
        raise StageError(name, err) from err


def _write_csv(path: str, header: list, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(v) for v in row])


def _csv_cell(value):
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, (np.floating, np.integer)):
        return format(float(value), ".17g")
    return value


def _species_names(spec: ModelSpec) -> list:
    return [f"u{i}" for i in range(spec.num_species)]


def _run_dumper(outdir: str, spec: ModelSpec, written: list):
    """CSV writer invoked once per completed simulation run."""
    names = _species_names(spec)

    def dump(region: str, tag: str, traj) -> None:
        suffix = f"{region}_{tag}" if tag else region
        modes_path = os.path.join(outdir, f"modes_{suffix}.csv")
        n_modes = traj.mode_series.shape[2]
        header = ["time"] + [f"{nm}_mode{k}" for nm in names for k in range(n_modes)]
        rows = (
            [t] + list(traj.mode_series[i].ravel())
            for i, t in enumerate(traj.times)
        )
        _write_csv(modes_path, header, rows)
        final_path = os.path.join(outdir, f"final_{suffix}.csv")
        _write_csv(
            final_path,
            ["x"] + names,
            ([x] + list(traj.final_state[:, j]) for j, x in enumerate(traj.grid)),
        )
        written.extend([modes_path, final_path])

    return dump


def _two_significant(value: float) -> float:
    return float(f"{value:.2g}")


def classification_body(spec: ModelSpec, cp, nf, samples_per_region: int = 1) -> tuple:
    """Classification fragment of the run report; returns (tree, ampsys).

    The quadratic (transcritical-type) kind gets its coefficients, case
    label, and an explanatory note, but no region diagram.  The cubic
    (pitchfork) kind gets the critical lines, a region inventory at sampled
    offsets, and a note pinning down the derived slope of the steady-mode
    criticality line (the raw-parameter direction along which the steady
    mode stays critical), which is recorded to two significant figures so
    reports are comparable against rounded published-style values.
    """
    kind = classify_degeneracy(nf)
    classification = {"kind": kind}
    notes = []
    if kind == "transcritical":
        ampsys = reduce_transcritical(nf)
        classification["amplitude"] = amplitude_summary(ampsys)
        notes.append(
            "quadratic interaction: the planar reduction is a "
            "transcritical-type system outside the classified cubic "
            "unfolding cases, so no region diagram or pattern inventory is "
            "produced; the quadratic coefficients (a..f) and the case label "
            "are reported instead"
        )
    elif kind == "pitchfork":
        ampsys = reduce_pitchfork(nf)
        classification["amplitude"] = amplitude_summary(ampsys)
        lines = critical_lines(ampsys, cp)
        classification["lines"] = lines_summary(lines)
        steady = [ln for ln in lines if ln.eps_condition.startswith("eps2 = 0")]
        if steady and steady[0].slope is not None:
            slope = float(steady[0].slope)
            classification["steady_line_slope"] = slope
            if abs(slope) < 1e-10:
                classification["steady_line_slope_2sf"] = 0.0
                notes.append(
                    "steady-mode criticality line: raw-parameter slope "
                    f"{slope:.17g} is zero to machine precision (the line "
                    "is parameter-axis-aligned at this state)"
                )
            else:
                rounded = _two_significant(slope)
                classification["steady_line_slope_2sf"] = rounded
                notes.append(
                    "steady-mode criticality line: raw-parameter slope "
                    f"{slope:.17g}; at two significant figures this is "
                    f"{rounded:g}"
                )
        time_scale = float((spec.extras or {}).get("time_scale", 1.0))
        layout = region_samples(
            ampsys,
            cp,
            distance=DEFAULT_DISTANCE * time_scale,
            samples_per_region=samples_per_region,
        )
        classification["regions"] = [
            region_summary(region_inventory(ampsys, cp, offset))
            for _, offset in layout
        ]
    else:
        raise DegenerateCoefficient(
            "the computed coefficients fit neither the quadratic "
            "(transcritical) nor the cubic (pitchfork) reduction; no "
            "classification is available"
        )
    classification["notes"] = notes
    return classification, ampsys


# ---------------------------------------------------------------------------
# the pipeline
# ---------------------------------------------------------------------------


def run(config: RunConfig) -> tuple:
    """Execute the configured pipeline; return (report, console lines).

    Writes the report document and any CSV data files into the output
    directory as a side effect.
    """
    with _stage("config"):
        outdir = os.path.abspath(config.out)
        os.makedirs(outdir, exist_ok=True)

    console = []
    body = {
        "pipeline": config.subcommand,
        "config": asdict(config)
        | {"guess": None if config.guess is None else list(config.guess)},
    }
    files = []
    depth = STAGES.index(config.subcommand)

    with _stage("model"):
        spec = resolve_model(config.model)
    body["model"] = model_summary(spec)
    console.append(
        f"model: {spec.name} ({spec.num_species} species, "
        f"domain (0, {spec.domain_length * math.pi:.6g}), lags {tuple(spec.lags)})"
    )

    # --- stage 0: spectrum -------------------------------------------------
    with _stage("spectrum"):
        dispersion = dispersion_scan(spec, (0.0, 0.0), config.k_scan)
    body["dispersion"] = dispersion
    path = os.path.join(outdir, "dispersion.csv")
    _write_csv(
        path,
        ["k", "mu_k", "re_lambda", "im_lambda", "residual"],
        ([r["k"], r["mu_k"], r["re_lambda"], r["im_lambda"], r["residual"]] for r in dispersion),
    )
    files.append(path)
    finite = [r for r in dispersion if math.isfinite(r["re_lambda"])]
    lead = max(finite, key=lambda r: r["re_lambda"]) if finite else None
    console.append(
        f"spectrum: modes 0..{config.k_scan} scanned"
        + (
            f"; rightmost root {lead['re_lambda']:.6g} + {lead['im_lambda']:.6g}i "
            f"at k={lead['k']}"
            if lead
            else ""
        )
    )

    if depth >= 1:
        # --- stage 1: locate -------------------------------------------------
        guess = config.guess
        if guess is None:
            with _stage("locate"):
                guess = default_guess(spec, config.k2)
        with _stage("locate"):
            cp = locate(
                spec,
                config.k1,
                config.k2,
                guess,
                k_scan=config.k_scan,
                tol=config.tol_root,
            )
        body["critical_point"] = critical_point_summary(cp)
        chem = (spec.extras or {}).get("chemistry")
        omega_physical = cp.omega0 / cp.alpha_star[0] if chem else cp.omega0
        body["critical_point"]["omega_physical"] = float(omega_physical)
        console.append(
            "critical point: params = ({:.8g}, {:.8g}), rate = {:.8g} "
            "(physical {:.8g}), modes ({}, {}), iterations {}".format(
                cp.alpha_star[0],
                cp.alpha_star[1],
                cp.omega0,
                omega_physical,
                cp.k1,
                cp.k2,
                cp.iterations,
            )
        )

    if depth >= 2:
        # --- stage 2: normal form ----------------------------------------
        with _stage("eigensystem"):
            eig = normalized_quadruple(spec, cp)
        body["eigensystem"] = eigensystem_summary(eig)
        with _stage("normalform"):
            ipt = inner_product_table(cp.k1, cp.k2, spec.domain_length)
            h = compute_h(spec, cp, eig)
            nf = cubic_coefficients(spec, cp, eig, ipt, h)
        body["normal_form"] = normalform_summary(nf)
        console.append(
            f"normal form: interaction {nf.case_tag}, "
            f"route discrepancy {nf.route_discrepancy:.3g}"
        )

    ampsys = None
    if depth >= 3:
        # --- stage 3: classify ---------------------------------------------
        with _stage("classify"):
            classification, ampsys = classification_body(
                spec, cp, nf, config.samples_per_region
            )
            kind = classification["kind"]
        body["classification"] = classification
        console.append(
            f"classification: {kind}, case {ampsys.unfolding_case}, "
            f"time reversed: {str(ampsys.time_reversed).lower()}"
        )
        if kind == "pitchfork":
            console.append(
                "  regions sampled: "
                + ", ".join(sorted({r["region"] for r in classification["regions"]}))
            )
        else:
            console.append("  no region diagram for the quadratic kind (see report notes)")

    if depth >= 4:
        # --- stage 4/5: simulate, validate ---------------------------------
        if ampsys is None or ampsys.kind != "pitchfork":
            raise StageError(
                "simulate",
                DegenerateCoefficient(
                    "direct-simulation validation needs the cubic (pitchfork) "
                    "reduction with its region predictions"
                ),
            )
        sim = SimConfig(n_points=128, horizon=400.0, seed=config.seed)
        dump = _run_dumper(outdir, spec, files)
        with _stage("simulate"):
            rows = validate_predictions(
                spec,
                cp,
                ampsys,
                samples_per_region=config.samples_per_region,
                distance=DEFAULT_DISTANCE,
                sim=sim,
                on_run=dump,
            )
        body["simulation"] = {
            "distance": DEFAULT_DISTANCE,
            "sim_config": asdict(sim),
            "runs": scoreboard_summary(rows),
        }
        passed = sum(1 for r in rows if r["passed"])
        console.append(
            f"simulation: {passed}/{len(rows)} runs matched the predicted class"
        )

    if depth >= 5:
        body["scoreboard"] = {
            "passed": passed,
            "total": len(rows),
            "all_passed": passed == len(rows),
        }
        console.append(
            f"validation: {'PASS' if passed == len(rows) else 'FAIL'} "
            f"({passed}/{len(rows)})"
        )

    report = Report(
        body=body,
        seed=config.seed,
        meta={"timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat()},
    )
    with _stage("report"):
        report_path = os.path.join(outdir, f"report_{config.subcommand}.txt")
        with open(report_path, "w") as fh:
            fh.write(emit(report))
    files.append(report_path)
    console.append("wrote: " + ", ".join(os.path.relpath(p, os.getcwd()) for p in files))
    return report, console


# ---------------------------------------------------------------------------
# argument parsing and entry point
# ---------------------------------------------------------------------------


def _parse_guess(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            "guess must be three comma-separated numbers: param1,param2,rate"
        )
    try:
        return tuple(float(p) for p in parts)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"bad guess component: {err}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="turinghopf",
        description=(
            "Locate steady/oscillatory double bifurcation points of delayed "
            "reaction-diffusion models on an interval, reduce them to the "
            "planar normal form, classify the unfolding, and validate the "
            "predicted patterns by direct simulation."
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="subcommand")
    descriptions = {
        "spectrum": "scan the rightmost characteristic root of each spatial mode",
        "locate": "find the double bifurcation point (includes spectrum)",
        "normalform": "compute the third-order reduced coefficients (includes locate)",
        "classify": "classify the planar unfolding and its regions (includes normalform)",
        "simulate": "run direct simulations at the region samples (includes classify)",
        "validate": "score the simulations against the predictions (includes simulate)",
    }
    for name in STAGES:
        p = sub.add_parser(name, help=descriptions[name], description=descriptions[name])
        p.add_argument(
            "--model",
            default="schnakenberg",
            help="model source: built-in family name with optional arguments, "
            "e.g. 'schnakenberg(1,2,4)', or a path to a model description file "
            "(default: schnakenberg)",
        )
        p.add_argument("--k1", type=int, default=1, help="steady critical mode (default 1)")
        p.add_argument("--k2", type=int, default=0, help="oscillatory critical mode (default 0)")
        p.add_argument(
            "--guess",
            type=_parse_guess,
            default=None,
            metavar="P1,P2,RATE",
            help="starting point for the two-parameter search "
            "(default: base parameters plus a determinant scan)",
        )
        p.add_argument(
            "--tol-root",
            type=float,
            default=1e-10,
            help="residual tolerance of the critical-point solve (default 1e-10)",
        )
        p.add_argument(
            "--k-scan",
            type=int,
            default=20,
            help="number of spatial modes scanned for spectra and certificates (default 20)",
        )
        p.add_argument(
            "--samples-per-region",
            type=int,
            default=1,
            help="parameter samples drawn in each region (default 1)",
        )
        p.add_argument("--out", default=".", help="output directory (default: current)")
        p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            subcommand=args.subcommand,
            model=args.model,
            k1=args.k1,
            k2=args.k2,
            guess=args.guess,
            tol_root=args.tol_root,
            k_scan=args.k_scan,
            samples_per_region=args.samples_per_region,
            out=args.out,
            seed=args.seed,
        )
        _, console = run(config)
    except StageError as err:
        print(f"turinghopf: {err.describe()}", file=sys.stderr)
        return 2
    except AnalysisError as err:
        print(
            f"turinghopf: error in stage 'config' (module cli): "
            f"{type(err).__name__}: {err}",
            file=sys.stderr,
        )
        return 2
    for line in console:
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
