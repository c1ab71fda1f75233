"""Command-line front end.

One command per process; reports are built once and rendered either as
human-readable text (6 significant digits) or as JSON whose numbers
round-trip at full precision. Exit codes are a stable contract:

  0  success
  1  demo mismatch
  2  parse failure (bad file format, unreadable file)
  3  validation failure (violated invariant)
  4  probe table inconsistent with any quadratic form
  5  infeasible as requested (NotRealizable / NotDecomposable verdicts)
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import density, frame, greechie
from .numerics import DEFAULT_TOL, MatrixFormatError, SymMatrix, eigh, parse_matrix_text

EXIT_OK = 0
EXIT_DEMO_FAIL = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_BAD_PROBES = 4
EXIT_INFEASIBLE = 5

_PROBE_RESIDUAL_LIMIT = 1e-7


@dataclass
class Report:
    """Single source for both output modes, so text and JSON cannot drift."""

    command: str
    inputs: dict[str, object] = field(default_factory=dict)
    verdicts: list[tuple[str, object]] = field(default_factory=list)

    def add(self, name: str, value: object) -> None:
        self.verdicts.append((name, value))


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def render_structured(report: Report) -> str:
    payload = {
        "command": report.command,
        "inputs": _jsonable(report.inputs),
        "verdicts": [
            {"name": name, "value": _jsonable(value)} for name, value in report.verdicts
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def _fmt_scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".6g")
    return str(value)


def _is_matrix(value) -> bool:
    return (
        isinstance(value, (list, np.ndarray))
        and len(value) > 0
        and all(isinstance(row, (list, np.ndarray)) for row in value)
    )


def render_text(report: Report) -> str:
    lines = [f"# {report.command}"]
    for key, value in report.inputs.items():
        lines.append(f"input {key}: {_fmt_scalar(value)}")
    for name, value in report.verdicts:
        value = _jsonable(value)
        if _is_matrix(value):
            lines.append(f"{name}:")
            for row in value:
                lines.append("  " + " ".join(_fmt_scalar(v) for v in row))
        elif isinstance(value, list):
            lines.append(f"{name}:")
            for item in value:
                if isinstance(item, dict):
                    lines.append(
                        "  - " + "  ".join(f"{k}={_fmt_scalar(v)}" for k, v in item.items())
                    )
                else:
                    lines.append(f"  - {_fmt_scalar(item)}")
        elif isinstance(value, dict):
            lines.append(
                f"{name}: " + "  ".join(f"{k}={_fmt_scalar(v)}" for k, v in value.items())
            )
        else:
            lines.append(f"{name}: {_fmt_scalar(value)}")
    return "\n".join(lines) + "\n"


def _polynomial(form: np.ndarray) -> str:
    """Human-readable expansion of x^T A x in variables x1..xn."""
    n = form.shape[0]
    terms: list[tuple[float, str]] = []
    for i in range(n):
        if abs(form[i, i]) > 1e-12:
            terms.append((float(form[i, i]), f"x{i + 1}^2"))
    for i in range(n):
        for j in range(i + 1, n):
            coeff = 2.0 * float(form[i, j])
            if abs(coeff) > 1e-12:
                terms.append((coeff, f"x{i + 1} x{j + 1}"))
    if not terms:
        return "0"
    pieces = []
    for k, (coeff, monomial) in enumerate(terms):
        magnitude = abs(coeff)
        shown = "" if abs(magnitude - 1.0) <= 1e-12 else format(magnitude, ".6g") + " "
        sign = ("-" if coeff < 0 else "") if k == 0 else (" - " if coeff < 0 else " + ")
        pieces.append(f"{sign}{shown}{monomial}")
    return "".join(pieces)


def _read_text(path: Path) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_symmetric(path: Path) -> SymMatrix:
    return SymMatrix(parse_matrix_text(_read_text(path)))


def _append_form_analysis(report: Report, form: SymMatrix, tol: float) -> None:
    """Spectral mixture (when quantum), signature, and classification."""
    f = frame.FrameFunction(form)
    sig = frame.signature(f, tol)
    spectrum = eigh(form)
    try:
        rho = density.DensityOperator(form)
    except (density.TraceNotOne, density.NotPositiveSemidefinite) as exc:
        report.add("quantum", False)
        report.add("not_quantum_reason", str(exc))
        report.add("trace", form.trace())
        report.add("min_eigenvalue", float(spectrum.eigenvalues[-1]))
    else:
        report.add("quantum", True)
        mixture = density.spectral_mixture(rho)
        report.add("mixture_weights", [w for w, _ in mixture])
        report.add("mixture_components", [list(v.components) for _, v in mixture])
    report.add(
        "signature",
        {"positive": sig.positive, "negative": sig.negative, "zero": sig.zero},
    )
    if sig.negative == 0:
        report.add("classification", sig.positive)
    else:
        report.add("classification", None)
        report.add("classification_note", "negative squares present; no positive canonical type")


def _cmd_density_to_frame(args) -> tuple[Report, int]:
    report = Report("density-to-frame", {"path": str(args.path)})
    rho = density.DensityOperator(_load_symmetric(args.path))
    f = frame.from_density(rho)
    report.add("coefficient_matrix", f.form.entries)
    report.add("frame_function", _polynomial(f.form.entries))
    report.add("weight", f.weight)
    return report, EXIT_OK


def _parse_probe_table(text: str) -> tuple[np.ndarray, np.ndarray]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            numbers = [float(p) for p in line.split()]
        except ValueError as exc:
            raise MatrixFormatError(f"probe line {lineno}: {exc}") from None
        if len(numbers) < 2:
            raise MatrixFormatError(
                f"probe line {lineno}: need at least one coordinate and a value"
            )
        rows.append(numbers)
    if not rows:
        raise MatrixFormatError("empty probe table")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise MatrixFormatError("probe lines have inconsistent column counts")
    table = np.array(rows)
    return table[:, :-1], table[:, -1]


def _cmd_reconstruct(args) -> tuple[Report, int]:
    report = Report("reconstruct", {"path": str(args.path)})
    text = _read_text(args.path)
    first = next(
        (ln.split("#", 1)[0].strip() for ln in text.splitlines() if ln.split("#", 1)[0].strip()),
        "",
    )
    if first.startswith("dim"):
        form_in = _load_symmetric(args.path)
        report.inputs["mode"] = "form-matrix"
        oracle = frame.FrameOracle.from_frame_function(frame.FrameFunction(form_in))
        try:
            reconstructed = frame.reconstruct_density(oracle).matrix
        except frame.NotQuantum as exc:
            reconstructed = exc.form
    else:
        probes, values = _parse_probe_table(text)
        report.inputs["mode"] = "probe-table"
        fitted = frame.reconstruct_from_samples(probes, values)
        report.add("residual", fitted.residual)
        report.add("rank_deficient", fitted.rank_deficient)
        if fitted.residual > _PROBE_RESIDUAL_LIMIT:
            raise frame.NotAFrameFunction(
                f"probe table is inconsistent with any quadratic form "
                f"(residual {fitted.residual:.3e})"
            )
        reconstructed = fitted.frame_function.form
    report.add("reconstructed", reconstructed.entries)
    _append_form_analysis(report, reconstructed, args.tol)
    return report, EXIT_OK


def _cmd_signature(args) -> tuple[Report, int]:
    report = Report("signature", {"path": str(args.path)})
    form = _load_symmetric(args.path)
    f = frame.FrameFunction(form)
    sig = frame.signature(f, args.tol)
    report.add(
        "signature",
        {"positive": sig.positive, "negative": sig.negative, "zero": sig.zero},
    )
    report.add("weight", f.weight)
    report.add("classification", sig.positive if sig.negative == 0 else None)
    return report, EXIT_OK


def _violation_payload(violations) -> list[dict]:
    return [
        {"kind": v.kind, "subject": v.subject, "detail": v.detail} for v in violations
    ]


def _cmd_greechie(args) -> tuple[Report, int]:
    report = Report(f"greechie {args.subcommand}", {"path": str(args.path)})
    parsed = greechie.parse_greechie_text(_read_text(args.path))
    diagram = parsed.diagram
    report.inputs["atoms"] = len(diagram.atoms)
    report.inputs["blocks"] = len(diagram.blocks)

    if args.subcommand == "check":
        violations: list[greechie.Violation] = []
        if parsed.realization is not None:
            violations += greechie.check_realization(diagram, parsed.realization, args.tol)
        if parsed.assignment is not None:
            violations += greechie.validate_state(diagram, parsed.assignment, args.tol)
        report.add("valid", not violations)
        report.add("violations", _violation_payload(violations))
        return report, EXIT_OK if not violations else EXIT_VALIDATION

    if args.subcommand == "two-valued":
        states = greechie.enumerate_two_valued_states(diagram)
        report.add("count", len(states))
        report.add("atom_order", list(diagram.atoms))
        report.add("states", ["".join(str(b) for b in s.bits(diagram.atoms)) for s in states])
        return report, EXIT_OK

    if args.subcommand == "decompose":
        if parsed.assignment is None:
            raise MatrixFormatError("file has no prob lines; nothing to decompose")
        result = greechie.convex_decomposition(diagram, parsed.assignment)
        if result is None:
            report.add("decomposable", False)
            return report, EXIT_INFEASIBLE
        report.add("decomposable", True)
        report.add(
            "weights",
            [
                {"weight": w, "state": "".join(str(b) for b in s.bits(diagram.atoms))}
                for w, s in result.entries
            ],
        )
        return report, EXIT_OK

    # feasibility
    if parsed.assignment is None or parsed.realization is None:
        raise MatrixFormatError("feasibility needs both prob and vec lines")
    verdict = greechie.quantum_feasibility(diagram, parsed.realization, parsed.assignment)
    report.add("realizable", verdict.realizable)
    if verdict.realizable:
        report.add("density", verdict.density.matrix.entries)
        return report, EXIT_OK
    cert = verdict.certificate
    report.add("certificate_kind", cert.kind)
    if cert.kernel_rank is not None:
        report.add("kernel_rank", cert.kernel_rank)
    if cert.min_eigenvalue is not None:
        report.add("min_eigenvalue", cert.min_eigenvalue)
    if cert.violations:
        report.add(
            "constraint_violations",
            [
                {"subject": s, "target": t, "achieved": a}
                for s, t, a in cert.violations
            ],
        )
    report.add("explanation", cert.describe())
    return report, EXIT_INFEASIBLE


# --------------------------------------------------------------------------
# demo-paper: run every bundled golden case end to end.


def _default_fixtures() -> Path:
    return Path(str(resources.files(__package__).joinpath("fixtures")))


def _random_unit(rng: np.random.Generator, n: int) -> np.ndarray:
    x = rng.standard_normal(n)
    return x / np.linalg.norm(x)


def _load_fixture_matrix(fixtures: Path, name: str) -> SymMatrix:
    return SymMatrix(parse_matrix_text((fixtures / name).read_text(encoding="utf-8")))


def _load_fixture_greechie(fixtures: Path, name: str) -> greechie.GreechieFile:
    return greechie.parse_greechie_text((fixtures / name).read_text(encoding="utf-8"))


def _case_pure_state(fixtures: Path) -> str | None:
    rho = density.DensityOperator(_load_fixture_matrix(fixtures, "pure_state.mat"))
    f = frame.from_density(rho)
    if float(np.max(np.abs(f.form.entries - np.diag([1.0, 0.0, 0.0])))) > 1e-12:
        return "coefficient matrix is not diag(1,0,0)"
    rendered = _polynomial(f.form.entries)
    if rendered != "x1^2":
        return f"frame function rendered as {rendered!r}"
    return None


_BELL_FIXTURES = {
    "bell_psi_plus.mat": ((0, 3), +1.0),
    "bell_psi_minus.mat": ((0, 3), -1.0),
    "bell_phi_plus.mat": ((1, 2), +1.0),
    "bell_phi_minus.mat": ((1, 2), -1.0),
}


def _case_bell_frames(fixtures: Path) -> str | None:
    rng = np.random.default_rng(7)
    for name, ((i, j), sign) in _BELL_FIXTURES.items():
        rho = density.DensityOperator(_load_fixture_matrix(fixtures, name))
        f = frame.from_density(rho)
        pure = density.purity(rho)
        if not pure.is_pure:
            return f"{name}: not recognized as a pure state"
        for _ in range(200):
            x = _random_unit(rng, 4)
            want = 0.5 * (x[i] + sign * x[j]) ** 2
            if abs(frame.evaluate(f, x) - want) > 1e-12:
                return f"{name}: frame function deviates from the closed form"
    return None


def _case_bell_mixture(fixtures: Path) -> str | None:
    p = 0.25
    rho = density.DensityOperator(_load_fixture_matrix(fixtures, "bell_mixture.mat"))
    expected = np.zeros((4, 4))
    expected[0, 0] = expected[3, 3] = expected[0, 3] = expected[3, 0] = p / 2.0
    expected[1, 1] = expected[2, 2] = expected[1, 2] = expected[2, 1] = (1.0 - p) / 2.0
    if float(np.max(np.abs(rho.matrix.entries - expected))) > 1e-12:
        return "mixture matrix does not match the block form"
    weights = [w for w, _ in density.spectral_mixture(rho)]
    if len(weights) != 2 or abs(weights[0] - (1.0 - p)) > 1e-10 or abs(weights[1] - p) > 1e-10:
        return f"spectral weights {weights} instead of {[1.0 - p, p]}"
    return None


def _case_nonorthogonal_mixture(fixtures: Path) -> str | None:
    a = b = 0.5
    rho = density.DensityOperator(_load_fixture_matrix(fixtures, "nonorthogonal_mixture.mat"))
    f = frame.from_density(rho)
    rng = np.random.default_rng(11)
    for _ in range(200):
        x = _random_unit(rng, 3)
        want = a * x[0] ** 2 + (b / 2.0) * (x[0] + x[1]) ** 2
        if abs(frame.evaluate(f, x) - want) > 1e-12:
            return "frame function deviates from a*x1^2 + (b/2)(x1+x2)^2"
    root = math.sqrt(0.25 - a * b / 2.0)
    weights = [w for w, _ in density.spectral_mixture(rho)]
    if len(weights) != 2 or abs(weights[0] - (0.5 + root)) > 1e-10 or abs(weights[1] - (0.5 - root)) > 1e-10:
        return f"spectral weights {weights} instead of 1/2 +/- sqrt(1/4 - ab/2)"
    return None


def _case_reconstruct_orthogonal(fixtures: Path) -> str | None:
    oracle = frame.FrameOracle(
        evaluator=lambda x: (3.0 * x[0] ** 2 + 2.0 * (x[1] - x[2]) ** 2) / 7.0, dim=3
    )
    rho = frame.reconstruct_density(oracle)
    expected = _load_fixture_matrix(fixtures, "sevenths.mat").entries
    if float(np.max(np.abs(rho.matrix.entries - expected))) > 1e-12:
        return "reconstructed matrix mismatch"
    weights = sorted(w for w, _ in density.spectral_mixture(rho))
    if abs(weights[0] - 3.0 / 7.0) > 1e-12 or abs(weights[1] - 4.0 / 7.0) > 1e-12:
        return f"statistical weights {weights} instead of [3/7, 4/7]"
    return None


def _case_reconstruct_nonorthogonal(fixtures: Path) -> str | None:
    oracle = frame.FrameOracle(
        evaluator=lambda x: (
            4.0 * x[0] ** 2 + 3.0 * (x[0] - x[1]) ** 2 + (x[1] - x[2]) ** 2
        )
        / 12.0,
        dim=3,
    )
    rho = frame.reconstruct_density(oracle)
    expected = _load_fixture_matrix(fixtures, "twelfths.mat").entries
    if float(np.max(np.abs(rho.matrix.entries - expected))) > 1e-12:
        return "reconstructed matrix mismatch"
    f = frame.from_density(rho)
    sig = frame.signature(f)
    if (sig.positive, sig.negative, sig.zero) != (3, 0, 0):
        return f"signature {sig} instead of (3, 0, 0)"
    if frame.classify(f) != 3:
        return "classification is not 3"
    return None


def _case_pentagon_embedding(fixtures: Path) -> str | None:
    parsed = _load_fixture_greechie(fixtures, "pentagon.greechie")
    bad = greechie.check_realization(parsed.diagram, parsed.realization)
    if bad:
        return f"realization violations: {bad[0].detail}"
    bad = greechie.validate_state(parsed.diagram, parsed.assignment)
    if bad:
        return f"state violations: {bad[0].detail}"
    return None


def _case_pentagon_infeasible(fixtures: Path) -> str | None:
    parsed = _load_fixture_greechie(fixtures, "pentagon.greechie")
    verdict = greechie.quantum_feasibility(parsed.diagram, parsed.realization, parsed.assignment)
    if verdict.realizable:
        return "measure reported as quantum-realizable"
    cert = verdict.certificate
    if cert.kind != "kernel-rank" or cert.kernel_rank != 3:
        return f"certificate {cert.kind}/{cert.kernel_rank} instead of kernel-rank/3"
    return None


def _case_pentagon_two_valued(fixtures: Path) -> str | None:
    parsed = _load_fixture_greechie(fixtures, "pentagon.greechie")
    states = greechie.enumerate_two_valued_states(parsed.diagram)
    if len(states) != 11:
        return f"{len(states)} two-valued states instead of 11"
    return None


def _case_pentagon_extremal(fixtures: Path) -> str | None:
    parsed = _load_fixture_greechie(fixtures, "pentagon.greechie")
    if not greechie.is_polytope_vertex(parsed.diagram, parsed.assignment):
        return "measure is not an extreme point"
    if greechie.convex_decomposition(parsed.diagram, parsed.assignment) is not None:
        return "measure decomposed over two-valued states"
    return None


def _case_spin_half_classical(fixtures: Path) -> str | None:
    parsed = _load_fixture_greechie(fixtures, "fig_two_contexts_classical.greechie")
    states = greechie.enumerate_two_valued_states(parsed.diagram)
    if len(states) != 4:
        return f"{len(states)} two-valued states instead of 4"
    verdict = greechie.quantum_feasibility(parsed.diagram, parsed.realization, parsed.assignment)
    if verdict.realizable:
        return "classical 0/1 measure reported as quantum-realizable"
    result = greechie.convex_decomposition(parsed.diagram, parsed.assignment)
    if result is None:
        return "two-valued measure failed to decompose over two-valued states"
    return None


def _case_spin_half_ignorant(fixtures: Path) -> str | None:
    parsed = _load_fixture_greechie(fixtures, "fig_two_contexts_ignorant.greechie")
    verdict = greechie.quantum_feasibility(parsed.diagram, parsed.realization, parsed.assignment)
    if not verdict.realizable:
        return "all-1/2 measure reported as not realizable"
    got = verdict.density.matrix.entries
    if float(np.max(np.abs(got - np.diag([0.5, 0.5])))) > 1e-10:
        return "realizing state is not diag(1/2, 1/2)"
    if greechie.is_polytope_vertex(parsed.diagram, parsed.assignment):
        return "all-1/2 measure reported as extreme"
    if greechie.convex_decomposition(parsed.diagram, parsed.assignment) is None:
        return "all-1/2 measure failed to decompose"
    return None


def _case_three_contexts(fixtures: Path) -> str | None:
    parsed = _load_fixture_greechie(fixtures, "fig_three_contexts_classical.greechie")
    states = greechie.enumerate_two_valued_states(parsed.diagram)
    if len(states) != 8:
        return f"{len(states)} two-valued states instead of 2^3"
    verdict = greechie.quantum_feasibility(parsed.diagram, parsed.realization, parsed.assignment)
    if verdict.realizable:
        return "classical 0/1 measure reported as quantum-realizable"
    return None


DEMO_CASES: tuple[tuple[str, object], ...] = (
    ("pure-state-frame-function", _case_pure_state),
    ("bell-state-frame-functions", _case_bell_frames),
    ("bell-mixture-spectrum", _case_bell_mixture),
    ("nonorthogonal-mixture-spectrum", _case_nonorthogonal_mixture),
    ("reconstruct-orthogonal-example", _case_reconstruct_orthogonal),
    ("reconstruct-nonorthogonal-example", _case_reconstruct_nonorthogonal),
    ("pentagon-embedding", _case_pentagon_embedding),
    ("pentagon-quantum-infeasibility", _case_pentagon_infeasible),
    ("pentagon-two-valued-states", _case_pentagon_two_valued),
    ("pentagon-measure-extremal", _case_pentagon_extremal),
    ("two-contexts-classical-only", _case_spin_half_classical),
    ("two-contexts-most-ignorant", _case_spin_half_ignorant),
    ("three-contexts-enumeration", _case_three_contexts),
)


def _cmd_demo(args) -> tuple[Report, int]:
    report = Report("demo-paper")
    if args.list_cases:
        report.add("cases", [name for name, _ in DEMO_CASES])
        return report, EXIT_OK
    fixtures = args.fixtures if args.fixtures is not None else _default_fixtures()
    report.inputs["fixtures"] = str(fixtures)
    failures = 0
    for name, case in DEMO_CASES:
        try:
            detail = case(fixtures)
        except Exception as exc:  # a broken fixture should fail its case, not the run
            detail = f"{type(exc).__name__}: {exc}"
        if detail is None:
            report.add(name, "PASS")
        else:
            failures += 1
            report.add(name, f"FAIL: {detail}")
    report.add("passed", len(DEMO_CASES) - failures)
    report.add("failed", failures)
    return report, EXIT_OK if failures == 0 else EXIT_DEMO_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        help="text for humans (6 digits), structured JSON at full precision",
    )
    common.add_argument(
        "--tol",
        type=float,
        default=DEFAULT_TOL,
        help="zero threshold for signature/rank/validity decisions",
    )
    parser = argparse.ArgumentParser(
        prog="gleason",
        description=(
            "Convert density operators to frame functions and back, classify "
            "quadratic forms, and analyze probability measures on Greechie diagrams."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "density-to-frame",
        parents=[common],
        help="frame function of a density operator given in matrix format",
    )
    p.add_argument("path", type=Path)
    p.set_defaults(handler=_cmd_density_to_frame)

    for alias in ("reconstruct", "frame-to-density"):
        p = sub.add_parser(
            alias,
            parents=[common],
            help="recover the density operator behind a form matrix or probe table",
        )
        p.add_argument("path", type=Path)
        p.set_defaults(handler=_cmd_reconstruct)

    p = sub.add_parser(
        "signature",
        parents=[common],
        help="inertia signature and canonical type of a form matrix",
    )
    p.add_argument("path", type=Path)
    p.set_defaults(handler=_cmd_signature)

    p = sub.add_parser(
        "greechie",
        parents=[common],
        help="check, enumerate, decompose, or decide quantum feasibility",
    )
    p.add_argument("subcommand", choices=("check", "two-valued", "decompose", "feasibility"))
    p.add_argument("path", type=Path)
    p.set_defaults(handler=_cmd_greechie)

    p = sub.add_parser(
        "demo-paper",
        parents=[common],
        help="run the bundled golden demonstration cases end to end",
    )
    p.add_argument("--list", action="store_true", dest="list_cases", help="list case names only")
    p.add_argument("--fixtures", type=Path, default=None, help="override the fixtures directory")
    p.set_defaults(handler=_cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = args.handler(args)
    except (MatrixFormatError, greechie.GreechieFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except frame.NotAFrameFunction as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PROBES
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if report is not None:
        out = render_structured(report) if args.format == "structured" else render_text(report)
        sys.stdout.write(out)
    return code


def entry_point() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry_point()
