import argparse
import logging
import sys
from dataclasses import replace
from datetime import UTC, datetime
from pathlib import Path

from core import (
    NUMERICS,
    Axis,
    CouplingPoint,
    ParitySector,
    SizeDomainError,
    mapper_to_axis,
    momentum_grid,
    setup_logging,
)
from geometry import fidelity_susceptibility, overlap_scan, quantum_geometric_tensor
from oracle import run_cross_check
from quench import (
    EchoInputError,
    QuenchProtocol,
    default_time_grid,
    loschmidt_echo,
    quasiparticle_peak_scan,
    revival_time_bound,
)
from spectrum import classify, gap_location, max_group_velocity, mode_table
from sweep import (
    AxisRange,
    ClassifyConfig,
    Dataset,
    DatasetFormat,
    DatasetIOError,
    EchoConfig,
    FidelityStepConfig,
    GapConfig,
    OverlapConfig,
    PlanError,
    QuantityCode,
    ScanPlan,
    SusceptibilityConfig,
    cross_check_dataset,
    format_dataset,
    mode_table_dataset,
    overlap_scan_dataset,
    point_dataset,
    qgt_dataset,
    read_plan_file,
    revivals_dataset,
    run_scan,
    series_dataset,
    write_dataset,
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FLAGGED = 2

_TRUE = {"1", "true", "yes", "on"}


class UsageError(Exception):
    """Invalid command line or plan file."""


class CliParser(argparse.ArgumentParser):
    """``ArgumentParser`` that exits with status 1 on usage errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def axis_name(value: str) -> Axis:
    try:
        return mapper_to_axis(value.strip().lower())
    except KeyError:
        msg = f"invalid axis '{value}'. Valid options: {{lx, ly, h}}"
        raise argparse.ArgumentTypeError(msg) from None


def axis_range(value: str) -> AxisRange:
    try:
        return AxisRange.parse(value)
    except PlanError as error:
        raise argparse.ArgumentTypeError(str(error).strip()) from None


def timestamp(value: str) -> str:
    """ISO-8601 date and time, naive values are taken as UTC."""
    try:
        moment = datetime.fromisoformat(value.strip())
    except ValueError:
        msg = f"invalid timestamp '{value}'. Expected ISO-8601, e.g. 2024-06-11T00:00:00+00:00"
        raise argparse.ArgumentTypeError(msg) from None
    if moment.tzinfo is None:
        moment = moment.replace(tzinfo=UTC)
    return moment.astimezone(UTC).isoformat(timespec="seconds")


def _common_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--lx", type=float, default=0.0, help="λx coupling.")
    p.add_argument("--ly", type=float, default=0.0, help="λy coupling.")
    p.add_argument("--h", type=float, default=0.0, help="Transverse field.")
    p.add_argument("--N", type=int, default=400, help="Even chain length of the momentum grid.")
    p.add_argument("--sector", type=int, choices=(0, 1), default=0, help="Parity sector q, Q = (-1)^q.")
    p.add_argument("--out", metavar="FILE", default=None, help="Output file, dataset goes to stdout if omitted.")
    p.add_argument("--format", choices=[fmt.value for fmt in DatasetFormat], default=None, help="Dataset format.")
    p.add_argument("--resolution", type=int, default=NUMERICS.GAP_RESOLUTION, help="Momentum search resolution.")
    p.add_argument("--tol", type=float, default=NUMERICS.SURFACE_TOL, help="Critical surface tolerance.")
    p.add_argument("--plan", metavar="FILE", default=None, help="Key-value plan file, keys mirror long flags.")
    p.add_argument("--workers", type=int, default=None, help="Scan workers, default from CLUSTER_XY_WORKERS.")
    p.add_argument(
        "--timestamp",
        type=timestamp,
        default=None,
        help="Metadata timestamp, default from SOURCE_DATE_EPOCH, then the current time.",
    )
    return p


def _quench_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--lx2", type=float, default=0.0, help="Final λx.")
    p.add_argument("--ly2", type=float, default=1.0, help="Final λy.")
    p.add_argument("--h2", type=float, default=0.0, help="Final field.")
    p.add_argument("--t-max", dest="t_max", type=float, default=100.0, help="Last sampled time.")
    p.add_argument("--dt", type=float, default=None, help="Time step, default π/(40 Δ_max).")
    return p


def _scan_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument(
        "--axis",
        type=axis_range,
        action="append",
        default=None,
        metavar="NAME:START:STOP:STEPS",
        help="Swept coupling, give once or twice; the first one is the outer index.",
    )
    p.add_argument("--step", type=float, default=None, help="Coupling increment of fidelity_step.")
    p.add_argument("--step-axis", dest="step_axis", type=axis_name, default=None, help="Axis of the increment.")
    p.add_argument("--direction", type=float, nargs=3, default=None, help="Unit direction of chi_f.")
    p.add_argument("--per-site", dest="per_site", action="store_true", help="Divide chi_f by N.")
    return p


def build_parser() -> tuple[CliParser, dict[str, argparse.ArgumentParser]]:
    p = CliParser(
        prog="cluster-xy",
        description="Closed-form solution, phase diagram and quench dynamics of the Cluster-XY chain.",
        epilog=(
            "Examples:\n"
            + "    main gap --lx 0 --ly 0 --h 0\n"
            + "    main classify --lx -1.5 --ly 0.5 --h 0\n"
            + "    main fidelity-scan --axis lx:-2:2:101 --axis ly:0:2:101 --N 500 --step 0.05\n"
            + "    main quench --ly 0.8 --ly2 1 --N 400 --sector 1 --t-max 120 --out echo.csv\n"
            + "    main oracle-check --N 8\n"
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common, quench, scan = _common_parent(), _quench_parent(), _scan_parent()
    commands = p.add_subparsers(dest="command", required=True, metavar="COMMAND", parser_class=CliParser)

    sub: dict[str, argparse.ArgumentParser] = {}
    sub["spectrum"] = commands.add_parser("spectrum", parents=[common], help="Mode table at a point.")
    sub["gap"] = commands.add_parser("gap", parents=[common], help="Gap and its momentum.")
    sub["classify"] = commands.add_parser("classify", parents=[common], help="Critical surface membership.")
    sub["phase-scan"] = commands.add_parser("phase-scan", parents=[common, scan, quench], help="Scan any quantity.")
    sub["phase-scan"].add_argument(
        "--quantity",
        choices=[code.value for code in QuantityCode],
        default=QuantityCode.CLASSIFY.value,
        help="Scanned quantity.",
    )
    sub["fidelity-scan"] = commands.add_parser("fidelity-scan", parents=[common, scan], help="F(p, p + step).")
    sub["qgt"] = commands.add_parser("qgt", parents=[common], help="Quantum geometric tensor at a point.")
    sub["qgt"].add_argument("--direction", type=float, nargs=3, default=None, help="Also report chi_F along it.")
    sub["overlap-scan"] = commands.add_parser("overlap-scan", parents=[common], help="F and F1 around a center.")
    sub["overlap-scan"].add_argument("--plane", type=axis_name, nargs=2, default=None, help="Two swept axes.")
    sub["overlap-scan"].add_argument("--radius", type=float, default=0.1, help="Half side of the window.")
    sub["overlap-scan"].add_argument("--steps", type=int, default=21, help="Samples per side.")
    sub["quench"] = commands.add_parser("quench", parents=[common, quench], help="Loschmidt echo series.")
    sub["revivals"] = commands.add_parser("revivals", parents=[common, quench], help="Echo revivals.")
    sub["revivals"].add_argument("--peaks", action="store_true", help="Also list quasiparticle peaks.")
    sub["velocity"] = commands.add_parser("velocity", parents=[common], help="Maximal group velocity.")
    sub["oracle-check"] = commands.add_parser("oracle-check", parents=[common], help="Closed forms vs ED.")
    sub["oracle-check"].add_argument("--count", type=int, default=20, help="Random points per sector.")
    sub["oracle-check"].add_argument("--seed", type=int, default=0, help="Sampler seed.")
    sub["oracle-check"].set_defaults(N=8)
    return p, sub


def _plan_value(action: argparse.Action, raw: str) -> object:
    if action.nargs == 0:
        return raw.strip().lower() in _TRUE
    convert = action.type or str
    try:
        if action.nargs is not None and action.nargs != "?":
            values = [convert(part) for part in raw.replace(",", " ").split()]
        else:
            values = convert(raw.strip())
    except (argparse.ArgumentTypeError, ValueError) as error:
        msg = f"invalid plan value for '{action.dest}': {raw!r} ({error})"
        raise UsageError(msg) from error
    if action.choices is not None and values not in action.choices:
        msg = f"invalid plan value for '{action.dest}': {raw!r}, choose from {list(action.choices)}"
        raise UsageError(msg)
    return values


def apply_plan_file(parser: argparse.ArgumentParser, path: str) -> None:
    """Installs the plan file entries as defaults of ``parser``; explicit flags still win."""
    actions = {action.dest: action for action in parser._actions}  # noqa: SLF001
    defaults: dict[str, object] = {}
    for key, raw in read_plan_file(path).items():
        if key in ("axis", "axes"):
            defaults["plan_axes"] = [axis_range(part) for part in raw.split(",") if part.strip()]
            continue
        action = actions.get(key)
        if action is None or key in ("plan", "help"):
            msg = f"unknown plan key '{key}' for '{parser.prog}'"
            raise UsageError(msg)
        defaults[key] = _plan_value(action, raw)
    parser.set_defaults(**defaults)


def parse_args(argv: list[str]) -> argparse.Namespace:
    parser, sub = build_parser()
    args = parser.parse_args(argv)
    if args.plan is not None:
        apply_plan_file(sub[args.command], args.plan)
        args = parser.parse_args(argv)
    return args


def _point(args: argparse.Namespace) -> CouplingPoint:
    return CouplingPoint(args.lx, args.ly, args.h)


def _final(args: argparse.Namespace) -> CouplingPoint:
    return CouplingPoint(args.lx2, args.ly2, args.h2)


def _grid(args: argparse.Namespace):
    return momentum_grid(args.N, ParitySector(args.sector))


def _protocol(args: argparse.Namespace) -> QuenchProtocol:
    return QuenchProtocol(_point(args), _final(args), _grid(args))


def _point_values(args: argparse.Namespace) -> tuple[float, float, float]:
    return args.lx, args.ly, args.h


def _scan_plan(args: argparse.Namespace, code: QuantityCode) -> ScanPlan:
    axes = tuple(args.axis or getattr(args, "plan_axes", None) or ())
    if not axes:
        msg = "a scan needs at least one --axis NAME:START:STOP:STEPS"
        raise UsageError(msg)
    swept = {axis_range.axis for axis_range in axes}
    fixed = {axis: value for axis, value in zip(Axis, _point_values(args), strict=True) if axis not in swept}

    match code:
        case QuantityCode.GAP | QuantityCode.MAX_VELOCITY:
            config = GapConfig(resolution=args.resolution)
        case QuantityCode.CLASSIFY:
            config = ClassifyConfig(tol=args.tol, resolution=args.resolution)
        case QuantityCode.FIDELITY_STEP:
            config = FidelityStepConfig(step=args.step, axis=args.step_axis)
        case QuantityCode.CHI_F:
            config = SusceptibilityConfig(direction=args.direction, per_site=args.per_site)
        case QuantityCode.OVERLAP_F | QuantityCode.OVERLAP_F1:
            config = OverlapConfig()
        case QuantityCode.ECHO | QuantityCode.REVIVALS | QuantityCode.REVIVAL_TIME:
            config = EchoConfig(final=_final(args), t_max=args.t_max, dt=args.dt)
        case _:
            config = None
    return ScanPlan(code, axes, fixed, args.N, ParitySector(args.sector), config)


def _run_spectrum(args: argparse.Namespace) -> Dataset:
    return mode_table_dataset(mode_table(_grid(args), _point(args)))


def _run_gap(args: argparse.Namespace) -> Dataset:
    k_min, value = gap_location(_point(args), args.resolution)
    return point_dataset(("gap", "k_min"), _point_values(args), (max(value, 0.0), k_min), "")


def _run_classify(args: argparse.Namespace) -> Dataset:
    report = classify(_point(args), args.tol, NUMERICS.GAP_TOL, args.resolution)
    values = (report.is_gapless, report.gap_estimate, report.label or None)
    return point_dataset(("is_gapless", "gap", "surfaces"), _point_values(args), values, "")


def _run_phase_scan(args: argparse.Namespace) -> Dataset:
    return run_scan(_scan_plan(args, QuantityCode(args.quantity)), args.workers)


def _run_fidelity_scan(args: argparse.Namespace) -> Dataset:
    return run_scan(_scan_plan(args, QuantityCode.FIDELITY_STEP), args.workers)


def _run_qgt(args: argparse.Namespace) -> Dataset:
    tensor = quantum_geometric_tensor(_point(args), _grid(args))
    extra = {}
    if args.direction is not None:
        extra["chi_F"] = fidelity_susceptibility(_point(args), args.direction, _grid(args))
    return qgt_dataset(tensor, **extra)


def _run_overlap_scan(args: argparse.Namespace) -> Dataset:
    plane = tuple(args.plane) if args.plane else (Axis.LAMBDA_X, Axis.LAMBDA_Y)
    return overlap_scan_dataset(overlap_scan(_point(args), plane, args.radius, args.steps, _grid(args)))


def _run_quench(args: argparse.Namespace) -> Dataset:
    protocol = _protocol(args)
    series = loschmidt_echo(protocol, default_time_grid(protocol, args.t_max, args.dt), workers=args.workers or 1)
    return series_dataset(series, protocol=str(protocol))


def _run_revivals(args: argparse.Namespace) -> Dataset:
    protocol = _protocol(args)
    series = loschmidt_echo(protocol, default_time_grid(protocol, args.t_max, args.dt))
    peaks = quasiparticle_peak_scan(protocol, args.t_max, args.dt) if args.peaks else None
    _, velocity = max_group_velocity(protocol.final, args.resolution)
    extra = {"protocol": str(protocol), "v_max": velocity}
    if velocity > 0:
        extra["revival_time_bound"] = revival_time_bound(args.N, velocity)
    return revivals_dataset(series, peaks, **extra)


def _run_velocity(args: argparse.Namespace) -> Dataset:
    k_star, velocity = max_group_velocity(_point(args), args.resolution)
    bound = revival_time_bound(args.N, velocity) if velocity > 0 else None
    values = (k_star, velocity, bound)
    return point_dataset(("k_star", "v_max", "revival_time_bound"), _point_values(args), values, "")


def _run_oracle_check(args: argparse.Namespace) -> Dataset:
    return cross_check_dataset(run_cross_check(args.N, count=args.count, seed=args.seed))


COMMANDS = {
    "spectrum": _run_spectrum,
    "gap": _run_gap,
    "classify": _run_classify,
    "phase-scan": _run_phase_scan,
    "fidelity-scan": _run_fidelity_scan,
    "qgt": _run_qgt,
    "overlap-scan": _run_overlap_scan,
    "quench": _run_quench,
    "revivals": _run_revivals,
    "velocity": _run_velocity,
    "oracle-check": _run_oracle_check,
}


def _print_config(args: argparse.Namespace) -> None:
    print("# resolved configuration", file=sys.stderr)
    for key, value in sorted(vars(args).items()):
        shown = [str(item) for item in value] if isinstance(value, list) else value
        print(f"#   {key} = {shown}", file=sys.stderr)


def _output_format(args: argparse.Namespace) -> DatasetFormat:
    if args.format is not None:
        return DatasetFormat(args.format)
    if args.out is not None and Path(args.out).suffix.lower() in (".csv", ".json"):
        return DatasetFormat.from_path(args.out)
    return DatasetFormat.CSV


def _exit_code(command: str, dataset: Dataset) -> int:
    if command == "oracle-check":
        return EXIT_OK if dataset.metadata.get("passed") else EXIT_FLAGGED
    if dataset.all_flagged:
        return EXIT_FLAGGED
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    """
    Runs one subcommand.

    :return: 0 on success, 1 on usage errors, 2 when every produced row is flagged or the oracle check fails.
    """
    if argv is None:
        argv = sys.argv[1:]
    setup_logging()
    try:
        args = parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    except (UsageError, PlanError) as error:
        print(f"cluster-xy: error: {error}", file=sys.stderr)
        return EXIT_USAGE

    _print_config(args)
    try:
        dataset = COMMANDS[args.command](args)
    except (UsageError, PlanError, SizeDomainError, EchoInputError, ValueError) as error:
        print(f"cluster-xy: error: {str(error).strip()}", file=sys.stderr)
        return EXIT_USAGE
    if args.timestamp is not None:
        dataset = replace(dataset, metadata={**dataset.metadata, "timestamp": args.timestamp})

    fmt = _output_format(args)
    try:
        if args.out is None:
            sys.stdout.write(format_dataset(dataset, fmt))
        else:
            write_dataset(dataset, fmt, args.out)
    except DatasetIOError as error:
        print(f"cluster-xy: error: {error}", file=sys.stderr)
        return EXIT_USAGE

    code = _exit_code(args.command, dataset)
    log.info("Command finished", extra={"command": args.command, "rows": len(dataset), "exit": code})
    return code


if __name__ == "__main__":
    sys.exit(main())
