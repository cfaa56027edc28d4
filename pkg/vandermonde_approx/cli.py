"""
Command-line interface for the Vandermonde approximation toolkit.

Exit codes: 0 success, 2 usage or input error, 3 numerical failure
(including any failed cross-check).
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .components import (
    EXAMPLE_IDS,
    AnalysisEngine,
    ConfigurationManager,
    EventStatus,
    ExampleRunner,
    ReportGenerator,
    SystemLogger,
    get_logger,
    initialize_logger,
)
from .components.analysis_engine import polynomial_reference, reference_log1p, reference_sine
from .components.fixtures import NODE_FIXTURES, PRINTED_TABLES, TAYLOR_DEGREES, fixture, named_nodes
from .components.function_registry import POLY_PREFIX, known_ids, parse_polynomial_id, resolve
from .components.grid import dyadic, to_unit, uniform_partition
from .components.interpolation import (
    degree_probe,
    fit_report,
    parse_inline_nodes,
    read_nodes_csv,
    read_samples_csv,
    write_samples_csv,
)
from .components.vandermonde import ORIENTATIONS, determinant_report
from .errors import (
    ConfigurationError,
    CrossCheckError,
    DimensionMismatchError,
    InputFormatError,
    NodeOrderError,
    SampleError,
    ScalarError,
    SingularMatrixError,
    StudyError,
    UnknownExampleError,
    UnknownFixtureError,
    UnknownFunctionError,
)
from .models import AppConfiguration, NodeVector, ReferenceSeries, RunConfig
from .models.configuration import OUTPUT_FORMATS
from .scalar import Backend

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

USAGE_ERRORS = (
    ConfigurationError,
    InputFormatError,
    NodeOrderError,
    UnknownFunctionError,
    UnknownFixtureError,
    UnknownExampleError,
    ScalarError,
    DimensionMismatchError,
    OSError,
    ValueError,
)
NUMERIC_ERRORS = (SingularMatrixError, StudyError, CrossCheckError, SampleError)

TAYLOR_REFERENCES = {'sine': reference_sine, 'log1p': reference_log1p}

logger = logging.getLogger(__name__)


@dataclass
class CommandContext:
    """Components shared by every command of one invocation."""

    config_manager: ConfigurationManager
    system_logger: SystemLogger
    engine: AnalysisEngine
    generator: ReportGenerator

    @property
    def config(self) -> AppConfiguration:
        return self.config_manager.get_configuration()


def _backend(args: argparse.Namespace, context: CommandContext, exact_legal: bool = True) -> Backend:
    """The --backend flag, else the configured default where exact arithmetic is legal."""
    if args.backend is not None:
        return Backend(args.backend)
    if not exact_legal:
        return Backend.FLOAT
    return context.config.numerics.default_backend


def _run_config(args: argparse.Namespace, context: CommandContext, backend: Backend, **sources) -> RunConfig:
    run = RunConfig(
        subcommand=args.command,
        backend=backend,
        output_format=context.config.output.format,
        tolerance=args.tol,
        probe_count=context.config.analysis.probe_count,
        out_path=Path(args.out) if args.out else None,
        **sources,
    )
    run.validate()
    return run


def _emit(text: str, run: RunConfig) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if run.out_path is not None:
        run.out_path.parent.mkdir(parents=True, exist_ok=True)
        run.out_path.write_text(text)
        logger.info(f"Output written to {run.out_path}")
    else:
        sys.stdout.write(text)


def _read_nodes(args: argparse.Namespace, context: CommandContext) -> Tuple[NodeVector, RunConfig]:
    """Nodes from exactly one of --nodes, --nodes-file and --fixture."""
    inline = getattr(args, "nodes", None)
    nodes_file = getattr(args, "nodes_file", None)
    irrational = args.fixture is not None and fixture(args.fixture).irrational
    backend = _backend(args, context, exact_legal=not irrational)
    run = _run_config(
        args,
        context,
        backend,
        input_path=Path(nodes_file) if nodes_file else None,
        fixture_id=args.fixture,
        inline_nodes=inline,
        fixture_irrational=irrational,
    )
    if run.inline_nodes is not None:
        return parse_inline_nodes(run.inline_nodes, backend), run
    if run.input_path is not None:
        with open(run.input_path, newline='') as stream:
            return read_nodes_csv(stream, backend), run
    if run.fixture_id is not None:
        return named_nodes(run.fixture_id, backend), run
    raise ConfigurationError(f"'{args.command}' needs --nodes, --nodes-file or --fixture")


def det_command(args: argparse.Namespace, context: CommandContext) -> int:
    """Determinant by the product formula, by elimination and inductively."""
    nodes, run = _read_nodes(args, context)
    report = determinant_report(nodes, args.orientation)
    context.system_logger.log_determinant(len(nodes), args.orientation, report.agree)
    _emit(context.generator.render(report, run.output_format), run)
    return EXIT_OK if report.agree else EXIT_NUMERIC


def fit_command(args: argparse.Namespace, context: CommandContext) -> int:
    """Interpolating polynomial of an x,y sample file."""
    backend = _backend(args, context)
    run = _run_config(args, context, backend, input_path=Path(args.samples))
    if args.samples == "-":
        samples = read_samples_csv(sys.stdin, backend)
    else:
        with open(run.input_path, newline='') as stream:
            samples = read_samples_csv(stream, backend)
    if args.degree is not None and len(samples) != args.degree + 1:
        raise ConfigurationError(
            f"Degree {args.degree} needs {args.degree + 1} samples, got {len(samples)}"
        )

    numerics = context.config.numerics
    report = fit_report(
        samples,
        zero_tolerance=numerics.float_zero_tolerance,
        residual_tolerance=numerics.float_residual_tolerance,
        exact_order_limit=numerics.exact_order_limit,
    )
    context.system_logger.log_fit(
        EventStatus.of(report.node_exact),
        backend.value,
        len(samples),
        effective_degree=report.degree.effective_degree,
        residual_norm=report.residual_norm,
    )
    context.system_logger.log_cross_check("node exactness", report.node_exact)
    _emit(context.generator.render(report, run.output_format), run)
    return EXIT_OK if report.node_exact else EXIT_NUMERIC


def converge_command(args: argparse.Namespace, context: CommandContext) -> int:
    """Sup-norm errors of fits on nested dyadic grids of [0, 1]."""
    spec = resolve(args.function)
    if args.backend == Backend.EXACT.value and not spec.exact_capable:
        raise ConfigurationError(f"'{spec.function_id}' has irrational values; use --backend float")
    backend = _backend(args, context, exact_legal=spec.exact_capable)
    run = _run_config(args, context, backend, function_id=spec.function_id)

    unit_function = to_unit(spec.domain(backend), spec.handle)
    report = context.engine.convergence_study(
        unit_function,
        args.n0,
        args.max_level,
        probe_count=run.probe_count,
        backend=backend,
        function_id=spec.function_id,
    )
    if args.plot_dir:
        context.generator.write_plot_data(Path(args.plot_dir), unit_function, report)
    if len(report.records) > 1 and report.is_increasing():
        logger.warning(f"Sup errors of {spec.function_id} grow on every refinement level")
    _emit(context.generator.render(report, run.output_format), run)
    failed = report.failed_levels()
    if failed:
        logger.error(f"Fits at levels {failed} do not reproduce their samples")
        return EXIT_NUMERIC
    return EXIT_OK


def _taylor_reference(function_id: str) -> ReferenceSeries:
    """The series a Taylor study compares against; a poly: id is its own series."""
    if function_id in TAYLOR_REFERENCES:
        return TAYLOR_REFERENCES[function_id]()
    if function_id.startswith(POLY_PREFIX):
        return polynomial_reference(function_id, parse_polynomial_id(function_id))
    raise UnknownFunctionError(function_id, tuple(TAYLOR_REFERENCES) + (f"{POLY_PREFIX}c_n,...,c_0",))


def taylor_command(args: argparse.Namespace, context: CommandContext) -> int:
    """Fitted coefficients on uniform partitions against a Taylor series."""
    reference = _taylor_reference(args.function)
    spec = resolve(args.function)
    if args.backend == Backend.EXACT.value and not spec.exact_capable:
        raise ConfigurationError(f"The {args.function} study runs on the float backend")
    backend = _backend(args, context, exact_legal=spec.exact_capable)
    run = _run_config(args, context, backend, function_id=spec.function_id)
    degrees = _parse_degrees(args.degrees) if args.degrees else list(context.config.analysis.taylor_degrees)

    comparison = context.engine.taylor_estimates(
        spec.handle, spec.interval, degrees, reference, spec.function_id, backend
    )
    passed = True
    if spec.function_id in PRINTED_TABLES and set(TAYLOR_DEGREES) <= set(degrees):
        passed = context.engine.flag_printed_table(comparison, PRINTED_TABLES[spec.function_id])
    _emit(context.generator.render(comparison, run.output_format), run)
    return EXIT_OK if passed else EXIT_NUMERIC


def example_command(args: argparse.Namespace, context: CommandContext) -> int:
    """Worked-example transcript with its checks."""
    run = _run_config(args, context, Backend.EXACT)
    example = ExampleRunner(engine=context.engine, system_logger=context.system_logger).run(args.example_id)
    _emit(context.generator.render(example, run.output_format), run)
    return EXIT_OK if example.passed else EXIT_NUMERIC


def probe_command(args: argparse.Namespace, context: CommandContext) -> int:
    """Same-degree fits through shifted node sets; agreement bounds the degree."""
    spec = resolve(args.function)
    if args.backend == Backend.EXACT.value and not spec.exact_capable:
        raise ConfigurationError(f"'{spec.function_id}' has irrational values; use --backend float")
    backend = _backend(args, context, exact_legal=spec.exact_capable)
    run = _run_config(args, context, backend, function_id=spec.function_id)
    tolerance = run.tolerance if run.tolerance is not None else context.config.numerics.float_zero_tolerance
    result = degree_probe(
        spec.handle, spec.interval, args.degree, trials=args.trials, backend=backend, tol=tolerance
    )
    _emit(context.generator.render(result, run.output_format), run)
    return EXIT_OK


def grid_command(args: argparse.Namespace, context: CommandContext) -> int:
    """Exports a partition as an x column."""
    chosen = [option for option in (args.fixture, args.dyadic, args.uniform) if option is not None]
    if len(chosen) != 1:
        raise ConfigurationError("'grid' takes exactly one of --fixture, --dyadic and --uniform")
    if args.fixture is not None:
        nodes, run = _read_nodes(args, context)
    else:
        backend = _backend(args, context)
        run = _run_config(args, context, backend)
        if args.dyadic is not None:
            base_count, level = args.dyadic
            nodes = dyadic(base_count, level).nodes
            if backend is Backend.FLOAT:
                nodes = nodes.to_float()
        else:
            a, b, segments = args.uniform
            nodes = uniform_partition(a, b, int(segments), backend)

    if run.out_path is not None:
        run.out_path.parent.mkdir(parents=True, exist_ok=True)
        with open(run.out_path, 'w', newline='') as stream:
            write_samples_csv(stream, nodes)
    else:
        write_samples_csv(sys.stdout, nodes)
    return EXIT_OK


def _parse_degrees(text: str) -> List[int]:
    try:
        return [int(cell) for cell in text.split(",")]
    except ValueError:
        raise ConfigurationError(f"Degrees must be a comma-separated list of integers, got '{text}'") from None


def _add_node_sources(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--nodes', type=str, help='Inline nodes, e.g. "-1,0,1" or "1/3,1/2"')
    parser.add_argument('--nodes-file', type=str, help='CSV file with an x (or x,y) header')
    parser.add_argument('--fixture', type=str, help=f'Named node set: {", ".join(NODE_FIXTURES)}')


def _add_global_options(parser: argparse.ArgumentParser, default=None) -> None:
    """Options accepted before or after the sub-command."""
    parser.add_argument('--config', type=str, default=default,
                        help='Configuration file (default config/default.yaml)')
    parser.add_argument('--backend', choices=[backend.value for backend in Backend], default=default,
                        help='Arithmetic backend (default exact where legal)')
    parser.add_argument('--format', choices=OUTPUT_FORMATS, default=default, help='Output format (default json)')
    parser.add_argument('--probes', type=int, default=default,
                        help='Probe count for sup-error scans (default 2000)')
    parser.add_argument('--tol', type=float, default=default,
                        help='Zero tolerance on the float backend, relative to the largest |coefficient|')
    parser.add_argument('--workers', type=int, default=default, help='Worker threads for studies')
    parser.add_argument('--out', type=str, default=default, help='Output file (default stdout)')
    parser.add_argument('--save-config', type=str, default=default,
                        help='Write the effective configuration, overrides included, to this file')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='vandermonde_approx',
        description='Polynomial interpolation through Vandermonde systems',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="Exit codes: 0 ok, 2 usage or input error, 3 numerical failure",
    )
    _add_global_options(parser)
    # SUPPRESS keeps a sub-command default from overwriting a value given before it
    common = argparse.ArgumentParser(add_help=False)
    _add_global_options(common, default=argparse.SUPPRESS)

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    def add_command(name: str, help_text: str) -> argparse.ArgumentParser:
        return subparsers.add_parser(name, help=help_text, parents=[common])

    det_parser = add_command('det', 'Vandermonde determinant checks')
    _add_node_sources(det_parser)
    det_parser.add_argument('--orientation', choices=ORIENTATIONS, default='descending',
                            help='Descending (A) or ascending (B) matrix')
    det_parser.set_defaults(func=det_command)

    fit_parser = add_command('fit', 'Fit an x,y sample file')
    fit_parser.add_argument('samples', type=str, help='Sample CSV with header x,y ("-" for stdin)')
    fit_parser.add_argument('--degree', type=int, help='Expected degree; requires degree + 1 samples')
    fit_parser.set_defaults(func=fit_command)

    converge_parser = add_command('converge', 'Convergence study on dyadic grids')
    converge_parser.add_argument('function', type=str, help=f'Function id: {", ".join(known_ids())}')
    converge_parser.add_argument('--n0', type=int, default=2, help='Segments at level 0')
    converge_parser.add_argument('--max-level', type=int, default=3, help='Last refinement level')
    converge_parser.add_argument('--plot-dir', type=str, help='Write level_<k>.csv (x,error) files here')
    converge_parser.set_defaults(func=converge_command)

    taylor_parser = add_command('taylor', 'Taylor coefficients from uniform fits')
    taylor_parser.add_argument('function', type=str, help='sine, log1p or poly:c_n,...,c_0')
    taylor_parser.add_argument('--degrees', type=str, help='Comma-separated fit degrees (default 4,6,8,10)')
    taylor_parser.set_defaults(func=taylor_command)

    example_parser = add_command('example', 'Reproduce a worked example')
    example_parser.add_argument('example_id', type=str, help=f'One of {", ".join(EXAMPLE_IDS)}')
    example_parser.set_defaults(func=example_command)

    probe_parser = add_command('probe', 'Degree probe over shifted node sets')
    probe_parser.add_argument('function', type=str, help=f'Function id: {", ".join(known_ids())}')
    probe_parser.add_argument('--degree', type=int, required=True, help='Degree to probe')
    probe_parser.add_argument('--trials', type=int, default=2, help='Number of node sets')
    probe_parser.set_defaults(func=probe_command)

    grid_parser = add_command('grid', 'Export a partition as an x column')
    grid_parser.add_argument('--fixture', type=str, help='Named node set')
    grid_parser.add_argument('--dyadic', type=int, nargs=2, metavar=('N0', 'K'), help='Dyadic partition B_K')
    grid_parser.add_argument('--uniform', type=str, nargs=3, metavar=('A', 'B', 'N'),
                             help='N + 1 equispaced nodes from A to B')
    grid_parser.set_defaults(func=grid_command)

    return parser


def _apply_overrides(args: argparse.Namespace, config_manager: ConfigurationManager) -> None:
    """Flags override configuration for this run only; each override is logged."""
    setters = [
        (args.probes, config_manager.set_probe_count),
        (args.workers, config_manager.set_max_workers),
        (args.tol, config_manager.set_zero_tolerance),
        (args.format, config_manager.set_output_format),
        (args.backend, config_manager.set_default_backend),
    ]
    for value, setter in setters:
        if value is None:
            continue
        result = setter(value)
        if result.is_err():
            raise ConfigurationError(result.error())


def setup_logging(config: AppConfiguration) -> SystemLogger:
    """Standard logging on stderr plus the structured event log."""
    logging.basicConfig(
        level=getattr(logging, config.logging.level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    log_dir = Path(config.logging.event_log_dir) if config.logging.event_log_dir else None
    return initialize_logger(log_dir=log_dir)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI entry point; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    initialize_logger()
    try:
        config_manager = ConfigurationManager(storage_path=Path(args.config) if args.config else None)
        if args.config and not config_manager.storage_path.exists():
            raise ConfigurationError(f"Configuration file not found: {args.config}")
        system_logger = setup_logging(config_manager.get_configuration())
        _apply_overrides(args, config_manager)
        if args.save_config:
            config_manager.persist_configuration(Path(args.save_config))
        config = config_manager.get_configuration()
        context = CommandContext(
            config_manager=config_manager,
            system_logger=system_logger,
            engine=AnalysisEngine(config.numerics, config.analysis, system_logger),
            generator=ReportGenerator(config.output),
        )
        return args.func(args, context)
    except NUMERIC_ERRORS as e:
        get_logger().log_error("CLI", f"'{args.command}' failed", error=e)
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except USAGE_ERRORS as e:
        get_logger().log_error("CLI", f"'{args.command}' rejected its input", error=e)
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
