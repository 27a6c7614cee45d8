"""
Command-line frontend for the secure-domination laboratory.

Commands: compute, verify, survey, family, orient, hunt and gen. Every
command prints one CommandResult (JSON by default, TSV with --format tsv) on
stdout; diagnostics go to stderr. Exit codes: 0 success, 1 usage or input
error, 2 negative verification or violated bound.
"""

from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import click
from rich.console import Console
from rich.markup import escape

from src.api.schema import CommandResult
from src.core.config import CLOSED_FORM_FAMILIES, settings
from src.core.exceptions import InputOutputError, InvariantViolation, LabError, ParseError, PreconditionError
from src.core.monitoring import LogLevel, log_event, track_metric, write_metrics
from src.models.digraph import Digraph, ParamKind, VertexSet
from src.services.bounds_lab import SearchMode, bound_report, conjecture_hunt
from src.services.constructions import family_digraph, family_witness
from src.services.formats import input_digest, parse_digraph, parse_graph, serialize_digraph
from src.services.generators import GenParams, gen_family
from src.services.orientations import orientation_of, spectrum
from src.services.solver import SolverConfig, parse_param, solve_all, solve_min
from src.services.verifiers import first_failure, is_secure_set, is_set, parse_set_kind

console = Console(stderr=True, highlight=False)

# CLI family names accepted by gen, mapped onto generator kinds
GEN_ALIASES: Dict[str, str] = {
    "path": "dipath",
    "dipath": "dipath",
    "cycle": "dicycle",
    "dicycle": "dicycle",
    "transtour": "transitive_tournament",
    "transitive_tournament": "transitive_tournament",
    "spider": "spider",
    "tournament": "random_tournament",
    "random_tournament": "random_tournament",
    "random": "random_digraph",
    "random_digraph": "random_digraph",
}


class LabGroup(click.Group):
    """Click group that reports usage errors with exit code 1."""

    def make_context(self, *args, **kwargs):
        try:
            return super().make_context(*args, **kwargs)
        except click.UsageError as e:
            e.exit_code = 1
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = 1
            raise


def common_options(func: Callable) -> Callable:
    func = click.option(
        "--metrics-file", type=click.Path(dir_okay=False), default=None,
        help="Write Prometheus metrics to this file after the command.",
    )(func)
    func = click.option(
        "--format", "output_format", type=click.Choice(["json", "tsv"]), default="json", show_default=True,
    )(func)
    return func


def _solver_config(cap: Optional[int], threads: Optional[int]) -> SolverConfig:
    return SolverConfig(
        size_cap=settings.SIZE_CAP if cap is None else cap,
        thread_hint=settings.THREAD_HINT if threads is None else threads,
    )


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"invalid UTF-8 at byte offset {e.start}") from None
    except OSError as e:
        raise InputOutputError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise InputOutputError(f"cannot write {path}: {e.strerror}") from None


def _error_result(command: str, error: LabError) -> CommandResult:
    log_event("cli_command_failed", {"command": command, "error": str(error)}, LogLevel.WARNING)
    console.print(f"[bold red]error:[/] {escape(str(error))}")
    return CommandResult(command=command, results={"error": error.to_dict()}, exit_code=error.exit_code)


def _finish(command: str, exit_code: int, metrics_file: Optional[str]) -> None:
    track_metric("cli_commands_total", 1, {"command": command, "exit_code": str(exit_code)})
    if metrics_file:
        try:
            write_metrics(metrics_file)
        except OSError as e:
            console.print(f"[bold red]error:[/] cannot write {escape(metrics_file)}: {escape(str(e.strerror))}")
            exit_code = exit_code or InputOutputError.exit_code
    if exit_code:
        click.get_current_context().exit(exit_code)


def _execute(command: str, output_format: str, metrics_file: Optional[str],
             action: Callable[[], CommandResult]) -> None:
    try:
        result = action()
    except LabError as e:
        result = _error_result(command, e)

    click.echo(result.to_json() if output_format == "json" else result.to_tsv())
    _finish(command, result.exit_code, metrics_file)


def _parse_vertex_list(text: str, n: int) -> VertexSet:
    indices = []
    for token in text.replace(" ", "").split(","):
        if not token:
            continue
        try:
            index = int(token)
        except ValueError:
            raise PreconditionError(f"vertex '{token}' is not an integer") from None
        if not 1 <= index <= n:
            raise PreconditionError(f"vertex {index} out of range 1..{n}")
        indices.append(index - 1)
    return VertexSet.from_indices(n, indices)


@click.group(cls=LabGroup)
@click.version_option(version=settings.VERSION, prog_name="secdom")
def cli():
    """Secure-domination digraph laboratory."""


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--param", default="all", show_default=True, help="Parameter name or 'all'.")
@click.option("--cap", type=int, default=None, help="Largest n the solver accepts.")
@click.option("--threads", type=int, default=None, help="Worker hint for the solver.")
@common_options
def compute(file, param, cap, threads, output_format, metrics_file):
    """Exact minimum value and witness for one or all parameters."""
    def action() -> CommandResult:
        digraph = parse_digraph(_read(file))
        config = _solver_config(cap, threads)
        if param.strip().lower() == "all":
            results = solve_all(digraph, config)
        else:
            kind = parse_param(param)
            results = {kind: solve_min(digraph, kind, config)}
        return CommandResult(
            command="compute",
            input_digest=input_digest(digraph),
            results={
                "n": digraph.n,
                "arcs": digraph.arc_count,
                "parameters": {kind.value: result.to_dict() for kind, result in results.items()},
            },
        )

    _execute("compute", output_format, metrics_file, action)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--set", "vertex_list", required=True, help="Comma-separated 1-based vertices, e.g. '1,4,5'.")
@click.option("--kind", required=True, help="Set kind, e.g. osds or out-dominating.")
@common_options
def verify(file, vertex_list, kind, output_format, metrics_file):
    """Check a vertex set against its definition."""
    def action() -> CommandResult:
        digraph = parse_digraph(_read(file))
        set_kind = parse_set_kind(kind)
        s = _parse_vertex_list(vertex_list, digraph.n)
        results = {"kind": set_kind.value, "set": s.one_based()}

        if set_kind.is_secure:
            valid, defense = is_secure_set(digraph, s, set_kind)
            if valid:
                results["defenders"] = defense.to_dict()
        else:
            valid = is_set(digraph, s, set_kind)
        results["valid"] = valid

        if not valid:
            failure = first_failure(digraph, s, set_kind)
            if failure is not None:
                vertex, reason = failure
                results["failure"] = {"vertex": vertex + 1, "reason": reason.value}
        return CommandResult(
            command="verify",
            input_digest=input_digest(digraph),
            results=results,
            exit_code=0 if valid else 2,
        )

    _execute("verify", output_format, metrics_file, action)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--cap", type=int, default=None)
@click.option("--threads", type=int, default=None)
@common_options
def survey(file, cap, threads, output_format, metrics_file):
    """All parameters followed by the full bound catalogue."""
    def action() -> CommandResult:
        digraph = parse_digraph(_read(file))
        params = solve_all(digraph, _solver_config(cap, threads))
        report = bound_report(digraph, params)
        return CommandResult(
            command="survey",
            input_digest=input_digest(digraph),
            results={
                "n": digraph.n,
                "degrees": digraph.degree_stats().to_dict(),
                "parameters": {kind.value: result.to_dict() for kind, result in params.items()},
                "bounds": report.to_dict(),
            },
        )

    _execute("survey", output_format, metrics_file, action)


@cli.command()
@click.option("--family", "family_name", type=click.Choice(CLOSED_FORM_FAMILIES), required=True)
@click.option("--n", "n", type=int, default=None, help="Order of the family member.")
@click.option("--n-k", "k", type=int, default=None, help="Spider leg count.")
@click.option("--param", required=True)
@common_options
def family(family_name, n, k, param, output_format, metrics_file):
    """Closed-form value and witness for a named family, solver-confirmed when small."""
    def action() -> CommandResult:
        size = k if k is not None else n
        if size is None:
            raise PreconditionError("family needs --n (or --n-k for spider)")
        kind = parse_param(param)
        digraph = family_digraph(family_name, size)
        recipe, closed_form = family_witness(family_name, kind, size)
        results = {
            "family": family_name,
            "size": size,
            "n": digraph.n,
            "param": kind.value,
            "closed_form": closed_form,
            "recipe": recipe.to_dict(),
        }

        if digraph.n <= settings.CLOSED_FORM_CONFIRM_MAX_N:
            solved = solve_min(digraph, kind)
            results["solver_value"] = solved.value
            if solved.value > len(recipe.set) or (closed_form is not None and solved.value != closed_form):
                raise InvariantViolation(
                    f"solver value {solved.value} disagrees with the {family_name} construction"
                )
        return CommandResult(command="family", input_digest=input_digest(digraph), results=results)

    _execute("family", output_format, metrics_file, action)


def _arcs_one_based(digraph: Digraph) -> List[Tuple[int, int]]:
    return [(u + 1, v + 1) for u, v in digraph.arcs()]


@cli.command()
@click.argument("graphfile", type=click.Path(exists=True, dir_okay=False))
@click.option("--param", required=True)
@click.option("--mode", type=click.Choice(["min", "max", "spectrum"]), default="spectrum", show_default=True)
@click.option("--threads", type=int, default=None)
@common_options
def orient(graphfile, param, mode, threads, output_format, metrics_file):
    """dom / DOM over all orientations of an undirected graph."""
    def action() -> CommandResult:
        graph = parse_graph(_read(graphfile))
        kind = parse_param(param)
        result = spectrum(graph, kind, _solver_config(None, threads))
        if mode == "spectrum":
            results = result.to_dict()
        else:
            value = result.dom if mode == "min" else result.DOM
            mask = result.dom_orientation if mode == "min" else result.DOM_orientation
            results = {
                "kind": kind.value,
                "mode": mode,
                "value": value,
                "orientation": _arcs_one_based(orientation_of(graph, mask)),
                "orientations_evaluated": result.orientations_evaluated,
            }
        return CommandResult(command="orient", input_digest=input_digest(graph), results=results)

    _execute("orient", output_format, metrics_file, action)


@cli.command()
@click.option("--conjecture", type=click.Choice(["oso", "iso"]), required=True)
@click.option("--n", "n", type=int, required=True, help="Largest order scanned.")
@click.option("--n-min", type=int, default=None, help="Smallest order scanned (defaults to --n).")
@click.option("--exhaustive", is_flag=True, default=False)
@click.option("--samples", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--symmetric/--no-symmetric", "allow_symmetric", default=True, show_default=True)
@click.option("--threads", type=int, default=None)
@common_options
def hunt(conjecture, n, n_min, exhaustive, samples, seed, allow_symmetric, threads, output_format, metrics_file):
    """Search for digraphs with minimum degree one above ceil(2n/3)."""
    if exhaustive == (samples is not None):
        raise click.UsageError("choose exactly one of --exhaustive or --samples")

    def action() -> CommandResult:
        kind = ParamKind.GAMMA_OSO if conjecture == "oso" else ParamKind.GAMMA_ISO
        mode = SearchMode.EXHAUSTIVE if exhaustive else SearchMode.SAMPLED
        report = conjecture_hunt(
            kind,
            mode,
            (n if n_min is None else n_min, n),
            samples=samples or 0,
            seed=seed,
            allow_symmetric=allow_symmetric,
            config=_solver_config(None, threads),
        )
        return CommandResult(
            command="hunt",
            seed=seed if mode is SearchMode.SAMPLED else None,
            results=report.to_dict(),
        )

    _execute("hunt", output_format, metrics_file, action)


@cli.command()
@click.option("--family", "family_name", type=click.Choice(sorted(GEN_ALIASES)), required=True)
@click.option("--n", "n", type=int, default=None)
@click.option("--n-k", "k", type=int, default=None, help="Spider leg count.")
@click.option("--seed", type=int, default=None)
@click.option("--arc-prob", type=float, default=None)
@click.option("--symmetric/--no-symmetric", "allow_symmetric", default=True, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the digraph file here.")
@common_options
def gen(family_name, n, k, seed, arc_prob, allow_symmetric, out, output_format, metrics_file):
    """Generate a family member; without --out the digraph file goes to stdout."""
    size = k if k is not None else n
    if size is None:
        raise click.UsageError("gen needs --n (or --n-k for spider)")
    generator_kind = GEN_ALIASES[family_name]

    if out is None:
        try:
            digraph = gen_family(generator_kind, size, GenParams(seed, arc_prob, allow_symmetric))
        except LabError as e:
            result = _error_result("gen", e)
            click.echo(result.to_json() if output_format == "json" else result.to_tsv())
            _finish("gen", result.exit_code, metrics_file)
            return
        click.echo(serialize_digraph(digraph), nl=False)
        _finish("gen", 0, metrics_file)
        return

    def action() -> CommandResult:
        digraph = gen_family(generator_kind, size, GenParams(seed, arc_prob, allow_symmetric))
        _write(out, serialize_digraph(digraph))
        randomized = generator_kind.startswith("random")
        return CommandResult(
            command="gen",
            input_digest=input_digest(digraph),
            seed=seed if randomized else None,
            results={"family": generator_kind, "size": size, "n": digraph.n, "arcs": digraph.arc_count, "out": out},
        )

    _execute("gen", output_format, metrics_file, action)
