import time
from enum import Enum
from pathlib import Path
from typing import Callable

import typer
from typing_extensions import Annotated

from .cache import ResultCache
from .commands import (
    EvenValue, Identity, IntRepCheck, InvariantSetCommand, Multisum, Onodera,
    PoleCoeffA2, Roots, Settings, Triangulate, VerifyCommand,
)
from .config import UserConfig, default_cache_path, user_config
from .errors import ComputationError
from .logging import error, fatal, set_verbose
from .numeric import Precision
from .report import CommandResult, emit
from .rootsystem import RootSystem, build_from_label


class InvalidArgumentsError(ValueError):
    pass


class IdentityName(str, Enum):
    a2 = "a2"
    b2 = "b2"
    g2 = "g2"


app = typer.Typer(
    context_settings={"help_option_names": ["-h", "--help"]},
    add_completion=False,
)


@app.callback()
def settings(
        ctx: typer.Context,
        json: Annotated[bool, typer.Option(
            "--json",
            help="Write one JSON record to stdout instead of text")] = False,
        prec: Annotated[int, typer.Option(
            "--prec",
            help="Target number of correct decimal digits for numeric results")] = 0,
        cache: Annotated[str, typer.Option(
            "--cache",
            help="Directory for cached invariant sets")] = "",
        threads: Annotated[int, typer.Option(
            "--threads",
            help="Number of worker processes for enumeration and integration")] = 0,
        verbose: Annotated[bool, typer.Option(
            "--verbose", "-v",
            help="Output more info about what is going on")] = False,
) -> None:
    """Exact and numeric computations around Witten zeta functions"""
    set_verbose(verbose)
    config = user_config()
    target = prec or config.getint("numeric", "target_digits")
    if target < 1:
        raise InvalidArgumentsError("Precision must be a positive number of digits.")
    result_cache = None
    if cache:
        result_cache = ResultCache(Path(cache))
    elif config.getboolean("cache", "enabled"):
        result_cache = ResultCache(default_cache_path())
    ctx.obj = Settings(
        json=json,
        precision=Precision.for_target(target, config.getint("numeric", "guard_digits")),
        cache=result_cache,
        threads=threads or config.getint("general", "threads"),
        budget=config.getint("general", "budget"),
        weyl_budget=config.getint("general", "weyl_budget"),
        cell_budget=config.getint("general", "cell_budget"),
        cutoff=config.getint("numeric", "multisum_cutoff"),
        quad_nodes=config.getint("numeric", "quad_nodes"),
    )


def root_system(label: str) -> RootSystem:
    try:
        return build_from_label(label)
    except ComputationError as err:
        raise InvalidArgumentsError(str(err))


def dispatch(ctx: typer.Context, command: str, inputs: dict, template: str,
             compute: Callable[[], CommandResult]) -> None:
    """Run a command, print its result and map failures onto the exit code"""
    settings: Settings = ctx.obj
    started = time.perf_counter()
    try:
        result = compute()
    except InvalidArgumentsError as err:
        error(f"ERROR: Invalid arguments - {err}")
        raise typer.Exit(2)
    except ComputationError as err:
        error(f"ERROR: {err}")
        if settings.json:
            emit(CommandResult(command=command, inputs=inputs, status="error",
                               payload=dict(error=type(err).__name__, message=str(err))), True)
        raise typer.Exit(1)
    result.timing_ms = round((time.perf_counter() - started) * 1000)
    emit(result, settings.json, template)
    if not result.holds:
        raise typer.Exit(1)


@app.command()
def roots(
        ctx: typer.Context,
        type: Annotated[str, typer.Argument(
            help="Root system type, like A2, B3 or G2")],
) -> None:
    """Root data, Weyl degrees, highest root, K and the pairing matrix"""
    dispatch(ctx, "roots", dict(type=type), Roots.TEMPLATE,
             lambda: Roots.run(ctx.obj, root_system(type)))


def _budget(ctx: typer.Context, budget: int) -> None:
    if budget < 0:
        raise InvalidArgumentsError("Budget must be positive.")
    if budget:
        ctx.obj.budget = budget


BudgetOption = Annotated[int, typer.Option(
    "--budget", "-b",
    help="Maximum number of column subsets to enumerate (default from config)")]


@app.command()
def dset(ctx: typer.Context, type: Annotated[str, typer.Argument(help="Root system type")],
         budget: BudgetOption = 0) -> None:
    """Levels of the invertible square submatrices of the pairing matrix"""
    _budget(ctx, budget)
    dispatch(ctx, "dset", dict(type=type), InvariantSetCommand.TEMPLATE,
             lambda: InvariantSetCommand.run(ctx.obj, "dset", root_system(type)))


@app.command()
def eset(ctx: typer.Context, type: Annotated[str, typer.Argument(help="Root system type")],
         budget: BudgetOption = 0) -> None:
    """Exponents of the root lattice modulo spans of n positive roots"""
    _budget(ctx, budget)
    dispatch(ctx, "eset", dict(type=type), InvariantSetCommand.TEMPLATE,
             lambda: InvariantSetCommand.run(ctx.obj, "eset", root_system(type)))


@app.command()
def hset(ctx: typer.Context, type: Annotated[str, typer.Argument(help="Root system type")]) -> None:
    """Coefficients of the highest root"""
    dispatch(ctx, "hset", dict(type=type), InvariantSetCommand.TEMPLATE,
             lambda: InvariantSetCommand.run(ctx.obj, "hset", root_system(type)))


@app.command()
def tset(ctx: typer.Context, type: Annotated[str, typer.Argument(help="Root system type")]) -> None:
    """Fractions p/q in (0,1] with q a highest-root coefficient"""
    dispatch(ctx, "tset", dict(type=type), InvariantSetCommand.TEMPLATE,
             lambda: InvariantSetCommand.run(ctx.obj, "tset", root_system(type)))


@app.command("verify-eh")
def verify_eh(ctx: typer.Context, type: Annotated[str, typer.Argument(help="Root system type")],
              budget: BudgetOption = 0) -> None:
    """Check E = H u {1}; exit code 1 if it fails"""
    _budget(ctx, budget)
    dispatch(ctx, "verify-eh", dict(type=type), VerifyCommand.TEMPLATE,
             lambda: VerifyCommand.run(ctx.obj, "verify-eh", root_system(type)))


@app.command("verify-de")
def verify_de(ctx: typer.Context, type: Annotated[str, typer.Argument(help="Root system type")],
              budget: BudgetOption = 0) -> None:
    """Check that D equals E of the dual root system; exit code 1 if it fails"""
    _budget(ctx, budget)
    dispatch(ctx, "verify-de", dict(type=type), VerifyCommand.TEMPLATE,
             lambda: VerifyCommand.run(ctx.obj, "verify-de", root_system(type)))


@app.command("even-value")
def even_value(
        ctx: typer.Context,
        type: Annotated[str, typer.Argument(help="Root system type")],
        s: Annotated[int, typer.Option(
            "--s",
            help="Positive even integer argument")] = 2,
        refine: Annotated[bool, typer.Option(
            "--refine",
            help="Integrate over the barycentric refinement of every cell")] = False,
        all_values: Annotated[bool, typer.Option(
            "--all",
            help="Compute every even value from 2 up to s")] = False,
) -> None:
    """Exact zeta(s) as a rational multiple of a power of pi"""
    def compute():
        if s < 2 or s % 2:
            raise InvalidArgumentsError("s must be a positive even integer.")
        return EvenValue.run(ctx.obj, root_system(type), s, refine, all_values)
    dispatch(ctx, "even-value", dict(type=type, s=s), EvenValue.TEMPLATE, compute)


@app.command()
def multisum(
        ctx: typer.Context,
        type: Annotated[str, typer.Argument(help="Root system type")],
        s: Annotated[str, typer.Option(
            "--s",
            help="Real argument above 1")] = "2",
        cutoff: Annotated[int, typer.Option(
            "--cutoff",
            help="Largest weight coordinate summed (default from config)")] = 0,
) -> None:
    """Truncated sum over strongly dominant weights with a tail bound"""
    def compute():
        return Multisum.run(ctx.obj, root_system(type), s, cutoff or ctx.obj.cutoff)
    dispatch(ctx, "multisum", dict(type=type, s=s), Multisum.TEMPLATE, compute)


@app.command()
def identity(
        ctx: typer.Context,
        name: Annotated[IdentityName, typer.Argument(help="Which identity")],
        n: Annotated[int, typer.Option(
            "--n",
            help="Index of the identity, n >= 1")] = 1,
) -> None:
    """Exact check of a rank-two Bernoulli identity; exit code 1 if it fails"""
    def compute():
        if n < 1:
            raise InvalidArgumentsError("n must be at least 1.")
        return Identity.run(ctx.obj, name.value, n)
    dispatch(ctx, "identity", dict(name=name.value, n=n), Identity.TEMPLATE, compute)


@app.command("pole-coeff-a2")
def pole_coeff_a2(
        ctx: typer.Context,
        m: Annotated[int, typer.Option(
            "--m",
            help="Positive integer m")] = 1,
) -> None:
    """Coefficient of (s+m)^-1 in the A2 cube integral"""
    def compute():
        if m < 1:
            raise InvalidArgumentsError("m must be at least 1.")
        return PoleCoeffA2.run(ctx.obj, m)
    dispatch(ctx, "pole-coeff-a2", dict(m=m), PoleCoeffA2.TEMPLATE, compute)


@app.command()
def onodera(
        ctx: typer.Context,
        m: Annotated[int, typer.Option(
            "--m",
            help="Positive even integer m")] = 2,
) -> None:
    """Compare two computations of zeta''_A2(-m); exit code 1 if they disagree"""
    def compute():
        if m < 2 or m % 2:
            raise InvalidArgumentsError("m must be a positive even integer.")
        return Onodera.run(ctx.obj, m)
    dispatch(ctx, "onodera", dict(m=m), Onodera.TEMPLATE, compute)


@app.command("int-rep-check")
def int_rep_check(
        ctx: typer.Context,
        type: Annotated[str, typer.Argument(help="A2 or B2")],
        s: Annotated[str, typer.Option(
            "--s",
            help="Real argument above 1")] = "2",
) -> None:
    """Numeric check of the cube-integral representation"""
    dispatch(ctx, "int-rep-check", dict(type=type, s=s), IntRepCheck.TEMPLATE,
             lambda: IntRepCheck.run(ctx.obj, root_system(type), s))


@app.command()
def triangulate(
        ctx: typer.Context,
        type: Annotated[str, typer.Argument(help="Root system type")],
        emit_cells: Annotated[bool, typer.Option(
            "--emit-cells",
            help="Include every simplex with its bands in the output")] = False,
) -> None:
    """Band triangulation of the unit cube for the integrand of a root system"""
    dispatch(ctx, "triangulate", dict(type=type), Triangulate.TEMPLATE,
             lambda: Triangulate.run(ctx.obj, root_system(type), emit_cells))


@app.command()
def config(
        key: Annotated[str, typer.Argument(
            help="Configuration setting, as section:key")],
        value: Annotated[str, typer.Argument(
            help="Configuration value")],
):
    """Update configuration setting"""
    UserConfig.run(key, value)


def main():
    try:
        app()
    except InvalidArgumentsError as err:
        fatal(f"ERROR: Invalid arguments - {err}", exit_code=2)
