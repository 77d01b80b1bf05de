"""
Command-line interface for frobtwist.

Exit statuses: 0 success, 1 checked-false, 2 input error, 3 resource guard.
"""

import logging
import sys
from typing import Any, Callable, Optional

import click
import numpy as np

from frobtwist.config import RunConfig, load_algebra, load_run_config, parse_theta
from frobtwist.corpus import read_pd, resolve_input
from frobtwist.cube import (
    build_complex,
    build_theta_iso,
    compose_chain_maps,
    homology_snf,
    inverse_theta_iso,
    twisted_pair,
    verify_chain_map,
    verify_iso,
)
from frobtwist.diagram import LinkDiagram, NonPlanarSaddleError
from frobtwist.formats import (
    chain_map_to_json,
    dump_json,
    homology_to_json,
    load_json,
    partial_from_json,
    partial_to_json,
    violations_to_json,
    weight_from_json,
    weight_to_json,
)
from frobtwist.frobenius import FrobeniusAlgebra, NotInvertibleError, invert, twist
from frobtwist.oracle import SizeGuardError, oracle_solve
from frobtwist.weights import WeightConstructionError, check_weight, construct

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_GUARD = 3

logger = logging.getLogger(__name__)


def _fail(message: str, code: int) -> None:
    click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def _settings(ctx: click.Context, **overrides: Any) -> RunConfig:
    base: RunConfig = ctx.obj or RunConfig()
    try:
        return base.merged(subcommand=ctx.info_name, **overrides)
    except ValueError as e:
        _fail(str(e), EXIT_INPUT)


def _load_diagram(config: RunConfig, cap: Optional[int] = None) -> LinkDiagram:
    try:
        diagram = read_pd(resolve_input(config.input_path, config.corpus))
    except (OSError, ValueError) as e:
        _fail(str(e), EXIT_INPUT)
    cap = config.max_crossings if cap is None else cap
    if diagram.n > cap:
        _fail(f"diagram has {diagram.n} crossings, the cap is {cap}", EXIT_GUARD)
    logger.info(f"Loaded {diagram!r} from {config.input_path}")
    return diagram


def _load_algebra_and_theta(config: RunConfig, require_theta: bool):
    if not config.algebra:
        _fail("--algebra is required", EXIT_INPUT)
    try:
        algebra = load_algebra(config.algebra)
        config.validate_theta(algebra.rank)
    except (KeyError, OSError, ValueError) as e:
        _fail(str(e).strip("'\""), EXIT_INPUT)
    if config.theta is None:
        if require_theta:
            _fail("--theta is required", EXIT_INPUT)
        return algebra, None
    if invert(algebra, config.theta) is None:
        _fail(f"θ = {list(config.theta)} is not invertible in {algebra!r}", EXIT_INPUT)
    return algebra, config.theta


def _emit(document: Any, config: RunConfig, as_json: bool) -> None:
    if config.output:
        dump_json(document, config.output)
        logger.info(f"Wrote {config.output}")
    if as_json:
        click.echo(dump_json(document))


_RUN_OPTIONS = (
    click.option("--max-crossings", type=int, default=None, help="Largest diagram accepted (default 16)"),
    click.option("--out", "output", type=click.Path(dir_okay=False), default=None, help="Write the JSON result to PATH"),
    click.option("--json", "as_json", is_flag=True, help="Print machine-readable JSON to stdout"),
)


def run_options(func: Callable) -> Callable:
    """Options shared by every subcommand."""
    for option in reversed(_RUN_OPTIONS):
        func = option(func)
    return func


@click.group()
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, readable=True, dir_okay=False),
    help="YAML file with default run settings",
)
@click.option(
    "--verbose",
    is_flag=True,
    help="Enable verbose logging",
)
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str] = None, verbose: bool = False):
    """Twisting weights and twisted Frobenius-algebra link complexes."""
    # Configure logging based on verbose flag
    log_level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(levelname)s - %(name)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    logging.getLogger("frobtwist").setLevel(log_level)

    ctx.obj = RunConfig()
    if config_path:
        try:
            ctx.obj = load_run_config(config_path)
        except Exception as e:
            _fail(f"loading configuration: {e}", EXIT_INPUT)


@cli.command("weight")
@click.argument("pd")
@run_options
@click.pass_context
def cmd_weight(ctx, pd: str, max_crossings, output, as_json):
    """
    Construct a twisting weight on a diagram and check it.

    PD is a PD-code file or the name of a bundled diagram.

    Example:
        frobtwist weight trefoil --json
    """
    config = _settings(ctx, input_path=pd, max_crossings=max_crossings, output=output)
    diagram = _load_diagram(config)
    try:
        weight = construct(diagram)
    except NonPlanarSaddleError as e:
        _fail(str(e), EXIT_INPUT)
    except WeightConstructionError as e:
        _fail(str(e), EXIT_FALSE)

    report = check_weight(diagram, weight)
    _emit(weight_to_json(diagram, weight), config, as_json)
    if not as_json:
        click.echo(f"Weight on {diagram.n_states} state(s): {len(report)} violation(s)")
    sys.exit(EXIT_OK if report.ok else EXIT_FALSE)


@cli.command("check")
@click.argument("pd")
@click.argument("weight_path", type=click.Path(dir_okay=False))
@run_options
@click.pass_context
def cmd_check(ctx, pd: str, weight_path: str, max_crossings, output, as_json):
    """
    Check a weight file against a diagram.

    Example:
        frobtwist check trefoil weight.json
    """
    config = _settings(ctx, input_path=pd, max_crossings=max_crossings, output=output)
    diagram = _load_diagram(config)
    try:
        weight = weight_from_json(load_json(weight_path))
        report = check_weight(diagram, weight)
    except (OSError, ValueError, KeyError, TypeError) as e:
        _fail(str(e), EXIT_INPUT)

    _emit(violations_to_json(report), config, as_json)
    if not as_json:
        click.echo(f"{len(report)} violation(s)")
        for v in report:
            click.echo(f"  {v.kind} at state {v.state.to_string()} crossing {v.crossing}: {v.lhs} != {v.rhs}")
    sys.exit(EXIT_OK if report.ok else EXIT_FALSE)


@cli.command("oracle")
@click.argument("pd")
@click.option("--pins", "pins_path", type=click.Path(dir_okay=False), default=None, help="Partial assignment the solution must extend")
@click.option("--oracle-cap", type=int, default=None, help="Largest diagram the oracle accepts (default 8)")
@run_options
@click.pass_context
def cmd_oracle(ctx, pd: str, pins_path, oracle_cap, max_crossings, output, as_json):
    """
    Decide with exact integer linear algebra whether a weight extending the pins exists.

    Example:
        frobtwist oracle trefoil --pins pins.json
    """
    config = _settings(
        ctx, input_path=pd, oracle_cap=oracle_cap, max_crossings=max_crossings, output=output
    )
    diagram = _load_diagram(config, cap=max(config.max_crossings, config.oracle_cap))
    pins = None
    try:
        if pins_path:
            pins = partial_from_json(load_json(pins_path))
        weight = oracle_solve(diagram, pins, cap=config.oracle_cap)
    except SizeGuardError as e:
        _fail(str(e), EXIT_GUARD)
    except (OSError, ValueError, KeyError, TypeError) as e:
        _fail(str(e), EXIT_INPUT)

    if weight is None:
        document = {"feasible": False}
        if pins is not None:
            document["pins"] = partial_to_json(pins, diagram)
        _emit(document, config, as_json)
        if not as_json:
            click.echo("infeasible")
        sys.exit(EXIT_FALSE)

    document = {"feasible": True, **weight_to_json(diagram, weight)}
    _emit(document, config, as_json)
    if not as_json:
        click.echo("feasible")
    sys.exit(EXIT_OK)


@cli.command("iso")
@click.argument("pd")
@click.option("--algebra", default=None, help="Builtin algebra (kh, lee) or algebra file")
@click.option("--theta", default=None, help="Comma-separated coordinates of θ")
@click.option("--dump", "dump_path", type=click.Path(dir_okay=False), default=None, help="Write the chain map and both complexes to PATH")
@run_options
@click.pass_context
def cmd_iso(ctx, pd: str, algebra, theta, dump_path, max_crossings, output, as_json):
    """
    Verify that θ to the power of a twisting weight is a chain isomorphism C(D;A^θ) -> C(D;A).

    Example:
        frobtwist iso trefoil --algebra kh --theta 1,1
    """
    try:
        theta_coords = parse_theta(theta) if theta is not None else None
    except ValueError as e:
        _fail(str(e), EXIT_INPUT)
    config = _settings(
        ctx, input_path=pd, algebra=algebra, theta=theta_coords,
        max_crossings=max_crossings, output=output,
    )
    diagram = _load_diagram(config)
    base, theta_coords = _load_algebra_and_theta(config, require_theta=True)

    try:
        weight = construct(diagram)
        source, target = twisted_pair(diagram, base, theta_coords)
        forward = build_theta_iso(diagram, base, theta_coords, weight, source, target)
        backward = inverse_theta_iso(diagram, base, theta_coords, weight, target, source)
    except (NotInvertibleError, NonPlanarSaddleError) as e:
        _fail(str(e), EXIT_INPUT)
    except WeightConstructionError as e:
        _fail(str(e), EXIT_FALSE)

    round_trip = compose_chain_maps(backward, forward)
    inverse_ok = all(np.array_equal(m, np.eye(m.shape[0], dtype=m.dtype)) for m in round_trip.maps)
    twisted_h = homology_snf(source)
    plain_h = homology_snf(target)
    document = {
        "algebra": base.name or config.algebra,
        "theta": list(theta_coords),
        "ranks": list(target.ranks),
        "chain_map": verify_chain_map(forward),
        "iso": verify_iso(forward),
        "inverse": inverse_ok,
        "homology_twisted": homology_to_json(twisted_h),
        "homology": homology_to_json(plain_h),
        "homology_equal": twisted_h == plain_h,
    }
    if dump_path:
        dump_json(chain_map_to_json(forward), dump_path)
    _emit(document, config, as_json)

    ok = document["iso"] and document["inverse"] and document["homology_equal"]
    if not as_json:
        click.echo(
            f"chain map: {document['chain_map']}, isomorphism: {document['iso']}, "
            f"homology equal: {document['homology_equal']}"
        )
    sys.exit(EXIT_OK if ok else EXIT_FALSE)


@cli.command("homology")
@click.argument("pd")
@click.option("--algebra", default=None, help="Builtin algebra (kh, lee) or algebra file")
@click.option("--theta", default=None, help="Twist the algebra by θ first")
@run_options
@click.pass_context
def cmd_homology(ctx, pd: str, algebra, theta, max_crossings, output, as_json):
    """
    Integral homology of C(D;A), or of C(D;A^θ) when --theta is given.

    Example:
        frobtwist homology trefoil --algebra kh
    """
    try:
        theta_coords = parse_theta(theta) if theta is not None else None
    except ValueError as e:
        _fail(str(e), EXIT_INPUT)
    config = _settings(
        ctx, input_path=pd, algebra=algebra, theta=theta_coords,
        max_crossings=max_crossings, output=output,
    )
    diagram = _load_diagram(config)
    base, theta_coords = _load_algebra_and_theta(config, require_theta=False)
    chosen: FrobeniusAlgebra = base if theta_coords is None else twist(base, theta_coords)

    try:
        groups = homology_snf(build_complex(diagram, chosen))
    except NonPlanarSaddleError as e:
        _fail(str(e), EXIT_INPUT)

    _emit(homology_to_json(groups), config, as_json)
    if not as_json:
        for g in groups:
            torsion = "".join(f" + Z/{t}" for t in g.torsion)
            click.echo(f"H^{g.degree} = Z^{g.rank}{torsion}")
    sys.exit(EXIT_OK)


def main():
    """Entry point for the frobtwist command."""
    cli()


if __name__ == "__main__":
    main()
