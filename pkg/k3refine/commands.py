import logging
from functools import wraps

import click
from flask import Blueprint, current_app

from . import invariants
from .errors import DivisibilityError, K3RefineError
from .export import render_records, render_report
from .identities import identity_suite
from .models import (
    EVALUATION_POINTS,
    OUTPUT_FORMATS,
    InvariantRecord,
    RunConfig,
    VWParams,
    check_square_divisibility,
)

# Commands are registered straight onto the application's command group (no "cli" prefix).
cli_bp = Blueprint('cli', __name__, cli_group=None)

EXIT_VERIFICATION_FAILED = 1
EXIT_INVALID_INPUT = 2


def format_option(command):
    return click.option(
        '--format', 'output_format', type=click.Choice(OUTPUT_FORMATS), default=None,
        help='Output format (default: K3REFINE_FORMAT or pretty).',
    )(command)


def eval_option(command):
    return click.option(
        '--eval', 'evaluate_at', type=click.Choice(EVALUATION_POINTS), default=None,
        help='Specialise every result at the given point.',
    )(command)


def verbose_option(command):
    return click.option('--verbose', is_flag=True, help='Log progress to stderr.')(command)


def handles_domain_errors(command):
    """Map domain errors to exit codes: 2 for invalid input, 1 for anything else."""

    @wraps(command)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        if kwargs.pop('verbose', False):
            current_app.logger.setLevel(logging.INFO)
        try:
            return command(*args, **kwargs)
        except DivisibilityError as error:
            click.echo(f"Error: {error}", err=True)
            ctx.exit(EXIT_INVALID_INPUT)
        except K3RefineError as error:
            current_app.logger.error(f"{ctx.info_name} failed: {error}")
            click.echo(f"Error: {error}", err=True)
            ctx.exit(EXIT_VERIFICATION_FAILED)
        except ValueError as error:
            click.echo(f"Error: {error}", err=True)
            ctx.exit(EXIT_INVALID_INPUT)

    return wrapper


def _specialise(value, run_config):
    if run_config.evaluate_at == 'tau=1':
        return value.evaluate_at_one()
    return value


def _emit(records, run_config):
    # Buffered so the stream appears all at once and in a fixed order.
    click.echo(render_records(records, run_config.output_format), nl=False)


@cli_bp.cli.command('hilb')
@click.option('--dmax', type=click.IntRange(min=0), default=None,
              help='Largest Hilbert scheme index (default: D_MAX).')
@format_option
@eval_option
@verbose_option
@handles_domain_errors
def hilb_command(dmax, output_format, evaluate_at):
    """chi_{-t} genera of Hilb^d of a K3 surface, or their Euler characteristics."""
    run_config = RunConfig.from_app_config(
        current_app.config, d_max=dmax, output_format=output_format, evaluate_at=evaluate_at
    )
    current_app.logger.info(f"Computing Hilbert scheme genera up to d = {run_config.d_max}")

    if run_config.evaluate_at:
        records = [
            InvariantRecord.from_value('euler_hilb', {'d': d}, value)
            for d, value in enumerate(invariants.euler_hilb(run_config.d_max))
        ]
    else:
        records = [
            InvariantRecord.from_value('hilb', {'d': d}, genus)
            for d, genus in enumerate(invariants.hilb_chi_series(run_config.d_max))
        ]
    _emit(records, run_config)


@cli_bp.cli.command('pairs')
@click.option('--h', 'genus', type=click.IntRange(min=0), required=True,
              help='Curve class with beta^2 = 2h - 2.')
@click.option('--div', 'divisibility', type=click.IntRange(min=1), default=1, show_default=True,
              help='Divisibility m of the curve class.')
@click.option('--chi', type=int, default=None, help='Emit a single Euler characteristic.')
@click.option('--chimax', type=int, default=None, help='Largest chi (default: CHI_MAX).')
@format_option
@eval_option
@verbose_option
@handles_domain_errors
def pairs_command(genus, divisibility, chi, chimax, output_format, evaluate_at):
    """Refined stable pair invariants P_(beta, chi)(t)."""
    run_config = RunConfig.from_app_config(
        current_app.config, chi_max=chimax, output_format=output_format, evaluate_at=evaluate_at
    )
    check_square_divisibility(divisibility, genus - 1, 'h - 1')

    if chi is not None:
        window = [chi]
    else:
        window = range(1 - genus, run_config.chi_max + 1)
    current_app.logger.info(
        f"Computing stable pairs for h = {genus}, m = {divisibility} on {len(window)} values of chi"
    )

    table = None
    if divisibility == 1 and window:
        table = invariants.pairs_primitive(genus, max(max(window), 1 - genus))

    records = []
    for value_chi in window:
        if table is not None:
            value = table.get(value_chi)
        else:
            value = invariants.pairs_full(genus, divisibility, value_chi)
        params = {'h': genus, 'm': divisibility, 'chi': value_chi}
        records.append(InvariantRecord.from_value('pairs', params, _specialise(value, run_config)))
    _emit(records, run_config)


@cli_bp.cli.command('bps')
@click.option('--hmax', type=click.IntRange(min=0), default=None,
              help='Largest genus h (default: H_MAX).')
@click.option('--numeric', is_flag=True, help='Integer Gopakumar-Vafa invariants instead.')
@format_option
@eval_option
@verbose_option
@handles_domain_errors
def bps_command(hmax, numeric, output_format, evaluate_at):
    """Refined BPS invariants n^h_g(t) for g <= h <= hmax."""
    run_config = RunConfig.from_app_config(
        current_app.config, h_max=hmax, output_format=output_format, evaluate_at=evaluate_at
    )

    records = []
    if numeric:
        table = invariants.gv_numeric(run_config.h_max)
        current_app.logger.info(f"Gopakumar-Vafa basis center: {table.center_label}")
        for h in range(run_config.h_max + 1):
            for g, value in enumerate(table.row(h)):
                records.append(InvariantRecord.from_value('gv', {'h': h, 'g': g}, value))
    else:
        table = invariants.bps_refined(run_config.h_max)
        for h in range(run_config.h_max + 1):
            for g, value in enumerate(table.row(h)):
                records.append(InvariantRecord.from_value(
                    'bps', {'h': h, 'g': g}, _specialise(value, run_config)
                ))
    _emit(records, run_config)


@cli_bp.cli.command('vw')
@click.option('--points', type=click.IntRange(min=1), required=True,
              help='Hilbert scheme index d, with v^2 = 2 - 2d.')
@click.option('--div', 'divisibility', type=click.IntRange(min=1), default=1, show_default=True,
              help='Divisibility m of the Mukai vector.')
@format_option
@eval_option
@verbose_option
@handles_domain_errors
def vw_command(points, divisibility, output_format, evaluate_at):
    """Refined Vafa-Witten invariant of a Mukai vector."""
    run_config = RunConfig.from_app_config(
        current_app.config, output_format=output_format, evaluate_at=evaluate_at
    )
    params = VWParams(points=points, divisibility=divisibility)
    value = invariants.vw_full(params)
    record = InvariantRecord.from_value(
        'vw', {'d': points, 'm': divisibility}, _specialise(value, run_config)
    )
    _emit([record], run_config)


@cli_bp.cli.command('verify')
@click.option('--hmax', type=click.IntRange(min=0), default=None,
              help='Largest genus h (default: H_MAX).')
@click.option('--chimax', type=int, default=None, help='Largest chi (default: CHI_MAX).')
@format_option
@verbose_option
@handles_domain_errors
def verify_command(hmax, chimax, output_format):
    """Run every identity and exit 1 if any of them fails."""
    config = current_app.config
    run_config = RunConfig.from_app_config(
        config, h_max=hmax, chi_max=chimax, output_format=output_format
    )
    current_app.logger.info(
        f"Verifying identities with h_max = {run_config.h_max}, chi_max = {run_config.chi_max}"
    )

    report = identity_suite(
        run_config.h_max,
        run_config.chi_max,
        [VWParams(*sample) for sample in config['VW_SAMPLES']],
        kth_samples=config['KTH_SAMPLES'],
        quantum_bound=config['QUANTUM_IDENTITY_BOUND'],
    )
    click.echo(render_report(report, run_config.output_format), nl=False)

    if not report.passed:
        names = ', '.join(check.name for check in report.failed_checks())
        current_app.logger.error(f"Verification failed: {names}")
        click.get_current_context().exit(EXIT_VERIFICATION_FAILED)
