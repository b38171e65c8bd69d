# commands/identities.py
import click

from dependencies.options import FIELD, emit, get_service, output_options, resolve_settings, start_clock


@click.command("identities")
@click.option("--field", "field", type=FIELD, required=True, help="'rationals' or 'gf:p'.")
@click.option("--dim", type=int, required=True, help="Projective dimension, at least 1.")
@click.option("--trials", type=int, default=None)
@click.option("--seed", type=int, default=None)
@output_options
def identities(field, dim: int, trials, seed, output_format, workers):
    """Check the algebraic identities behind the theorem on unconstrained random quadrangles."""
    started = start_clock()
    settings = resolve_settings(output_format, workers)
    trials = settings.fuzz_trials if trials is None else trials
    seed = settings.seed if seed is None else seed
    body = get_service(settings).identities(field, dim, trials, seed)
    emit(body, started, settings)
