# commands/fuzz.py
import logging

import click

from dependencies.options import FIELD, emit, get_service, output_options, resolve_settings, start_clock

logger = logging.getLogger(__name__)


@click.command("fuzz")
@click.option("--field", "field", type=FIELD, required=True, help="'rationals' or 'gf:p'.")
@click.option("--dim", type=int, required=True, help="Projective dimension, at least 2.")
@click.option("--trials", type=int, default=None, help="Number of sampled configurations.")
@click.option("--seed", type=int, default=None, help="Run seed; every trial seed derives from it.")
@output_options
def fuzz(field, dim: int, trials, seed, output_format, workers):
    """Sample configurations with two conjugate pairs and confirm the third pair every time."""
    started = start_clock()
    settings = resolve_settings(output_format, workers)
    trials = settings.fuzz_trials if trials is None else trials
    seed = settings.seed if seed is None else seed
    body = get_service(settings).fuzz(field, dim, trials, seed)
    emit(body, started, settings)
