# commands/scan.py
import logging

import click

from dependencies.options import FIELD, FORM_LIST, emit, get_service, output_options, resolve_settings, start_clock

logger = logging.getLogger(__name__)


@click.command("scan")
@click.option("--field", "field", type=FIELD, required=True, help="A prime field 'gf:p'.")
@click.option("--dim", type=int, required=True)
@click.option(
    "--forms", type=FORM_LIST, default="identity", show_default=True,
    help="Comma-separated: identity, zero, random:seed=S, degenerate:seed=S, nondegenerate:seed=S.",
)
@output_options
def scan(field, dim: int, forms, output_format, workers):
    """Compare the brute-force conjugacy test with the determinant criterion on every 4-tuple."""
    started = start_clock()
    settings = resolve_settings(output_format, workers)
    logger.info(f"Scan requested for forms {forms}")
    body = get_service(settings).scan(field, dim, forms)
    emit(body, started, settings)
