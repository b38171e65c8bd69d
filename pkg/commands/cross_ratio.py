# commands/cross_ratio.py
from pathlib import Path

import click

from dependencies.options import FIELD, emit, get_service, output_options, resolve_settings, start_clock


@click.command("cross-ratio")
@click.option("--points", "points_file", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="JSON file with four collinear points.")
@click.option("--exhaustive", "field", type=FIELD, default=None,
              help="Every ordered quadruple of distinct points of the line over 'gf:p'.")
@output_options
def cross_ratio(points_file, field, output_format, workers):
    """Cross-ratio of four distinct collinear points, never 0, 1 or infinity."""
    if (points_file is None) == (field is None):
        raise click.UsageError("pass exactly one of --points or --exhaustive")
    started = start_clock()
    settings = resolve_settings(output_format, workers)
    service = get_service(settings)
    body = service.cross_ratio_exhaustive(field) if field is not None else service.cross_ratio_points(points_file)
    emit(body, started, settings)
