# commands/degeneracy.py
from pathlib import Path

import click

from dependencies.options import FIELD, emit, get_service, output_options, resolve_settings, start_clock


@click.command("degeneracy")
@click.option("--form-file", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="JSON file with a 2x2 form.")
@click.option("--exhaustive", "field", type=FIELD, default=None,
              help="Check every symmetric 2x2 form over 'gf:p'.")
@click.option("--seed", type=int, default=None, help="Seed for sampled quadruples over the rationals.")
@output_options
def degeneracy(form_file, field, seed, output_format, workers):
    """Degeneracy of a form on a projective line: determinant versus the quadruple identity."""
    if (form_file is None) == (field is None):
        raise click.UsageError("pass exactly one of --form-file or --exhaustive")
    started = start_clock()
    settings = resolve_settings(output_format, workers)
    service = get_service(settings)
    if field is not None:
        body = service.degeneracy_exhaustive(field)
    else:
        body = service.degeneracy_form(form_file, settings.seed if seed is None else seed)
    emit(body, started, settings)
