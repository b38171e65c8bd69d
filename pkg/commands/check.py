# commands/check.py
import logging
from pathlib import Path

import click

from dependencies.options import emit, get_service, output_options, resolve_settings, start_clock

logger = logging.getLogger(__name__)


@click.command("check")
@click.argument("config_file", type=click.Path(dir_okay=False, path_type=Path))
@output_options
def check(config_file: Path, output_format, workers):
    """Decide Hesse's theorem for the quadrangle and form in CONFIG_FILE."""
    started = start_clock()
    settings = resolve_settings(output_format, workers)
    body = get_service(settings).check(config_file)
    emit(body, started, settings)
