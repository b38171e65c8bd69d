# commands/demo.py
import click

from dependencies.options import RATIONAL, TRIANGLE, emit, get_service, output_options, resolve_settings, start_clock


@click.command("demo")
@click.option("--triangle", type=TRIANGLE, required=True, help="Vertices 'x1,y1;x2,y2;x3,y3'.")
@click.option("--radius-sq", "radii_sq", type=RATIONAL, multiple=True, default=("1",), show_default=True,
              help="Squared radius of a circle centered at the orthocenter; repeatable.")
@click.option("--allow-degenerate", is_flag=True, help="Accept radius^2 = 0, a degenerate conic.")
@output_options
def demo(triangle, radii_sq, allow_degenerate: bool, output_format, workers):
    """Concurrency of the altitudes, recovered from Hesse's theorem on circles around H."""
    started = start_clock()
    settings = resolve_settings(output_format, workers)
    body = get_service(settings).demo(triangle, list(radii_sq), allow_degenerate)
    emit(body, started, settings)
