# /main.py
import logging
import sys

import click

from commands import commands
from config.settings import get_settings
from services.exceptions import HesseError

EXIT_INPUT_ERROR = 1

# Configure logging
logging.basicConfig(
    level=get_settings().log_level.upper(),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.StreamHandler()
    ]
)
logger = logging.getLogger(__name__)


class HesseGroup(click.Group):
    """
    Maps failures onto the exit-code contract: 0 success, 1 input error, 2 tripwire.

    Click's own usage errors would otherwise exit with 2, which is reserved.
    """

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.ClickException as e:
            if not standalone_mode:
                raise
            e.show()
            sys.exit(EXIT_INPUT_ERROR)
        except click.exceptions.Abort:
            if not standalone_mode:
                raise
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_INPUT_ERROR)
        except HesseError as e:
            if not standalone_mode:
                raise
            logger.error(f"{type(e).__name__}: {e.detail}")
            click.echo(f"Error: {type(e).__name__}: {e.detail}", err=True)
            sys.exit(e.exit_code)
        if standalone_mode:
            sys.exit(rv if isinstance(rv, int) else 0)
        return rv


@click.group(cls=HesseGroup)
@click.version_option("0.1.0", prog_name="hesse")
def cli():
    """Exact verification of Hesse's theorem on quadrangles and quadrics over Q and GF(p)."""


for command in commands:
    cli.add_command(command)


if __name__ == "__main__":
    cli()
