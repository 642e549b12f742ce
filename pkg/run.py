"""Run script for the JCEntangle command line."""
import sys
from typing import Optional, Sequence

import click
from dotenv import load_dotenv

# .env must be loaded before config reads JCENT_* variables
load_dotenv()

from app import cli  # noqa: E402
from errors import JCEntangleError, OracleMismatchError  # noqa: E402

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ORACLE = 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and map failures onto exit codes: 1 usage, 2 oracle mismatch."""
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="jcent", standalone_mode=False)
    except OracleMismatchError as exc:
        click.echo(f"Error: oracle verification failed: {exc}", err=True)
        return EXIT_ORACLE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except (JCEntangleError, OSError) as exc:
        click.echo(f"Error: {exc}", err=True)
        return EXIT_USAGE
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
