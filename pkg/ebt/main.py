import logging

from ebt.cli.main import app
from ebt.core.settings import settings

logging.basicConfig(
    level=settings.LOG_LEVEL.upper(),
    format="%(asctime)s %(levelname)s %(name)s %(message)s",
)


def main() -> None:
    app(prog_name=settings.PROJECT_NAME)


if __name__ == "__main__":
    main()
