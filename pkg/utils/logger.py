import logging
import sys

_ROOT = "gws"
_FORMAT = "[%(asctime)s] [%(levelname)s] %(name)s: %(message)s"
_configured = False


def _configure() -> None:
    global _configured
    if _configured:
        return
    from config.settings import settings

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(_FORMAT, datefmt="%H:%M:%S"))
    root = logging.getLogger(_ROOT)
    root.addHandler(handler)
    root.setLevel(settings.LOG_LEVEL.upper())
    root.propagate = False
    _configured = True


def get_logger(name: str) -> logging.Logger:
    """Logger in the gws namespace, configured once from settings."""
    _configure()
    short = name.split(".", 1)[-1] if name.startswith(_ROOT + ".") else name
    return logging.getLogger(f"{_ROOT}.{short}")


def set_level(level: str) -> None:
    _configure()
    logging.getLogger(_ROOT).setLevel(level.upper())
