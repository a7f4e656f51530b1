import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path

from qtorus.config import c_env

ROOT = "qtorus"

_DEFAULT_FMT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
_MAX_BYTES = 5 * 1024 * 1024  # 5 MiB
_BACKUPS = 3

# stdout belongs to reports; stderr only sees warnings unless asked
_stderr = logging.StreamHandler()
_stderr.setLevel(logging.WARNING)


def _configure_root(log_path: Path, level: int | str) -> logging.Logger:
    root = logging.getLogger(ROOT)
    if root.handlers:
        return root
    log_path.parent.mkdir(parents=True, exist_ok=True)
    fh = RotatingFileHandler(log_path, maxBytes=_MAX_BYTES, backupCount=_BACKUPS)
    fh.setLevel(logging.DEBUG)
    for h in (fh, _stderr):
        h.setFormatter(logging.Formatter(_DEFAULT_FMT))
        root.addHandler(h)
    root.setLevel(level)
    root.propagate = False
    return root


def get_logger(name: str) -> logging.Logger:
    """
    Module-level helper:

        log = get_logger(__name__)

    Every `qtorus.*` logger hangs off one root that writes to
    `c_env.QTORUS_LOG_FILE` at `c_env.QTORUS_LOG_LEVEL`.
    """
    _configure_root(c_env.QTORUS_LOG_FILE, c_env.QTORUS_LOG_LEVEL)
    if name != ROOT and not name.startswith(f"{ROOT}."):
        name = f"{ROOT}.{name}"
    return logging.getLogger(name)


def set_verbosity(verbose: int) -> None:
    """0 keeps the configured level, 1 logs INFO, 2 or more DEBUG; both echo to stderr."""
    if verbose <= 0:
        _stderr.setLevel(logging.WARNING)
        return
    level = logging.INFO if verbose == 1 else logging.DEBUG
    logging.getLogger(ROOT).setLevel(level)
    _stderr.setLevel(level)
