import sys
import logging
from datetime import datetime
from pathlib import Path
from typing import Optional, Sequence

# Ensure package root (src) is on sys.path when running this file directly
_package_root = Path(__file__).resolve().parents[1]
if str(_package_root) not in sys.path:
    sys.path.insert(0, str(_package_root))

from pellsolver.cli import run

FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(verbose: bool = False, log_dir: Optional[Path] = None) -> Optional[Path]:
    """Root handlers: stderr console plus a per-launch file in log_dir.

    Returns the log file path, or None when file logging is off or fails.
    """
    logger = logging.getLogger()
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)
    formatter = logging.Formatter(FORMAT)

    ch = logging.StreamHandler(sys.stderr)
    ch.setFormatter(formatter)
    ch.setLevel(logging.DEBUG if verbose else logging.WARNING)
    logger.addHandler(ch)

    if log_dir is None:
        return None
    try:
        log_dir.mkdir(parents=True, exist_ok=True)
        log_file = log_dir / f"pellsolver_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log"
        fh = logging.FileHandler(log_file, encoding='utf-8')
        fh.setFormatter(formatter)
        logger.addHandler(fh)
    except OSError as e:
        # Do not fail a run purely because the log directory is unwritable
        logger.warning(f"File logging disabled: {e}")
        return None
    return log_file


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv, configure=configure_logging))


if __name__ == "__main__":
    main()
