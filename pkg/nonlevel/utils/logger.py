import datetime
import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

import colorlog
from appdirs import user_log_dir

PROJECT_NAME = "nonlevel"

LOG_LEVELS = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
    "critical": logging.CRITICAL,
    "silent": logging.CRITICAL + 10,  # above CRITICAL, nothing gets through
}


class ConditionalColoredFormatter(colorlog.ColoredFormatter):
    """
    Colored formatter that switches format by level: DEBUG records carry the
    source location (useful when tracing a criterion), everything else is terse.
    """

    def __init__(self, fmt_debug: str, fmt_other: str, datefmt=None, log_colors=None):
        super().__init__(fmt=fmt_other, datefmt=datefmt, log_colors=log_colors)
        self.fmt_debug = fmt_debug
        self.fmt_other = fmt_other

    def format(self, record):
        original_fmt = self._style._fmt
        self._style._fmt = (
            self.fmt_debug if record.levelno == logging.DEBUG else self.fmt_other
        )
        try:
            return super().format(record)
        finally:
            self._style._fmt = original_fmt


class Logger:
    """Console + rotating-file logger for the nonlevel CLI.

    The console handler writes to stderr so that stdout stays reserved for
    command output (tables or JSON). File logging lands in the platform log
    directory (via appdirs) unless a path is given or file logging is off.
    Library code does not use this class; it logs through
    ``logging.getLogger("nonlevel")`` and inherits these handlers.
    """

    def __init__(
        self,
        verbosity: str = "info",
        log_file_path: Optional[Path] = None,
        log_to_file: bool = True,
        max_bytes: int = 5 * 1024 * 1024,  # 5 MB
        backup_count: int = 5,
        project_name: str = PROJECT_NAME,
    ):
        """
        Args:
            verbosity (str): Console level ('debug', 'info', 'warning',
                'error', 'critical', 'silent').
            log_file_path (Path, optional): Log file, or a directory in which a
                timestamped log file is created. Default: appdirs location.
            log_to_file (bool): Disable to keep the run free of file I/O.
            max_bytes (int): Size at which the log file is rotated.
            backup_count (int): Number of rotated files kept.
            project_name (str): Logger name and base name for log files.
        """
        self._logger = logging.getLogger(project_name)
        self._logger.setLevel(logging.DEBUG)
        self._logger.propagate = False

        # Re-initialization (tests call main() repeatedly) must not stack handlers
        self.close()

        self._logger.addHandler(self._console_handler(verbosity))

        self.log_file = None
        if log_to_file:
            self.log_file = self._resolve_log_file(log_file_path, project_name)
            self._logger.addHandler(
                self._file_handler(self.log_file, max_bytes, backup_count)
            )
            self._logger.debug(
                f"Logging to file: {self.log_file} "
                f"(maxBytes={max_bytes}, backupCount={backup_count})"
            )

    @staticmethod
    def _console_handler(verbosity: str) -> logging.Handler:
        handler = colorlog.StreamHandler()
        handler.setLevel(LOG_LEVELS.get(verbosity.lower(), logging.INFO))
        handler.setFormatter(
            ConditionalColoredFormatter(
                fmt_debug=(
                    "%(log_color)s[%(name)s - %(filename)s:%(lineno)d - "
                    "%(funcName)s - %(levelname)s]: %(message)s"
                ),
                fmt_other="%(log_color)s[%(name)s - %(levelname)s]: %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S",
                log_colors={
                    "DEBUG": "cyan",
                    "INFO": "green",
                    "WARNING": "yellow",
                    "ERROR": "red",
                    "CRITICAL": "bold_red",
                },
            )
        )
        return handler

    @staticmethod
    def _file_handler(path: Path, max_bytes: int, backup_count: int) -> logging.Handler:
        handler = RotatingFileHandler(
            path,
            mode="a",
            maxBytes=max_bytes,
            backupCount=backup_count,
            encoding="utf-8",
        )
        handler.setLevel(logging.DEBUG)
        handler.setFormatter(
            logging.Formatter(
                "[%(asctime)s - %(name)s - %(filename)s:%(lineno)d - "
                "%(funcName)s - %(levelname)s]: %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S",
            )
        )
        return handler

    @staticmethod
    def _resolve_log_file(log_file_path: Optional[Path], project_name: str) -> Path:
        """
        Map the user's choice to a concrete file: None means the appdirs
        default file, an existing directory or a suffix-less path means a
        timestamped file inside that directory, anything else is used as is.
        """
        if log_file_path is None:
            log_dir = Path(user_log_dir(appname=project_name, appauthor=False))
            log_dir.mkdir(parents=True, exist_ok=True)
            return log_dir / f"{project_name}.log"

        path = Path(log_file_path).expanduser().resolve()
        if path.is_dir() or (not path.exists() and not path.suffix):
            path.mkdir(parents=True, exist_ok=True)
            timestamp = datetime.datetime.now().strftime("%Y-%m-%d-%H-%M-%S")
            return path / f"{project_name}-{timestamp}.log"

        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def close(self):
        """Detach and close every handler on the underlying logger."""
        for handler in list(self._logger.handlers):
            self._logger.removeHandler(handler)
            handler.close()

    def __getattr__(self, name: str):
        """
        Delegate to the wrapped `logging.Logger`, so `logger.info(...)` works.
        """
        return getattr(self._logger, name)
