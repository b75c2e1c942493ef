# src/semiarith/core/operations/base.py
from __future__ import annotations

import logging
import sys
import time
from abc import ABC, abstractmethod
from collections.abc import Iterable, Iterator
from typing import Any, Generic, TypeVar

from pydantic import BaseModel
from tqdm import tqdm

from ..errors import InternalConsistencyError, SemiarithError
from .models import SemiarithConfig, default_config

T = TypeVar("T", bound=BaseModel)  # request model
R = TypeVar("R")  # operation result

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(level: str = "WARNING") -> None:
    """Route library logs to stderr in the standard format."""
    root = logging.getLogger("semiarith")
    root.setLevel(level)
    if not any(getattr(h, "_semiarith", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._semiarith = True  # type: ignore[attr-defined]
        root.addHandler(handler)


class Operation(ABC, Generic[T, R]):
    """Base class for enumerative computations.

    Subclasses implement ``_run``; ``execute`` adds logging, timing and
    uniform error reporting.
    """

    def __init__(
        self,
        config: SemiarithConfig | None = None,
        logger: logging.Logger | None = None,
    ) -> None:
        """
        Initialize operation.

        Args:
            config: Configuration; the process default when omitted
            logger: Optional logger instance
        """
        self.config = config or default_config()
        self.logger = logger or self._setup_logger()

    def _setup_logger(self) -> logging.Logger:
        """Set up logging for the operation."""
        return logging.getLogger(f"semiarith.operation.{self.__class__.__name__}")

    def progress(
        self, iterable: Iterable[Any], total: int | None = None, desc: str = "Processing"
    ) -> Iterator[Any]:
        """Wrap an iterable in a stderr progress bar unless disabled."""
        return iter(
            tqdm(
                iterable,
                total=total,
                desc=desc,
                leave=False,
                file=sys.stderr,
                disable=not self.config.runtime.progress,
            )
        )

    @abstractmethod
    def _run(self, request: T) -> R:
        """
        Perform the computation.

        Must be implemented by subclasses.
        """
        pass

    def execute(self, request: T) -> R:
        """
        Run the operation on a validated request.

        Raises:
            SemiarithError: precondition or consistency failures, unchanged
            InternalConsistencyError: for any other exception
        """
        name = self.__class__.__name__
        self.logger.info(f"Starting {name}: {request.model_dump_json()}")
        start = time.perf_counter()
        try:
            result = self._run(request)
        except SemiarithError as e:
            self.logger.error(f"{name} failed: {e}")
            raise
        except Exception as e:
            self.logger.error(f"Unexpected error type: {type(e)}")
            self.logger.error(f"Error message: {str(e)}")
            raise InternalConsistencyError(f"{name} failed: {e}") from e
        self.logger.info(f"{name} completed in {time.perf_counter() - start:.2f}s")
        return result
