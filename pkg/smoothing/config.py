# smoothing/config.py
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Union

from smoothing.backend import Backend, BackendKind

DEFAULT_MAX_ITERS = 100
# fraction of the bounding-box diagonal
DEFAULT_MOVE_TOL = 1e-6


class Form(str, Enum):
    """A: every candidate reads the previous pass. B: in-place, reads what is current."""
    A = "a"
    B = "b"


class Strategy(str, Enum):
    FUSED = "fused"
    TWO_PHASE = "twophase"


@dataclass(frozen=True)
class SmoothConfig:
    form: Union[Form, str] = Form.B
    strategy: Union[Strategy, str] = Strategy.FUSED
    backend: Union[BackendKind, str] = BackendKind.SERIAL
    workers: int = 1
    max_iters: int = DEFAULT_MAX_ITERS
    move_tol: float = DEFAULT_MOVE_TOL
    smart: bool = True

    def __post_init__(self):
        try:
            object.__setattr__(self, "form", Form(str(getattr(self.form, "value", self.form)).lower()))
            object.__setattr__(self, "strategy", Strategy(str(getattr(self.strategy, "value", self.strategy)).lower()))
            object.__setattr__(self, "backend", BackendKind(str(getattr(self.backend, "value", self.backend)).lower()))
        except ValueError as e:
            raise ValueError(f"invalid smoothing option: {e}") from None
        if isinstance(self.workers, bool) or int(self.workers) != self.workers or self.workers < 1:
            raise ValueError(f"workers must be an integer >= 1 (got {self.workers!r})")
        if isinstance(self.max_iters, bool) or int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ValueError(f"max_iters must be an integer >= 1 (got {self.max_iters!r})")
        if not (self.move_tol >= 0.0):
            raise ValueError(f"move_tol must be >= 0 (got {self.move_tol!r})")

    def make_backend(self) -> Backend:
        return Backend(self.backend, self.workers)

    @property
    def effective_workers(self) -> int:
        return self.workers if self.backend == BackendKind.PARALLEL else 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "form": self.form.value,
            "strategy": self.strategy.value,
            "backend": self.backend.value,
            "workers": self.effective_workers,
            "max_iters": int(self.max_iters),
            "move_tol": float(self.move_tol),
            "smart": bool(self.smart),
        }
