# smoothing/stats.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List

STOP_MAX_ITERS = "max_iters"
STOP_TOLERANCE = "tolerance"
STOP_NO_MOVES = "no_moves"


@dataclass
class RunStats:
    iterations: int = 0
    stop_reason: str = STOP_MAX_ITERS
    phase_ms: Dict[str, float] = field(default_factory=dict)
    accepted: List[int] = field(default_factory=list)
    max_displacement: List[float] = field(default_factory=list)
    min_alpha_series: List[float] = field(default_factory=list)
    min_alpha_before: float = float("nan")
    min_alpha_after: float = float("nan")
    mean_alpha_before: float = float("nan")
    mean_alpha_after: float = float("nan")
    precision: str = "double"
    config: Dict[str, Any] = field(default_factory=dict)

    @property
    def total_ms(self) -> float:
        return float(self.phase_ms.get("total_ms", 0.0))

    def record_pass(self, accepted: int, max_disp: float, min_alpha: float) -> None:
        self.iterations += 1
        self.accepted.append(int(accepted))
        self.max_displacement.append(float(max_disp))
        self.min_alpha_series.append(float(min_alpha))

    def passes(self) -> List[Dict[str, Any]]:
        """One record per pass, for --trace output."""
        return [
            {"pass": i + 1, "accepted": a, "max_displacement": d, "min_alpha": m}
            for i, (a, d, m) in enumerate(zip(self.accepted, self.max_displacement, self.min_alpha_series))
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "iterations": self.iterations,
            "stop_reason": self.stop_reason,
            **{k: float(v) for k, v in self.phase_ms.items()},
            "min_alpha_before": self.min_alpha_before,
            "min_alpha_after": self.min_alpha_after,
            "mean_alpha_before": self.mean_alpha_before,
            "mean_alpha_after": self.mean_alpha_after,
            "accepted": list(self.accepted),
            "max_displacement": list(self.max_displacement),
            "min_alpha_series": list(self.min_alpha_series),
            "precision": self.precision,
            "config": dict(self.config),
        }
