import time
from collections import defaultdict
from contextlib import contextmanager
from typing import Dict, Iterator

# Phases of one smoothing run, in pipeline order.
PHASES = ("init", "topo", "constr", "iter")


class PhaseTimer:
    """
    Accumulates wall time per named phase.
    Times are kept in seconds and reported in milliseconds.
    """

    def __init__(self):
        self.elapsed: Dict[str, float] = defaultdict(float)

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.elapsed[name] += time.perf_counter() - start

    def record(self, name: str, seconds: float) -> None:
        self.elapsed[name] += float(seconds)

    def ms(self, name: str) -> float:
        return self.elapsed.get(name, 0.0) * 1000.0

    def summary(self) -> Dict[str, float]:
        """
        JSON-serializable `<phase>_ms` map plus `total_ms`; every phase in
        PHASES is present even if it never ran.
        """
        out = {f"{p}_ms": round(self.ms(p), 6) for p in PHASES}
        for name in self.elapsed:
            if name not in PHASES:
                out[f"{name}_ms"] = round(self.ms(name), 6)
        out["total_ms"] = round(sum(self.elapsed.values()) * 1000.0, 6)
        return out

    def reset(self) -> None:
        self.elapsed.clear()
