"""
Process-wide counters and timing histograms, rendered in Prometheus text format.

Counters in use: pipeline_runs_total, pipeline_errors_total, solves_total,
sweep_rows_total, singular_skips_total, resonance_errors_total,
resonances_found_total, verification_failures_total.
Histograms: pipeline_run_duration_seconds, solve_duration_seconds.
"""
import threading
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Optional, Tuple


@dataclass
class _Summary:
    """Running count and sum; observations are not retained."""
    count: int = 0
    total: float = 0.0

    def add(self, value: float) -> None:
        self.count += 1
        self.total += value


class MetricsCollector:
    _instance = None
    _lock = threading.Lock()

    def __new__(cls):
        with cls._lock:
            if cls._instance is None:
                cls._instance = super(MetricsCollector, cls).__new__(cls)
                cls._instance._update_lock = threading.Lock()
                cls._instance.reset()
        return cls._instance

    def reset(self):
        with self._update_lock:
            self.counters: Dict[str, int] = defaultdict(int)
            self.histograms: Dict[str, _Summary] = defaultdict(_Summary)

    def inc(self, name: str, value: int = 1, labels: Optional[Dict[str, str]] = None):
        key = self._format_key(name, labels)
        with self._update_lock:
            self.counters[key] += value

    def observe(self, name: str, value: float, labels: Optional[Dict[str, str]] = None):
        key = self._format_key(name, labels)
        with self._update_lock:
            self.histograms[key].add(value)

    def counter(self, name: str, labels: Optional[Dict[str, str]] = None) -> int:
        return self.counters.get(self._format_key(name, labels), 0)

    def summary(self, name: str, labels: Optional[Dict[str, str]] = None) -> Tuple[int, float]:
        """(count, sum) of the observations recorded under name."""
        s = self.histograms.get(self._format_key(name, labels))
        return (s.count, s.total) if s else (0, 0.0)

    def _format_key(self, name: str, labels: Optional[Dict[str, str]] = None) -> str:
        if not labels:
            return name
        label_str = ",".join([f'{k}="{v}"' for k, v in sorted(labels.items())])
        return f'{name}{{{label_str}}}'

    def generate_prometheus_output(self) -> str:
        lines = []
        with self._update_lock:
            counters = sorted(self.counters.items())
            histograms = sorted((k, v.count, v.total) for k, v in self.histograms.items())

        typed = set()
        for key, val in counters:
            base_name = key.split('{')[0]
            if base_name not in typed:
                lines.append(f"# TYPE {base_name} counter")
                typed.add(base_name)
            lines.append(f"{key} {val}")

        # summary-style: sum and count only
        for key, count, total in histograms:
            base_name = key.split('{')[0]
            label_part = key[len(base_name):] if '{' in key else ''
            if base_name not in typed:
                lines.append(f"# TYPE {base_name} histogram")
                typed.add(base_name)
            lines.append(f"{base_name}_sum{label_part} {total}")
            lines.append(f"{base_name}_count{label_part} {count}")

        return "\n".join(lines) + "\n"

metrics = MetricsCollector()
