import threading
from collections import defaultdict
from typing import Dict


class CallLedger:
    """Thread-safe per-tag tally of rank-oracle calls"""

    def __init__(self):
        self.counts: Dict[str, int] = defaultdict(int)
        self._lock = threading.Lock()

    def record(self, key: str = "default", amount: int = 1) -> None:
        """Record `amount` calls against `key`"""
        with self._lock:
            self.counts[key] += amount

    @property
    def total(self) -> int:
        with self._lock:
            return sum(self.counts.values())

    def get(self, key: str) -> int:
        with self._lock:
            return self.counts.get(key, 0)

    def snapshot(self) -> Dict[str, int]:
        """Copy of the current counts in key order"""
        with self._lock:
            return {key: self.counts[key] for key in sorted(self.counts)}

    def merge(self, other: "CallLedger") -> None:
        """Add another ledger's counts into this one"""
        for key, amount in other.snapshot().items():
            self.record(key, amount)
