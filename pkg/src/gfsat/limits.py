"""Wall-clock budget threaded through the solver's long-running loops."""

from __future__ import annotations

import time
from typing import Optional


class BudgetExceeded(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class Budget:
    """Deadline checker; check() is cheap enough for inner loops."""

    __slots__ = ("deadline", "_count")

    def __init__(self, timeout_s: Optional[float] = None):
        self.deadline = None if timeout_s is None else time.monotonic() + timeout_s
        self._count = 0

    def check(self) -> None:
        if self.deadline is None:
            return
        self._count += 1
        if self._count & 15:
            return
        if time.monotonic() > self.deadline:
            raise BudgetExceeded("timeout")

    def check_now(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("timeout")
