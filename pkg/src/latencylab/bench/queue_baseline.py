"""Lock-and-condition-variable FIFO used as the Disruptor's baseline."""

from __future__ import annotations

import collections
import threading
from typing import Any, Callable


class QueueClosed(RuntimeError):
    pass


class MutexQueueBaseline:
    """Unbounded queue: one lock guards the deque and a condition wakes the consumer.

    ``run`` returns only after ``close`` was called and the queue is empty,
    so nothing pushed before ``close`` is lost.
    """

    def __init__(self) -> None:
        self._items: collections.deque[Any] = collections.deque()
        self._cond = threading.Condition(threading.Lock())
        self._done = False

    def push(self, payload: Any) -> None:
        with self._cond:
            if self._done:
                raise QueueClosed("push after close")
            self._items.append(payload)
            self._cond.notify()

    def close(self) -> None:
        with self._cond:
            self._done = True
            self._cond.notify()

    def run(self, handler: Callable[[Any], Any]) -> None:
        cond = self._cond
        items = self._items
        while True:
            with cond:
                while not items and not self._done:
                    cond.wait()
                if not items:
                    return
                payload = items.popleft()
            handler(payload)

    def __len__(self) -> int:
        with self._cond:
            return len(self._items)
