"""Single-producer / single-consumer Disruptor.

The pipeline is built from a pre-allocated ring buffer, two monotonic
sequences (the producer's *cursor* and the consumer's *gating* sequence), a
sequence barrier through which the consumer waits for new events, and a
pluggable wait strategy that decides how a blocked party burns time.

Memory ordering: the producer stores the slot before it stores the cursor
(release), and the consumer loads the cursor before it loads the slot
(acquire).  Under CPython every attribute store and load is performed while
holding the interpreter lock, which is sequentially consistent and therefore
at least as strong as release/acquire.  No mutex is taken on the
publish/consume path.

Typical use::

    ring = new_ring(1024)
    barrier = SequenceBarrier(ring, WaitStrategy.yielding())
    producer = Producer(ring, barrier)
    processor = EventProcessor(ring, barrier)
    t = threading.Thread(target=processor.run, args=(print_event,))
    t.start()
    for i in range(10):
        producer.on_data(f"Event {i}")
    processor.stop()
    t.join()
"""

from __future__ import annotations

import ctypes
import enum
import os
import threading
import time
from dataclasses import dataclass
from typing import Any, Callable, Optional

__all__ = [
    "CACHE_LINE_SIZE",
    "INITIAL_SEQUENCE",
    "CapacityNotPowerOfTwo",
    "CapacityZero",
    "Disruptor",
    "DisruptorError",
    "Event",
    "EventProcessor",
    "OutOfOrderPublish",
    "Producer",
    "RingBuffer",
    "Sequence",
    "SequenceBarrier",
    "Shutdown",
    "WaitKind",
    "WaitStrategy",
    "new_ring",
]

CACHE_LINE_SIZE = 64
INITIAL_SEQUENCE = -1  # "nothing published / nothing consumed"


class DisruptorError(Exception):
    pass


class CapacityZero(DisruptorError, ValueError):
    pass


class CapacityNotPowerOfTwo(DisruptorError, ValueError):
    pass


class OutOfOrderPublish(DisruptorError):
    pass


class Shutdown(DisruptorError):
    """Raised to a waiting party once the barrier has been alerted."""


class _PaddedCell(ctypes.Structure):
    # 56 bytes either side of an 8-byte aligned value: the cache line that
    # holds the value never contains bytes belonging to another object.
    _fields_ = [
        ("_pad_before", ctypes.c_int64 * 7),
        ("value", ctypes.c_int64),
        ("_pad_after", ctypes.c_int64 * 7),
    ]


class Sequence:
    """A monotonic 64-bit counter living on its own cache line.

    Internally the counter starts at ``INITIAL_SEQUENCE`` (-1).  ``count``
    gives the external view: the number of events published or consumed.
    """

    __slots__ = ("_cell",)

    def __init__(self, initial: int = INITIAL_SEQUENCE) -> None:
        self._cell = _PaddedCell(value=initial)

    def get(self) -> int:
        return self._cell.value

    def set(self, value: int) -> None:
        self._cell.value = value

    @property
    def count(self) -> int:
        return self._cell.value + 1

    def isolation_region(self) -> tuple[int, int, int]:
        """Return ``(region_start, region_end, value_address)`` in bytes."""
        start = ctypes.addressof(self._cell)
        return start, start + ctypes.sizeof(self._cell), start + _PaddedCell.value.offset

    def __repr__(self) -> str:
        return f"Sequence({self.get()})"


class Event:
    """Pre-allocated slot holder; the payload is overwritten in place."""

    __slots__ = ("payload",)

    def __init__(self, payload: Any = None) -> None:
        self.payload = payload

    def __repr__(self) -> str:
        return f"Event({self.payload!r})"


class RingBuffer:
    """Fixed array of ``Event`` slots indexed by ``sequence & (capacity - 1)``."""

    def __init__(self, capacity: int) -> None:
        if capacity <= 0:
            raise CapacityZero(f"capacity must be positive, got {capacity}")
        if capacity & (capacity - 1):
            raise CapacityNotPowerOfTwo(f"capacity must be a power of two, got {capacity}")
        self.capacity = capacity
        self.mask = capacity - 1
        self.slots: list[Event] = [Event() for _ in range(capacity)]
        self.cursor = Sequence()
        self.gating = Sequence()

    def __len__(self) -> int:
        return self.capacity

    def __getitem__(self, sequence: int) -> Event:
        return self.slots[sequence & self.mask]

    @property
    def published(self) -> int:
        return self.cursor.count

    @property
    def consumed(self) -> int:
        return self.gating.count

    def __repr__(self) -> str:
        return (
            f"RingBuffer(capacity={self.capacity}, published={self.published}, "
            f"consumed={self.consumed})"
        )


def new_ring(capacity: int) -> RingBuffer:
    return RingBuffer(capacity)


def _os_yield() -> None:
    os.sched_yield()


_yield: Callable[[], None] = _os_yield if hasattr(os, "sched_yield") else (lambda: time.sleep(0))


class WaitKind(enum.Enum):
    BUSY_SPIN = "spin"
    YIELD = "yield"
    SLEEP = "sleep"


@dataclass(frozen=True)
class WaitStrategy:
    """How a blocked producer or consumer waits.

    ``spin_tries`` idle calls return immediately before the strategy starts
    yielding (``YIELD``) or sleeping for ``sleep_ns`` (``SLEEP``).  A
    ``BUSY_SPIN`` strategy never gives up the CPU voluntarily; under CPython
    the interpreter's switch interval still forces a hand-off.
    """

    kind: WaitKind = WaitKind.YIELD
    spin_tries: int = 100
    sleep_ns: int = 100_000

    def __post_init__(self) -> None:
        if self.spin_tries < 0:
            raise ValueError("spin_tries must be >= 0")
        if self.sleep_ns <= 0:
            raise ValueError("sleep_ns must be > 0")

    @classmethod
    def busy_spin(cls) -> "WaitStrategy":
        return cls(WaitKind.BUSY_SPIN)

    @classmethod
    def yielding(cls, spin_tries: int = 100) -> "WaitStrategy":
        return cls(WaitKind.YIELD, spin_tries=spin_tries)

    @classmethod
    def sleeping(cls, sleep_ns: int = 100_000, spin_tries: int = 100) -> "WaitStrategy":
        return cls(WaitKind.SLEEP, spin_tries=spin_tries, sleep_ns=sleep_ns)

    @classmethod
    def from_name(cls, name: str) -> "WaitStrategy":
        return cls(WaitKind(name))

    def idle(self, attempt: int) -> None:
        if self.kind is WaitKind.BUSY_SPIN or attempt < self.spin_tries:
            return
        if self.kind is WaitKind.YIELD:
            _yield()
        else:
            time.sleep(self.sleep_ns * 1e-9)


class SequenceBarrier:
    """Consumer-side gate over the ring's cursor, with a cooperative stop flag."""

    def __init__(self, ring: RingBuffer, wait_strategy: Optional[WaitStrategy] = None) -> None:
        self.ring = ring
        self.wait_strategy = wait_strategy if wait_strategy is not None else WaitStrategy()
        self._alerted = False

    @property
    def alerted(self) -> bool:
        return self._alerted

    def alert(self) -> None:
        self._alerted = True

    def wait_for(self, wanted: int) -> int:
        """Block until ``wanted`` is published; return the highest published sequence.

        Raises ``Shutdown`` if the barrier is alerted while ``wanted`` is
        still unpublished.  Everything published before the alert is still
        returned, so a stopped consumer drains the buffer first.
        """
        cursor = self.ring.cursor
        available = cursor.get()
        if available >= wanted:
            return available
        idle = self.wait_strategy.idle
        attempt = 0
        while True:
            if self._alerted:
                available = cursor.get()
                if available >= wanted:
                    return available
                raise Shutdown(f"stopped while waiting for sequence {wanted}")
            idle(attempt)
            attempt += 1
            available = cursor.get()
            if available >= wanted:
                return available


class Producer:
    """The single writer.  Use from one thread at a time."""

    def __init__(self, ring: RingBuffer, barrier: SequenceBarrier) -> None:
        self.ring = ring
        self.barrier = barrier
        self._next = ring.cursor.get() + 1
        self._cached_gating = ring.gating.get()

    def _await_gating(self, wrap_point: int) -> int:
        gating = self.ring.gating
        idle = self.barrier.wait_strategy.idle
        attempt = 0
        while True:
            current = gating.get()
            if current >= wrap_point:
                return current
            if self.barrier.alerted:
                raise Shutdown("stopped while waiting for a free slot")
            idle(attempt)
            attempt += 1

    def claim_next(self) -> int:
        """Claim the next sequence, waiting while the buffer is full."""
        sequence = self._next
        wrap_point = sequence - self.ring.capacity
        if wrap_point > self._cached_gating:
            self._cached_gating = self._await_gating(wrap_point)
        self._next = sequence + 1
        return sequence

    def try_claim_next(self) -> Optional[int]:
        """Like ``claim_next`` but returns ``None`` instead of waiting."""
        sequence = self._next
        wrap_point = sequence - self.ring.capacity
        if wrap_point > self._cached_gating:
            self._cached_gating = self.ring.gating.get()
            if wrap_point > self._cached_gating:
                return None
        self._next = sequence + 1
        return sequence

    def publish(self, sequence: int, payload: Any) -> None:
        cursor = self.ring.cursor
        expected = cursor.get() + 1
        if sequence != expected:
            raise OutOfOrderPublish(f"published sequence {sequence}, expected {expected}")
        if sequence >= self._next:
            raise OutOfOrderPublish(f"sequence {sequence} was never claimed")
        self.ring.slots[sequence & self.ring.mask].payload = payload
        cursor.set(sequence)

    def on_data(self, payload: Any) -> int:
        """Claim, write and publish in one step; returns the sequence used."""
        ring = self.ring
        sequence = self._next
        if ring.cursor.get() + 1 != sequence:
            raise OutOfOrderPublish(f"sequence {sequence - 1} claimed but never published")
        wrap_point = sequence - ring.capacity
        if wrap_point > self._cached_gating:
            self._cached_gating = self._await_gating(wrap_point)
        self._next = sequence + 1
        ring.slots[sequence & ring.mask].payload = payload
        ring.cursor.set(sequence)
        return sequence


class EventProcessor:
    """The single consumer: drives ``handler(payload, sequence)`` in order."""

    def __init__(self, ring: RingBuffer, barrier: SequenceBarrier) -> None:
        self.ring = ring
        self.barrier = barrier
        self._running = threading.Lock()

    def run(self, handler: Callable[[Any, int], Any]) -> None:
        """Consume until ``stop()`` has been called and every published event is handled.

        If ``handler`` raises, the barrier is alerted (so a producer blocked
        on a full buffer is released with ``Shutdown``) and the exception
        propagates.
        """
        if not self._running.acquire(blocking=False):
            raise RuntimeError("EventProcessor.run is already active")
        try:
            ring = self.ring
            slots = ring.slots
            mask = ring.mask
            gating = ring.gating
            wait_for = self.barrier.wait_for
            next_sequence = gating.get() + 1
            while True:
                try:
                    available = wait_for(next_sequence)
                except Shutdown:
                    return
                try:
                    for sequence in range(next_sequence, available + 1):
                        handler(slots[sequence & mask].payload, sequence)
                except BaseException:
                    self.barrier.alert()
                    raise
                gating.set(available)
                next_sequence = available + 1
        finally:
            self._running.release()

    def stop(self) -> None:
        self.barrier.alert()


class Disruptor:
    """Wires a ring, barrier, producer and processor together."""

    def __init__(self, capacity: int, wait_strategy: Optional[WaitStrategy] = None) -> None:
        self.ring = RingBuffer(capacity)
        self.barrier = SequenceBarrier(self.ring, wait_strategy)
        self.producer = Producer(self.ring, self.barrier)
        self.processor = EventProcessor(self.ring, self.barrier)

    def start(self, handler: Callable[[Any, int], Any], name: str = "disruptor-consumer") -> threading.Thread:
        thread = threading.Thread(target=self.processor.run, args=(handler,), name=name, daemon=True)
        thread.start()
        return thread

    def on_data(self, payload: Any) -> int:
        return self.producer.on_data(payload)

    def stop(self) -> None:
        self.processor.stop()
