"""The invariant-carrying working sequence of the linear-time reducer.

The stack holds alternating local minima and maxima, bottom to top, in a
*narrowing* shape: minima strictly increase, maxima strictly decrease, and
the bottom element is a minimum.  A conceptual ``+inf`` sits below the
bottom, which turns the two boundary rules (a leading descent, a leading
``231``) into ordinary instances of the interior rules.

Every comparison is on ``(value, index)`` pairs; nothing uses a tolerance.
"""

from __future__ import annotations

from typing import Optional

from .core import InvariantError, PersistencePair

__all__ = ["ReducerStack"]


def _lt(av: float, ai: int, bv: float, bi: int) -> bool:
    return av < bv or (av == bv and ai < bi)


class ReducerStack:
    """Streaming reducer for one function; feed values with :meth:`push`.

    Pairs found while pushing are collected internally and can be read
    with :meth:`pairs`.  ``pushes`` and ``pops`` count stack traffic.
    """

    def __init__(self):
        self.values: list[float] = []
        self.indices: list[int] = []
        self.birth_values: list[float] = []
        self.death_values: list[float] = []
        self.birth_indices: list[int] = []
        self.death_indices: list[int] = []
        self.pushes = 0
        self.pops = 0

    def __len__(self) -> int:
        return len(self.values)

    def _emit(self, lo: int, hi: int) -> None:
        # lo, hi: stack positions of the minimum and the maximum being paired
        self.birth_values.append(self.values[lo])
        self.birth_indices.append(self.indices[lo])
        self.death_values.append(self.values[hi])
        self.death_indices.append(self.indices[hi])

    def push(self, value: float, index: int) -> None:
        vals = self.values
        idxs = self.indices
        while True:
            s = len(vals)
            if s == 0:
                break
            t = s - 1
            if s & 1:
                # top is a minimum
                if _lt(value, index, vals[t], idxs[t]):
                    # 321 (or a leading 21): the old minimum is a monotone middle
                    del vals[t], idxs[t]
                    self.pops += 1
                    continue
                if s >= 2 and _lt(vals[t - 1], idxs[t - 1], value, index):
                    # 1324: minimum t and maximum t-1 pair off
                    self._emit(t, t - 1)
                    del vals[t - 1 :], idxs[t - 1 :]
                    self.pops += 2
                    continue
                break
            # top is a maximum
            if _lt(vals[t], idxs[t], value, index):
                # 123: drop the old maximum
                del vals[t], idxs[t]
                self.pops += 1
                continue
            if _lt(value, index, vals[t - 1], idxs[t - 1]):
                # 4231 (the 4 may be the +inf sentinel): pair minimum t-1 with maximum t
                self._emit(t - 1, t)
                del vals[t - 1 :], idxs[t - 1 :]
                self.pops += 2
                continue
            break
        vals.append(value)
        idxs.append(index)
        self.pushes += 1

    def teardown(self) -> PersistencePair:
        """Finish a function on a segment; returns the essential pair."""
        vals = self.values
        if not vals:
            raise InvariantError("teardown of an empty stack")
        if len(vals) % 2 == 0:
            # ends in 12: the last maximum merges nothing
            vals.pop()
            self.indices.pop()
            self.pops += 1
        while len(vals) > 1:
            t = len(vals) - 1
            self._emit(t, t - 1)
            del vals[t - 1 :], self.indices[t - 1 :]
            self.pops += 2
        return PersistencePair(vals[0], float("inf"), self.indices[0], None)

    def close_cycle(self) -> PersistencePair:
        """Finish a function on a circle whose traversal began at its global minimum.

        The wrap-around neighbour of the top is the bottom element, so a
        trailing minimum is a monotone middle and each remaining maximum
        kills the minimum just below it, until two values remain.
        """
        vals = self.values
        if not vals:
            raise InvariantError("close_cycle of an empty stack")
        if len(vals) > 1 and len(vals) % 2 == 1:
            vals.pop()
            self.indices.pop()
            self.pops += 1
        while len(vals) > 2:
            t = len(vals) - 1
            self._emit(t - 1, t)
            del vals[t - 1 :], self.indices[t - 1 :]
            self.pops += 2
        return PersistencePair(vals[0], float("inf"), self.indices[0], None)

    def pairs(self) -> list[PersistencePair]:
        return [
            PersistencePair(*row)
            for row in zip(self.birth_values, self.death_values, self.birth_indices, self.death_indices)
        ]

    def check_invariants(self) -> None:
        """Raise :class:`InvariantError` unless the stack is narrowing and starts with a minimum."""
        items = list(zip(self.values, self.indices))
        mins = items[0::2]
        maxs = items[1::2]
        for a, b in zip(mins, mins[1:]):
            if not a < b:
                raise InvariantError(f"minima not increasing: {a} then {b}")
        for a, b in zip(maxs, maxs[1:]):
            if not b < a:
                raise InvariantError(f"maxima not decreasing: {a} then {b}")
        if mins and maxs and not mins[-1] < maxs[-1]:
            raise InvariantError("a minimum exceeds a maximum")

    def snapshot(self) -> list[tuple[float, int]]:
        return list(zip(self.values, self.indices))

    @property
    def top(self) -> Optional[tuple[float, int]]:
        return (self.values[-1], self.indices[-1]) if self.values else None
