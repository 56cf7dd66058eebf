"""Domain types shared by the reducers, the oracle and the CLI.

Values are compared under a strict total order: ``(value, index)``
lexicographically, so a tie in value is broken in favour of the earlier
sample being smaller.  Runs of consecutive equal samples are represented by
the smallest index of the run.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

import numpy as np

__all__ = [
    "InputError",
    "InvariantError",
    "Topology",
    "Ordering",
    "OrderedValue",
    "PersistencePair",
    "FunctionSample",
    "Diagram",
    "FunctionPair",
    "compare",
    "diagram_equal",
    "format_value",
]


class InputError(ValueError):
    """Malformed or invalid user input (empty sample, NaN, bad file...)."""


class InvariantError(RuntimeError):
    """An internal invariant did not hold. Indicates a bug, not bad input."""


class Topology(enum.Enum):
    LINE = "line"
    CIRCLE = "circle"


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class OrderedValue(NamedTuple):
    """A sample value tagged with its position in the input array.

    Tuple ordering is exactly the simplicity order used everywhere.
    """

    value: float
    index: int


def compare(a: OrderedValue, b: OrderedValue) -> Ordering:
    """Compare two ordered values; distinct indices never compare equal.

    >>> compare(OrderedValue(1.0, 3), OrderedValue(1.0, 5))
    <Ordering.LESS: -1>
    """
    if a.index == b.index:
        if a.value != b.value:
            raise ValueError(f"same index {a.index} carries two values")
        return Ordering.EQUAL
    if a.value < b.value or (a.value == b.value and a.index < b.index):
        return Ordering.LESS
    return Ordering.GREATER


class PersistencePair(NamedTuple):
    birth_value: float
    death_value: float
    birth_index: int
    death_index: Optional[int]

    @property
    def essential(self) -> bool:
        return self.death_index is None

    @property
    def persistence(self) -> float:
        return self.death_value - self.birth_value


def _as_float_array(values) -> np.ndarray:
    arr = np.ascontiguousarray(values, dtype=np.float64)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    return arr


def check_finite(arr: np.ndarray) -> None:
    """Raise :class:`InputError` naming the first non-finite entry."""
    if arr.size == 0:
        raise InputError("empty sample")
    finite = np.isfinite(arr)
    if not finite.all():
        i = int(np.argmin(finite))
        raise InputError(f"non-finite value at index {i}")


@dataclass(frozen=True)
class FunctionSample:
    """Sampled piecewise-linear function on a path or a cycle."""

    values: np.ndarray
    topology: Topology = Topology.LINE

    def __post_init__(self):
        arr = _as_float_array(self.values)
        check_finite(arr)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return len(self.values)

    @classmethod
    def coerce(cls, data, topology: Topology = Topology.LINE) -> "FunctionSample":
        if isinstance(data, cls):
            if data.topology is not topology:
                return cls(data.values, topology)
            return data
        return cls(data, topology)


def format_value(x: float) -> str:
    """Shortest round-trip decimal, without a trailing ``.0``."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    s = repr(float(x))
    if s.endswith(".0"):
        s = s[:-2]
    return s


_EMPTY_F = np.empty(0, dtype=np.float64)
_EMPTY_I = np.empty(0, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class Diagram:
    """A 0-dimensional persistence diagram.

    Finite pairs live in four parallel arrays so diagrams with tens of
    millions of pairs stay cheap; :meth:`pairs` materialises tuples on demand.
    There is always exactly one essential pair.
    """

    essential_value: float
    essential_index: int
    birth_values: np.ndarray = field(default_factory=lambda: _EMPTY_F)
    death_values: np.ndarray = field(default_factory=lambda: _EMPTY_F)
    birth_indices: np.ndarray = field(default_factory=lambda: _EMPTY_I)
    death_indices: np.ndarray = field(default_factory=lambda: _EMPTY_I)

    def __post_init__(self):
        n = len(self.birth_values)
        if not (len(self.death_values) == len(self.birth_indices) == len(self.death_indices) == n):
            raise InvariantError("diagram arrays differ in length")

    @classmethod
    def from_pairs(cls, pairs: Iterable[PersistencePair]) -> "Diagram":
        finite = []
        essential = []
        for p in pairs:
            (essential if p.death_index is None else finite).append(p)
        if len(essential) != 1:
            raise InvariantError(f"expected one essential pair, got {len(essential)}")
        e = essential[0]
        if not finite:
            return cls(float(e.birth_value), int(e.birth_index))
        bv, dv, bi, di = zip(*finite)
        return cls(
            float(e.birth_value),
            int(e.birth_index),
            np.asarray(bv, dtype=np.float64),
            np.asarray(dv, dtype=np.float64),
            np.asarray(bi, dtype=np.int64),
            np.asarray(di, dtype=np.int64),
        )

    @property
    def essential(self) -> PersistencePair:
        return PersistencePair(self.essential_value, math.inf, self.essential_index, None)

    @property
    def n_finite(self) -> int:
        return len(self.birth_values)

    def __len__(self) -> int:
        return self.n_finite + 1

    def finite_pairs(self) -> Iterator[PersistencePair]:
        for bv, dv, bi, di in zip(
            self.birth_values.tolist(),
            self.death_values.tolist(),
            self.birth_indices.tolist(),
            self.death_indices.tolist(),
        ):
            yield PersistencePair(bv, dv, bi, di)

    def pairs(self) -> list[PersistencePair]:
        return [*self.finite_pairs(), self.essential]

    def __iter__(self):
        return iter(self.pairs())

    def sorted_order(self) -> np.ndarray:
        """Finite-pair permutation sorted by (birth_value, birth_index)."""
        return np.lexsort((self.birth_indices, self.birth_values))

    def csv_rows(self) -> Iterator[str]:
        order = self.sorted_order()
        bv = self.birth_values[order].tolist()
        dv = self.death_values[order].tolist()
        bi = self.birth_indices[order].tolist()
        di = self.death_indices[order].tolist()
        for b, d, i, j in zip(bv, dv, bi, di):
            yield f"{format_value(b)},{format_value(d)},{i},{j}\n"
        yield f"{format_value(self.essential_value)},inf,{self.essential_index},\n"

    def to_csv(self) -> str:
        return "".join(self.csv_rows())

    def values_multiset(self) -> list[tuple[float, float]]:
        return sorted(zip(self.birth_values.tolist(), self.death_values.tolist())) + [
            (self.essential_value, math.inf)
        ]

    def full_multiset(self) -> list[tuple[float, float, int, int]]:
        rows = sorted(
            zip(
                self.birth_values.tolist(),
                self.death_values.tolist(),
                self.birth_indices.tolist(),
                self.death_indices.tolist(),
            )
        )
        return rows + [(self.essential_value, math.inf, self.essential_index, -1)]

    def __repr__(self) -> str:
        shown = ", ".join(
            f"({format_value(p.birth_value)},{format_value(p.death_value)})" for p in self.pairs()[:8]
        )
        more = ", ..." if len(self) > 8 else ""
        return f"Diagram([{shown}{more}])"


def diagram_equal(d1: Diagram, d2: Diagram, mode: str = "values") -> bool:
    """Multiset equality of two diagrams.

    ``mode`` is ``"values"`` (birth/death values only) or ``"indices"``
    (values and the reported sample indices).
    """
    if mode == "values":
        return d1.values_multiset() == d2.values_multiset()
    if mode == "indices":
        return d1.full_multiset() == d2.full_multiset()
    raise ValueError(f"unknown comparison mode {mode!r}")


def strict_minima_count(values: Sequence[float], cyclic: bool = False) -> int:
    """Number of strict local minima after collapsing runs of equal samples."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        return 0
    keep = np.ones(arr.size, dtype=bool)
    keep[1:] = arr[1:] != arr[:-1]
    runs = arr[keep]
    if cyclic and runs.size > 1 and runs[0] == runs[-1]:
        runs = runs[:-1]
    if runs.size == 1:
        return 1
    if cyclic:
        left = np.roll(runs, 1)
        right = np.roll(runs, -1)
        return int(np.count_nonzero((runs < left) & (runs < right)))
    left = np.concatenate(([np.inf], runs[:-1]))
    right = np.concatenate((runs[1:], [np.inf]))
    return int(np.count_nonzero((runs < left) & (runs < right)))


@dataclass(frozen=True)
class FunctionPair:
    """Two sampled functions on the same segment with ``f <= g`` everywhere."""

    f: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        f = _as_float_array(self.f)
        g = _as_float_array(self.g)
        if f.size != g.size:
            raise InputError("length mismatch")
        check_finite(f)
        check_finite(g)
        bad = f > g
        if bad.any():
            raise InputError(f"dominance violated at index {int(np.argmax(bad))}")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)

    def __len__(self) -> int:
        return len(self.f)

    @classmethod
    def coerce(cls, f, g=None) -> "FunctionPair":
        if isinstance(f, cls) and g is None:
            return f
        return cls(f, g)
