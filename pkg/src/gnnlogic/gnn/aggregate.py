"""Multiset aggregation functions over exact rational vectors."""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

KINDS = ("max-k-sum", "max", "sum", "mean")


class AggregationError(ValueError):
    pass


def norm(x):
    """Collapse integral Fractions to int so exact arithmetic stays cheap."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


@dataclass(frozen=True)
class Aggregator:
    """``max-k-sum`` sums the k largest values per coordinate; ``max`` is
    the componentwise maximum (the same as max-1-sum).  ``sum`` and ``mean``
    are unbounded and exist for contrast only."""

    kind: str
    k: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise AggregationError(f"unknown aggregator kind {self.kind!r}")
        if self.kind == "max-k-sum":
            if not isinstance(self.k, int) or isinstance(self.k, bool) or self.k < 1:
                raise AggregationError(f"max-k-sum needs k >= 1, got {self.k!r}")
        elif self.k is not None:
            raise AggregationError(f"{self.kind} takes no k")

    @property
    def bounded(self) -> bool:
        return self.kind in ("max-k-sum", "max")

    @property
    def bound(self) -> int | None:
        """The k for which the aggregator is k-bounded, None if unbounded."""
        if self.kind == "max":
            return 1
        return self.k

    def name(self) -> str:
        return f"max-{self.k}-sum" if self.kind == "max-k-sum" else self.kind


def max_k_sum(k: int) -> Aggregator:
    return Aggregator("max-k-sum", k)


COMPONENTWISE_MAX = Aggregator("max")
SUM = Aggregator("sum")
MEAN = Aggregator("mean")


def aggregate_column(a: Aggregator, values: list):
    """Aggregate one coordinate; ``values`` may be empty (result 0)."""
    if not values:
        return 0
    if a.kind == "sum":
        return sum(values)
    if a.kind == "mean":
        return norm(Fraction(sum(values)) / len(values))
    k = a.bound
    if k == 1:
        return max(values)
    if k >= len(values):
        return sum(values)
    return sum(heapq.nlargest(k, values))


def aggregate(a: Aggregator, m, dim: int | None = None) -> tuple:
    """Aggregate a multiset (any iterable) of equal-length vectors.

    The empty multiset yields the zero vector, so ``dim`` is needed then.
    """
    vecs = [tuple(v) for v in m]
    if not vecs:
        if dim is None:
            raise AggregationError("dimension of an empty multiset is unknown")
        return (0,) * dim
    width = len(vecs[0]) if dim is None else dim
    for v in vecs:
        if len(v) != width:
            raise AggregationError(f"vector {v} does not have dimension {width}")
    return tuple(aggregate_column(a, [v[i] for v in vecs]) for i in range(width))


def cap_multiset(m, k: int) -> list:
    """Lower every multiplicity above k to k; first-occurrence order kept."""
    if k < 1:
        raise AggregationError("cap must be >= 1")
    counts = Counter()
    out = []
    for x in m:
        x = tuple(x) if isinstance(x, list) else x
        if counts[x] < k:
            counts[x] += 1
            out.append(x)
    return out
