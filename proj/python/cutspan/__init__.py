"""Exact block splits, cutpoints and block realizations of finite metrics.

Distances and map values are returned as ``fractions.Fraction``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import _cutspan
from ._cutspan import (
    CapExceeded,
    CutspanError,
    MetricError,
    ParseError,
    RealizationCheckFailed,
    UnknownPoint,
)

Number = Union[int, str, Fraction]

__all__ = [
    "Metric",
    "parse_matrix",
    "isolation_index",
    "cut_points",
    "block_splits",
    "realize",
    "realize_dot",
    "decompose",
    "verify",
    "reference_cut_points",
    "generate_block_instance",
    "random_metric",
    "CutspanError",
    "MetricError",
    "ParseError",
    "CapExceeded",
    "RealizationCheckFailed",
    "UnknownPoint",
]


def _exact(v: Number) -> str:
    if isinstance(v, float):
        raise TypeError("floats are not exact; pass int, str or Fraction")
    return str(Fraction(v))


def _fractions(doc):
    # Rational fields come as "p/q" strings with a sibling "<key>_approx";
    # convert the former and drop the latter.
    if isinstance(doc, list):
        return [_fractions(x) for x in doc]
    if not isinstance(doc, dict):
        return doc
    out = {}
    for key, value in doc.items():
        if key.endswith("_approx"):
            continue
        if key + "_approx" in doc:
            out[key] = _to_fraction(value)
        else:
            out[key] = _fractions(value)
    return out


def _to_fraction(value):
    if isinstance(value, list):
        return [_to_fraction(x) for x in value]
    return Fraction(value)


class Metric:
    """A validated finite metric with exact rational distances."""

    def __init__(self, labels: Sequence[str], rows: Iterable[Iterable[Number]]):
        self._m = _cutspan.Metric(list(labels), [[_exact(v) for v in row] for row in rows])

    @classmethod
    def _wrap(cls, m) -> "Metric":
        obj = cls.__new__(cls)
        obj._m = m
        return obj

    @property
    def labels(self) -> list[str]:
        return list(self._m.labels)

    def __len__(self) -> int:
        return len(self._m)

    def __eq__(self, other) -> bool:
        return isinstance(other, Metric) and self._m == other._m

    def __getitem__(self, pair) -> Fraction:
        x, y = (self._m.index_of(p) if isinstance(p, str) else p for p in pair)
        return Fraction(self._m.distance(x, y))

    def table(self) -> list[list[Fraction]]:
        return [[Fraction(v) for v in row] for row in self._m.table()]

    def subset(self, points: Sequence[Union[int, str]]) -> "Metric":
        idx = [self._m.index_of(p) if isinstance(p, str) else p for p in points]
        return Metric._wrap(self._m.subset(idx))

    def format(self, fmt: str = "csv") -> str:
        return self._m.format(fmt)

    def __repr__(self) -> str:
        return f"Metric({self.labels!r})"


def parse_matrix(text: str, format: str = "csv") -> Metric:
    return Metric._wrap(_cutspan.parse_matrix(text, format))


def isolation_index(d: Metric, side: Sequence[str]) -> Fraction:
    return Fraction(_cutspan.isolation_index(d._m, list(side)))


def cut_points(d: Metric) -> dict:
    """Cutpoints (Kuratowski maps first) and block splits."""
    return _fractions(json.loads(_cutspan.cut_points(d._m)))


def block_splits(d: Metric) -> list[dict]:
    return cut_points(d)["block_splits"]


def realize(d: Metric) -> dict:
    return _fractions(json.loads(_cutspan.realize(d._m)))


def realize_dot(d: Metric) -> str:
    return _cutspan.realize_dot(d._m)


def decompose(d: Metric) -> dict:
    return _fractions(json.loads(_cutspan.decompose(d._m)))


def verify(d: Metric, cap: int = 10) -> dict:
    return json.loads(_cutspan.verify(d._m, cap))


def reference_cut_points(d: Metric, cap: int = 16) -> dict:
    return _fractions(json.loads(_cutspan.reference_cut_points(d._m, cap)))


def generate_block_instance(n: int, seed: int) -> Metric:
    return Metric._wrap(_cutspan.generate_block_instance(n, seed))


def random_metric(n: int, seed: int) -> Metric:
    return Metric._wrap(_cutspan.random_metric(n, seed))
