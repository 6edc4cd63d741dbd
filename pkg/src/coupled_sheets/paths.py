"""Polyline paths in a complex plane and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class PathSpec:
    """A polyline starting at ``base`` and visiting ``vertices`` in order.

    A closed path returns to ``base`` after the last vertex.
    """

    base: complex
    vertices: tuple[complex, ...]
    closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "base", complex(self.base))
        object.__setattr__(self, "vertices", tuple(complex(v) for v in self.vertices))
        if not self.vertices:
            raise DomainError("a path needs at least one vertex")
        pts = np.array((self.base,) + self.vertices)
        if not np.all(np.isfinite(pts)):
            raise DomainError("path contains non-finite points")

    def points(self) -> list[complex]:
        """Traversal order with consecutive (near-)duplicates removed."""
        raw = [self.base, *self.vertices]
        if self.closed:
            raw.append(self.base)
        pts = [raw[0]]
        for p in raw[1:]:
            if abs(p - pts[-1]) > 1e-14 * (1.0 + abs(p)):
                pts.append(p)
        return pts

    def segments(self) -> list[tuple[complex, complex]]:
        pts = self.points()
        return list(zip(pts[:-1], pts[1:]))

    @property
    def end(self) -> complex:
        return self.points()[-1]

    @property
    def length(self) -> float:
        return float(sum(abs(b - a) for a, b in self.segments()))

    def reversed(self) -> PathSpec:
        if self.closed:
            return PathSpec(self.base, self.vertices[::-1], True)
        pts = self.points()
        if len(pts) == 1:
            return self
        return PathSpec(pts[-1], tuple(pts[-2::-1]), False)

    def then(self, other: PathSpec) -> PathSpec:
        """Concatenate: traverse ``self`` and continue along ``other``."""
        if abs(other.base - self.end) > 1e-12 * (1.0 + abs(self.end)):
            raise DomainError("paths do not join: %r != %r" % (self.end, other.base))
        verts = list(self.points()[1:]) + list(other.points()[1:])
        if not verts:
            verts = [self.base]
        if self.closed and other.closed:
            # drop the trailing return; closed=True restores it
            return PathSpec(self.base, tuple(verts[:-1]) or (self.base,), True)
        return PathSpec(self.base, tuple(verts), False)

    def mapped(self, fn, subdivisions: int = 1) -> PathSpec:
        """Image of the path under ``fn``, sampling each segment ``subdivisions`` times."""
        out = []
        for a, b in self.segments():
            for k in range(1, subdivisions + 1):
                out.append(fn(a + (b - a) * k / subdivisions))
        if self.closed:
            out = out[:-1] or [fn(self.base)]
        return PathSpec(fn(self.base), tuple(out) or (fn(self.base),), self.closed)

    def distance_to(self, point: complex) -> float:
        """Minimum distance from ``point`` to any point of the polyline."""
        best = abs(self.base - point)
        for a, b in self.segments():
            d = b - a
            t = ((point - a) * d.conjugate()).real / abs(d) ** 2
            t = min(1.0, max(0.0, t))
            best = min(best, abs(a + t * d - point))
        return best

    def to_json(self) -> dict:
        return {
            "base": [self.base.real, self.base.imag],
            "vertices": [[v.real, v.imag] for v in self.vertices],
            "closed": self.closed,
        }

    @classmethod
    def from_json(cls, obj) -> PathSpec:
        if isinstance(obj, (str, bytes)):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise DomainError("malformed path JSON: %s" % exc) from None
        if not isinstance(obj, dict):
            raise DomainError("path JSON must be an object")
        missing = {"base", "vertices", "closed"} - set(obj)
        if missing:
            raise DomainError("path JSON missing fields: %s" % ", ".join(sorted(missing)))
        if not isinstance(obj["closed"], bool):
            raise DomainError("'closed' must be a boolean")
        try:
            base = _pair(obj["base"])
            verts = tuple(_pair(v) for v in obj["vertices"])
        except (TypeError, ValueError) as exc:
            raise DomainError("bad coordinate in path JSON: %s" % exc) from None
        return cls(base, verts, obj["closed"])


def _pair(v) -> complex:
    if isinstance(v, (str, bytes)) or len(v) != 2:
        raise ValueError("expected [re, im], got %r" % (v,))
    return complex(float(v[0]), float(v[1]))


def load_path(filename) -> PathSpec:
    with open(filename) as fh:
        text = fh.read()
    return PathSpec.from_json(text)


def save_path(path: PathSpec, filename) -> None:
    with open(filename, "w") as fh:
        json.dump(path.to_json(), fh, indent=1)
        fh.write("\n")


def circle_path(center: complex, radius: float, segments: int = 64, orientation: int = 1) -> PathSpec:
    """Closed regular polygon approximating a circle, based at ``center + radius``."""
    if not radius > 0:
        raise DomainError("radius must be positive")
    if segments < 16:
        raise DomainError("need at least 16 segments")
    if orientation not in (1, -1):
        raise DomainError("orientation must be +1 or -1")
    k = np.arange(segments)
    verts = center + radius * np.exp(2j * np.pi * k / segments)
    if orientation == -1:
        verts = verts[::-1]
    return PathSpec(complex(center + radius), tuple(verts), True)


def segment_path(start: complex, end: complex) -> PathSpec:
    return PathSpec(start, (end,), False)
