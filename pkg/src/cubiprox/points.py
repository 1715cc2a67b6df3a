"""Points of R^n x R, as used by the epigraph, perspective and saddle operators."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True, eq=False)
class LabeledPoint:
    """A vector part in ``R^n`` (``n >= 1``) and a scalar part."""

    vec: np.ndarray
    scalar: float

    def __post_init__(self) -> None:
        vec = np.array(self.vec, dtype=np.float64, ndmin=1)
        if vec.ndim != 1:
            raise DomainError("vector part must be one-dimensional")
        scalar = float(self.scalar)
        if not (np.all(np.isfinite(vec)) and np.isfinite(scalar)):
            raise DomainError("point entries must be finite")
        vec.setflags(write=False)
        object.__setattr__(self, "vec", vec)
        object.__setattr__(self, "scalar", scalar)

    @property
    def n(self) -> int:
        return self.vec.shape[0]

    def as_array(self) -> np.ndarray:
        return np.append(self.vec, self.scalar)

    @classmethod
    def from_array(cls, arr) -> "LabeledPoint":
        arr = np.asarray(arr, dtype=np.float64)
        return cls(arr[:-1], arr[-1])

    def distance(self, other: "LabeledPoint") -> float:
        return float(np.linalg.norm(self.as_array() - other.as_array()))

    def allclose(self, other: "LabeledPoint", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.as_array(), other.as_array(), rtol=0.0, atol=atol))

    def __repr__(self) -> str:
        return f"LabeledPoint(vec={self.vec.tolist()}, scalar={self.scalar!r})"
