"""Block-matrix morphisms over fusion-tree bases"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.diagram.objects import Obj
from src.errors import ShapeMismatch


@dataclass(frozen=True, eq=False)
class Morphism:
    """blocks[c] maps the tree basis of hom(c, source) to that of hom(c, target)"""
    source: Obj
    target: Obj
    blocks: Tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(np.asarray(b, dtype=complex) for b in self.blocks))

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """self ∘ other"""
        if other.target != self.source:
            raise ShapeMismatch(f"cannot compose: {other.target} is not {self.source}")
        return Morphism(other.source, self.target, tuple(g @ f for g, f in zip(self.blocks, other.blocks)))

    def _check_parallel(self, other: "Morphism"):
        if self.source != other.source or self.target != other.target:
            raise ShapeMismatch("morphisms are not parallel")

    def __add__(self, other: "Morphism") -> "Morphism":
        self._check_parallel(other)
        return Morphism(self.source, self.target, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other: "Morphism") -> "Morphism":
        self._check_parallel(other)
        return Morphism(self.source, self.target, tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def __mul__(self, scalar) -> "Morphism":
        return Morphism(self.source, self.target, tuple(scalar * b for b in self.blocks))

    __rmul__ = __mul__

    def __neg__(self) -> "Morphism":
        return self * -1

    def norm(self) -> float:
        """Max absolute entry over all blocks"""
        return max((float(np.max(np.abs(b))) for b in self.blocks if b.size), default=0.0)

    def distance(self, other: "Morphism") -> float:
        return (self - other).norm()

    def is_endomorphism(self) -> bool:
        return self.source == self.target

    def vector(self) -> np.ndarray:
        """All block entries, block by block in row-major order"""
        parts = [b.ravel() for b in self.blocks]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=complex)

    def scalar(self) -> complex:
        """Value of an endomorphism of the unit"""
        if not (self.source.is_unit() and self.target.is_unit()):
            raise ShapeMismatch("scalar() needs a morphism 1 -> 1")
        return complex(self.blocks[0][0, 0])

    def __repr__(self):
        shapes = ", ".join(f"{b.shape[0]}x{b.shape[1]}" for b in self.blocks)
        return f"Morphism({self.source.summands} -> {self.target.summands}; {shapes})"
