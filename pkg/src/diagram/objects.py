"""Objects of the skeletal category: formal direct sums of tensor words"""

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

Word = Tuple[int, ...]


def dual_word(word: Sequence[int], dual: Sequence[int]) -> Word:
    """(x_1 ... x_n)* = x_n* ... x_1*"""
    return tuple(dual[x] for x in reversed(word))


@dataclass(frozen=True)
class Obj:
    """Ordered direct sum of tensor words; the empty word is the unit"""
    summands: Tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(tuple(int(x) for x in w) for w in self.summands))

    @classmethod
    def unit(cls) -> "Obj":
        return cls(((),))

    @classmethod
    def zero(cls) -> "Obj":
        return cls(())

    @classmethod
    def simple(cls, label: int) -> "Obj":
        return cls(((label,),))

    @classmethod
    def word(cls, *labels: int) -> "Obj":
        return cls((tuple(labels),))

    @classmethod
    def sum_of(cls, words: Iterable[Sequence[int]]) -> "Obj":
        return cls(tuple(tuple(w) for w in words))

    def __len__(self):
        return len(self.summands)

    def __add__(self, other: "Obj") -> "Obj":
        return Obj(self.summands + other.summands)

    def tensor(self, other: "Obj") -> "Obj":
        """Summand (k, l) sits at position k * len(other) + l"""
        return Obj(tuple(u + v for u in self.summands for v in other.summands))

    def dual(self, dual: Sequence[int]) -> "Obj":
        return Obj(tuple(dual_word(w, dual) for w in self.summands))

    def summand(self, k: int) -> "Obj":
        return Obj((self.summands[k],))

    def is_unit(self) -> bool:
        return self.summands == ((),)


def tensor_all(objects: Sequence[Obj]) -> Obj:
    result = Obj.unit()
    for obj in objects:
        result = result.tensor(obj)
    return result
