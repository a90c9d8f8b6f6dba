"""Bit-encoded subsets and families of subsets of a small ground set.

Element ``i`` of the ground set corresponds to bit ``i`` of an integer code,
so ``0b101`` is the subset ``{0, 2}``.  A family is a strictly ascending tuple
of codes; building families through :func:`family` keeps them canonical, so
family equality is plain tuple equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

#: Largest supported ground set.  Anything quantifying over families of
#: subsets is doubly exponential in ``n``.
MAX_N = 5

SetFamily = Tuple[int, ...]


class CapacityError(ValueError):
    """Requested size exceeds a documented bound."""


class InvalidCodeError(ValueError):
    """A subset code has bits outside the ground set."""


@dataclass(frozen=True)
class GroundSet:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"ground set size must be a positive integer, got {self.n!r}")
        if self.n > MAX_N:
            raise CapacityError(f"n={self.n} exceeds the supported bound {MAX_N}")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def check(self, a: int) -> int:
        if not isinstance(a, int) or a < 0 or a & ~self.full:
            raise InvalidCodeError(f"code {a!r} is not a subset of a {self.n}-element set")
        return a

    def codes(self) -> range:
        return range(self.full + 1)


def complement(a: int, g: GroundSet) -> int:
    return g.full & ~g.check(a)


def powerset(g: GroundSet) -> SetFamily:
    if g.n > MAX_N:
        raise CapacityError(f"n={g.n} exceeds the supported bound {MAX_N}")
    return tuple(g.codes())


def family(codes: Iterable[int], g: GroundSet) -> SetFamily:
    """Canonical family: validated, deduplicated, ascending."""
    return tuple(sorted({g.check(c) for c in codes}))


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def submasks(a: int) -> Iterator[int]:
    """All subsets of ``a`` in ascending order."""
    return (b for b in range(a + 1) if b & ~a == 0)


def members(a: int) -> list[int]:
    return [i for i in range(a.bit_length()) if a >> i & 1]


def is_downward_closed(F: Iterable[int], g: GroundSet) -> bool:
    fs = {g.check(a) for a in F}
    return all(b in fs for a in fs for b in submasks(a))


def roster(a: int) -> str:
    return "{" + ",".join(str(i) for i in members(a)) + "}"


def binary(a: int, g: GroundSet) -> str:
    return "0b" + format(a, f"0{g.n}b")


def describe_code(a: int, g: GroundSet) -> str:
    return f"{binary(a, g)} = {roster(a)}"
