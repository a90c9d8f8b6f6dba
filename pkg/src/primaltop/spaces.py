"""Topologies, primals and grills on a finite ground set.

A primal on ``X`` is a family that omits ``X``, is closed downward, and is
prime with respect to intersection.  On a finite set the non-members form a
principal filter, so every primal is ``P_B = {A : B not a subset of A}`` for a
unique generator ``B`` (the intersection of all non-members).  That fact is
checked exhaustively in the test-suite rather than assumed here: the
validators only ever look at the axioms.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Iterable, Optional

from .setcore import GroundSet, SetFamily, complement, family, is_subset, submasks


class AxiomError(ValueError):
    """A family fails one of the structure's axioms.

    ``kind`` names the violated axiom (``missing-empty``, ``not-prime``, ...)
    and ``witness`` holds the offending codes, first in ascending scan order.
    """

    def __init__(self, kind: str, witness: tuple = ()):
        self.kind = kind
        self.witness = tuple(witness)
        text = f"{kind}({', '.join(str(w) for w in self.witness)})" if self.witness else kind
        super().__init__(text)


def _pairs(codes):
    return combinations_with_replacement(codes, 2)


# ---------------------------------------------------------------------------
# topologies
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Topology:
    g: GroundSet
    open: SetFamily

    @cached_property
    def open_set(self) -> frozenset:
        return frozenset(self.open)

    @cached_property
    def closed(self) -> SetFamily:
        return tuple(sorted(complement(u, self.g) for u in self.open))

    @cached_property
    def closed_set(self) -> frozenset:
        return frozenset(self.closed)

    @cached_property
    def minimal(self) -> tuple:
        """Least open neighbourhood of each point."""
        out = []
        for x in range(self.g.n):
            m = self.g.full
            for u in self.open:
                if u >> x & 1:
                    m &= u
            out.append(m)
        return tuple(out)

    def is_open(self, a: int) -> bool:
        return a in self.open_set

    def is_closed(self, a: int) -> bool:
        return a in self.closed_set

    def neighborhoods(self, x: int) -> SetFamily:
        if not 0 <= x < self.g.n:
            raise IndexError(f"point {x} outside a {self.g.n}-element set")
        return tuple(u for u in self.open if u >> x & 1)

    def minimal_nbhd(self, x: int) -> int:
        if not 0 <= x < self.g.n:
            raise IndexError(f"point {x} outside a {self.g.n}-element set")
        return self.minimal[x]

    def closure(self, a: int) -> int:
        # x is in cl(A) iff its least neighbourhood meets A
        return sum(1 << x for x in range(self.g.n) if self.minimal[x] & a)

    def interior(self, a: int) -> int:
        return sum(1 << x for x in range(self.g.n) if is_subset(self.minimal[x], a))


def validate_topology(codes: Iterable[int], g: GroundSet) -> Topology:
    fam = family(codes, g)
    fs = set(fam)
    if 0 not in fs:
        raise AxiomError("missing-empty")
    if g.full not in fs:
        raise AxiomError("missing-full")
    for a, b in _pairs(fam):
        if a | b not in fs:
            raise AxiomError("not-union-closed", (a, b))
        if a & b not in fs:
            raise AxiomError("not-intersection-closed", (a, b))
    return Topology(g, fam)


def discrete(g: GroundSet) -> Topology:
    return Topology(g, tuple(g.codes()))


def indiscrete(g: GroundSet) -> Topology:
    return Topology(g, (0, g.full))


def neighborhoods(T: Topology, x: int) -> SetFamily:
    return T.neighborhoods(x)


def minimal_nbhd(T: Topology, x: int) -> int:
    return T.minimal_nbhd(x)


def closure(T: Topology, a: int) -> int:
    return T.closure(T.g.check(a))


def interior(T: Topology, a: int) -> int:
    return T.interior(T.g.check(a))


def closed_sets(T: Topology) -> SetFamily:
    return T.closed


# ---------------------------------------------------------------------------
# primals and grills
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Primal:
    g: GroundSet
    sets: SetFamily

    @cached_property
    def set_(self) -> frozenset:
        return frozenset(self.sets)

    def __contains__(self, a: int) -> bool:
        return a in self.set_

    @cached_property
    def generator(self) -> int:
        """Intersection of all non-members (``X`` is always one)."""
        b = self.g.full
        for a in self.g.codes():
            if a not in self.set_:
                b &= a
        return b


@dataclass(frozen=True)
class Grill:
    g: GroundSet
    sets: SetFamily


def primal_axioms_violation(fam: SetFamily, g: GroundSet) -> Optional[AxiomError]:
    fs = set(fam)
    if g.full in fs:
        return AxiomError("contains-full")
    for a in fam:
        for b in submasks(a):
            if b not in fs:
                return AxiomError("not-downward-closed", (a, b))
    for a, b in _pairs(g.codes()):
        if a & b in fs and a not in fs and b not in fs:
            return AxiomError("not-prime", (a, b))
    return None


def complement_characterization_holds(fam: SetFamily, g: GroundSet) -> bool:
    """The non-member family contains X, is upward closed and closed under meets."""
    non = [a for a in g.codes() if a not in set(fam)]
    nonset = set(non)
    if g.full not in nonset:
        return False
    for b in non:
        for a in g.codes():
            if is_subset(b, a) and a not in nonset:
                return False
    return all(a & b in nonset for a, b in _pairs(non))


def validate_primal(codes: Iterable[int], g: GroundSet) -> Primal:
    fam = family(codes, g)
    err = primal_axioms_violation(fam, g)
    if complement_characterization_holds(fam, g) != (err is None):
        raise RuntimeError(f"primal characterizations disagree on {fam}")
    if err is not None:
        raise err
    return Primal(g, fam)


def primal_from_generator(b: int, g: GroundSet) -> Primal:
    g.check(b)
    return Primal(g, tuple(a for a in g.codes() if a & b != b))


def validate_grill(codes: Iterable[int], g: GroundSet) -> Grill:
    fam = family(codes, g)
    fs = set(fam)
    if 0 in fs:
        raise AxiomError("contains-empty")
    for a in fam:
        for b in g.codes():
            if is_subset(a, b) and b not in fs:
                raise AxiomError("not-upward-closed", (a, b))
    for a, b in _pairs(g.codes()):
        if a | b in fs and a not in fs and b not in fs:
            raise AxiomError("not-prime", (a, b))
    return Grill(g, fam)


def dual_grill(P: Primal) -> Grill:
    return Grill(P.g, family((complement(a, P.g) for a in P.sets), P.g))


# ---------------------------------------------------------------------------
# primal spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimalSpace:
    g: GroundSet
    topology: Topology
    primal: Primal

    def __post_init__(self):
        if self.topology.g != self.g or self.primal.g != self.g:
            raise ValueError("topology and primal live on different ground sets")

    @property
    def n(self) -> int:
        return self.g.n

    def describe(self) -> dict:
        """Space-file document for this space."""
        return {
            "n": self.g.n,
            "open": list(self.topology.open),
            "primal": {"generator": self.primal.generator},
        }


def make_space(n: int, open: Iterable[int], generator: Optional[int] = None,
               sets: Optional[Iterable[int]] = None) -> PrimalSpace:
    """Validate and assemble a space; give exactly one of ``generator``/``sets``."""
    g = GroundSet(n)
    if (generator is None) == (sets is None):
        raise ValueError("give exactly one of generator or sets")
    T = validate_topology(open, g)
    P = primal_from_generator(generator, g) if sets is None else validate_primal(sets, g)
    return PrimalSpace(g, T, P)
