"""Deterministic enumeration of all topologies, primals and spaces on ``n`` points.

Objects are labelled (no quotienting by homeomorphism).  Topologies come out
ordered by their ascending member tuples; primals by ascending generator;
spaces topology-major.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional

from .setcore import CapacityError, GroundSet
from .spaces import (
    AxiomError, PrimalSpace, Topology, primal_axioms_violation, primal_from_generator,
    validate_primal, validate_topology,
)

#: Largest ``n`` for full enumeration (355 topologies x 16 primals at n=4).
MAX_ENUM_N = 4
#: Largest ``n`` for the family-scanning oracles.
MAX_BRUTE_TOPOLOGY_N = 4
MAX_BRUTE_PRIMAL_N = 3


def _ground(n: int, bound: int) -> GroundSet:
    g = GroundSet(n)
    if n > bound:
        raise CapacityError(f"n={n} exceeds the enumeration bound {bound}")
    return g


def _close(fam: frozenset) -> frozenset:
    fam = set(fam)
    while True:
        new = {op for a in fam for b in fam for op in (a | b, a & b)} - fam
        if not new:
            return frozenset(fam)
        fam |= new


@lru_cache(maxsize=None)
def _topology_families(n: int) -> tuple:
    g = _ground(n, MAX_ENUM_N)
    start = frozenset({0, g.full})
    seen = {start}
    stack = [start]
    # every topology is reached from the indiscrete one by adding its members
    while stack:
        fam = stack.pop()
        for c in g.codes():
            if c not in fam:
                grown = _close(fam | {c})
                if grown not in seen:
                    seen.add(grown)
                    stack.append(grown)
    return tuple(sorted(tuple(sorted(f)) for f in seen))


def enumerate_topologies(n: int) -> Iterator[Topology]:
    g = _ground(n, MAX_ENUM_N)
    for fam in _topology_families(n):
        yield validate_topology(fam, g)


def brute_force_topologies(n: int) -> list[tuple]:
    """Scan every family containing the empty and full sets; slow oracle."""
    g = _ground(n, MAX_BRUTE_TOPOLOGY_N)
    inner = list(range(1, g.full))
    out = []
    for r in range(len(inner) + 1):
        for extra in combinations(inner, r):
            try:
                out.append(validate_topology((0, g.full) + extra, g).open)
            except AxiomError:
                pass
    return sorted(out)


def enumerate_primals(n: int):
    g = _ground(n, MAX_ENUM_N)
    for b in g.codes():
        p = primal_from_generator(b, g)
        err = primal_axioms_violation(p.sets, g)
        if err is not None:
            raise RuntimeError(f"generator {b} produced a non-primal: {err}")
        yield p


def brute_force_primals(n: int) -> list[tuple]:
    """Every family of subsets of an ``n``-set that satisfies the primal axioms."""
    g = _ground(n, MAX_BRUTE_PRIMAL_N)
    codes = list(g.codes())
    out = []
    for mask in range(1 << len(codes)):
        fam = tuple(c for c in codes if mask >> c & 1)
        try:
            out.append(validate_primal(fam, g).sets)
        except AxiomError:
            pass
    return sorted(out)


class SpaceStream:
    """Iterator over all primal spaces on ``n`` points, topology-major.

    ``position`` is the index of the next space; ``SpaceStream(n, start=k)``
    resumes from index ``k``.  ``total`` is known once the stream is drained.
    """

    def __init__(self, n: int, start: int = 0):
        self.n = n
        self._g = _ground(n, MAX_ENUM_N)
        self._topologies = [validate_topology(f, self._g) for f in _topology_families(n)]
        self._primals = list(enumerate_primals(n))
        self.position = start
        self.total: Optional[int] = None

    def __iter__(self):
        return self

    def __next__(self) -> PrimalSpace:
        k = len(self._primals)
        if self.position >= len(self._topologies) * k:
            self.total = len(self._topologies) * k
            raise StopIteration
        t, p = divmod(self.position, k)
        self.position += 1
        return PrimalSpace(self._g, self._topologies[t], self._primals[p])


def enumerate_spaces(n: int, start: int = 0) -> SpaceStream:
    return SpaceStream(n, start)


def count(kind: str, n: int) -> int:
    if kind == "topologies":
        return len(_topology_families(_ground(n, MAX_ENUM_N).n))
    if kind == "primals":
        return 1 << _ground(n, MAX_ENUM_N).n
    if kind == "spaces":
        return count("topologies", n) * count("primals", n)
    raise ValueError(f"unknown kind {kind!r}")
