"""Operators of a primal topological space.

For a space ``(X, tau, P)``:

* ``diamond(A)`` collects the points ``x`` such that ``A^c | U^c`` is in ``P``
  for every open ``U`` around ``x``;
* ``cl_diamond(A) = A | diamond(A)`` and ``int_diamond(A) = A & psi(A)``;
* ``psi(A)`` collects the points with some open ``U`` around them for which
  ``(U - A)^c`` is not in ``P``;
* the primal topology ``tau_star`` is the family of sets whose complements
  are fixed by ``cl_diamond``.

Since ``P`` is closed downward and every point has a least open
neighbourhood ``N(x)``, the universal quantifier in ``diamond`` reduces to the
single test ``A^c | N(x)^c in P``.  The literal all-neighbourhood version is
kept as :meth:`OperatorTable.diamond_literal` and used as a cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .setcore import SetFamily, is_subset
from .spaces import PrimalSpace, Topology, validate_topology, AxiomError

ROUTES = ("fixpoint", "base", "psi")


class InconsistencyError(RuntimeError):
    """Two computations that must agree did not.  Always a bug."""


@dataclass(frozen=True)
class PrimalTopologyResult:
    tau_star: Topology
    route: str
    base_family: SetFamily


class OperatorTable:
    """Memoized operator values for one space.

    Each memo slot is written at most once with a deterministic value, so a
    table may be shared between threads.
    """

    def __init__(self, space: PrimalSpace):
        self.space = space
        self.g = space.g
        self.full = space.g.full
        self.topology = space.topology
        self.primal = space.primal
        self._diamond: dict[int, int] = {}
        self._psi: dict[int, int] = {}
        self._tau_star: dict[str, PrimalTopologyResult] = {}

    # -- plumbing -----------------------------------------------------------

    def c(self, a: int) -> int:
        return self.full & ~a

    def in_p(self, a: int) -> bool:
        return a in self.primal

    def closure(self, a: int) -> int:
        return self.topology.closure(a)

    def interior(self, a: int) -> int:
        return self.topology.interior(a)

    # -- diamond ------------------------------------------------------------

    def diamond(self, a: int) -> int:
        try:
            return self._diamond[a]
        except KeyError:
            pass
        self.g.check(a)
        ca = self.c(a)
        out = 0
        for x, nx in enumerate(self.topology.minimal):
            if (ca | self.c(nx)) in self.primal:
                out |= 1 << x
        self._diamond[a] = out
        return out

    def diamond_literal(self, a: int) -> int:
        ca = self.c(a)
        out = 0
        for x in range(self.g.n):
            if all((ca | self.c(u)) in self.primal for u in self.topology.neighborhoods(x)):
                out |= 1 << x
        return out

    def cl_diamond(self, a: int) -> int:
        return a | self.diamond(a)

    # -- psi ----------------------------------------------------------------

    def psi(self, a: int) -> int:
        try:
            return self._psi[a]
        except KeyError:
            pass
        self.g.check(a)
        via_diamond = self.c(self.diamond(self.c(a)))
        literal = self.psi_literal(a)
        if via_diamond != literal:
            raise InconsistencyError(
                f"psi({a}) routes disagree: {via_diamond} vs {literal} on {self.space.describe()}")
        self._psi[a] = literal
        return literal

    def psi_literal(self, a: int) -> int:
        out = 0
        for x in range(self.g.n):
            if any(self.c(u & ~a) not in self.primal for u in self.topology.neighborhoods(x)):
                out |= 1 << x
        return out

    def int_diamond(self, a: int) -> int:
        return a & self.psi(a)

    # -- primal topology ----------------------------------------------------

    @property
    def base_family(self) -> SetFamily:
        outside = [p for p in self.g.codes() if p not in self.primal]
        return tuple(sorted({t & p for t in self.topology.open for p in outside}))

    def primal_topology(self, route: str = "fixpoint") -> PrimalTopologyResult:
        if route in self._tau_star:
            return self._tau_star[route]
        if route == "fixpoint":
            fam = [a for a in self.g.codes() if self.cl_diamond(self.c(a)) == self.c(a)]
        elif route == "base":
            fam = union_closure(self.base_family)
        elif route == "psi":
            fam = [a for a in self.g.codes() if is_subset(a, self.psi(a))]
        else:
            raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")
        try:
            tau_star = validate_topology(fam, self.g)
        except AxiomError as exc:
            raise InconsistencyError(f"route {route} produced a non-topology: {exc}") from exc
        result = PrimalTopologyResult(tau_star, route, self.base_family)
        self._tau_star[route] = result
        return result

    @property
    def tau_star(self) -> Topology:
        return self.primal_topology("fixpoint").tau_star

    def star_closure(self, a: int) -> int:
        return self.tau_star.closure(a)

    def star_interior(self, a: int) -> int:
        return self.tau_star.interior(a)

    # -- space predicates ---------------------------------------------------

    def suitability_witness(self):
        """First ``A`` with ``A^c | diamond(A)`` in ``P``, or ``None``."""
        for a in self.g.codes():
            if (self.c(a) | self.diamond(a)) in self.primal:
                return a
        return None

    def is_suitable(self) -> bool:
        return self.suitability_witness() is None

    def closed_complement_condition(self) -> bool:
        return all(f in self.primal for f in self.topology.closed if f != self.full)


def union_closure(codes) -> list[int]:
    fam = set(codes)
    frontier = list(fam)
    while frontier:
        new = {a | b for a in frontier for b in fam} - fam
        fam |= new
        frontier = list(new)
    return sorted(fam)


@lru_cache(maxsize=512)
def table(space: PrimalSpace) -> OperatorTable:
    return OperatorTable(space)


def diamond(S: PrimalSpace, a: int) -> int:
    return table(S).diamond(a)


def cl_diamond(S: PrimalSpace, a: int) -> int:
    return table(S).cl_diamond(a)


def int_diamond(S: PrimalSpace, a: int) -> int:
    return table(S).int_diamond(a)


def psi(S: PrimalSpace, a: int) -> int:
    return table(S).psi(a)


def primal_topology(S: PrimalSpace, route: str = "fixpoint") -> PrimalTopologyResult:
    return table(S).primal_topology(route)


def is_suitable(S: PrimalSpace) -> bool:
    return table(S).is_suitable()


def closed_complement_condition(S: PrimalSpace) -> bool:
    return table(S).closed_complement_condition()
