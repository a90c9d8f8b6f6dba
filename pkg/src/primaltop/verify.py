"""Named theorem checks, batteries over enumerated spaces, counterexample search.

A check is a hypothesis on the whole space (``suitable``, ``ccc`` or none), a
domain of variable bindings scanned in ascending order, and a predicate on a
single binding.  A failing check reports the first falsifying binding; feeding
that binding back into the predicate reproduces ``False``.

The registry covers every statement about primal spaces, the diamond
operator, ``psi`` and suitability; names encode the statement, not a page.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Optional, Sequence

from .dsl import FAIL, NOT_MET, PASS, Formula, eval_formula, parse
from .enumeration import enumerate_spaces
from .operators import OperatorTable, table
from .spaces import (
    AxiomError, PrimalSpace, complement_characterization_holds, dual_grill,
    primal_axioms_violation, validate_grill, validate_topology,
)


class UnknownCheckError(KeyError):
    pass


@dataclass(frozen=True)
class CheckDef:
    name: str
    summary: str
    domain: Callable[[OperatorTable], Iterable[dict]]
    holds: Callable[..., bool]
    hypothesis: tuple = ()  # subset of ("suitable", "ccc")


@dataclass
class CheckResult:
    name: str
    status: str
    witness: Optional[dict] = None


@dataclass
class BatteryReport:
    space_count: int = 0
    names: list = field(default_factory=list)
    tallies: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def fail_count(self) -> int:
        return sum(t[FAIL] for t in self.tallies.values())

    def record(self, result: CheckResult):
        self.tallies[result.name][result.status] += 1
        if result.status == FAIL and result.name not in self.witnesses:
            self.witnesses[result.name] = result.witness


REGISTRY: dict[str, CheckDef] = {}


def check(name, summary, domain, hypothesis=()):
    def register(fn):
        if name in REGISTRY:
            raise ValueError(f"duplicate check {name}")
        REGISTRY[name] = CheckDef(name, summary, domain, fn, tuple(hypothesis))
        return fn
    return register


# ---------------------------------------------------------------------------
# binding domains
# ---------------------------------------------------------------------------

def _space(ops):
    yield {}


def _sets(*names):
    def dom(ops):
        for vals in product(ops.g.codes(), repeat=len(names)):
            yield dict(zip(names, vals))
    return dom


def _open_then_sets(open_name, *names):
    def dom(ops):
        for u in ops.topology.open:
            for vals in product(ops.g.codes(), repeat=len(names)):
                yield {open_name: u, **dict(zip(names, vals))}
    return dom


def _closed(name):
    def dom(ops):
        for f in ops.topology.closed:
            yield {name: f}
    return dom


def _open(name):
    def dom(ops):
        for u in ops.topology.open:
            yield {name: u}
    return dom


def _openstar(name):
    def dom(ops):
        for u in ops.tau_star.open:
            yield {name: u}
    return dom


def _sub(a, b):
    return a & ~b == 0


def _is_topology(fam, ops) -> bool:
    try:
        validate_topology(fam, ops.g)
    except AxiomError:
        return False
    return True


# ---------------------------------------------------------------------------
# definitions and preliminaries
# ---------------------------------------------------------------------------

@check("d22-primal-axioms", "P satisfies the primal axioms and their complement form", _space)
def _(ops):
    P = ops.primal.sets
    ok = primal_axioms_violation(P, ops.g) is None
    return ok and complement_characterization_holds(P, ops.g)


@check("d21-grill-duality", "complements of P form a grill", _space)
def _(ops):
    G = dual_grill(ops.primal)
    try:
        validate_grill(G.sets, ops.g)
    except AxiomError:
        return False
    return True


@check("d27-primal-topology", "diamond-closed complements form a topology finer than tau", _space)
def _(ops):
    fam = [a for a in ops.g.codes() if ops.cl_diamond(ops.c(a)) == ops.c(a)]
    return _is_topology(fam, ops) and set(ops.topology.open) <= set(fam)


@check("d26-cld-is-primal-closure", "A | d(A) is the closure of A in tau_star", _sets("A"))
def _(ops, A):
    return ops.cl_diamond(A) == ops.star_closure(A)


@check("t12-open-meet-diamond", "A open => A & d(B) <= d(A & B)", _open_then_sets("A", "B"))
def _(ops, A, B):
    return _sub(A & ops.diamond(B), ops.diamond(A & B))


@check("c14-open-meet-refined", "A open => A & d(B) = A & d(A & B)", _open_then_sets("A", "B"))
def _(ops, A, B):
    return A & ops.diamond(B) == A & ops.diamond(A & B) and _sub(A & ops.diamond(B), ops.diamond(A & B))


@check("t1a-1-closed-dominates", "A closed => d(A) <= A", _closed("A"))
def _(ops, A):
    return _sub(ops.diamond(A), A)


@check("t1a-2-empty-diamond", "d(0) = 0", _space)
def _(ops):
    return ops.diamond(0) == 0


@check("t1a-3-diamond-closed", "cl(d(A)) = d(A)", _sets("A"))
def _(ops, A):
    return ops.closure(ops.diamond(A)) == ops.diamond(A)


@check("t1a-4-diamond-diamond-sub", "d(d(A)) <= d(A)", _sets("A"))
def _(ops, A):
    return _sub(ops.diamond(ops.diamond(A)), ops.diamond(A))


@check("t1a-5-monotone", "A <= B => d(A) <= d(B)", _sets("A", "B"))
def _(ops, A, B):
    return not _sub(A, B) or _sub(ops.diamond(A), ops.diamond(B))


@check("t1a-6-union-additive", "d(A | B) = d(A) | d(B)", _sets("A", "B"))
def _(ops, A, B):
    return ops.diamond(A | B) == ops.diamond(A) | ops.diamond(B)


@check("t1a-7-meet-sub", "d(A & B) <= d(A) & d(B)", _sets("A", "B"))
def _(ops, A, B):
    return _sub(ops.diamond(A & B), ops.diamond(A) & ops.diamond(B))


@check("tbase-base-generates", "unions of {T & Q : T open, Q not in P} give tau_star", _space)
def _(ops):
    base = ops.base_family
    star = ops.tau_star.open_set
    return set(base) <= star and ops.primal_topology("base").tau_star.open == ops.tau_star.open


# ---------------------------------------------------------------------------
# diamond lemmas and psi
# ---------------------------------------------------------------------------

@check("t3-1-open-subset-diamond", "ccc => U <= d(U) for open U", _open("U"), hypothesis=("ccc",))
def _(ops, U):
    return _sub(U, ops.diamond(U))


@check("l11-null-diamond", "A^c not in P => d(A) = 0", _sets("A"))
def _(ops, A):
    return ops.in_p(ops.c(A)) or ops.diamond(A) == 0


@check("l10-difference-law", "d(A) - d(B) = d(A - B) - d(B)", _sets("A", "B"))
def _(ops, A, B):
    dB = ops.diamond(B)
    return ops.diamond(A) & ~dB == ops.diamond(A & ~B) & ~dB


@check("c5-absorb-null", "B^c not in P => d(A | B) = d(A) = d(A - B)", _sets("A", "B"))
def _(ops, A, B):
    if ops.in_p(ops.c(B)):
        return True
    return ops.diamond(A | B) == ops.diamond(A) == ops.diamond(A & ~B)


@check("tpsi-01-complement-identity", "psi(A) = X - d(X - A)", _sets("A"))
def _(ops, A):
    return ops.psi_literal(A) == ops.c(ops.diamond(ops.c(A)))


@check("tpsi-02-open", "psi(A) is open", _sets("A"))
def _(ops, A):
    return ops.topology.is_open(ops.psi(A))


@check("tpsi-03-monotone", "A <= B => psi(A) <= psi(B)", _sets("A", "B"))
def _(ops, A, B):
    return not _sub(A, B) or _sub(ops.psi(A), ops.psi(B))


@check("tpsi-04-meet", "psi(A & B) = psi(A) & psi(B)", _sets("A", "B"))
def _(ops, A, B):
    return ops.psi(A & B) == ops.psi(A) & ops.psi(B)


@check("tpsi-05-openstar-extensive", "U in tau_star => U <= psi(U)", _openstar("U"))
def _(ops, U):
    return _sub(U, ops.psi(U))


@check("tpsi-06-inflationary-iterate", "psi(A) <= psi(psi(A))", _sets("A"))
def _(ops, A):
    return _sub(ops.psi(A), ops.psi(ops.psi(A)))


@check("tpsi-07-idempotence-iff", "psi(psi(A)) = psi(A) iff d(X-A) is a diamond fixpoint",
       _sets("A"))
def _(ops, A):
    lhs = ops.psi(ops.psi(A)) == ops.psi(A)
    d = ops.diamond(ops.c(A))
    return lhs == (d == ops.diamond(d))


@check("tpsi-08-null-argument", "A^c not in P => psi(A) = X - d(X)", _sets("A"))
def _(ops, A):
    return ops.in_p(ops.c(A)) or ops.psi(A) == ops.c(ops.diamond(ops.full))


@check("tpsi-09-interior", "A & psi(A) is the interior of A in tau_star", _sets("A"))
def _(ops, A):
    return A & ops.psi(A) == ops.star_interior(A)


@check("tpsi-10-remove-null", "I^c not in P => psi(A - I) = psi(A)", _sets("A", "I"))
def _(ops, A, I):
    return ops.in_p(ops.c(I)) or ops.psi(A & ~I) == ops.psi(A)


@check("tpsi-11-add-null", "I^c not in P => psi(A | I) = psi(A)", _sets("A", "I"))
def _(ops, A, I):
    return ops.in_p(ops.c(I)) or ops.psi(A | I) == ops.psi(A)


@check("tpsi-12-null-symmetric-difference", "(A ^ B)^c not in P => psi(A) = psi(B)",
       _sets("A", "B"))
def _(ops, A, B):
    return ops.in_p(ops.c(A ^ B)) or ops.psi(A) == ops.psi(B)


@check("cpsi-open-extensive", "U open => U <= psi(U)", _open("U"))
def _(ops, U):
    return _sub(U, ops.psi(U))


@check("t13-1-psi-union", "psi(A) = union of open U with (U - A)^c not in P", _sets("A"))
def _(ops, A):
    u = 0
    for U in ops.topology.open:
        if not ops.in_p(ops.c(U & ~A)):
            u |= U
    return ops.psi(A) == u


@check("t13-2-psi-union-lower",
       "psi(A) contains every open U with ((U - A) | (A - U))^c not in P", _sets("A"))
def _(ops, A):
    # symmetric-difference reading; the two-complement reading is always X
    u = 0
    for U in ops.topology.open:
        if not ops.in_p(ops.c(U ^ A)):
            u |= U
    return _sub(u, ops.psi(A))


@check("t9-sigma-equals-primal-topology", "{A : A <= psi(A)} is a topology equal to tau_star",
       _space)
def _(ops):
    sigma = [a for a in ops.g.codes() if _sub(a, ops.psi(a))]
    return _is_topology(sigma, ops) and tuple(sigma) == ops.tau_star.open


# ---------------------------------------------------------------------------
# suitability
# ---------------------------------------------------------------------------

def suitability_conditions(ops) -> tuple:
    """The four equivalent forms of suitability, as booleans."""
    codes = list(ops.g.codes())
    c, d, inp = ops.c, ops.diamond, ops.in_p
    first = all(not inp(c(a) | d(a)) for a in codes)
    second = all(not inp(c(a) | d(a)) for a in codes if _sub(d(a), a))
    third = True
    for a in codes:
        covered = all(
            any(not inp(c(u) | c(a)) for u in ops.topology.neighborhoods(x))
            for x in range(ops.g.n) if a >> x & 1)
        if covered and inp(c(a)):
            third = False
            break
    fourth = all(not inp(c(a)) for a in codes if a & d(a) == 0)
    return first, second, third, fourth


def necessary_conditions(ops) -> tuple:
    """Three equivalent conditions implied by suitability."""
    codes = list(ops.g.codes())
    d = ops.diamond
    one = all(d(a) == 0 for a in codes if a & d(a) == 0)
    two = all(d(a & ~d(a)) == 0 for a in codes)
    three = all(d(a & d(a)) == d(a) for a in codes)
    return one, two, three


@check("t4-suitability-equivalences", "the four forms of suitability agree", _space)
def _(ops):
    return len(set(suitability_conditions(ops))) == 1


@check("t1-necessary-conditions", "three conditions agree and suitability implies them",
       _space)
def _(ops):
    conds = necessary_conditions(ops)
    return len(set(conds)) == 1 and (not ops.is_suitable() or conds[0])


@check("c4-4-idempotent", "suitable => d(d(A)) = d(A)", _sets("A"), hypothesis=("suitable",))
def _(ops, A):
    return ops.diamond(ops.diamond(A)) == ops.diamond(A)


@check("t2-closed-decomposition",
       "suitable => (A tau_star-closed iff A = F | C, F closed, C^c not in P)",
       _sets("A"), hypothesis=("suitable",))
def _(ops, A):
    star_closed = ops.tau_star.is_closed(A)
    nulls = [b for b in ops.g.codes() if not ops.in_p(ops.c(b))]
    split = any(F | C == A for F in ops.topology.closed for C in nulls)
    return star_closed == split


@check("c6-base-is-topology", "suitable => {T & Q : T open, Q not in P} equals tau_star",
       _space, hypothesis=("suitable",))
def _(ops):
    base = ops.base_family
    return _is_topology(base, ops) and base == ops.tau_star.open


@check("t8-closure-chain", "A <= d(A) => cl(A) = cld(A) = cl(d(A)) = d(A)", _sets("A"))
def _(ops, A):
    d = ops.diamond(A)
    if not _sub(A, d):
        return True
    return ops.closure(A) == ops.cl_diamond(A) == ops.closure(d) == d == ops.star_closure(A)


def _open_and_nonmember(ops):
    for U in ops.topology.open:
        for A in ops.g.codes():
            if not ops.in_p(A):
                yield {"U": U, "A": A}


@check("topen-chain",
       "suitable and ccc => for G = U & A (U open, A not in P): "
       "cl(G) = cld(G) = d(G) = d(U) = cl(U) = cld(U)",
       _open_and_nonmember, hypothesis=("suitable", "ccc"))
def _(ops, U, A):
    G = U & A
    vals = {ops.closure(G), ops.cl_diamond(G), ops.diamond(G), ops.diamond(U),
            ops.closure(U), ops.cl_diamond(U), ops.star_closure(G), ops.star_closure(U)}
    return len(vals) == 1


@check("t16-open-meet-closure", "suitable, A open => d(A & B) = d(A & d(B)) = cl(A & d(B))",
       _open_then_sets("A", "B"), hypothesis=("suitable",))
def _(ops, A, B):
    inner = A & ops.diamond(B)
    return ops.diamond(A & B) == ops.diamond(inner) == ops.closure(inner)


@check("c16-open-null-outside", "suitable, A open, A^c not in P => A <= X - d(X)",
       _open("A"), hypothesis=("suitable",))
def _(ops, A):
    return ops.in_p(ops.c(A)) or _sub(A, ops.c(ops.diamond(ops.full)))


# ---------------------------------------------------------------------------
# DSL encodings of registry checks (second route for the same statements)
# ---------------------------------------------------------------------------

DSL_ENCODINGS = {
    "t1a-1-closed-dominates": "forall A:closed: d(A) <= A",
    "t1a-2-empty-diamond": "d(0) = 0",
    "t1a-3-diamond-closed": "forall A: cl(d(A)) = d(A)",
    "t1a-4-diamond-diamond-sub": "forall A: d(d(A)) <= d(A)",
    "t1a-5-monotone": "forall A, B: A <= B => d(A) <= d(B)",
    "t1a-6-union-additive": "forall A, B: d(A | B) = d(A) | d(B)",
    "t1a-7-meet-sub": "forall A, B: d(A & B) <= d(A) & d(B)",
    "t12-open-meet-diamond": "forall A:open, B: A & d(B) <= d(A & B)",
    "c14-open-meet-refined": "forall A:open, B: A & d(B) = A & d(A & B)",
    "t3-1-open-subset-diamond": "forall U:open: ccc => U <= d(U)",
    "l11-null-diamond": "forall A: notinP(~A) => d(A) = 0",
    "l10-difference-law": "forall A, B: d(A) - d(B) = d(A - B) - d(B)",
    "c5-absorb-null": "forall A, B: notinP(~B) => d(A | B) = d(A) and d(A) = d(A - B)",
    "tpsi-01-complement-identity": "forall A: psi(A) = X - d(X - A)",
    "tpsi-03-monotone": "forall A, B: A <= B => psi(A) <= psi(B)",
    "tpsi-04-meet": "forall A, B: psi(A & B) = psi(A) & psi(B)",
    "tpsi-05-openstar-extensive": "forall U:openstar: U <= psi(U)",
    "tpsi-06-inflationary-iterate": "forall A: psi(A) <= psi(psi(A))",
    "tpsi-08-null-argument": "forall A: notinP(~A) => psi(A) = X - d(X)",
    "tpsi-10-remove-null": "forall A, I: notinP(~I) => psi(A - I) = psi(A)",
    "tpsi-11-add-null": "forall A, I: notinP(~I) => psi(A | I) = psi(A)",
    "tpsi-12-null-symmetric-difference":
        "forall A, B: notinP(~(A - B | B - A)) => psi(A) = psi(B)",
    "cpsi-open-extensive": "forall U:open: U <= psi(U)",
    "c4-4-idempotent": "forall A: suitable => d(d(A)) = d(A)",
    "t8-closure-chain": "forall A: A <= d(A) => cl(A) = cld(A) and cld(A) = cl(d(A)) "
                        "and cl(d(A)) = d(A)",
    "t16-open-meet-closure":
        "forall A:open, B: suitable => d(A & B) = d(A & d(B)) and d(A & d(B)) = cl(A & d(B))",
    "c16-open-null-outside": "forall A:open: suitable and notinP(~A) => A <= X - d(X)",
}

#: Statements that are not claimed as theorems; kept to document what
#: exhaustive search says about them.
OBSERVATIONS = {
    "meet-equality": "forall A, B: d(A & B) = d(A) & d(B)",
    "diamond-contracts": "forall A: d(A) <= A",
    "psi-union-lower-two-complements":
        "forall A, U:open: notinP(~(U - A) | ~(A - U)) => U <= psi(A)",
    "suitable": "suitable",
    "suitable-by-definition": "forall A: notinP(~A | d(A))",
}

#: Formulas describing the necessary conditions for suitability, usable as
#: space filters in :func:`search_counterexample`.
NECESSARY_CONDITION_FORMULAS = (
    "forall A: A & d(A) = 0 => d(A) = 0",
    "forall A: d(A - d(A)) = 0",
    "forall A: d(A & d(A)) = d(A)",
)


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------

def _table(space) -> OperatorTable:
    return space if isinstance(space, OperatorTable) else table(space)


def hypothesis_met(defn: CheckDef, ops: OperatorTable) -> bool:
    for h in defn.hypothesis:
        if h == "suitable" and not ops.is_suitable():
            return False
        if h == "ccc" and not ops.closed_complement_condition():
            return False
    return True


def run_check(name: str, space) -> CheckResult:
    try:
        defn = REGISTRY[name]
    except KeyError:
        raise UnknownCheckError(name) from None
    ops = _table(space)
    if not hypothesis_met(defn, ops):
        return CheckResult(name, NOT_MET)
    for binding in defn.domain(ops):
        if not defn.holds(ops, **binding):
            witness = {"space": ops.space.describe(), "bindings": binding}
            return CheckResult(name, FAIL, witness)
    return CheckResult(name, PASS)


def replay(result: CheckResult) -> bool:
    """Re-evaluate a failing check on its witness; returns the statement's value."""
    from .spaces import make_space

    w = result.witness
    space = make_space(w["space"]["n"], w["space"]["open"],
                       generator=w["space"]["primal"]["generator"])
    return REGISTRY[result.name].holds(table(space), **w["bindings"])


def _names(names) -> list:
    if names is None:
        return list(REGISTRY)
    names = list(names)
    for n in names:
        if n not in REGISTRY:
            raise UnknownCheckError(n)
    return names


def _fresh_report(names) -> BatteryReport:
    return BatteryReport(names=list(names),
                         tallies={n: {PASS: 0, FAIL: 0, NOT_MET: 0} for n in names})


def run_battery(space, names: Optional[Sequence[str]] = None) -> BatteryReport:
    start = time.perf_counter()
    names = _names(names)
    report = _fresh_report(names)
    report.space_count = 1
    ops = _table(space)
    for name in names:
        report.record(run_check(name, ops))
    report.elapsed = time.perf_counter() - start
    return report


def check_all_spaces(n: int, names: Optional[Sequence[str]] = None) -> BatteryReport:
    start = time.perf_counter()
    names = _names(names)
    report = _fresh_report(names)
    for space in enumerate_spaces(n):
        ops = OperatorTable(space)
        report.space_count += 1
        for name in names:
            report.record(run_check(name, ops))
    report.elapsed = time.perf_counter() - start
    return report


@dataclass(frozen=True)
class Witness:
    space: PrimalSpace
    index: int  # position within the enumeration for ``space.n``
    bindings: dict
    spaces_scanned: int


@dataclass(frozen=True)
class Exhausted:
    spaces_scanned: int


def _as_formula(f) -> Formula:
    return parse(f) if isinstance(f, str) else f


def search_counterexample(statement, n_max: int, where: Sequence = (), n_min: int = 1):
    """First space (smallest ``n`` first) on which ``statement`` fails.

    ``where`` formulas filter the spaces: a space is examined only if every
    one of them passes on it.
    """
    f = _as_formula(statement)
    filters = [_as_formula(w) for w in where]
    scanned = 0
    for n in range(n_min, n_max + 1):
        for index, space in enumerate(enumerate_spaces(n)):
            ops = OperatorTable(space)
            scanned += 1
            if any(eval_formula(w, ops).status != PASS for w in filters):
                continue
            verdict = eval_formula(f, ops)
            if verdict.status == FAIL:
                return Witness(space, index, verdict.witness, scanned)
    return Exhausted(scanned)
