"""Random DSL syntax trees for round-trip testing."""
from primaltop.dsl import (
    FUNCS, SORTS, And, Apply, BinOp, Binder, Comp, Const, Formula, Implies, Member, Not, Rel, Var,
    SpaceAtom, _expr_vars, _prop_exprs,
)

VARS = ("A", "B", "C", "U", "I")


def expr(rng, depth):
    if depth <= 1 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.15:
            return Const(rng.choice(("X", "0")))
        return Var(rng.choice(VARS))
    kind = rng.randrange(3)
    if kind == 0:
        return Comp(expr(rng, depth - 1))
    if kind == 1:
        return Apply(rng.choice(FUNCS), expr(rng, depth - 1))
    return BinOp(rng.choice("&-|"), expr(rng, depth - 1), expr(rng, depth - 1))


def atom(rng, depth):
    r = rng.random()
    if r < 0.1:
        return SpaceAtom(rng.choice(("suitable", "ccc")))
    if r < 0.25:
        return Member(rng.random() < 0.5, expr(rng, depth))
    return Rel(rng.choice(("=", "<=")), expr(rng, depth), expr(rng, depth))


def lit(rng, depth):
    return Not(lit(rng, depth)) if rng.random() < 0.15 else atom(rng, depth)


def conj(rng, depth):
    k = rng.choice((1, 1, 2, 3))
    parts = tuple(lit(rng, depth) for _ in range(k))
    return parts[0] if k == 1 else And(parts)


def prop(rng, depth):
    left = conj(rng, depth)
    if rng.random() < 0.3:
        return Implies(left, prop(rng, depth))
    return left


def formula(rng, depth=5):
    body = prop(rng, depth)
    names = []
    for e in _prop_exprs(body):
        for v in _expr_vars(e):
            if v.name not in names:
                names.append(v.name)
    rng.shuffle(names)
    return Formula(tuple(Binder(n, rng.choice(SORTS)) for n in names), body)
