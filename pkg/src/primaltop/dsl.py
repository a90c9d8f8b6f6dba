"""A small language of set-algebra identities over a primal space.

Grammar (ASCII; Unicode aliases in ``ALIASES`` are normalized by the lexer)::

    formula  := ['forall' binder (',' binder)* ':'] prop
    binder   := IDENT [':' sort]          sort := set | open | closed | openstar
    prop     := conj ['=>' prop]
    conj     := lit ('and' lit)*
    lit      := 'not' lit | atom
    atom     := 'suitable' | 'ccc' | ('inP' | 'notinP') '(' expr ')'
              | expr ('=' | '<=') expr
    expr     := diff ('|' diff)*
    diff     := meet ('-' meet)*
    meet     := unary ('&' unary)*
    unary    := '~' unary | primary
    primary  := IDENT | 'X' | '0' | FUNC '(' expr ')' | '(' expr ')'
    FUNC     := d | psi | cl | int | cld | intd

Binary operators are left-associative; ``&`` binds tighter than ``-``, which
binds tighter than ``|``.  ``d`` is the diamond operator, ``cld``/``intd`` its
closure and interior, ``cl``/``int`` the ordinary ones.  ``ccc`` says every
proper closed set lies in the primal.

In ``forall ... : H => body`` the conjuncts of ``H`` that mention no variable
are space-level hypotheses: when one is false the verdict is
``hypothesis-not-met``.  Everything else is evaluated per binding.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Union

from .operators import OperatorTable, table
from .spaces import PrimalSpace

SORTS = ("set", "open", "closed", "openstar")
FUNCS = ("d", "psi", "cl", "int", "cld", "intd")
SPACE_ATOMS = ("suitable", "ccc")
MEMBER_ATOMS = ("inP", "notinP")
KEYWORDS = frozenset(("forall", "and", "not", "X") + SORTS + FUNCS + SPACE_ATOMS + MEMBER_ATOMS)

ALIASES = {
    "⋄": "d", "Ψ": "psi", "∩": "&", "∪": "|", "⊆": "<=", "∖": "-", "∀": "forall",
    "⇒": "=>", "∧": "and", "¬": "not", "∅": "0",
}

PASS, FAIL, NOT_MET = "pass", "fail", "hypothesis-not-met"


class DslError(ValueError):
    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")


class LexError(DslError):
    pass


class ParseError(DslError):
    pass


class SortError(DslError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # ident, keyword, operator, paren, comma, colon, end
    lexeme: str
    offset: int


_OPERATORS = ("<=", "=>", "=", "~", "&", "|", "-")


def tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        offset = len(text[:i].encode("utf-8"))
        if ch.isspace():
            i += 1
            continue
        if ch in ALIASES:
            lex = ALIASES[ch]
            kind = ("keyword" if lex in KEYWORDS else
                    "ident" if lex == "0" else "operator")
            tokens.append(Token(kind, lex, offset))
            i += 1
            continue
        if ch.isascii() and (ch.isalpha() or ch == "_"):
            j = i
            while j < len(text) and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            tokens.append(Token("keyword" if word in KEYWORDS else "ident", word, offset))
            i = j
            continue
        if ch == "0":
            tokens.append(Token("ident", "0", offset))
            i += 1
            continue
        for op in _OPERATORS:
            if text.startswith(op, i):
                tokens.append(Token("operator", op, offset))
                i += len(op)
                break
        else:
            if ch in "()":
                tokens.append(Token("paren", ch, offset))
            elif ch == ",":
                tokens.append(Token("comma", ch, offset))
            elif ch == ":":
                tokens.append(Token("colon", ch, offset))
            else:
                raise LexError(f"unexpected character {ch!r}", offset)
            i += 1
    tokens.append(Token("end", "", len(text.encode("utf-8"))))
    return tokens


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------
# ``pos`` is excluded from equality so that round-tripped trees compare equal.

@dataclass(frozen=True)
class Var:
    name: str
    pos: int = field(default=-1, compare=False)


@dataclass(frozen=True)
class Const:
    name: str  # "X" or "0"
    pos: int = field(default=-1, compare=False)


@dataclass(frozen=True)
class Comp:
    arg: "SetExpr"
    pos: int = field(default=-1, compare=False)


@dataclass(frozen=True)
class Apply:
    fn: str
    arg: "SetExpr"
    pos: int = field(default=-1, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # "&", "-", "|"
    left: "SetExpr"
    right: "SetExpr"
    pos: int = field(default=-1, compare=False)


SetExpr = Union[Var, Const, Comp, Apply, BinOp]


@dataclass(frozen=True)
class Rel:
    op: str  # "=" or "<="
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class Member:
    negated: bool
    expr: SetExpr


@dataclass(frozen=True)
class SpaceAtom:
    name: str


@dataclass(frozen=True)
class Not:
    arg: "Prop"


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Implies:
    antecedent: "Prop"
    consequent: "Prop"


Prop = Union[Rel, Member, SpaceAtom, Not, And, Implies]


@dataclass(frozen=True)
class Binder:
    name: str
    sort: str = "set"


@dataclass(frozen=True)
class Formula:
    binders: tuple
    body: Prop


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, lexeme: str) -> bool:
        return self.tok.kind != "ident" and self.tok.lexeme == lexeme

    def take(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, lexeme: str) -> Token:
        if not self.at(lexeme):
            found = self.tok.lexeme or "end of input"
            raise ParseError(f"expected {lexeme!r}, found {found!r}", self.tok.offset)
        return self.take()

    def expect_end(self):
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.lexeme!r}", self.tok.offset)

    # formula level

    def formula(self) -> Formula:
        binders = []
        if self.at("forall"):
            self.take()
            while True:
                t = self.tok
                if t.kind != "ident" or t.lexeme == "0":
                    raise ParseError(f"expected variable name, found {t.lexeme or 'end of input'!r}",
                                     t.offset)
                self.take()
                sort = "set"
                if self.at(":") and self.peek().kind in ("keyword", "ident") \
                        and self.peek().lexeme in SORTS:
                    self.take()
                    sort = self.take().lexeme
                elif self.at(":") and self.peek().kind == "ident" and self.peek(2).lexeme in (",", ":"):
                    raise SortError(f"unknown sort {self.peek().lexeme!r}", self.peek().offset)
                if any(b.name == t.lexeme for b in binders):
                    raise SortError(f"variable {t.lexeme!r} bound twice", t.offset)
                binders.append(Binder(t.lexeme, sort))
                if self.at(","):
                    self.take()
                    continue
                self.expect(":")
                break
        body = self.prop()
        self.expect_end()
        f = Formula(tuple(binders), body)
        _check_bound(f, {b.name for b in binders})
        return f

    def prop(self) -> Prop:
        left = self.conj()
        if self.at("=>"):
            self.take()
            return Implies(left, self.prop())
        return left

    def conj(self) -> Prop:
        parts = [self.lit()]
        while self.at("and"):
            self.take()
            parts.append(self.lit())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def lit(self) -> Prop:
        if self.at("not"):
            self.take()
            return Not(self.lit())
        return self.atom()

    def atom(self) -> Prop:
        t = self.tok
        if t.kind == "keyword" and t.lexeme in SPACE_ATOMS:
            self.take()
            return SpaceAtom(t.lexeme)
        if t.kind == "keyword" and t.lexeme in MEMBER_ATOMS:
            self.take()
            self.expect("(")
            e = self.expr()
            self.expect(")")
            return Member(t.lexeme == "notinP", e)
        left = self.expr()
        if self.at("=") or self.at("<="):
            op = self.take().lexeme
            return Rel(op, left, self.expr())
        found = self.tok.lexeme or "end of input"
        raise ParseError(f"expected '=' or '<=', found {found!r}", self.tok.offset)

    # set-expression level

    def expr(self) -> SetExpr:
        return self._binary("|", self.diff)

    def diff(self) -> SetExpr:
        return self._binary("-", self.meet)

    def meet(self) -> SetExpr:
        return self._binary("&", self.unary)

    def _binary(self, op, sub) -> SetExpr:
        left = sub()
        while self.at(op):
            pos = self.take().offset
            left = BinOp(op, left, sub(), pos)
        return left

    def unary(self) -> SetExpr:
        if self.at("~"):
            pos = self.take().offset
            return Comp(self.unary(), pos)
        return self.primary()

    def primary(self) -> SetExpr:
        t = self.tok
        if t.kind == "ident":
            self.take()
            return Const("0", t.offset) if t.lexeme == "0" else Var(t.lexeme, t.offset)
        if t.kind == "keyword" and t.lexeme == "X":
            self.take()
            return Const("X", t.offset)
        if t.kind == "keyword" and t.lexeme in FUNCS:
            self.take()
            self.expect("(")
            e = self.expr()
            self.expect(")")
            return Apply(t.lexeme, e, t.offset)
        if self.at("("):
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "keyword":
            raise SortError(f"{t.lexeme!r} cannot be used as a set expression", t.offset)
        raise ParseError(f"expected set expression, found {t.lexeme or 'end of input'!r}", t.offset)


def _expr_vars(e: SetExpr):
    if isinstance(e, Var):
        yield e
    elif isinstance(e, (Comp, Apply)):
        yield from _expr_vars(e.arg)
    elif isinstance(e, BinOp):
        yield from _expr_vars(e.left)
        yield from _expr_vars(e.right)


def _prop_exprs(p: Prop):
    if isinstance(p, Rel):
        yield p.left
        yield p.right
    elif isinstance(p, Member):
        yield p.expr
    elif isinstance(p, Not):
        yield from _prop_exprs(p.arg)
    elif isinstance(p, And):
        for q in p.parts:
            yield from _prop_exprs(q)
    elif isinstance(p, Implies):
        yield from _prop_exprs(p.antecedent)
        yield from _prop_exprs(p.consequent)


def _check_bound(f: Formula, names: set):
    for e in _prop_exprs(f.body):
        for v in _expr_vars(e):
            if v.name not in names:
                raise SortError(f"free variable {v.name!r}", max(v.pos, 0))


def parse(text: str) -> Formula:
    return _Parser(text).formula()


def parse_expr(text: str) -> SetExpr:
    p = _Parser(text)
    e = p.expr()
    p.expect_end()
    return e


def free_variables(e: SetExpr) -> list[str]:
    seen = []
    for v in _expr_vars(e):
        if v.name not in seen:
            seen.append(v.name)
    return seen


# ---------------------------------------------------------------------------
# formatter
# ---------------------------------------------------------------------------

_PREC = {"|": 1, "-": 2, "&": 3}


def format_expr(e: SetExpr, prec: int = 0) -> str:
    if isinstance(e, (Var, Const)):
        return e.name
    if isinstance(e, Comp):
        return "~" + format_expr(e.arg, 4)
    if isinstance(e, Apply):
        return f"{e.fn}({format_expr(e.arg)})"
    p = _PREC[e.op]
    # right operand of a left-associative operator needs parens at equal precedence
    text = f"{format_expr(e.left, p)} {e.op} {format_expr(e.right, p + 1)}"
    return f"({text})" if p < prec else text


def format_prop(p: Prop) -> str:
    if isinstance(p, Rel):
        return f"{format_expr(p.left)} {p.op} {format_expr(p.right)}"
    if isinstance(p, Member):
        return f"{'notinP' if p.negated else 'inP'}({format_expr(p.expr)})"
    if isinstance(p, SpaceAtom):
        return p.name
    if isinstance(p, Not):
        return "not " + format_prop(p.arg)
    if isinstance(p, And):
        return " and ".join(format_prop(q) for q in p.parts)
    ante = p.antecedent
    if isinstance(ante, Implies):
        raise ValueError("an implication cannot appear as an antecedent")
    return f"{format_prop(ante)} => {format_prop(p.consequent)}"


def format_formula(f: Formula) -> str:
    body = format_prop(f.body)
    if not f.binders:
        return body
    vs = ", ".join(b.name if b.sort == "set" else f"{b.name}:{b.sort}" for b in f.binders)
    return f"forall {vs}: {body}"


def format(ast) -> str:
    if isinstance(ast, Formula):
        return format_formula(ast)
    if isinstance(ast, (Rel, Member, SpaceAtom, Not, And, Implies)):
        return format_prop(ast)
    return format_expr(ast)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _ops(space) -> OperatorTable:
    return space if isinstance(space, OperatorTable) else table(space)


def eval_set(e: SetExpr, space, bindings: dict) -> int:
    ops = _ops(space)
    if isinstance(e, Var):
        try:
            return bindings[e.name]
        except KeyError:
            raise SortError(f"unbound variable {e.name!r}", max(e.pos, 0)) from None
    if isinstance(e, Const):
        return ops.full if e.name == "X" else 0
    if isinstance(e, Comp):
        return ops.c(eval_set(e.arg, ops, bindings))
    if isinstance(e, Apply):
        a = eval_set(e.arg, ops, bindings)
        fn = {
            "d": ops.diamond, "psi": ops.psi, "cl": ops.closure, "int": ops.interior,
            "cld": ops.cl_diamond, "intd": ops.int_diamond,
        }[e.fn]
        return fn(a)
    left = eval_set(e.left, ops, bindings)
    right = eval_set(e.right, ops, bindings)
    if e.op == "&":
        return left & right
    if e.op == "|":
        return left | right
    return left & ~right


def eval_prop(p: Prop, space, bindings: dict) -> bool:
    ops = _ops(space)
    if isinstance(p, Rel):
        a = eval_set(p.left, ops, bindings)
        b = eval_set(p.right, ops, bindings)
        return a == b if p.op == "=" else a & ~b == 0
    if isinstance(p, Member):
        return ops.in_p(eval_set(p.expr, ops, bindings)) != p.negated
    if isinstance(p, SpaceAtom):
        return ops.is_suitable() if p.name == "suitable" else ops.closed_complement_condition()
    if isinstance(p, Not):
        return not eval_prop(p.arg, ops, bindings)
    if isinstance(p, And):
        return all(eval_prop(q, ops, bindings) for q in p.parts)
    return (not eval_prop(p.antecedent, ops, bindings)) or eval_prop(p.consequent, ops, bindings)


def sort_extension(sort: str, space) -> tuple:
    ops = _ops(space)
    if sort == "set":
        return tuple(ops.g.codes())
    if sort == "open":
        return ops.topology.open
    if sort == "closed":
        return ops.topology.closed
    if sort == "openstar":
        return ops.tau_star.open
    raise ValueError(f"unknown sort {sort!r}")


def _is_closed_prop(p: Prop) -> bool:
    return not any(True for e in _prop_exprs(p) for _ in _expr_vars(e))


def space_hypotheses(f: Formula) -> list:
    """Variable-free conjuncts of a top-level implication's antecedent."""
    if not isinstance(f.body, Implies):
        return []
    ante = f.body.antecedent
    parts = ante.parts if isinstance(ante, And) else (ante,)
    return [q for q in parts if _is_closed_prop(q)]


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: Optional[dict] = None


def bindings_in_order(f: Formula, space):
    ops = _ops(space)
    names = [b.name for b in f.binders]
    domains = [sort_extension(b.sort, ops) for b in f.binders]
    for values in product(*domains):
        yield dict(zip(names, values))


def eval_formula(f: Formula, space) -> Verdict:
    ops = _ops(space)
    if not all(eval_prop(h, ops, {}) for h in space_hypotheses(f)):
        return Verdict(NOT_MET)
    for b in bindings_in_order(f, ops):
        if not eval_prop(f.body, ops, b):
            return Verdict(FAIL, b)
    return Verdict(PASS)


def holds(f: Formula, space, bindings: dict) -> bool:
    return eval_prop(f.body, space, bindings)
