"""Block-structured model files (``*.rg``) and the shared expression grammar.

Expression precedence, tightest first: ``^`` (power, or wedge between forms),
``*`` ``/``, unary ``-``, binary ``+`` ``-``.  A model file looks like::

    algebra A2q {
      parameter q;
      group Z^2;
      cocycle q ^ [[0,1],[-1,0]];
      generator x degree (1,0) invertible;
      generator y degree (0,1) invertible;
      phiA [[1,0],[0,1]];
      metric [[x^-2, q*x^-1*y^-1], [x^-1*y^-1, y^-2]];
      symplectic dy ^ dx;
    }

A ``mult { (a,b) -> expr; ... }`` block selects the structure-table backend;
one generator must then carry the ``unit`` flag.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .algebra import QUANTUM_TORUS, STRUCTURE_TABLE, Algebra, Element, Generator
from .derivations import DerivationModule
from .errors import DomainError, SpecError, StructureError
from .forms import FORM, Tensor, dual_form, wedge
from .grading import CocycleSpec, GradingGroup
from .poisson import PoissonStructure, Symplectic
from .scalars import ONE, Q, Scalar

# -- tokens -----------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<arrow>->)|(?P<punct>[{}()\[\],;^*/+\-])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # num, name, punct, eof
    text: str
    line: int
    col: int


def tokenize(text: str):
    out = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SpecError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        col = pos - start + 1
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind == "arrow":
            out.append(Token("punct", "->", line, col))
        elif kind in ("num", "name", "punct"):
            out.append(Token(kind, m.group(), line, col))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


# -- expression AST -----------------------------------------------------------


@dataclass(frozen=True)
class Node:
    op: str  # num, name, neg, add, sub, mul, div, pow, wedge
    args: tuple
    line: int
    col: int

    def fail(self, message):
        raise SpecError(message, self.line, self.col)


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k=1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def error(self, message, tok=None):
        tok = tok or self.tok
        raise SpecError(message, tok.line, tok.col)

    def at(self, text) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def accept(self, text) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def expect(self, text) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")
        tok = self.tok
        self.pos += 1
        return tok

    def name(self) -> Token:
        if self.tok.kind != "name":
            self.error(f"expected a name, found {self.tok.text or 'end of input'!r}")
        tok = self.tok
        self.pos += 1
        return tok

    def integer(self) -> int:
        neg = self.accept("-")
        if self.tok.kind != "num":
            self.error("expected an integer")
        value = int(self.tok.text)
        self.pos += 1
        return -value if neg else value

    def end(self):
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")

    # expressions
    def expr(self) -> Node:
        node = self.unary()
        while self.at("+") or self.at("-"):
            tok = self.tok
            self.pos += 1
            node = Node("add" if tok.text == "+" else "sub", (node, self.unary()), tok.line, tok.col)
        return node

    def unary(self) -> Node:
        if self.at("-"):
            tok = self.tok
            self.pos += 1
            return Node("neg", (self.unary(),), tok.line, tok.col)
        return self.product()

    def product(self) -> Node:
        node = self.power()
        while self.at("*") or self.at("/"):
            tok = self.tok
            self.pos += 1
            node = Node("mul" if tok.text == "*" else "div", (node, self.power()), tok.line, tok.col)
        return node

    def power(self) -> Node:
        node = self.atom()
        while self.at("^"):
            tok = self.tok
            self.pos += 1
            if self._exponent_ahead():
                paren = self.accept("(")
                k = self.integer()
                if paren:
                    self.expect(")")
                node = Node("pow", (node, k), tok.line, tok.col)
            else:
                node = Node("wedge", (node, self.atom()), tok.line, tok.col)
        return node

    def _exponent_ahead(self) -> bool:
        t = self.tok
        if t.kind == "num" or t.text == "-":
            return True
        if t.text == "(":
            nxt = self.peek()
            if nxt.kind == "num":
                return self.peek(2).text == ")"
            return nxt.text == "-" and self.peek(2).kind == "num" and self.peek(3).text == ")"
        return False

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "num":
            self.pos += 1
            return Node("num", (Fraction(int(tok.text)),), tok.line, tok.col)
        if tok.kind == "name":
            self.pos += 1
            return Node("name", (tok.text,), tok.line, tok.col)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        self.error(f"expected an expression, found {tok.text or 'end of input'!r}")

    def matrix(self):
        """``[[e, e], [e, e]]`` as a list of rows of AST nodes."""
        start = self.expect("[")
        rows = [self.row()]
        while self.accept(","):
            rows.append(self.row())
        self.expect("]")
        if len({len(r) for r in rows}) != 1:
            raise SpecError("matrix rows have different lengths", start.line, start.col)
        return rows

    def row(self):
        self.expect("[")
        items = [self.expr()]
        while self.accept(","):
            items.append(self.expr())
        self.expect("]")
        return items

    def int_tuple(self):
        self.expect("(")
        items = [self.integer()]
        while self.accept(","):
            items.append(self.integer())
        self.expect(")")
        return tuple(items)


# -- evaluation -----------------------------------------------------------------


def _power_of(node: Node, value, k):
    try:
        return value**k
    except (DomainError, ZeroDivisionError) as exc:
        node.fail(str(exc))


def eval_scalar(node: Node, parameter: str | None) -> Scalar:
    op, args = node.op, node.args
    if op == "num":
        return Scalar.const(args[0])
    if op == "name":
        if args[0] != parameter:
            node.fail(f"unknown name {args[0]!r} in a scalar expression")
        return Q
    if op == "neg":
        return -eval_scalar(args[0], parameter)
    if op == "pow":
        return _power_of(node, eval_scalar(args[0], parameter), args[1])
    if op == "wedge":
        node.fail("'^' needs an integer exponent here")
    a, b = eval_scalar(args[0], parameter), eval_scalar(args[1], parameter)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if b.is_zero():
        node.fail("division by zero")
    return a / b


def eval_element(node: Node, algebra: Algebra, parameter: str | None = "q") -> Element:
    op, args = node.op, node.args
    if op == "num":
        return algebra.scalar(args[0])
    if op == "name":
        name = args[0]
        if name in algebra.index:
            return algebra.gen(name)
        if name == parameter:
            return algebra.scalar(Q)
        node.fail(f"unknown generator {name!r}")
    if op == "neg":
        return -eval_element(args[0], algebra, parameter)
    if op == "pow":
        return _power_of(node, eval_element(args[0], algebra, parameter), args[1])
    if op == "wedge":
        node.fail("'^' needs an integer exponent here")
    a, b = eval_element(args[0], algebra, parameter), eval_element(args[1], algebra, parameter)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if b.is_zero():
        node.fail("division by zero")
    if not b.is_unit_term():
        node.fail(f"can only divide by a scalar or an invertible term, not {b}")
    return a * b.inverse()


def eval_form(node: Node, module: DerivationModule, parameter: str | None = "q"):
    """Element or form; ``dNAME`` is the dual 1-form of ``d/dNAME``."""
    algebra = module.algebra
    op, args = node.op, node.args
    if op == "name":
        name = args[0]
        if name not in algebra.index and name != parameter:
            if name.startswith("d") and name[1:] in algebra.index:
                return dual_form(module, algebra.index[name[1:]])
            node.fail(f"unknown generator or dual form {name!r}")
        return eval_element(node, algebra, parameter)
    if op == "num":
        return eval_element(node, algebra, parameter)
    if op == "neg":
        return -eval_form(args[0], module, parameter)
    if op == "pow":
        base = eval_form(args[0], module, parameter)
        if isinstance(base, Tensor):
            node.fail("forms cannot be raised to a power")
        return _power_of(node, base, args[1])
    a, b = eval_form(args[0], module, parameter), eval_form(args[1], module, parameter)
    ta, tb = isinstance(a, Tensor), isinstance(b, Tensor)
    if op == "wedge":
        if not (ta and tb):
            node.fail("'^' between forms needs a form on both sides")
        return wedge(a, b)
    if op in ("add", "sub"):
        if ta != tb or (ta and a.arity != b.arity):
            node.fail("cannot add forms of different arity")
        return a + b if op == "add" else a - b
    if op == "mul":
        if ta:
            node.fail("coefficients multiply forms from the left")
        if tb:
            return Tensor(module, b.arity, {k: a * v for k, v in b.components.items()}, FORM)
        return a * b
    if tb:
        node.fail("cannot divide by a form")
    if b.is_zero() or not b.is_unit_term():
        node.fail(f"can only divide by a scalar or an invertible term, not {b}")
    if ta:
        return Tensor(module, a.arity, {k: v * b.inverse() for k, v in a.components.items()}, FORM)
    return a * b.inverse()


def eval_linear(node: Node, parameter: str | None):
    """Linear combination ``{(name, power) or (): Scalar}`` with no products of names."""
    op, args = node.op, node.args
    if op == "num":
        return {(): Scalar.const(args[0])}
    if op == "name":
        return {(): Q} if args[0] == parameter else {(args[0], 1): ONE}
    if op == "neg":
        return {k: -v for k, v in eval_linear(args[0], parameter).items()}
    if op == "pow":
        inner = eval_linear(args[0], parameter)
        if set(inner) == {()}:
            return {(): _power_of(node, inner[()], args[1])}
        if len(inner) == 1:
            (key, c), = inner.items()
            if c == ONE:
                return {(key[0], key[1] * args[1]): ONE}
        node.fail("only a bare generator or a scalar can be raised to a power here")
    if op == "wedge":
        node.fail("'^' needs an integer exponent here")
    a, b = eval_linear(args[0], parameter), eval_linear(args[1], parameter)
    if op in ("add", "sub"):
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, Scalar()) + (v if op == "add" else -v)
        return {k: v for k, v in out.items() if not v.is_zero()}
    if op == "mul":
        if set(a) <= {()}:
            s, other = a.get((), Scalar()), b
        elif set(b) <= {()}:
            s, other = b.get((), Scalar()), a
        else:
            node.fail("expected a linear expression (scalar times generator)")
        return {k: s * v for k, v in other.items() if not (s * v).is_zero()}
    if set(b) != {()}:
        node.fail("can only divide by a scalar here")
    return {k: v / b[()] for k, v in a.items()}


# -- model files --------------------------------------------------------------


@dataclass
class ModelSpec:
    name: str
    algebra: Algebra
    module: DerivationModule | None = None
    metric: object | None = None
    symplectic: Symplectic | None = None
    poisson: PoissonStructure | None = None
    source: str | None = None
    statements: dict = field(default_factory=dict, repr=False)


@dataclass
class _Raw:
    name: Token
    parameter: str | None = None
    group: tuple | None = None  # (rank, moduli, token)
    cocycle: tuple | None = None  # (base node, matrix rows, token)
    generators: list = field(default_factory=list)  # (name tok, degree, flags)
    phi: list | None = None  # (lhs tok, power, rhs node)
    mult: list | None = None
    phi_a: tuple | None = None
    metric: tuple | None = None
    symplectic: tuple | None = None
    poisson: list | None = None
    seen: dict = field(default_factory=dict)


def _statement(p: Parser, raw: _Raw):
    key = p.name()
    word = key.text
    if word != "generator":
        if word in raw.seen:
            raise SpecError(f"duplicate {word!r} statement", key.line, key.col)
        raw.seen[word] = key
    if word == "parameter":
        raw.parameter = p.name().text
        if raw.parameter != "q":
            p.error("the only supported parameter name is 'q'", p.tokens[p.pos - 1])
        p.expect(";")
    elif word == "group":
        z = p.name()
        if z.text != "Z":
            raise SpecError("expected 'Z'", z.line, z.col)
        p.expect("^")
        rank = p.integer()
        if rank <= 0:
            raise SpecError("group rank must be positive", key.line, key.col)
        moduli = ()
        if p.tok.text == "mod":
            p.pos += 1
            moduli = p.int_tuple()
        raw.group = (rank, moduli, key)
        p.expect(";")
    elif word == "cocycle":
        neg = p.at("-")
        tok = p.tok
        if neg:
            p.pos += 1
        base = p.atom()
        if neg:
            base = Node("neg", (base,), tok.line, tok.col)
        p.expect("^")
        raw.cocycle = (base, p.matrix(), key)
        p.expect(";")
    elif word == "generator":
        name = p.name()
        degword = p.name()
        if degword.text != "degree":
            raise SpecError("expected 'degree'", degword.line, degword.col)
        degree = p.int_tuple()
        flags = set()
        while p.tok.kind == "name":
            flag = p.name()
            if flag.text not in ("invertible", "unit"):
                raise SpecError(f"unknown generator flag {flag.text!r}", flag.line, flag.col)
            flags.add(flag.text)
        raw.generators.append((name, degree, flags))
        p.expect(";")
    elif word == "phi":
        raw.phi = []
        p.expect("{")
        while not p.accept("}"):
            lhs = p.name()
            power = 1
            if p.accept("^"):
                power = p.integer()
            p.expect("->")
            raw.phi.append((lhs, power, p.expr()))
            p.expect(";")
        p.accept(";")
    elif word in ("mult", "poisson"):
        entries = []
        p.expect("{")
        while not p.accept("}"):
            p.expect("(")
            a = p.name()
            p.expect(",")
            b = p.name()
            p.expect(")")
            p.expect("->")
            entries.append((a, b, p.expr()))
            p.expect(";")
        p.accept(";")
        setattr(raw, word, entries)
    elif word == "phiA":
        raw.phi_a = (p.matrix(), key)
        p.expect(";")
    elif word == "metric":
        raw.metric = (p.matrix(), key)
        p.expect(";")
    elif word == "symplectic":
        raw.symplectic = (p.expr(), key)
        p.expect(";")
    else:
        raise SpecError(f"unknown statement {word!r}", key.line, key.col)


def _int_entry(node: Node, parameter) -> int:
    s = eval_scalar(node, parameter)
    if not s.is_constant() or s.constant_value().denominator != 1:
        node.fail("cocycle matrix entries must be integers")
    return int(s.constant_value())


def _build(raw: _Raw, source) -> ModelSpec:
    where = raw.name
    if raw.group is None:
        raise SpecError("missing 'group' statement", where.line, where.col)
    if raw.cocycle is None:
        raise SpecError("missing 'cocycle' statement", where.line, where.col)
    if not raw.generators:
        raise SpecError("no generators declared", where.line, where.col)
    rank, moduli, gtok = raw.group
    if moduli and len(moduli) != rank:
        raise SpecError(f"group Z^{rank} needs {rank} moduli, got {len(moduli)}", gtok.line, gtok.col)
    group = GradingGroup(rank, moduli)
    param = raw.parameter

    base_node, rows, ctok = raw.cocycle
    base = eval_scalar(base_node, param)
    if base.is_zero():
        base_node.fail("cocycle base must be nonzero")
    form = [[_int_entry(e, param) for e in row] for row in rows]
    if len(form) != rank or any(len(r) != rank for r in form):
        raise SpecError(f"cocycle matrix must be {rank}x{rank} for group rank {rank}", ctok.line, ctok.col)
    cocycle = CocycleSpec(base, form)

    gens, seen, unit = [], set(), None
    for tok, degree, flags in raw.generators:
        if len(degree) != rank:
            raise SpecError(
                f"rank mismatch: generator {tok.text} has degree ({', '.join(map(str, degree))}) but the group has rank {rank}",
                tok.line, tok.col)
        if tok.text in seen:
            raise SpecError(f"duplicate generator {tok.text!r}", tok.line, tok.col)
        if tok.text == param:
            raise SpecError(f"generator name {tok.text!r} clashes with the parameter", tok.line, tok.col)
        seen.add(tok.text)
        if "unit" in flags:
            if unit is not None:
                raise SpecError("more than one unit generator", tok.line, tok.col)
            unit = tok.text
        gens.append(Generator(tok.text, tuple(degree), "invertible" in flags))

    backend = STRUCTURE_TABLE if raw.mult is not None else QUANTUM_TORUS
    if backend == STRUCTURE_TABLE and unit is None:
        raise SpecError("a 'mult' table needs a generator flagged 'unit'", where.line, where.col)
    if backend == QUANTUM_TORUS and unit is not None:
        raise SpecError("'unit' is only meaningful together with a 'mult' table", where.line, where.col)

    def check_name(tok):
        if tok.text not in seen:
            raise SpecError(f"unknown generator {tok.text!r}", tok.line, tok.col)

    def to_labels(node, combo):
        out = {}
        for key, c in combo.items():
            if key == ():
                label = unit
            else:
                if key[0] not in seen:
                    node.fail(f"unknown generator {key[0]!r}")
                if key[1] != 1:
                    node.fail("structure-table entries are linear in basis labels")
                label = key[0]
            out[label] = out.get(label, Scalar()) + c
        return out

    table = None
    if backend == STRUCTURE_TABLE:
        table = {}
        for a, b, node in raw.mult:
            check_name(a)
            check_name(b)
            if (a.text, b.text) in table:
                raise SpecError(f"duplicate product ({a.text},{b.text})", a.line, a.col)
            table[(a.text, b.text)] = to_labels(node, eval_linear(node, param))

    phi = None
    if raw.phi is not None:
        phi = {}
        index = {g.name: i for i, g in enumerate(gens)}
        for lhs, power, node in raw.phi:
            check_name(lhs)
            combo = eval_linear(node, param)
            if backend == QUANTUM_TORUS:
                if power not in (1, -1):
                    raise SpecError("phi is given on generators and their inverses only", lhs.line, lhs.col)
                if power == -1 and not gens[index[lhs.text]].invertible:
                    raise SpecError(f"{lhs.text} is not invertible", lhs.line, lhs.col)
                extra = set(combo) - {(lhs.text, power)}
                if extra:
                    node.fail(f"phi must map {lhs.text}^{power} to a scalar multiple of itself")
                phi[(index[lhs.text], power)] = combo.get((lhs.text, power), Scalar())
            else:
                if power != 1:
                    raise SpecError("phi is given on basis labels only", lhs.line, lhs.col)
                phi[lhs.text] = to_labels(node, combo)

    try:
        algebra = Algebra(where.text, group, cocycle, gens, backend, phi=phi, table=table, unit=unit)
    except (StructureError, DomainError) as exc:
        raise SpecError(str(exc), where.line, where.col) from None

    spec = ModelSpec(where.text, algebra, source=source)
    if backend == STRUCTURE_TABLE:
        for part in ("phi_a", "metric", "symplectic"):
            value = getattr(raw, part)
            if value is not None:
                tok = value[1]
                raise SpecError(f"{tok.text!r} needs the quantum-torus backend", tok.line, tok.col)
    else:
        n = len(gens)
        phi_a = None
        if raw.phi_a is not None:
            rows, tok = raw.phi_a
            if len(rows) != n or any(len(r) != n for r in rows):
                raise SpecError(f"phiA must be {n}x{n}", tok.line, tok.col)
            phi_a = [[eval_scalar(e, param) for e in row] for row in rows]
        spec.module = DerivationModule(algebra, phi_a)
        if raw.metric is not None:
            from .forms import Metric

            rows, tok = raw.metric
            if len(rows) != n or any(len(r) != n for r in rows):
                raise SpecError(f"metric must be {n}x{n}", tok.line, tok.col)
            spec.metric = Metric(spec.module, [[eval_element(e, algebra, param) for e in row] for row in rows])
        if raw.symplectic is not None:
            node, tok = raw.symplectic
            omega = eval_form(node, spec.module, param)
            if not isinstance(omega, Tensor) or omega.arity != 2:
                raise SpecError("symplectic structure must be a 2-form", tok.line, tok.col)
            spec.symplectic = Symplectic(omega)

    if raw.poisson is not None:
        entries = {}
        for a, b, node in raw.poisson:
            check_name(a)
            check_name(b)
            entries[(a.text, b.text)] = eval_element(node, algebra, param)
        spec.poisson = PoissonStructure.from_table(algebra, entries)
    elif spec.symplectic is not None:
        spec.poisson = PoissonStructure.from_symplectic(spec.symplectic)
    return spec


def parse_spec(text: str, source: str | None = None) -> ModelSpec:
    """Parse and validate a model file."""
    p = Parser(text)
    head = p.name()
    if head.text != "algebra":
        raise SpecError("expected 'algebra'", head.line, head.col)
    raw = _Raw(p.name())
    p.expect("{")
    while not p.accept("}"):
        if p.tok.kind == "eof":
            p.error("unterminated 'algebra' block")
        _statement(p, raw)
    p.end()
    spec = _build(raw, source)
    spec.statements = dict(raw.seen)
    return spec


def parse_element(text: str, algebra: Algebra, parameter: str | None = "q") -> Element:
    p = Parser(text)
    node = p.expr()
    p.end()
    return eval_element(node, algebra, parameter)


def parse_form(text: str, module: DerivationModule, parameter: str | None = "q"):
    p = Parser(text)
    node = p.expr()
    p.end()
    return eval_form(node, module, parameter)


# -- bundled models -------------------------------------------------------------


def bundled_specs():
    root = resources.files("homrho") / "specs"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".rg"))


def read_spec_text(ref: str):
    """``(text, source)`` for a path, or for the name of a bundled model."""
    path = Path(ref)
    if path.is_file():
        return path.read_text(encoding="utf-8"), str(path)
    name = path.name if path.name.endswith(".rg") else path.name + ".rg"
    res = resources.files("homrho") / "specs" / name
    if res.is_file():
        return res.read_text(encoding="utf-8"), name
    raise FileNotFoundError(f"no such spec file or bundled model: {ref}")


def load_spec(ref: str) -> ModelSpec:
    text, source = read_spec_text(ref)
    return parse_spec(text, source)
