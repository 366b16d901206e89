"""Presentation and representation file formats.

Presentation::

    # comment
    let nu = 2
    generators g0 g1 g2
    relation nu*g2.g0 - (1/nu)*g0.g2 = g1

Expressions are noncommutative polynomials of degree at most two in the
generators: ``*`` and ``.`` both multiply (concatenate), ``/`` divides by a
scalar and ``^`` raises a scalar to an integer power.  ``lhs = rhs`` stands
for ``lhs - (rhs)``.

Representation::

    dimension 2
    side left
    rep g0 = [[0, 1], [0, 0]]

Generators without a ``rep`` line act by zero.
"""

import re
from fractions import Fraction

from ..errors import ConditionIFailed, DivisionByZero, InputError
from ..linalg import Matrix, Subspace
from ..nonhomogeneous import f2_dim, from_general_subspace
from ..scalars import format_scalar

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(\S))")
KEYWORDS = {"let", "generators", "relation", "dimension", "side", "rep"}


class ParseError(InputError):
    def __init__(self, message, line=None, col=None):
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.col = col


class UnboundIdentifier(ParseError):
    pass


class EmptyGenerators(ParseError):
    pass


class Poly:
    """Noncommutative polynomial: dict word-tuple -> Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, c):
        return cls({(): Fraction(c)})

    def degree(self):
        return max((len(w) for w in self.terms), default=0)

    def scalar(self):
        if any(w for w in self.terms):
            return None
        return self.terms.get((), Fraction(0))

    def __add__(self, o):
        out = dict(self.terms)
        for w, c in o.terms.items():
            out[w] = out.get(w, 0) + c
        return Poly(out)

    def __neg__(self):
        return Poly({w: -c for w, c in self.terms.items()})

    def __mul__(self, o):
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in o.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return Poly(out)


def _tokens(text, line_no, start_col):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        col = start_col + m.start(m.lastindex)
        if m.group(1):
            out.append(("num", m.group(1), col))
        elif m.group(2):
            out.append(("id", m.group(2), col))
        else:
            out.append(("op", m.group(3), col))
        pos = m.end()
    out.append(("end", None, start_col + len(text)))
    return out


class _ExprParser:
    """Precedence: + -  <  * . /  <  unary -  <  ^."""

    def __init__(self, tokens, line, scalars, generators, max_degree=2):
        self.toks = tokens
        self.i = 0
        self.line = line
        self.scalars = scalars
        self.generators = generators
        self.max_degree = max_degree

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.line, tok[2] + 1)

    def expect_end(self):
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")

    def expr(self):
        left = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            right = self.term()
            left = left + right if op == "+" else left + (-right)
        return left

    def term(self):
        left = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*./":
            tok = self.take()
            right = self.unary()
            if tok[1] == "/":
                s = right.scalar()
                if s is None:
                    raise self.error("can only divide by a scalar", tok)
                if s == 0:
                    raise DivisionByZero(f"line {self.line}, col {tok[2] + 1}: division by zero")
                left = left * Poly.const(1 / s)
            else:
                left = left * right
                if left.degree() > self.max_degree:
                    raise self.error(f"terms of degree above {self.max_degree} are not allowed", tok)
        return left

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            val = self.unary()
            return -val if op == "-" else val
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            tok = self.take()
            exp = self.unary()
            b, e = base.scalar(), exp.scalar()
            if b is None or e is None:
                raise self.error("'^' applies to scalars only", tok)
            if e.denominator != 1:
                raise self.error("exponent must be an integer", tok)
            if b == 0 and e < 0:
                raise DivisionByZero(f"line {self.line}, col {tok[2] + 1}: division by zero")
            return Poly.const(b ** int(e))
        return base

    def atom(self):
        tok = self.take()
        kind, val, col = tok
        if kind == "num":
            return Poly.const(int(val))
        if kind == "id":
            if val in self.scalars:
                return Poly.const(self.scalars[val])
            if val in self.generators:
                return Poly({(self.generators[val],): Fraction(1)})
            raise UnboundIdentifier(f"unbound identifier {val!r}", self.line, col + 1)
        if kind == "op" and val == "(":
            inner = self.expr()
            if self.peek()[1] != ")":
                raise self.error("expected ')'")
            self.take()
            return inner
        if kind == "end":
            raise self.error("unexpected end of line", tok)
        raise self.error(f"unexpected {val!r}", tok)


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield no, line


def _split_keyword(line):
    stripped = line.lstrip()
    offset = len(line) - len(stripped)
    kw, _, rest = stripped.partition(" ")
    return kw, rest, offset + len(kw) + 1


def _eval(text, no, col, scalars, generators):
    toks = _tokens(text, no, col)
    p = _ExprParser(toks, no, scalars, generators)
    val = p.expr()
    p.expect_end()
    return val


class ParsedFile:
    def __init__(self, labels, relations, lets, lines):
        self.labels = labels
        self.relations = relations
        self.lets = lets
        self.lines = lines

    def presentation(self):
        d = len(self.labels)
        vecs = []
        for poly in self.relations:
            vecs.append(_poly_to_f2(poly, d))
        P = Subspace.span(f2_dim(d), vecs)
        return from_general_subspace(P, d, self.labels)


def _poly_to_f2(poly, d):
    v = {}
    for w, c in poly.terms.items():
        if len(w) == 2:
            k = w[0] * d + w[1]
        elif len(w) == 1:
            k = d * d + w[0]
        else:
            k = d * d + d
        v[k] = v.get(k, 0) + c
    return {k: x for k, x in v.items() if x}


def parse_file(text):
    lets = {}
    labels = None
    gens = {}
    relations = []
    rel_lines = []
    for no, line in _lines(text):
        kw, rest, col = _split_keyword(line)
        if kw == "let":
            name, eq, expr = rest.partition("=")
            name = name.strip()
            if not eq or not IDENT.match(name) or name in KEYWORDS:
                raise ParseError("expected 'let <identifier> = <expression>'", no, col + 1)
            if name in gens:
                raise ParseError(f"{name!r} is already a generator", no, col + 1)
            val = _eval(expr, no, col + len(name) + 2, lets, gens).scalar()
            if val is None:
                raise ParseError("let-bindings must be scalars", no, col + 1)
            lets[name] = val
        elif kw == "generators":
            if labels is not None:
                raise ParseError("generators declared twice", no, 1)
            names = rest.split()
            if not names:
                raise EmptyGenerators("at least one generator is required", no, col + 1)
            for n in names:
                if not IDENT.match(n) or n in KEYWORDS or n in lets:
                    raise ParseError(f"invalid generator name {n!r}", no, col + 1 + rest.find(n))
                if n in gens:
                    raise ParseError(f"duplicate generator {n!r}", no, col + 1 + rest.find(n))
                gens[n] = len(gens)
            labels = tuple(names)
        elif kw == "relation":
            if labels is None:
                raise ParseError("relation before generators", no, 1)
            lhs, eq, rhs = rest.partition("=")
            poly = _eval(lhs, no, col, lets, gens)
            if eq:
                poly = poly + (-_eval(rhs, no, col + len(lhs) + 1, lets, gens))
            if not poly.terms:
                raise ParseError("relation is zero", no, col + 1)
            if poly.degree() < 2:
                raise ConditionIFailed(f"line {no}: relation has no quadratic part",
                                       witness=_poly_to_f2(poly, len(labels)))
            relations.append(poly)
            rel_lines.append(no)
        else:
            raise ParseError(f"unknown statement {kw!r}", no, 1)
    if labels is None:
        raise EmptyGenerators("no generators declared", None, None)
    return ParsedFile(labels, relations, lets, rel_lines)


def parse(text):
    """Parse a presentation file into an NhPresentation."""
    return parse_file(text).presentation()


def _word(letters, labels):
    return ".".join(labels[i] for i in letters)


def format_f2(vec, d, labels):
    parts = []
    for k in sorted(vec):
        c = vec[k]
        if k < d * d:
            w = _word(divmod(k, d), labels)
        elif k < d * d + d:
            w = labels[k - d * d]
        else:
            w = ""
        if w:
            mag = "" if abs(c) == 1 else f"{format_scalar(abs(c))}*"
            body = mag + w
        else:
            body = format_scalar(abs(c))
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def safe_labels(labels):
    out = []
    for x in labels:
        y = x.replace("*", "_dual")
        y = re.sub(r"[^A-Za-z0-9_']", "_", y)
        if not IDENT.match(y):
            y = "g_" + y
        out.append(y)
    return tuple(out)


def print_presentation(nh, labels=None):
    """Inverse of ``parse``: one relation line per relation basis vector."""
    labels = safe_labels(labels or nh.labels)
    lines = ["generators " + " ".join(labels)]
    for v in nh.relations():
        lines.append("relation " + format_f2(v, nh.dim_e, labels))
    return "\n".join(lines) + "\n"


def parse_representation(text, labels):
    from ..complexes import Representation

    gens = {x: i for i, x in enumerate(labels)}
    dim = None
    side = "left"
    mats = {}
    for no, line in _lines(text):
        kw, rest, col = _split_keyword(line)
        if kw == "dimension":
            try:
                dim = int(rest.strip())
            except ValueError:
                raise ParseError("dimension must be an integer", no, col + 1) from None
            if dim < 1:
                raise ParseError("dimension must be positive", no, col + 1)
        elif kw == "side":
            side = rest.strip()
            if side not in ("left", "right"):
                raise ParseError("side must be 'left' or 'right'", no, col + 1)
        elif kw == "rep":
            if dim is None:
                raise ParseError("'dimension' must come before 'rep'", no, 1)
            name, eq, body = rest.partition("=")
            name = name.strip()
            if name not in gens:
                raise UnboundIdentifier(f"unknown generator {name!r}", no, col + 1)
            if not eq:
                raise ParseError("expected 'rep <generator> = [[...], ...]'", no, col + 1)
            mats[gens[name]] = _matrix_literal(body, no, col + len(name) + 2, dim)
        else:
            raise ParseError(f"unknown statement {kw!r}", no, 1)
    if dim is None:
        raise ParseError("missing 'dimension'", None, None)
    full = tuple(mats.get(i, Matrix.zeros(dim, dim)) for i in range(len(labels)))
    return Representation(dim, full, side)


def _matrix_literal(body, no, col, dim):
    s = body.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError("matrix must be a bracketed list of rows", no, col + 1)
    rows = re.findall(r"\[([^\[\]]*)\]", s[1:-1])
    if len(rows) != dim:
        raise ParseError(f"expected {dim} rows", no, col + 1)
    out = []
    for r in rows:
        entries = [e for e in r.split(",")]
        if len(entries) != dim:
            raise ParseError(f"expected {dim} entries per row", no, col + 1)
        row = []
        for e in entries:
            val = _eval(e, no, col, {}, {}).scalar()
            row.append(Fraction(val))
        out.append(row)
    return Matrix.from_rows(out)
