"""Line-oriented input language.

    ring x1 x2 x3 x4
    ideal I = x1^2*x2, x3*x4      # '#' starts a comment
    graph G = {x1 x2}, {x2 x3}
    clutter C = {x1 x2 x3}, {x3 x4}
    digraph D = (x1 -> x2 : 3), (x2 -> x3)

The ring line comes first and exactly once.  A digraph weight belongs to
the head vertex and defaults to 1.
"""
from __future__ import annotations

import dataclasses
import re
from typing import Union

from .clutters import Clutter
from .errors import ParseError, PreconditionError
from .graphs import Graph
from .ideals import MonomialIdeal, VarContext, format_exps
from .polarization import WeightedDigraph

Binding = Union[MonomialIdeal, Graph, Clutter, WeightedDigraph]

_TOKEN = re.compile(r"\s*(?:(?P<arrow>->)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_.']*)|(?P<sym>[=,{}()^*:]))")
KINDS = ("ideal", "graph", "clutter", "digraph")


@dataclasses.dataclass
class Session:
    context: VarContext
    bindings: dict[str, Binding] = dataclasses.field(default_factory=dict)

    def get(self, name: str) -> Binding:
        try:
            return self.bindings[name]
        except KeyError:
            raise PreconditionError(f"no binding named {name!r}") from None


@dataclasses.dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int


def _tokenize(text: str, lineno: int) -> list[Token]:
    out = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            col = pos + len(stripped[pos:]) - len(stripped[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {stripped[col - 1]!r}", lineno, col)
        kind = m.lastgroup
        start = m.start(kind)
        out.append(Token(kind, m.group(kind), start + 1))
        pos = m.end()
    return out


class _Line:
    def __init__(self, tokens: list[Token], lineno: int, width: int):
        self.tokens = tokens
        self.i = 0
        self.lineno = lineno
        self.width = width

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def error(self, message: str, tok: Token | None = None):
        col = tok.column if tok else self.width + 1
        raise ParseError(message, self.lineno, col)

    def take(self, kind: str, text: str | None = None) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != kind or (text is not None and tok.text != text):
            want = repr(text) if text else kind
            got = "end of line" if tok is None else repr(tok.text)
            self.error(f"expected {want}, found {got}", tok)
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.text == text and tok.kind in ("sym", "arrow"):
            self.i += 1
            return True
        return False

    def done(self) -> bool:
        return self.i >= len(self.tokens)

    def finish(self):
        if not self.done():
            self.error(f"unexpected {self.peek().text!r}", self.peek())


def parse(text: str) -> Session:
    session: Session | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = _tokenize(body, lineno)
        if not tokens:
            continue
        line = _Line(tokens, lineno, len(body.rstrip()))
        head = line.take("name")
        if head.text == "ring":
            if session is not None:
                line.error("the ring line may appear only once", head)
            session = Session(_parse_ring(line))
            continue
        if session is None:
            line.error("the first statement must be a ring line", head)
        if head.text not in KINDS:
            line.error(f"unknown statement {head.text!r}", head)
        name_tok = line.take("name")
        if name_tok.text in session.bindings:
            line.error(f"duplicate binding {name_tok.text!r}", name_tok)
        line.take("sym", "=")
        parser = {"ideal": _parse_ideal, "graph": _parse_graph,
                  "clutter": _parse_clutter, "digraph": _parse_digraph}[head.text]
        session.bindings[name_tok.text] = parser(line, session.context)
    if session is None:
        raise ParseError("missing ring line", 1, 1)
    return session


def _parse_ring(line: _Line) -> VarContext:
    names = []
    while not line.done():
        tok = line.take("name")
        if tok.text in names:
            line.error(f"variable {tok.text!r} declared twice", tok)
        names.append(tok.text)
    if not names:
        line.error("the ring needs at least one variable")
    return VarContext(tuple(names))


def _var(line: _Line, ctx: VarContext) -> int:
    tok = line.take("name")
    try:
        return ctx.index(tok.text)
    except PreconditionError:
        line.error(f"unknown variable {tok.text!r}", tok)


def _list(line: _Line, item):
    out = []
    if line.done():
        return out
    out.append(item())
    while line.accept(","):
        out.append(item())
    line.finish()
    return out


def _parse_monomial(line: _Line, ctx: VarContext):
    tok = line.peek()
    if tok is not None and tok.kind == "int":
        line.take("int")
        if tok.text not in ("0", "1"):
            line.error("the only numeric monomials are 0 and 1", tok)
        return None if tok.text == "0" else (0,) * ctx.n
    e = [0] * ctx.n
    while True:
        i = _var(line, ctx)
        p = 1
        if line.accept("^"):
            p = int(line.take("int").text)
        e[i] += p
        if not line.accept("*"):
            return tuple(e)


def parse_monomial(text: str, ctx: VarContext):
    """Parse a single monomial such as ``x1^2*x3``."""
    line = _Line(_tokenize(text, 1), 1, len(text))
    m = _parse_monomial(line, ctx)
    line.finish()
    if m is None:
        raise ParseError("expected a nonzero monomial", 1, 1)
    return ctx.monomial(m)


def _parse_ideal(line: _Line, ctx: VarContext) -> MonomialIdeal:
    gens = [g for g in _list(line, lambda: _parse_monomial(line, ctx)) if g is not None]
    if not gens:
        return MonomialIdeal.zero(ctx)
    return MonomialIdeal(ctx, gens)


def _braced(line: _Line, ctx: VarContext) -> tuple[list[int], Token]:
    open_tok = line.take("sym", "{")
    verts = []
    while not line.accept("}"):
        tok = line.peek()
        v = _var(line, ctx)
        if v in verts:
            line.error(f"vertex {ctx.names[v]!r} repeated inside one edge", tok)
        verts.append(v)
    return verts, open_tok


def _parse_graph(line: _Line, ctx: VarContext) -> Graph:
    def edge():
        verts, tok = _braced(line, ctx)
        if len(verts) != 2:
            line.error("a graph edge has exactly two distinct vertices", tok)
        return tuple(verts)
    return Graph(ctx, tuple(_list(line, edge)))


def _parse_clutter(line: _Line, ctx: VarContext) -> Clutter:
    def edge():
        verts, tok = _braced(line, ctx)
        if not verts:
            line.error("clutter edges must be nonempty", tok)
        return sum(1 << v for v in verts)
    edges = _list(line, edge)
    try:
        return Clutter(ctx, tuple(edges))
    except PreconditionError as exc:
        line.error(str(exc), line.tokens[0])


def _parse_digraph(line: _Line, ctx: VarContext) -> WeightedDigraph:
    weights: dict[int, int] = {}
    arcs = []

    def arc():
        line.take("sym", "(")
        a = _var(line, ctx)
        line.take("arrow")
        tok = line.peek()
        b = _var(line, ctx)
        w = 1
        if line.accept(":"):
            wt = line.take("int")
            w = int(wt.text)
            if w < 1:
                line.error("weights must be positive", wt)
        line.take("sym", ")")
        if a == b:
            line.error("digraph arcs may not be loops", tok)
        if weights.get(b, w) != w:
            line.error(f"conflicting weights for vertex {ctx.names[b]!r}", tok)
        weights[b] = w
        return (a, b)

    arcs = _list(line, arc)
    return WeightedDigraph(ctx, tuple(arcs), tuple(weights.get(i, 1) for i in range(ctx.n)))


# --------------------------------------------------------------------------
# printing


def format_binding(name: str, obj: Binding) -> str:
    ctx = obj.context
    if isinstance(obj, MonomialIdeal):
        body = "0" if obj.is_zero() else ", ".join(format_exps(ctx, e) for e in obj.exps)
        return f"ideal {name} = {body}"
    if isinstance(obj, Graph):
        body = ", ".join("{%s %s}" % (ctx.names[a], ctx.names[b]) for a, b in obj.edges)
        return f"graph {name} = {body}".rstrip()
    if isinstance(obj, Clutter):
        body = ", ".join("{%s}" % " ".join(e) for e in obj.edge_names())
        return f"clutter {name} = {body}".rstrip()
    if isinstance(obj, WeightedDigraph):
        body = ", ".join(f"({ctx.names[a]} -> {ctx.names[b]} : {obj.weights[b]})" for a, b in obj.arcs)
        return f"digraph {name} = {body}".rstrip()
    raise TypeError(f"cannot print {type(obj).__name__}")


def format_session(session: Session) -> str:
    lines = ["ring " + " ".join(session.context.names)]
    lines += [format_binding(n, obj) for n, obj in session.bindings.items()]
    return "\n".join(lines) + "\n"
