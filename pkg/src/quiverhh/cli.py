"""Command line front end and the two text file formats.

Algebra files describe a quiver with relations:

    field GF(3)
    vertex e1 e2
    arrow b2: e1 -> e2
    arrow b1: e2 -> e1
    rel b1*b2 - a1*a2
    rel x^3 + 2*y*x

``field`` is ``Q`` or ``GF(p)``.  Vertices may share a line.  Arrow
declaration order is ascending precedence for the length-lexicographic
order.  Relation expressions are integer combinations of path words
written left to right in composition order (leftmost factor applied
last); ``*`` separates factors, ``^`` repeats one, and every support
path must have length at least 2.  ``#`` starts a comment.

Brauer graph files:

    field Q
    vertex v1 mult 2
    vertex v2 mult 1
    edge a v1 v2
    edge b v1 v2
    cyclic v1: a b
    cyclic v2: b a

Loops list their two ends as ``e.1`` and ``e.2``; the suffix is
rejected on non-loops.  A vertex with a single half-edge may omit its
``cyclic`` line.

Subcommands: gb, basis, hh, chains, oracle (algebra files), bga,
report (Brauer graph files).  Output is line oriented ``key: value``
text.  Exit status 0 means every check passed, 1 a mathematical
disagreement or failed check, 2 a syntax or validation error, 3 a cap
overflow.
"""

import argparse
import re
import sys

from .exactla import parse_field
from .pathalg import ZERO, Quiver, FreeElement, compose, format_path, format_element
from .groebner import Incomplete, CapExceeded, complete, uf_chains
from .quotient import InfiniteDimensional, build_quotient
from .ppcomplex import (
    build_cochain,
    compute_hh0,
    compute_hh1,
    lie_presentation,
    graded_report,
    loop_char_report,
)
from .baroracle import build_bar_slice, bar_hh_dims, bar_derived_series
from .brauer import (
    DEFAULT_SEED,
    BrauerGraph,
    BrauerGraphError,
    _half_token,
    build_quiver_and_cycles,
    generate_relations,
    gr_relations,
    invariant_report,
    corpus,
)


class ParseError(Exception):
    """Syntax error in an input file, with 1-based line and column."""

    def __init__(self, message, line, col):
        super().__init__("line %d, col %d: %s" % (line, col, message))
        self.line = line
        self.col = col
        self.message = message


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.:]*")
_INT_RE = re.compile(r"[0-9]+")
_PLAIN_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_ARROW_RE = re.compile(r"(.*\S)\s*:\s*(\S+)\s*->\s*(\S+)\Z")


def _tokenize(text, lineno, base_col):
    # token kinds: name, int, and the single characters + - * ^
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        col = base_col + i
        if ch in "+-*^":
            out.append((ch, ch, col))
            i += 1
            continue
        m = _INT_RE.match(text, i)
        if m:
            out.append(("int", int(m.group()), col))
            i = m.end()
            continue
        m = _NAME_RE.match(text, i)
        if m:
            out.append(("name", m.group(), col))
            i = m.end()
            continue
        raise ParseError("unexpected character %r" % ch, lineno, col)
    return out


class _ExprParser:
    """Recursive-descent parser for relation expressions.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := (int '*')? factor ('*' factor)*
    factor := name ('^' int)?
    """

    def __init__(self, tokens, lineno, end_col, quiver, field):
        self.toks = tokens
        self.pos = 0
        self.lineno = lineno
        self.end_col = end_col
        self.quiver = quiver
        self.field = field

    def _peek(self):
        if self.pos < len(self.toks):
            return self.toks[self.pos]
        return (None, None, self.end_col)

    def _take(self):
        tok = self._peek()
        if tok[0] is not None:
            self.pos += 1
        return tok

    def _fail(self, message, col=None):
        if col is None:
            col = self._peek()[2]
        raise ParseError(message, self.lineno, col)

    def parse(self):
        terms = {}
        sign = 1
        kind, _, _ = self._peek()
        if kind in ("+", "-"):
            sign = -1 if self._take()[0] == "-" else 1
        while True:
            coeff, path = self._term()
            value = self.field.of(sign * coeff)
            prev = terms.get(path, self.field.zero)
            terms[path] = self.field.add(prev, value)
            kind, _, _ = self._peek()
            if kind is None:
                break
            if kind not in ("+", "-"):
                self._fail("expected '+' or '-' between terms")
            sign = -1 if self._take()[0] == "-" else 1
        return FreeElement(self.quiver, self.field, terms)

    def _term(self):
        coeff = 1
        kind, value, col = self._peek()
        if kind == "int":
            self._take()
            coeff = value
            kind, _, _ = self._peek()
            if kind != "*":
                self._fail("integer coefficient needs '*' and a path", col)
            self._take()
        path = self._factor()
        while self._peek()[0] == "*":
            self._take()
            kind, _, col = self._peek()
            nxt = self._factor()
            path = compose(path, nxt)
            if path is ZERO:
                self._fail("factors are not composable", col)
        return coeff, path

    def _factor(self):
        kind, value, col = self._take()
        if kind != "name":
            self._fail("expected a vertex or arrow name", col)
        if value in self.quiver.vertex_index:
            path = self.quiver.trivial(value)
        elif value in self.quiver.arrow_index:
            path = self.quiver.arrow(value)
        else:
            self._fail("unknown vertex or arrow %r" % value, col)
        if self._peek()[0] == "^":
            self._take()
            kind, power, pcol = self._take()
            if kind != "int" or power < 1:
                self._fail("exponent must be a positive integer", pcol)
            base = path
            for _ in range(power - 1):
                path = compose(path, base)
                if path is ZERO:
                    self._fail("power of a non-loop path", col)
        return path


def _split_directive(raw, lineno):
    line = raw.split("#", 1)[0].rstrip()
    if not line.strip():
        return None
    head = line.split(None, 1)[0]
    col = line.index(head) + 1
    rest = line[col - 1 + len(head):]
    rest_col = col + len(head) + (len(rest) - len(rest.lstrip()) if rest else 0)
    return head, col, rest.strip(), rest_col, len(line) + 1


def parse_algebra(text):
    """Parse an algebra file into (field, quiver, relations)."""
    field = None
    vertices = []
    arrows = []
    seen = {}
    rels = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        item = _split_directive(raw, lineno)
        if item is None:
            continue
        head, col, rest, rest_col, end_col = item
        if head == "field":
            if field is not None:
                raise ParseError("duplicate field line", lineno, col)
            try:
                field = parse_field(rest)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, rest_col) from None
        elif head == "vertex":
            names = rest.split()
            if not names:
                raise ParseError("vertex line needs at least one name", lineno, col)
            for name in names:
                if not _NAME_RE.fullmatch(name):
                    raise ParseError("bad vertex name %r" % name, lineno, rest_col)
                if name in seen:
                    raise ParseError("duplicate name %r" % name, lineno, rest_col)
                seen[name] = "vertex"
                vertices.append(name)
        elif head == "arrow":
            m = _ARROW_RE.match(rest)
            if m is None:
                raise ParseError("expected 'arrow <name>: <src> -> <tgt>'", lineno, col)
            name, src, tgt = m.groups()
            if not _NAME_RE.fullmatch(name):
                raise ParseError("bad arrow name %r" % name, lineno, rest_col)
            if name in seen:
                raise ParseError("duplicate name %r" % name, lineno, rest_col)
            for v in (src, tgt):
                if v not in seen or seen[v] != "vertex":
                    raise ParseError("unknown vertex %r" % v, lineno, rest_col)
            seen[name] = "arrow"
            arrows.append((name, src, tgt))
        elif head == "rel":
            if not rest:
                raise ParseError("empty relation", lineno, col)
            rels.append((lineno, rest, rest_col, end_col))
        else:
            raise ParseError("unknown directive %r" % head, lineno, col)
    if field is None:
        raise ParseError("missing field line", 1, 1)
    if not vertices:
        raise ParseError("no vertices declared", 1, 1)
    quiver = Quiver(vertices, arrows)
    relations = []
    for lineno, expr, rest_col, end_col in rels:
        tokens = _tokenize(expr, lineno, rest_col)
        elem = _ExprParser(tokens, lineno, end_col, quiver, field).parse()
        if not elem.terms:
            raise ParseError("relation reduces to zero", lineno, rest_col)
        if min(p.length for p in elem.terms) < 2:
            raise ParseError("relation contains a path of length < 2", lineno, rest_col)
        relations.append(elem)
    return field, quiver, relations


def _field_text(field):
    return "Q" if field.char == 0 else "GF(%d)" % field.char


def algebra_to_text(field, quiver, relations):
    """Serialize to the algebra file format; inverse of parse_algebra
    for integer-coefficient relations."""
    lines = ["field %s" % _field_text(field)]
    lines.append("vertex %s" % " ".join(quiver.vertices))
    for name, s, t in zip(quiver.arrow_names, quiver.arrow_src, quiver.arrow_tgt):
        lines.append("arrow %s: %s -> %s" % (name, quiver.vertices[s], quiver.vertices[t]))
    for rel in relations:
        lines.append("rel %s" % format_element(rel))
    return "\n".join(lines) + "\n"


def parse_brauer(text):
    """Parse a Brauer graph file into (field, BrauerGraph)."""
    field = None
    vertices = []
    vnames = set()
    edges = []
    enames = set()
    cyclic = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        item = _split_directive(raw, lineno)
        if item is None:
            continue
        head, col, rest, rest_col, _ = item
        if head == "field":
            if field is not None:
                raise ParseError("duplicate field line", lineno, col)
            try:
                field = parse_field(rest)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, rest_col) from None
        elif head == "vertex":
            parts = rest.split()
            if len(parts) != 3 or parts[1] != "mult":
                raise ParseError("expected 'vertex <name> mult <m>'", lineno, col)
            name, _, mtext = parts
            if not _PLAIN_NAME_RE.match(name):
                raise ParseError("bad vertex name %r" % name, lineno, rest_col)
            if name in vnames:
                raise ParseError("duplicate vertex %r" % name, lineno, rest_col)
            if not mtext.isdigit() or int(mtext) < 1:
                raise ParseError("multiplicity must be a positive integer", lineno, rest_col)
            vnames.add(name)
            vertices.append((name, int(mtext)))
        elif head == "edge":
            parts = rest.split()
            if len(parts) != 3:
                raise ParseError("expected 'edge <name> <vertex> <vertex>'", lineno, col)
            name, v, w = parts
            if not _PLAIN_NAME_RE.match(name):
                raise ParseError("bad edge name %r" % name, lineno, rest_col)
            if name in enames:
                raise ParseError("duplicate edge %r" % name, lineno, rest_col)
            for x in (v, w):
                if x not in vnames:
                    raise ParseError("unknown vertex %r" % x, lineno, rest_col)
            enames.add(name)
            edges.append((name, v, w))
        elif head == "cyclic":
            if ":" not in rest:
                raise ParseError("expected 'cyclic <vertex>: <half-edges>'", lineno, col)
            vname, tail = rest.split(":", 1)
            vname = vname.strip()
            if vname not in vnames:
                raise ParseError("unknown vertex %r" % vname, lineno, rest_col)
            if vname in cyclic:
                raise ParseError("duplicate cyclic line for %r" % vname, lineno, rest_col)
            tokens = tail.split()
            if not tokens:
                raise ParseError("empty cyclic ordering", lineno, col)
            cyclic[vname] = tokens
        else:
            raise ParseError("unknown directive %r" % head, lineno, col)
    if field is None:
        raise ParseError("missing field line", 1, 1)
    graph = BrauerGraph(vertices, edges, cyclic)
    return field, graph


def brauer_to_text(field, graph):
    """Serialize to the Brauer graph file format; inverse of parse_brauer."""
    lines = ["field %s" % _field_text(field)]
    for name in graph.vertex_names:
        lines.append("vertex %s mult %d" % (name, graph.mult[name]))
    for name, v, w in graph.edges:
        lines.append("edge %s %s %s" % (name, v, w))
    for vname in graph.vertex_names:
        tokens = [_half_token(graph.edges[ei][0], end, graph.is_loop(ei))
                  for ei, end in graph.cyclic[vname]]
        lines.append("cyclic %s: %s" % (vname, " ".join(tokens)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommand implementations


def _load_algebra(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_algebra(text)


def _load_brauer(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_brauer(text)


def _gb_of(field, quiver, relations, max_tip_length):
    return complete(relations, max_tip_length=max_tip_length, quiver=quiver, field=field)


def _bool(value):
    return "true" if value else "false"


def _dims_text(dims):
    return ",".join(str(d) for d in dims)


def _combo_text(coords, field, prefix="h"):
    # linear combination of basis labels h0, h1, ... from a coordinate vector
    parts = []
    for k, c in enumerate(coords):
        if c == field.zero:
            continue
        mag = c
        neg = False
        if field.char == 0 and c < 0:
            neg = True
            mag = -c
        name = "%s%d" % (prefix, k)
        body = name if mag == field.one else "%s*%s" % (mag, name)
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts) if parts else "0"


def cmd_gb(args, out):
    field, quiver, relations = _load_algebra(args.file)
    gb = _gb_of(field, quiver, relations, args.max_tip_len)
    out("field: %s" % _field_text(field))
    out("size: %d" % len(gb.elements))
    out("closure-added: %d" % gb.closure_added)
    for i, g in enumerate(gb.elements):
        out("gb[%d]: %s" % (i, format_element(g)))
        out("tip[%d]: %s" % (i, format_path(g.tip()[0])))
    return 0


def cmd_basis(args, out):
    field, quiver, relations = _load_algebra(args.file)
    gb = _gb_of(field, quiver, relations, args.max_tip_len)
    algebra = build_quotient(gb, max_basis=args.max_basis)
    out("field: %s" % _field_text(field))
    out("dim: %d" % algebra.dim)
    for i, p in enumerate(algebra.basis):
        out("basis[%d]: %s" % (i, format_path(p)))
    return 0


def _print_hh(algebra, out):
    sl = build_cochain(algebra)
    hh0_dim, _ = compute_hh0(algebra, sl)
    pres = lie_presentation(algebra, sl)
    out("dim: %d" % algebra.dim)
    out("hh0: %d" % hh0_dim)
    out("hh1: %d" % pres.dim)
    for i, label in enumerate(pres.basis_labels):
        out("h[%d]: %s" % (i, label))
    field = algebra.field
    for i in range(pres.dim):
        for j in range(i + 1, pres.dim):
            coords = pres.structure_constants.get((i, j))
            if coords is None or all(c == field.zero for c in coords):
                continue
            out("[h%d,h%d]: %s" % (i, j, _combo_text(coords, field)))
    out("derived: %s" % _dims_text(pres.derived_dims))
    out("solvable: %s" % _bool(pres.solvable))
    rep = graded_report(algebra, sl)
    out("homogeneous: %s" % _bool(rep.homogeneous))
    out("L[-1]: %d" % rep.dim_L_minus1)
    out("L[0,0]: %d" % rep.dim_L00)
    if rep.graded_dims is not None:
        for deg, dim in enumerate(rep.graded_dims):
            out("L[%d]: %d" % (deg, dim))
    quiver = algebra.quiver
    if any(s == t for s, t in zip(quiver.arrow_src, quiver.arrow_tgt)):
        for name, power, divides in loop_char_report(algebra):
            out("loop[%s]: power=%d char-ok=%s" % (name, power, _bool(not divides)))
    return 0


def cmd_hh(args, out):
    field, quiver, relations = _load_algebra(args.file)
    gb = _gb_of(field, quiver, relations, args.max_tip_len)
    algebra = build_quotient(gb, max_basis=args.max_basis)
    out("field: %s" % _field_text(field))
    return _print_hh(algebra, out)


def cmd_chains(args, out):
    field, quiver, relations = _load_algebra(args.file)
    gb = _gb_of(field, quiver, relations, args.max_tip_len)
    levels = uf_chains(gb, args.n)
    for i, level in enumerate(levels):
        out("W[%d]: %d" % (i - 1, len(level)))
    return 0


def cmd_oracle(args, out):
    field, quiver, relations = _load_algebra(args.file)
    gb = _gb_of(field, quiver, relations, args.max_tip_len)
    algebra = build_quotient(gb, max_basis=args.max_basis)
    sl = build_cochain(algebra)
    pp_hh0, _ = compute_hh0(algebra, sl)
    pp_hh1, _ = compute_hh1(algebra, sl)
    pres = lie_presentation(algebra, sl)
    bar = build_bar_slice(algebra)
    bar_hh0, bar_hh1 = bar_hh_dims(algebra, bar)
    bar_derived = bar_derived_series(algebra, bar)
    out("field: %s" % _field_text(field))
    out("pp-hh0: %d" % pp_hh0)
    out("pp-hh1: %d" % pp_hh1)
    out("pp-derived: %s" % _dims_text(pres.derived_dims))
    out("bar-hh0: %d" % bar_hh0)
    out("bar-hh1: %d" % bar_hh1)
    out("bar-derived: %s" % _dims_text(bar_derived))
    agree = (pp_hh0 == bar_hh0 and pp_hh1 == bar_hh1
             and list(pres.derived_dims) == list(bar_derived))
    out("verdict: %s" % ("AGREE" if agree else "DISAGREE"))
    return 0 if agree else 1


def cmd_bga(args, out):
    field, graph = _load_brauer(args.file)
    if args.gr:
        relations = gr_relations(graph, field)
    else:
        r1, r2, r3 = generate_relations(graph, field)
        relations = r1 + r2 + r3
    if relations:
        quiver = relations[0].quiver
    else:
        quiver, _ = build_quiver_and_cycles(graph)
    text = algebra_to_text(field, quiver, relations)
    out(text.rstrip("\n"))
    return 0


def _print_report(rep, out):
    graph = rep.graph
    out("vertices: %d" % len(graph.vertex_names))
    out("edges: %d" % len(graph.edges))
    out("field: %s" % _field_text(rep.field))
    out("dimA: %d" % rep.dim_a)
    out("dimGr: %d" % rep.dim_gr)
    out("hh1A: %d" % rep.dim_hh1_a)
    out("hh1Gr: %d" % rep.dim_hh1_gr)
    out("l00A: %d" % rep.dim_l00_a)
    out("l00Gr: %d" % rep.dim_l00_gr)
    out("gamma: %d" % rep.gamma)
    out("s2: %d" % rep.s2)
    out("solvableA: %s" % _bool(rep.solvable_a))
    out("solvableGr: %s" % _bool(rep.solvable_gr))
    out("derivedA: %s" % _dims_text(rep.derived_a))
    out("derivedGr: %s" % _dims_text(rep.derived_gr))
    out("closure-added: %d" % rep.closure_added_a)
    failed = False
    for check in rep.checks:
        detail = " (%s)" % check.detail if check.detail else ""
        out("check[%s]: %s%s" % (check.name, check.status, detail))
        if check.status == "fail":
            failed = True
    out("status: %s" % ("FAIL" if failed else "PASS"))
    return 1 if failed else 0


def cmd_report(args, out):
    if args.corpus:
        rc = 0
        graphs = corpus(seed=args.seed, size=args.size)
        from .exactla import Field
        field = Field(0)
        for i, graph in enumerate(graphs):
            rep = invariant_report(graph, field,
                                   max_tip_length=args.max_tip_len,
                                   max_basis=args.max_basis)
            bad = [c.name for c in rep.checks if c.status == "fail"]
            status = "FAIL" if bad else "PASS"
            out("graph[%d]: edges=%d vertices=%d dim=%d status=%s%s"
                % (i, len(graph.edges), len(graph.vertex_names),
                   rep.dim_a, status,
                   " failed=" + ",".join(bad) if bad else ""))
            if bad:
                rc = 1
        out("corpus: %s" % ("FAIL" if rc else "PASS"))
        return rc
    field, graph = _load_brauer(args.file)
    rep = invariant_report(graph, field,
                           max_tip_length=args.max_tip_len,
                           max_basis=args.max_basis)
    return _print_report(rep, out)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quiverhh",
        description="Hochschild cohomology of quiver algebras "
                    "and Brauer graph algebras, in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_caps(p):
        p.add_argument("--max-tip-len", type=int, default=50,
                       help="abort completion past this tip length")
        p.add_argument("--max-basis", type=int, default=100000,
                       help="abort basis enumeration past this size")

    p = sub.add_parser("gb", help="reduced noncommutative Groebner basis")
    p.add_argument("file", help="algebra file")
    add_caps(p)
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("basis", help="monomial basis of the quotient")
    p.add_argument("file", help="algebra file")
    add_caps(p)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("hh", help="HH0, HH1 with Lie structure and grading")
    p.add_argument("file", help="algebra file")
    add_caps(p)
    p.set_defaults(func=cmd_hh)

    p = sub.add_parser("chains", help="sizes of the chain sets W(i)")
    p.add_argument("file", help="algebra file")
    p.add_argument("--n", type=int, required=True, help="highest chain degree")
    add_caps(p)
    p.set_defaults(func=cmd_chains)

    p = sub.add_parser("oracle", help="cross-check HH against the bar resolution")
    p.add_argument("file", help="algebra file")
    add_caps(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bga", help="emit the algebra file of a Brauer graph")
    p.add_argument("file", help="Brauer graph file")
    p.add_argument("--gr", action="store_true",
                   help="emit the associated graded algebra instead")
    p.set_defaults(func=cmd_bga)

    p = sub.add_parser("report", help="invariant report for a Brauer graph")
    p.add_argument("file", nargs="?", help="Brauer graph file")
    p.add_argument("--corpus", action="store_true",
                   help="run the seeded random corpus instead of a file")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help="corpus seed")
    p.add_argument("--size", type=int, default=20,
                   help="corpus size")
    add_caps(p)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "report" and not args.corpus and args.file is None:
        parser.error("report needs a file or --corpus")
    out = lambda line: print(line)
    try:
        return args.func(args, out)
    except ParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (BrauerGraphError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except Incomplete as exc:
        print("error: completion exceeded the tip length cap (offender %s)"
              % format_element(exc.offender), file=sys.stderr)
        return 3
    except CapExceeded:
        print("error: basis enumeration exceeded the cap", file=sys.stderr)
        return 3
    except InfiniteDimensional:
        print("error: quotient algebra is not finite dimensional "
              "within the basis cap", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
