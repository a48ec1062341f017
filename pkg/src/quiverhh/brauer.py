"""Brauer graphs and their algebras.

A Brauer graph is a connected multigraph with a multiplicity per vertex
and a cyclic order of the half-edges at each vertex (a loop contributes
two half-edges to its vertex).  The quiver Q_G has one vertex per EDGE
and one arrow per consecutive half-edge pair at every non-truncated
vertex (truncated: m(v) * val(v) = 1).  Walking the cyclic order at v
gives the special cycles; their rotations C_v(a), powered by m(v), build
the relations:

    type I    C_v(a)^m(v) - C_w(a')^m(w)   (two starts on one edge)
    type II   a * C_v(a)^m(v)
    type III  b*a for composable arrows with b not the cyclic successor
              of a (one cycle never contributes a length-2 subpath twice)

The associated graded algebra keeps the shorter side of each unbalanced
type I relation; balanced edges keep the difference.  Everything the
dimension formulas need (graded degrees, balanced components, the S2
count of opposite arrow pairs on double edges) lives here too, plus the
consolidated report that checks the formulas on a concrete field.
"""

from __future__ import annotations

import random
from itertools import combinations

from .pathalg import FreeElement, Path, Quiver, compose
from . import groebner
from .quotient import build_quotient
from . import ppcomplex


class BrauerGraphError(ValueError):
    pass


def _half_token(edge_name, end, is_loop):
    return f"{edge_name}.{end + 1}" if is_loop else edge_name


class BrauerGraph:
    """Vertices with multiplicities, edges, and cyclic half-edge orders.

    ``cyclic`` maps a vertex name to its half-edge tokens in cyclic
    order: `e` for a non-loop edge e, `e.1`/`e.2` for a loop (suffix
    mandatory for loops, forbidden otherwise).  Vertices with exactly one
    half-edge may be omitted.
    """

    __slots__ = ("vertex_names", "mult", "edges", "cyclic", "_vertex_index")

    def __init__(self, vertices, edges, cyclic):
        # vertices: [(name, mult)], edges: [(name, v, w)]
        self.vertex_names = [name for name, _ in vertices]
        self.mult = {name: m for name, m in vertices}
        self._vertex_index = {n: i for i, n in enumerate(self.vertex_names)}
        if len(self._vertex_index) != len(self.vertex_names):
            raise BrauerGraphError("duplicate vertex name")
        for name, m in vertices:
            if m < 1:
                raise BrauerGraphError(f"multiplicity of {name} must be >= 1")
        self.edges = []
        seen = set()
        for name, v, w in edges:
            if name in seen or name in self._vertex_index:
                raise BrauerGraphError(f"duplicate name {name!r}")
            seen.add(name)
            if v not in self._vertex_index or w not in self._vertex_index:
                raise BrauerGraphError(f"edge {name!r} has an unknown endpoint")
            self.edges.append((name, v, w))
        if not self.edges:
            raise BrauerGraphError("a Brauer graph needs at least one edge")
        self.cyclic = {}
        self._check_connected()
        self._resolve_cyclic(cyclic or {})

    # -- setup ----------------------------------------------------------

    def _check_connected(self):
        if len(self.vertex_names) == 1:
            return
        parent = list(range(len(self.vertex_names)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for _, v, w in self.edges:
            a, b = find(self._vertex_index[v]), find(self._vertex_index[w])
            parent[a] = b
        roots = {find(i) for i in range(len(self.vertex_names))}
        if len(roots) > 1:
            raise BrauerGraphError("graph is not connected")

    def half_edges_at(self, vname):
        """(edge_index, end) pairs attached to the vertex, declaration order."""
        out = []
        for i, (_, v, w) in enumerate(self.edges):
            if v == vname:
                out.append((i, 0))
            if w == vname:
                out.append((i, 1))
        return out

    def _resolve_cyclic(self, given):
        token_of = {}
        for i, (name, v, w) in enumerate(self.edges):
            loop = v == w
            token_of[(i, 0)] = _half_token(name, 0, loop)
            token_of[(i, 1)] = _half_token(name, 1, loop)
        for vname in given:
            if vname not in self._vertex_index:
                raise BrauerGraphError(f"cyclic order for unknown vertex {vname!r}")
        for vname in self.vertex_names:
            incident = self.half_edges_at(vname)
            # a non-loop token is unambiguous once restricted to the
            # half-edges at this vertex; loops carry .1/.2 suffixes
            by_token = {token_of[h]: h for h in incident}
            tokens = given.get(vname)
            if tokens is None:
                if len(incident) != 1:
                    raise BrauerGraphError(
                        f"vertex {vname!r} needs an explicit cyclic order")
                tokens = [token_of[incident[0]]]
            halves = []
            for t in tokens:
                h = by_token.get(t)
                if h is None:
                    raise BrauerGraphError(f"unknown half-edge {t!r} at {vname!r}")
                halves.append(h)
            if sorted(halves) != sorted(incident):
                raise BrauerGraphError(
                    f"cyclic order at {vname!r} must list each incident "
                    f"half-edge exactly once")
            self.cyclic[vname] = halves

    # -- basic combinatorics ---------------------------------------------

    def val(self, vname):
        return len(self.cyclic[vname])

    def truncated(self, vname):
        return self.mult[vname] * self.val(vname) == 1

    def edge_names(self):
        return [name for name, _, _ in self.edges]

    def is_loop(self, edge_index):
        _, v, w = self.edges[edge_index]
        return v == w

    def has_loop(self):
        return any(self.is_loop(i) for i in range(len(self.edges)))

    def __repr__(self):
        return (f"BrauerGraph({len(self.vertex_names)} vertices, "
                f"{len(self.edges)} edges)")


class VertexCycle:
    """The cyclic arrow sequence at one non-truncated vertex."""

    __slots__ = ("vertex_name", "mult", "arrow_ids", "quiver")

    def __init__(self, vertex_name, mult, arrow_ids, quiver):
        self.vertex_name = vertex_name
        self.mult = mult
        self.arrow_ids = arrow_ids
        self.quiver = quiver

    @property
    def val(self):
        return len(self.arrow_ids)

    def rotation(self, k):
        return tuple(self.arrow_ids[k:]) + tuple(self.arrow_ids[:k])

    def rotation_path(self, k):
        """C_v(a_k): the special cycle applying a_k first."""
        return Path(self.quiver, self.rotation(k))

    def power_path(self, k, times=None):
        if times is None:
            times = self.mult
        return Path(self.quiver, self.rotation(k) * times)

    def successor(self, arrow_id):
        pos = self.arrow_ids.index(arrow_id)
        return self.arrow_ids[(pos + 1) % self.val]


def build_quiver_and_cycles(graph):
    """Q_G plus the special cycle at every non-truncated vertex.

    Quiver vertices are the edges (declaration order); arrow `v:k` runs
    from the k-th to the (k+1)-th half-edge of o(v).  A single-edge
    all-multiplicity-1 graph yields one vertex and no arrows.
    """
    arrows = []
    cycle_plan = []
    for vname in graph.vertex_names:
        if graph.truncated(vname):
            continue
        halves = graph.cyclic[vname]
        val = len(halves)
        ids = []
        for k in range(val):
            src = graph.edges[halves[k][0]][0]
            tgt = graph.edges[halves[(k + 1) % val][0]][0]
            ids.append(len(arrows))
            arrows.append((f"{vname}:{k}", src, tgt))
        cycle_plan.append((vname, ids))
    quiver = Quiver(graph.edge_names(), arrows)
    cycles = [
        VertexCycle(vname, graph.mult[vname], ids, quiver)
        for vname, ids in cycle_plan
    ]
    return quiver, cycles


def _cycle_of_arrow(cycles):
    where = {}
    for cyc in cycles:
        for pos, a in enumerate(cyc.arrow_ids):
            where[a] = (cyc, pos)
    return where


def _edge_starts(quiver, cycles):
    """Per quiver vertex (edge) i: list of (cycle, k) with source(a_k) = i."""
    starts = {i: [] for i in range(quiver.n_vertices)}
    for cyc in cycles:
        for k, a in enumerate(cyc.arrow_ids):
            starts[quiver.arrow_src[a]].append((cyc, k))
    return starts


def type3_pairs(quiver, cycles):
    """Composable (alpha, beta) with beta*alpha a type III relation.

    beta*alpha is excluded exactly when beta is the cyclic successor of
    alpha at alpha's vertex; at a valency-1 vertex the successor of the
    loop is itself, which realizes the stated loop exception.
    """
    where = _cycle_of_arrow(cycles)
    out = []
    for alpha in range(quiver.n_arrows):
        cyc, _ = where[alpha]
        succ = cyc.successor(alpha)
        for beta in range(quiver.n_arrows):
            if quiver.arrow_src[beta] != quiver.arrow_tgt[alpha]:
                continue
            if beta == succ:
                continue
            out.append((alpha, beta))
    return out


def generate_relations(graph, field):
    """(R1, R2, R3) as free elements; may contain redundant members."""
    quiver, cycles = build_quiver_and_cycles(graph)
    starts = _edge_starts(quiver, cycles)
    one = field.one
    r1 = []
    for i in range(quiver.n_vertices):
        for (c1, k1), (c2, k2) in combinations(starts[i], 2):
            p = c1.power_path(k1)
            q = c2.power_path(k2)
            r1.append(FreeElement(quiver, field, {p: one, q: field.neg(one)}))
    r2 = []
    for i in range(quiver.n_vertices):
        for cyc, k in starts[i]:
            alpha = quiver.arrow(cyc.arrow_ids[k])
            rel = compose(alpha, cyc.power_path(k))
            r2.append(FreeElement.from_path(rel, field))
    r3 = []
    for alpha, beta in type3_pairs(quiver, cycles):
        p = Path(quiver, (alpha, beta))
        r3.append(FreeElement.from_path(p, field))
    return r1, r2, r3


def gr_relations(graph, field):
    """Relations of gr(A): shorter side of unbalanced type I, rest kept."""
    quiver, cycles = build_quiver_and_cycles(graph)
    starts = _edge_starts(quiver, cycles)
    one = field.one
    rels = []
    for i in range(quiver.n_vertices):
        for (c1, k1), (c2, k2) in combinations(starts[i], 2):
            p = c1.power_path(k1)
            q = c2.power_path(k2)
            if p.length == q.length:
                rels.append(FreeElement(quiver, field, {p: one, q: field.neg(one)}))
            elif p.length > q.length:
                rels.append(FreeElement.from_path(q, field))
            else:
                rels.append(FreeElement.from_path(p, field))
    _, r2, r3 = generate_relations(graph, field)
    rels.extend(r2)
    rels.extend(r3)
    return rels


def graded_degree(graph, vname):
    """grd(v): m(v)val(v), inherited across a truncated endpoint, else 1."""
    own = graph.mult[vname] * graph.val(vname)
    if own > 1:
        return own
    # truncated: exactly one half-edge; look across its edge
    (ei, _), = graph.half_edges_at(vname)
    _, v, w = graph.edges[ei]
    other = w if v == vname else v
    other_deg = graph.mult[other] * graph.val(other)
    if other_deg > 1:
        return other_deg
    return 1


def unbalanced_edges(graph):
    out = []
    for i, (name, v, w) in enumerate(graph.edges):
        if graded_degree(graph, v) != graded_degree(graph, w):
            out.append(i)
    return out


def balanced_components(graph):
    """(|Gamma_G|, vertex components) after splitting unbalanced edges."""
    bad = set(unbalanced_edges(graph))
    idx = graph._vertex_index
    parent = list(range(len(graph.vertex_names)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (_, v, w) in enumerate(graph.edges):
        if i in bad:
            continue
        a, b = find(idx[v]), find(idx[w])
        if a != b:
            parent[a] = b
    comps = {}
    for i, name in enumerate(graph.vertex_names):
        comps.setdefault(find(i), []).append(name)
    return len(comps), sorted(comps.values())


def count_s2(graph):
    """Unordered pairs of distinct arrows whose both composites are type III.

    Each such pair {a, b} (so ab and ba are both relations of type III,
    forcing a and b to run in opposite directions between two quiver
    vertices, or to be two loops) contributes one kernel element mixing
    the two special cycles.
    """
    quiver, cycles = build_quiver_and_cycles(graph)
    r3 = set(type3_pairs(quiver, cycles))
    count = 0
    for a, b in combinations(range(quiver.n_arrows), 2):
        if (a, b) in r3 and (b, a) in r3:
            count += 1
    return count


def is_mult1_double_edge(graph):
    """The solvability exception: two vertices, a double edge, both m = 1."""
    if len(graph.vertex_names) != 2 or len(graph.edges) != 2:
        return False
    if any(m != 1 for m in graph.mult.values()):
        return False
    ends = [{v, w} for _, v, w in graph.edges]
    return ends[0] == ends[1] and len(ends[0]) == 2


def algebra_dim(graph):
    """dim of the BGA without building it: identities, cycle pieces, socle."""
    total = 2 * len(graph.edges)
    for vname in graph.vertex_names:
        if graph.truncated(vname):
            continue
        val = graph.val(vname)
        total += val * (graph.mult[vname] * val - 1)
    return total


class Check:
    __slots__ = ("name", "status", "detail")

    def __init__(self, name, status, detail=""):
        self.name = name
        self.status = status  # ok | fail | hypothesis-failed | skipped
        self.detail = detail

    def __repr__(self):
        return f"Check({self.name}: {self.status}{' ' + self.detail if self.detail else ''})"


class BGAReport:
    __slots__ = (
        "graph", "field", "dim_a", "dim_gr", "dim_hh1_a", "dim_hh1_gr",
        "dim_l00_a", "dim_l00_gr", "gamma", "s2", "solvable_a", "solvable_gr",
        "derived_a", "derived_gr", "closure_added_a", "loop_char_a",
        "loop_char_gr", "checks",
    )

    def __init__(self, **kw):
        for name in self.__slots__:
            setattr(self, name, kw.get(name))

    @property
    def ok(self):
        return all(c.status != "fail" for c in self.checks)

    def __repr__(self):
        return (f"BGAReport(hh1={self.dim_hh1_a}/{self.dim_hh1_gr}, "
                f"gamma={self.gamma}, s2={self.s2}, ok={self.ok})")


def _pipeline(relations, field, max_tip_length=50, max_basis=100000):
    gb = groebner.complete(relations, max_tip_length=max_tip_length)
    algebra = build_quotient(gb, max_basis=max_basis)
    sl = ppcomplex.CochainSlice(algebra)
    return gb, algebra, sl


def invariant_report(graph, field, max_tip_length=50, max_basis=100000):
    """Build A and gr(A), compute both cohomologies, check the formulas.

    In characteristic p the formula checks are gated on the loop-power
    condition (char must not divide any loop's minimal tip power) on both
    algebras; failures of the gate are marked hypothesis-failed rather
    than asserted.  The completion check (relations already form a
    Groebner basis) is characteristic-free and always asserted.
    """
    r1, r2, r3 = generate_relations(graph, field)
    gb_a, alg_a, sl_a = _pipeline(r1 + r2 + r3, field, max_tip_length, max_basis)
    gb_gr, alg_gr, sl_gr = _pipeline(gr_relations(graph, field), field,
                                     max_tip_length, max_basis)
    dim_hh1_a = ppcomplex.compute_hh1(alg_a, sl_a)[0]
    dim_hh1_gr = ppcomplex.compute_hh1(alg_gr, sl_gr)[0]
    lie_a = ppcomplex.lie_presentation(alg_a, sl_a)
    lie_gr = ppcomplex.lie_presentation(alg_gr, sl_gr)
    graded_a = ppcomplex.graded_report(alg_a, sl_a)
    graded_gr = ppcomplex.graded_report(alg_gr, sl_gr)
    loop_a = ppcomplex.loop_char_report(alg_a)
    loop_gr = ppcomplex.loop_char_report(alg_gr)
    gamma = balanced_components(graph)[0]
    s2 = count_s2(graph)
    n_e = len(graph.edges)
    n_v = len(graph.vertex_names)
    sum_m = sum(graph.mult.values())

    gate_ok = field.char == 0 or (
        all(not d for _, _, d in loop_a) and all(not d for _, _, d in loop_gr))
    checks = []

    def formula(name, lhs, rhs):
        detail = f"{lhs} vs {rhs}"
        if not gate_ok:
            checks.append(Check(name, "hypothesis-failed", detail))
        elif lhs == rhs:
            checks.append(Check(name, "ok", detail))
        else:
            checks.append(Check(name, "fail", detail))

    if gb_a.closure_added == 0:
        checks.append(Check("relations-form-gb", "ok"))
    else:
        checks.append(Check("relations-form-gb", "fail",
                            f"completion added {gb_a.closure_added} elements"))
    formula("l00-dim", graded_a.dim_L00, n_e - n_v + 2)
    formula("l00-dim-gr", graded_gr.dim_L00, n_e - n_v + 1 + gamma)
    formula("hh1-difference", dim_hh1_gr - dim_hh1_a, gamma - 1)
    if graph.has_loop():
        checks.append(Check("hh1-formula-no-loops", "skipped", "graph has loops"))
    else:
        formula("hh1-formula-no-loops", dim_hh1_a,
                n_e - 2 * n_v + sum_m + s2 + 2)
    if is_mult1_double_edge(graph):
        checks.append(Check("solvable", "skipped",
                            "multiplicity-1 double edge exception"))
    elif not gate_ok:
        checks.append(Check("solvable", "hypothesis-failed",
                            f"A {lie_a.solvable}, gr {lie_gr.solvable}"))
    elif lie_a.solvable and lie_gr.solvable:
        checks.append(Check("solvable", "ok"))
    else:
        checks.append(Check("solvable", "fail",
                            f"A {lie_a.solvable}, gr {lie_gr.solvable}"))

    return BGAReport(
        graph=graph, field=field, dim_a=alg_a.dim, dim_gr=alg_gr.dim,
        dim_hh1_a=dim_hh1_a, dim_hh1_gr=dim_hh1_gr,
        dim_l00_a=graded_a.dim_L00, dim_l00_gr=graded_gr.dim_L00,
        gamma=gamma, s2=s2,
        solvable_a=lie_a.solvable, solvable_gr=lie_gr.solvable,
        derived_a=lie_a.derived_dims, derived_gr=lie_gr.derived_dims,
        closure_added_a=gb_a.closure_added,
        loop_char_a=loop_a, loop_char_gr=loop_gr,
        checks=checks,
    )


# -- random corpus -------------------------------------------------------

DEFAULT_SEED = 271828

_EDGE_NAMES = "abcdefgh"


def random_brauer_graph(rng, max_edges=6, max_mult=3, max_dim=18):
    """One random connected graph, rejection-sampled to stay small.

    The single-edge all-multiplicity-1 graph (whose algebra is just k)
    is excluded; every dimension formula degenerates there.
    """
    while True:
        nv = rng.randint(1, 4)
        ne = rng.randint(max(1, nv - 1), max_edges)
        vnames = [f"v{i + 1}" for i in range(nv)]
        order = list(range(nv))
        rng.shuffle(order)
        ends = []
        for i in range(1, nv):
            ends.append((order[i], order[rng.randrange(i)]))
        while len(ends) < ne:
            ends.append((rng.randrange(nv), rng.randrange(nv)))
        edges = [
            (_EDGE_NAMES[i], vnames[v], vnames[w])
            for i, (v, w) in enumerate(ends)
        ]
        mult = {v: rng.choice((1, 1, 1, 2, 2, max_mult)) for v in vnames}
        graph = _with_random_cyclic(rng, vnames, mult, edges)
        if graph is None:
            continue
        if len(edges) == 1 and all(m == 1 for m in mult.values()):
            if not graph.is_loop(0):
                continue
        if algebra_dim(graph) > max_dim:
            continue
        return graph


def _with_random_cyclic(rng, vnames, mult, edges):
    tokens = {v: [] for v in vnames}
    for name, v, w in edges:
        if v == w:
            tokens[v].extend([f"{name}.1", f"{name}.2"])
        else:
            tokens[v].append(name)
            tokens[w].append(name)
    cyclic = {}
    for v, toks in tokens.items():
        rng.shuffle(toks)
        cyclic[v] = toks
    try:
        return BrauerGraph([(v, mult[v]) for v in vnames], edges, cyclic)
    except BrauerGraphError:
        return None


def corpus(seed=DEFAULT_SEED, size=20, max_edges=6, max_mult=3, max_dim=18):
    """A seeded list of graphs guaranteed to include loops and multi-edges."""
    rng = random.Random(seed)
    graphs = []

    def has_multi(g):
        pairs = [frozenset((v, w)) for _, v, w in g.edges if v != w]
        return len(pairs) != len(set(pairs))

    while (len(graphs) < size
           or not any(g.has_loop() for g in graphs)
           or not any(has_multi(g) for g in graphs)):
        graphs.append(random_brauer_graph(rng, max_edges, max_mult, max_dim))
        if len(graphs) > 10 * size:
            raise RuntimeError("corpus generation failed to diversify")
    return graphs
