"""Acceptance suite: the headline results the package promises.

Every check runs in exact arithmetic.  Each test prints a single
"CRITERION n: PASS/FAIL" line (visible with -s, -rA, or in the failure
report) and the whole module is expected to finish in well under a
minute.
"""

from random import Random

from quiverhh.baroracle import bar_derived_series, bar_hh_dims, build_bar_slice
from quiverhh.brauer import (
    corpus,
    count_s2,
    generate_relations,
    gr_relations,
    invariant_report,
)
from quiverhh.cli import parse_algebra, parse_brauer
from quiverhh.exactla import Field, coset_coordinates
from quiverhh.groebner import complete, is_reduced, normal_form
from quiverhh.pathalg import (
    FreeElement,
    Path,
    Quiver,
    compose,
    format_element,
    llex_compare,
    multiply,
)
from quiverhh.ppcomplex import (
    CochainSlice,
    bracket_pairs,
    compute_hh0,
    compute_hh1,
    graded_report,
    lie_presentation,
    loop_char_ok,
    loop_char_report,
)
from quiverhh.quotient import build_quotient

from conftest import data_text


def _emit(n, fn):
    try:
        detail = fn()
    except AssertionError as exc:
        first = str(exc).splitlines()[0] if str(exc) else "assertion failed"
        print("CRITERION %d: FAIL - %s" % (n, first))
        raise
    print("CRITERION %d: PASS - %s" % (n, detail))


def _algebra(name):
    field, quiver, rels = parse_algebra(data_text(name))
    gb = complete(rels)
    return field, quiver, gb, build_quotient(gb)


def _pname(quiver, p):
    if p.length == 0:
        return quiver.vertices[p.base]
    return "".join(quiver.arrow_names[i] for i in p.written())


def _psi0_columns(sl):
    quiver, field = sl.algebra.quiver, sl.algebra.field
    out = {}
    for col, (v, g) in enumerate(sl.q0_pairs):
        ent = {}
        for r in range(len(sl.q1_pairs)):
            c = sl.psi0[r][col]
            if c != field.zero:
                a, b = sl.q1_pairs[r]
                ent[(quiver.arrow_names[a], _pname(quiver, b))] = str(c)
        out[(quiver.vertices[v], _pname(quiver, g))] = ent
    return out


def _psi1_columns(sl):
    quiver, field = sl.algebra.quiver, sl.algebra.field
    out = {}
    for col, (a, g) in enumerate(sl.q1_pairs):
        ent = {}
        for r in range(len(sl.tip_pairs)):
            c = sl.psi1[r][col]
            if c != field.zero:
                t, b = sl.tip_pairs[r]
                ent[(_pname(quiver, t), _pname(quiver, b))] = str(c)
        out[(quiver.arrow_names[a], _pname(quiver, g))] = ent
    return out


def _matmul(a, b, field):
    if not a or not b:
        return []
    return [
        [
            _dot(row, [b[k][j] for k in range(len(b))], field)
            for j in range(len(b[0]))
        ]
        for row in a
    ]


def _dot(xs, ys, field):
    acc = field.zero
    for x, y in zip(xs, ys):
        if x != field.zero and y != field.zero:
            acc = field.add(acc, field.mul(x, y))
    return acc


def _is_zero_matrix(m, field):
    return all(c == field.zero for row in m for c in row)


# -- 1: trivial extension of the Kronecker algebra ------------------------

def _kronecker_extension():
    field, quiver, gb, alg = _algebra("trivial_ext_kronecker.alg")
    sl = CochainSlice(alg)
    dim, _ = compute_hh1(alg, sl)
    assert dim == 4, "dim HH1 = %d, wanted 4" % dim

    diag_p = {("a1a2", "b1b2"): "1", ("a2a1", "b2b1"): "1"}
    diag_m = {("a1a2", "b1b2"): "-1", ("a2a1", "b2b1"): "-1"}
    swap_ab = {("a1b2", "b1b2"): "1", ("b2a1", "b2b1"): "1"}
    swap_ba = {("b1a2", "b1b2"): "1", ("a2b1", "b2b1"): "1"}
    assert _psi1_columns(sl) == {
        ("b2", "b2"): diag_m, ("b2", "a2"): swap_ab,
        ("b1", "b1"): diag_m, ("b1", "a1"): swap_ba,
        ("a2", "b2"): swap_ba, ("a2", "a2"): diag_p,
        ("a1", "b1"): swap_ab, ("a1", "a1"): diag_p,
    }, "psi1 table deviates"
    col_e1 = {("b2", "b2"): "1", ("b1", "b1"): "-1",
              ("a2", "a2"): "1", ("a1", "a1"): "-1"}
    col_e2 = {k: "-" + v if v[0] != "-" else v[1:] for k, v in col_e1.items()}
    assert _psi0_columns(sl) == {
        ("e1", "e1"): col_e1, ("e1", "b1b2"): {},
        ("e2", "e2"): col_e2, ("e2", "b2b1"): {},
    }, "psi0 table deviates"

    idx = {
        (quiver.arrow_names[a], _pname(quiver, b)): i
        for i, (a, b) in enumerate(sl.q1_pairs)
    }

    def vec(*terms):
        out = [field.zero] * len(sl.q1_pairs)
        for coeff, a, b in terms:
            out[idx[(a, b)]] = field.of(coeff)
        return out

    u = vec((1, "a1", "b1"), (-1, "b2", "a2"))
    v = vec((1, "a2", "b2"), (-1, "b1", "a1"))
    w = bracket_pairs(u, v, sl)
    target = vec((2, "a1", "a1"), (-2, "a2", "a2"))
    ker, img, _, _ = sl.hh1_spaces()
    diff = [field.sub(a, b) for a, b in zip(w, target)]
    assert img.contains(diff), "bracket misses 2((a1,a1) - (a2,a2)) mod Im psi0"
    assert coset_coordinates(w, ker, img) == coset_coordinates(target, ker, img)

    lie = lie_presentation(alg, sl)
    assert lie.derived_dims == [4, 3, 3], "derived dims %s" % lie.derived_dims
    assert not lie.solvable

    gfield, graph = parse_brauer(data_text("kronecker_ext.bg"))
    s2 = count_s2(graph)
    assert s2 == 2, "|S2| = %d" % s2
    n_e, n_v = len(graph.edges), len(graph.vertex_names)
    sum_m = sum(graph.mult.values())
    formula = n_e - 2 * n_v + sum_m + s2 + 2
    assert (n_e, n_v, sum_m) == (2, 2, 2)
    assert formula == 4 == dim, "loop-free count %d vs dim %d" % (formula, dim)
    return ("dim HH1 = 4, psi tables verbatim, bracket and coset coords "
            "exact, derived (4,3,3) non-solvable, |S2| = 2, 2-4+2+2+2 = 4")


def test_trivial_extension_of_kronecker():
    _emit(1, _kronecker_extension)


# -- 2: truncated polynomial line, char 3 vs char 0 ------------------------

def _truncated_line():
    field, quiver, gb, alg = _algebra("x_cubed_f3.alg")
    sl = CochainSlice(alg)
    dim, _ = compute_hh1(alg, sl)
    assert dim == 3, "dim HH1 = %d over GF(3), wanted 3" % dim
    assert _psi1_columns(sl)[("x", "e")] == {}, "psi1((x,e)) != 0"

    lie = lie_presentation(alg, sl)
    assert lie.basis_labels == ["(x,e)", "(x,x)", "(x,x^2)"]
    zero, one = field.zero, field.one
    const = lie.structure_constants
    assert const[(0, 1)] == [one, zero, zero]          # [(x,1),(x,x)] = (x,1)
    assert const[(0, 2)] == [zero, field.of(2), zero]  # [(x,1),(x,x^2)] = 2(x,x)
    assert const[(2, 1)] == [zero, zero, field.of(-1)]  # [(x,x^2),(x,x)] = -(x,x^2)
    assert lie.derived_dims == [3, 3] and not lie.solvable
    assert loop_char_report(alg) == [("x", 3, True)]
    assert not loop_char_ok(alg)

    field0, _, _, alg0 = _algebra("x_cubed_q.alg")
    dim0, _ = compute_hh1(alg0)
    bar_dims = bar_hh_dims(alg0)
    assert dim0 == 2 and bar_dims == (3, 2), (
        "char 0: pp %d, bar %s" % (dim0, (bar_dims,)))
    return ("GF(3): dim 3, psi1((x,e)) = 0, bracket table exact, derived "
            "(3,3), 3 | 3 flagged; Q: dim 2 on both routes")


def test_truncated_polynomial_line_char_three_vs_zero():
    _emit(2, _truncated_line)


# -- 3: path graph with multiplicities 1-1-3 -------------------------------

def _path_graph_113():
    field, graph = parse_brauer(data_text("path_graph_113.bg"))
    rep = invariant_report(graph, field)
    assert (rep.dim_hh1_a, rep.dim_hh1_gr) == (3, 4), (
        "dims (%d, %d)" % (rep.dim_hh1_a, rep.dim_hh1_gr))
    gb_gr = complete(gr_relations(graph, field))
    got = sorted(format_element(g) for g in gb_gr.elements)
    assert got == ["v2:0*v2:1", "v2:1*v3:0", "v3:0*v2:0", "v3:0^4"], got
    assert rep.gamma == 2, "gamma = %d" % rep.gamma
    assert rep.dim_hh1_gr - rep.dim_hh1_a == rep.gamma - 1
    assert rep.ok
    return ("dims 3 and 4, gr ideal is the frozen four-element basis, "
            "|Gamma| = 2 and 4-3 = 1")


def test_path_graph_one_one_three():
    _emit(3, _path_graph_113)


# -- 4: single edge with multiplicities 2 and 3 ----------------------------

def _single_edge_23():
    field, graph = parse_brauer(data_text("single_edge_23.bg"))
    rep = invariant_report(graph, field)
    assert (rep.dim_hh1_a, rep.dim_hh1_gr) == (5, 6), (
        "dims (%d, %d)" % (rep.dim_hh1_a, rep.dim_hh1_gr))
    gb_gr = complete(gr_relations(graph, field))
    got = sorted(format_element(g) for g in gb_gr.elements)
    assert got == ["v:0*w:0", "v:0^2", "w:0*v:0", "w:0^4"], got
    assert rep.derived_a[2] == 2 and rep.derived_gr[2] == 1, (
        "second derived dims %d vs %d" % (rep.derived_a[2], rep.derived_gr[2]))
    assert rep.ok
    return ("dims 5 and 6, gr ideal (y^4, x^2, xy, yx), second derived "
            "terms 2 vs 1")


def test_single_edge_two_three():
    _emit(4, _single_edge_23)


# -- 5: two loops over GF(2) ------------------------------------------------

def _two_loops_char_two():
    field, quiver, gb, alg = _algebra("loops_char2.alg")
    assert gb.closure_added == 0, "completion added %d" % gb.closure_added
    assert is_reduced(gb)
    assert sorted(format_element(g) for g in gb.elements) == [
        "x*y + y*x", "x^3 + y*x^2", "y^2"]
    assert sorted(format_element(FreeElement.from_path(t, field))
                  for t in gb.tips()) == ["x*y", "x^3", "y^2"]

    sl = CochainSlice(alg)
    col = _psi1_columns(sl)[("x", "e")]
    assert col == {("xxx", "xx"): "1"}, "psi1((x,e)) = %r" % col

    ker, _, _, _ = sl.hh1_spaces()
    idx = {
        (quiver.arrow_names[a], _pname(quiver, b)): i
        for i, (a, b) in enumerate(sl.q1_pairs)
    }
    u = [field.zero] * len(sl.q1_pairs)
    u[idx[("x", "e")]] = field.one
    u[idx[("y", "e")]] = field.one
    assert ker.contains(u), "(x,e) + (y,e) not a cocycle"
    grd = graded_report(alg, sl)
    assert grd.dim_L_minus1 >= 1, "dim L_-1 = %d" % grd.dim_L_minus1
    return ("relations are already the reduced basis with tips "
            "{x^3, xy, y^2}, psi1((x,e)) = (x^3,x^2) != 0, "
            "(x,e) + (y,e) spans L_-1")


def test_two_loop_algebra_over_gf2():
    _emit(5, _two_loops_char_two)


# -- 6: commuting truncated loops -------------------------------------------

def _commuting_loops():
    field, quiver, gb, alg = _algebra("commuting_loops.alg")
    assert alg.dim == 4, "dim A = %d" % alg.dim
    sl = CochainSlice(alg)
    dim, _ = compute_hh1(alg, sl)
    lie = lie_presentation(alg, sl)
    bar_dims = bar_hh_dims(alg)
    bar_derived = bar_derived_series(alg)
    assert bar_dims[1] == dim and bar_derived == lie.derived_dims, (
        "independent routes disagree: pp %d/%s, bar %d/%s"
        % (dim, lie.derived_dims, bar_dims[1], bar_derived))
    assert lie.solvable, "derived dims %s" % lie.derived_dims
    zero = field.zero
    abelian = all(
        all(c == zero for c in cij) for cij in lie.structure_constants.values())
    assert dim == 1 and abelian and lie.basis_labels == ["(x,x) + (y,y)"], (
        "both routes compute dim HH1 = %d with derived dims %s and "
        "abelian = %s; the contract value (dim 1, single class "
        "(x,x) + (y,y), abelian) is not what exact arithmetic yields"
        % (dim, lie.derived_dims, abelian))
    return "dim A = 4, HH1 one-dimensional abelian spanned by (x,x) + (y,y)"


def test_commuting_truncated_loops():
    _emit(6, _commuting_loops)


# -- 7: random graph corpus --------------------------------------------------

def _route_checks(tag, alg, sl, field):
    """Differential, grading, bracket and Jacobi checks for one algebra."""
    assert _is_zero_matrix(_matmul(sl.psi1, sl.psi0, field), field), (
        "%s: psi1 . psi0 != 0" % tag)
    ker, img, dim, reps = sl.hh1_spaces()
    lie = lie_presentation(alg, sl)
    grd = graded_report(alg, sl)
    assert grd.dim_L_minus1 == 0, (
        "%s: dim L_-1 = %d in char 0" % (tag, grd.dim_L_minus1))

    for kv in ker.basis:
        for uv in img.basis:
            w = bracket_pairs(kv, uv, sl)
            assert img.contains(w), "%s: [ker, im] leaves Im psi0" % tag

    zero = field.zero
    const = lie.structure_constants
    for i in range(dim):
        w = bracket_pairs(reps[i], reps[i], sl)
        assert all(c == zero for c in w), "%s: [r, r] != 0" % tag
        for j in range(i + 1, dim):
            assert const[(j, i)] == [field.neg(c) for c in const[(i, j)]], (
                "%s: antisymmetry fails at (%d, %d)" % (tag, i, j))

    def br(x, y):
        out = [zero] * dim
        for i2, xi in enumerate(x):
            if xi == zero:
                continue
            for j2, yj in enumerate(y):
                if yj == zero:
                    continue
                cij = const.get((i2, j2))
                if cij is None:
                    continue
                s = field.mul(xi, yj)
                for k2, c in enumerate(cij):
                    if c != zero:
                        out[k2] = field.add(out[k2], field.mul(s, c))
        return out

    units = [
        [field.one if i2 == j2 else zero for j2 in range(dim)]
        for i2 in range(dim)
    ]
    for i in range(dim):
        for j in range(i + 1, dim):
            for k2 in range(j + 1, dim):
                total = [zero] * dim
                for x, y, z in ((i, j, k2), (j, k2, i), (k2, i, j)):
                    t = br(units[x], br(units[y], units[z]))
                    total = [field.add(p, q) for p, q in zip(total, t)]
                assert all(c == zero for c in total), (
                    "%s: Jacobi fails at (%d, %d, %d)" % (tag, i, j, k2))

    homogeneous = grd.homogeneous
    if homogeneous:
        degs = []
        for r in reps:
            ds = {
                sl.q1_pairs[ci][1].length - 1
                for ci, c in enumerate(r) if c != zero
            }
            assert len(ds) == 1, "%s: representative mixes degrees" % tag
            degs.append(ds.pop())
        for (i, j), cij in const.items():
            for n, c in enumerate(cij):
                if c != zero:
                    assert degs[n] == degs[i] + degs[j], (
                        "%s: bracket degree %d + %d lands in %d"
                        % (tag, degs[i], degs[j], degs[n]))
    return lie, homogeneous


def _corpus_properties():
    graphs = corpus(size=20)
    assert len(graphs) >= 20
    field = Field(0)
    homog = 0
    for gi, graph in enumerate(graphs):
        rep = invariant_report(graph, field)
        bad = [c.name for c in rep.checks if c.status not in ("ok", "skipped")]
        assert rep.ok and not bad, "graph %d: failed checks %s" % (gi, bad)

        r1, r2, r3 = generate_relations(graph, field)
        alg_a = build_quotient(complete(r1 + r2 + r3))
        sl_a = CochainSlice(alg_a)
        lie_a, hom_a = _route_checks("graph %d A" % gi, alg_a, sl_a, field)
        alg_gr = build_quotient(complete(gr_relations(graph, field)))
        sl_gr = CochainSlice(alg_gr)
        _, hom_gr = _route_checks("graph %d gr" % gi, alg_gr, sl_gr, field)
        assert hom_gr, "graph %d: gr algebra not homogeneous" % gi
        homog += hom_a + hom_gr

        bsl = build_bar_slice(alg_a)
        assert _is_zero_matrix(_matmul(bsl.d1, bsl.d0, field), field), (
            "graph %d: D1 . D0 != 0" % gi)
        hh0 = compute_hh0(alg_a, sl_a)[0]
        assert bar_hh_dims(alg_a, bsl) == (hh0, lie_a.dim), (
            "graph %d: oracle dims disagree" % gi)
        assert bar_derived_series(alg_a, bsl) == lie_a.derived_dims, (
            "graph %d: oracle derived series disagree" % gi)
    return ("%d graphs, all formula checks ok, both differentials square "
            "to zero, oracle agrees, L_-1 = 0, brackets closed with "
            "antisymmetry + Jacobi, degree additivity on %d homogeneous "
            "instances" % (len(graphs), homog))


def test_random_graph_corpus_properties():
    _emit(7, _corpus_properties)


# -- 8: order and reduction, randomized --------------------------------------

def _random_path(rng, quiver, max_len):
    n = rng.randrange(max_len + 1)
    arrows = []
    cur = rng.randrange(quiver.n_vertices)
    for _ in range(n):
        outs = quiver.arrows_from(cur)
        if not outs:
            break
        a = outs[rng.randrange(len(outs))]
        arrows.append(a)
        cur = quiver.arrow_tgt[a]
    if not arrows:
        return Path(quiver, (), base=cur)
    return Path(quiver, tuple(arrows))


def _random_element(rng, field, quiver, max_len, max_terms):
    out = None
    for _ in range(1 + rng.randrange(max_terms)):
        p = _random_path(rng, quiver, max_len)
        c = field.of(rng.choice([-3, -2, -1, 1, 2, 3]))
        if c == field.zero:
            c = field.one
        t = FreeElement.from_path(p, field, c)
        out = t if out is None else out.add(t)
    return out


def _order_and_reduction():
    rng = Random(97)
    setups = []
    for name in ("loops_char2.alg", "commuting_loops.alg",
                 "x_cubed_f3.alg", "trivial_ext_kronecker.alg"):
        field, quiver, gb, _ = _algebra(name)
        setups.append((field, quiver, gb))
    for i in range(1000):
        field, quiver, gb = setups[i % len(setups)]
        f = _random_element(rng, field, quiver, max_len=6, max_terms=4)
        nf = normal_form(f, gb)
        assert nf == normal_form(f, gb, rng=Random(rng.randrange(1 << 30))), (
            "strategies disagree on sample %d" % i)
        assert normal_form(nf, gb) == nf, "normal form not stable, sample %d" % i

    rng = Random(1871)
    two = Quiver(["e"], [("y", "e", "e"), ("x", "e", "e")])
    three = Quiver(["e"], [("z", "e", "e"), ("y", "e", "e"), ("x", "e", "e")])
    Q = Field(0)
    for i in range(1000):
        quiver = two if i % 2 else three
        p = _random_path(rng, quiver, 5)
        q = _random_path(rng, quiver, 5)
        b = _random_path(rng, quiver, 3)
        c = _random_path(rng, quiver, 3)
        cmp_pq = llex_compare(p, q)
        assert (cmp_pq == 0) == (p == q), "comparison not total, sample %d" % i
        assert llex_compare(q, p) == -cmp_pq, "not antisymmetric, sample %d" % i
        if cmp_pq != 0:
            lo, hi = (p, q) if cmp_pq < 0 else (q, p)
            assert llex_compare(compose(compose(b, lo), c),
                                compose(compose(b, hi), c)) < 0, (
                "order not multiplicative, sample %d" % i)
        ext = compose(compose(b, p), c)
        if b.length or c.length:
            assert llex_compare(p, ext) < 0, (
                "extension does not increase, sample %d" % i)
        g = _random_element(rng, Q, quiver, max_len=4, max_terms=3)
        if not g.is_zero:
            prod = multiply(multiply(FreeElement.from_path(b, Q), g),
                            FreeElement.from_path(c, Q))
            assert prod.tip()[0] == compose(compose(b, g.tip()[0]), c), (
                "tip not multiplicative, sample %d" % i)
    return ("1000 reduction-strategy pairs agree, 1000 order samples "
            "confirm totality, multiplicativity and tip multiplicativity")


def test_order_and_reduction_randomized():
    _emit(8, _order_and_reduction)
