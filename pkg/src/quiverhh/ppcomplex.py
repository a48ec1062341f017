"""First Hochschild cohomology by the parallel-paths method.

For a finite-dimensional A = kQ/I with reduced Groebner basis G the
complex starts

    k(Q0//B) --psi0--> k(Q1//B) --psi1--> k(Tip(G)//B)

with HH0 = Ker psi0 and HH1 = Ker psi1 / Im psi0.  The bracket of
Ker psi1 descends to HH1 and makes it a Lie algebra; this module also
computes its derived series, the graded pieces L_{-1}, L_i, the diagonal
part L_00, and the loop-power characteristic condition that the positive
characteristic statements hypothesize.

psi1 substitutes arrows inside Groebner elements, which is only
meaningful when every element is uniform (all support paths parallel);
build_psi1 rejects anything else.
"""

from __future__ import annotations

from .exactla import (
    coset_coordinates, kernel_basis, row_space, subspace_quotient,
)
from .pathalg import FreeElement, Path, compose
from .quotient import project_pi


class NotParallel(Exception):
    """Substitution target is not parallel to the arrow it replaces."""


def substitute(eps, alpha, gamma):
    """eps^(alpha,gamma): replace one occurrence of alpha at a time, sum.

    alpha may be an arrow index or a length-1 Path.  gamma must be
    parallel to alpha; a trivial gamma deletes the occurrence (alpha is
    then a loop, so the neighbours still compose).  Paths without alpha
    give 0.
    """
    quiver = eps.quiver
    if isinstance(alpha, Path):
        if alpha.length != 1:
            raise ValueError("alpha must be a single arrow")
        alpha = alpha.arrows[0]
    if gamma.source != quiver.arrow_src[alpha] or gamma.target != quiver.arrow_tgt[alpha]:
        raise NotParallel(
            f"{gamma!r} is not parallel to arrow {quiver.arrow_names[alpha]}")
    field = eps.field if isinstance(eps, FreeElement) else None
    if field is None:
        raise TypeError("eps must be a FreeElement")
    acc = FreeElement(quiver, field)
    one = field.one
    for p, coeff in eps.terms.items():
        word = p.arrows
        for i, a in enumerate(word):
            if a != alpha:
                continue
            new = word[:i] + gamma.arrows + word[i + 1:]
            if new:
                q = Path(quiver, new)
            else:
                q = Path(quiver, (), base=p.source)
            acc = acc.add(FreeElement.from_path(q, field, coeff))
    return acc


def substitute_path(p, alpha, gamma, field):
    """Single-path convenience wrapper around substitute."""
    return substitute(FreeElement.from_path(p, field), alpha, gamma)


def ensure_uniform(gb):
    """Every Groebner element must have all support paths parallel."""
    for g in gb.elements:
        paths = list(g.terms)
        p0 = paths[0]
        for p in paths[1:]:
            if not p.parallel_to(p0):
                raise ValueError(
                    f"non-uniform Groebner element {g!r}: "
                    f"{p0!r} and {p!r} are not parallel")


class CochainSlice:
    """Pair spaces and the psi0/psi1 matrices for one algebra.

    Matrices are dense row-major: psi0 has one row per Q1//B pair and one
    column per Q0//B pair; psi1 one row per Tip//B pair and one column
    per Q1//B pair.
    """

    __slots__ = (
        "algebra", "q0_pairs", "q1_pairs", "tip_pairs",
        "q1_index", "psi0", "psi1", "_hh1",
    )

    def __init__(self, algebra):
        self.algebra = algebra
        quiver, field = algebra.quiver, algebra.field
        ensure_uniform(algebra.gb)
        self.q0_pairs = [
            (v, b)
            for v in range(quiver.n_vertices)
            for b in algebra.basis
            if b.source == v and b.target == v
        ]
        self.q1_pairs = [
            (a, b)
            for a in range(quiver.n_arrows)
            for b in algebra.basis
            if b.source == quiver.arrow_src[a] and b.target == quiver.arrow_tgt[a]
        ]
        self.q1_index = {pair: i for i, pair in enumerate(self.q1_pairs)}
        tips = [g.tip()[0] for g in algebra.gb.elements]
        self.tip_pairs = [
            (t, b)
            for t in tips
            for b in algebra.basis
            if b.parallel_to(t)
        ]
        self.psi0 = self._build_psi0()
        self.psi1 = self._build_psi1()
        self._hh1 = None

    def _build_psi0(self):
        a = self.algebra
        quiver, field = a.quiver, a.field
        rows = [[field.zero] * len(self.q0_pairs) for _ in self.q1_pairs]
        for col, (v, gamma) in enumerate(self.q0_pairs):
            for arr in quiver.arrows_from(v):
                # (arr, pi(arr . gamma)), arrow applied after gamma
                prod = compose(quiver.arrow(arr), gamma)
                vec = project_pi(FreeElement.from_path(prod, field), a)
                for bi, c in enumerate(vec):
                    if c != field.zero:
                        r = self.q1_index[(arr, a.basis[bi])]
                        rows[r][col] = field.add(rows[r][col], c)
            for arr in quiver.arrows_into(v):
                prod = compose(gamma, quiver.arrow(arr))
                vec = project_pi(FreeElement.from_path(prod, field), a)
                for bi, c in enumerate(vec):
                    if c != field.zero:
                        r = self.q1_index[(arr, a.basis[bi])]
                        rows[r][col] = field.sub(rows[r][col], c)
        return rows

    def _build_psi1(self):
        a = self.algebra
        field = a.field
        tip_index = {}
        for i, (t, b) in enumerate(self.tip_pairs):
            tip_index[(t, b)] = i
        rows = [[field.zero] * len(self.q1_pairs) for _ in self.tip_pairs]
        for col, (arr, gamma) in enumerate(self.q1_pairs):
            for g in a.gb.elements:
                tg, _ = g.tip()
                img = substitute(g, arr, gamma)
                if img.is_zero:
                    continue
                vec = project_pi(img, a)
                for bi, c in enumerate(vec):
                    if c != field.zero:
                        r = tip_index[(tg, a.basis[bi])]
                        rows[r][col] = field.add(rows[r][col], c)
        return rows

    # -- derived spaces ------------------------------------------------

    def kernel_psi1(self):
        return kernel_basis(self.psi1, self.algebra.field, ncols=len(self.q1_pairs))

    def image_psi0(self):
        cols = [[row[j] for row in self.psi0] for j in range(len(self.q0_pairs))]
        return row_space(cols, self.algebra.field, ambient_dim=len(self.q1_pairs))

    def hh1_spaces(self):
        if self._hh1 is None:
            k = self.kernel_psi1()
            u = self.image_psi0()
            dim, reps = subspace_quotient(k, u)
            self._hh1 = (k, u, dim, reps)
        return self._hh1

    def pair_label(self, i):
        arr, b = self.q1_pairs[i]
        return f"({self.algebra.quiver.arrow_names[arr]},{b!r})"

    def format_vector(self, vec):
        field = self.algebra.field
        chunks = []
        for i, c in enumerate(vec):
            if c == field.zero:
                continue
            mag, neg = c, False
            if field.char == 0 and c < 0:
                mag, neg = -c, True
            label = self.pair_label(i)
            body = label if mag == field.one else f"{mag}*{label}"
            if not chunks:
                chunks.append("-" + body if neg else body)
            else:
                chunks.append(("- " if neg else "+ ") + body)
        return " ".join(chunks) if chunks else "0"


def build_cochain(algebra):
    return CochainSlice(algebra)


def build_psi0(algebra):
    return CochainSlice(algebra).psi0


def build_psi1(algebra):
    return CochainSlice(algebra).psi1


def compute_hh0(algebra, slice_=None):
    """(dim, RREF basis vectors) of Ker psi0."""
    sl = slice_ or CochainSlice(algebra)
    ker = kernel_basis(sl.psi0, algebra.field, ncols=len(sl.q0_pairs))
    return ker.dim, ker.basis


def compute_hh1(algebra, slice_=None):
    """(dim, representative vectors over Q1//B) of Ker psi1 / Im psi0."""
    sl = slice_ or CochainSlice(algebra)
    _, _, dim, reps = sl.hh1_spaces()
    return dim, reps


def bracket_pairs(u, v, slice_):
    """[(u, v)] on k(Q1//B): bilinear extension of the pair bracket.

    [(a,g),(b,e)] = (b, pi(e^(a,g))) - (a, pi(g^(b,e))).
    """
    a = slice_.algebra
    field = a.field
    zero = field.zero
    out = [zero] * len(slice_.q1_pairs)

    def add_pair(arrow, coords, scale, sign):
        for bi, c in enumerate(coords):
            if c == zero:
                continue
            idx = slice_.q1_index.get((arrow, a.basis[bi]))
            if idx is None:
                raise AssertionError("bracket left the pair space")
            val = field.mul(scale, c)
            if sign < 0:
                val = field.neg(val)
            out[idx] = field.add(out[idx], val)

    for i, ci in enumerate(u):
        if ci == zero:
            continue
        ai, gi = slice_.q1_pairs[i]
        for j, cj in enumerate(v):
            if cj == zero:
                continue
            aj, gj = slice_.q1_pairs[j]
            scale = field.mul(ci, cj)
            img = substitute(FreeElement.from_path(gj, field), ai, gi)
            if not img.is_zero:
                add_pair(aj, project_pi(img, a), scale, +1)
            img = substitute(FreeElement.from_path(gi, field), aj, gj)
            if not img.is_zero:
                add_pair(ai, project_pi(img, a), scale, -1)
    return out


class LiePresentation:
    __slots__ = ("dim", "basis_labels", "basis_vectors", "structure_constants",
                 "derived_dims", "solvable")

    def __init__(self, dim, basis_labels, basis_vectors, structure_constants,
                 derived_dims, solvable):
        self.dim = dim
        self.basis_labels = basis_labels
        self.basis_vectors = basis_vectors
        self.structure_constants = structure_constants
        self.derived_dims = derived_dims
        self.solvable = solvable

    def __repr__(self):
        return (f"LiePresentation(dim={self.dim}, derived={self.derived_dims}, "
                f"solvable={self.solvable})")


def _derived_dims(dim, const, field):
    """Dims of L, [L,L], ... until stable; brackets via structure constants."""
    zero = field.zero

    def bracket_coords(x, y):
        out = [zero] * dim
        for i, xi in enumerate(x):
            if xi == zero:
                continue
            for j, yj in enumerate(y):
                if yj == zero:
                    continue
                cij = const.get((i, j))
                if cij is None:
                    continue
                s = field.mul(xi, yj)
                for k, c in enumerate(cij):
                    if c != zero:
                        out[k] = field.add(out[k], field.mul(s, c))
        return out

    current = row_space(
        [[field.one if i == j else zero for j in range(dim)] for i in range(dim)],
        field, dim)
    dims = [current.dim]
    while True:
        gens = []
        basis = current.basis
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                w = bracket_coords(basis[i], basis[j])
                if any(c != zero for c in w):
                    gens.append(w)
        nxt = row_space(gens, field, dim) if gens else row_space([], field, dim)
        dims.append(nxt.dim)
        if nxt.dim == 0 or nxt.dim == dims[-2]:
            return dims
        current = nxt


def lie_presentation(algebra, slice_=None):
    """Structure constants, derived series and solvability of HH1."""
    sl = slice_ or CochainSlice(algebra)
    field = algebra.field
    k, u, dim, reps = sl.hh1_spaces()
    const = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            w = bracket_pairs(reps[i], reps[j], sl)
            if not k.contains(w):
                raise AssertionError("bracket of cocycles left Ker psi1")
            cij = coset_coordinates(w, k, u)
            const[(i, j)] = cij
            const[(j, i)] = [field.neg(c) for c in cij]
    dims = _derived_dims(dim, const, field) if dim else [0]
    solvable = dims[-1] == 0
    labels = [sl.format_vector(r) for r in reps]
    return LiePresentation(dim, labels, reps, const, dims, solvable)


class GradedReport:
    __slots__ = ("homogeneous", "dim_L_minus1", "dim_L00", "graded_dims")

    def __init__(self, homogeneous, dim_L_minus1, dim_L00, graded_dims):
        self.homogeneous = homogeneous
        self.dim_L_minus1 = dim_L_minus1
        self.dim_L00 = dim_L00
        self.graded_dims = graded_dims

    def __repr__(self):
        return (f"GradedReport(homogeneous={self.homogeneous}, "
                f"L-1={self.dim_L_minus1}, L00={self.dim_L00}, "
                f"graded={self.graded_dims})")


def _coordinate_section(space, indices):
    """space cap {x : x_c = 0 outside indices}."""
    field = space.field
    zero = field.zero
    outside = [c for c in range(space.ambient_dim) if c not in indices]
    if not space.basis:
        return space
    # lambda with lambda . M = 0, M = basis restricted to outside columns:
    # right kernel of the transpose
    rows = [[vec[c] for vec in space.basis] for c in outside]
    coeffs = kernel_basis(rows, field, ncols=len(space.basis))
    vecs = []
    for lam in coeffs.basis:
        v = [zero] * space.ambient_dim
        for li, l in enumerate(lam):
            if l == zero:
                continue
            for c, x in enumerate(space.basis[li]):
                if x != zero:
                    v[c] = field.add(v[c], field.mul(l, x))
        vecs.append(v)
    return row_space(vecs, field, space.ambient_dim)


def is_homogeneous(gb):
    for g in gb.elements:
        lengths = {p.length for p in g.terms}
        if len(lengths) > 1:
            return False
    return True


def graded_report(algebra, slice_=None):
    """L_{-1}, L_00 always; the L_i dimensions when the ideal is homogeneous.

    Pair (alpha, gamma) has degree l(gamma) - 1; L_i is the degree-i part
    of Ker psi1 modulo the degree-i image columns (for i = -1 the plain
    intersection, no quotient).
    """
    sl = slice_ or CochainSlice(algebra)
    field = algebra.field
    k, u, hh1_dim, _ = sl.hh1_spaces()

    deg_indices = {}
    for idx, (arr, b) in enumerate(sl.q1_pairs):
        deg_indices.setdefault(b.length - 1, set()).add(idx)
    minus1 = _coordinate_section(k, deg_indices.get(-1, set()))
    dim_l_minus1 = minus1.dim

    diag = {
        idx for idx, (arr, b) in enumerate(sl.q1_pairs)
        if b.length == 1 and b.arrows[0] == arr
    }
    d00 = _coordinate_section(k, diag)
    cols00 = []
    for col, (v, gamma) in enumerate(sl.q0_pairs):
        if gamma.length == 0:
            cols00.append([sl.psi0[r][col] for r in range(len(sl.q1_pairs))])
    u00 = row_space(cols00, field, len(sl.q1_pairs))
    dim_l00 = subspace_quotient(d00, u00)[0]

    homogeneous = is_homogeneous(algebra.gb)
    graded_dims = None
    if homogeneous:
        max_deg = max((b.length - 1 for _, b in sl.q1_pairs), default=-1)
        graded_dims = []
        for deg in range(0, max_deg + 1):
            ki = _coordinate_section(k, deg_indices.get(deg, set()))
            cols = []
            for col, (v, gamma) in enumerate(sl.q0_pairs):
                if gamma.length == deg:
                    cols.append([sl.psi0[r][col] for r in range(len(sl.q1_pairs))])
            ui = row_space(cols, field, len(sl.q1_pairs))
            graded_dims.append(subspace_quotient(ki, ui)[0])
    return GradedReport(homogeneous, dim_l_minus1, dim_l00, graded_dims)


def loop_char_report(algebra):
    """Per loop arrow: minimal m >= 2 with a^m a tip, and char | m flag."""
    quiver, field = algebra.quiver, algebra.field
    tips = {g.tip()[0].arrows for g in algebra.gb.elements}
    out = []
    for a in range(quiver.n_arrows):
        if quiver.arrow_src[a] != quiver.arrow_tgt[a]:
            continue
        m = None
        for word in tips:
            if word and all(x == a for x in word):
                if m is None or len(word) < m:
                    m = len(word)
        if m is None:
            raise RuntimeError(
                f"no tip power of loop {quiver.arrow_names[a]}; "
                "algebra cannot be finite dimensional")
        divides = field.char != 0 and m % field.char == 0
        out.append((quiver.arrow_names[a], m, divides))
    return out


def loop_char_ok(algebra):
    return all(not divides for _, _, divides in loop_char_report(algebra))
