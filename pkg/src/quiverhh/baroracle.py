"""Brute-force HH0/HH1 from the reduced bar resolution.

This is the cross-check for the parallel-paths route: same answers, very
different computation.  Cochains are E-bimodule maps valued in A, with

    C0 = sum_e eAe,  C1 = Hom(A+, A),  C2 = Hom(A+ (x)_E A+, A),

A+ the span of the nontrivial basis paths B+.  The differentials are

    (D0 a)(x) = ax - xa
    (D1 f)(x1 (x) x2) = x1 f(x2) - f(pA(x1 x2)) + f(x1) x2

and the degree-1 bracket is [f,g] = f.pA.g - g.pA.f.  Everything is dense
and deliberately naive; independence from ppcomplex is the whole point.
"""

from __future__ import annotations

from .exactla import column_space, kernel_basis, row_space, rref, subspace_quotient
from .quotient import algebra_multiply


class BarSlice:
    __slots__ = ("algebra", "c0_basis", "c1_basis", "c2_basis",
                 "c1_index", "c2_index", "d0", "d1", "_parallels", "_bplus")

    def __init__(self, algebra):
        self.algebra = algebra
        quiver = algebra.quiver
        basis = algebra.basis
        self._bplus = [p for p in basis if p.length > 0]
        self.c0_basis = [
            (v, b)
            for v in range(quiver.n_vertices)
            for b in basis
            if b.source == v and b.target == v
        ]
        self._parallels = {}
        for x in self._bplus:
            self._parallels[x] = [b for b in basis if b.parallel_to(x)]
        self.c1_basis = [(x, b) for x in self._bplus for b in self._parallels[x]]
        self.c1_index = {pair: i for i, pair in enumerate(self.c1_basis)}
        pairs = [
            (x1, x2)
            for x1 in self._bplus
            for x2 in self._bplus
            if x1.source == x2.target
        ]
        self.c2_basis = []
        for x1, x2 in pairs:
            for b in basis:
                if b.source == x2.source and b.target == x1.target:
                    self.c2_basis.append((x1, x2, b))
        self.c2_index = {t: i for i, t in enumerate(self.c2_basis)}
        self.d0 = self._build_d0()
        self.d1 = self._build_d1(pairs)

    def _build_d0(self):
        a = self.algebra
        field = a.field
        zero = field.zero
        rows = [[zero] * len(self.c0_basis) for _ in self.c1_basis]
        for col, (v, b) in enumerate(self.c0_basis):
            ib = a.index[b]
            for x in self._bplus:
                ix = a.index[x]
                bx = algebra_multiply(ib, ix, a)
                xb = algebra_multiply(ix, ib, a)
                for j in range(len(a.basis)):
                    c = field.sub(bx[j], xb[j])
                    if c != zero:
                        r = self.c1_index[(x, a.basis[j])]
                        rows[r][col] = field.add(rows[r][col], c)
        return rows

    def _build_d1(self, pairs):
        a = self.algebra
        field = a.field
        zero = field.zero
        rows = [[zero] * len(self.c1_basis) for _ in self.c2_basis]

        def bump(row, col, c, sign):
            if sign < 0:
                c = field.neg(c)
            rows[row][col] = field.add(rows[row][col], c)

        for x1, x2 in pairs:
            i1, i2 = a.index[x1], a.index[x2]
            prod = algebra_multiply(i1, i2, a)
            # -f(pA(x1 x2)): pA drops the trivial-path coordinates
            for j, c in enumerate(prod):
                if c == zero:
                    continue
                x = a.basis[j]
                if x.length == 0:
                    continue
                for b in self._parallels[x]:
                    col = self.c1_index[(x, b)]
                    bump(self.c2_index[(x1, x2, b)], col, c, -1)
            # +x1 f(x2) for f elementary at (x2, b)
            for b in self._parallels[x2]:
                col = self.c1_index[(x2, b)]
                vec = algebra_multiply(i1, a.index[b], a)
                for j, c in enumerate(vec):
                    if c != zero:
                        bump(self.c2_index[(x1, x2, a.basis[j])], col, c, +1)
            # +f(x1) x2 for f elementary at (x1, b)
            for b in self._parallels[x1]:
                col = self.c1_index[(x1, b)]
                vec = algebra_multiply(a.index[b], i2, a)
                for j, c in enumerate(vec):
                    if c != zero:
                        bump(self.c2_index[(x1, x2, a.basis[j])], col, c, +1)
        return rows


def build_bar_slice(algebra):
    return BarSlice(algebra)


def bar_hh_dims(algebra, slice_=None):
    """(dim HH0, dim HH1) = (dim Ker D0, dim Ker D1 - rank D0)."""
    sl = slice_ or BarSlice(algebra)
    field = algebra.field
    rank_d0 = rref(sl.d0, field)[0]
    hh0 = len(sl.c0_basis) - rank_d0
    rank_d1 = rref(sl.d1, field)[0]
    hh1 = (len(sl.c1_basis) - rank_d1) - rank_d0
    return hh0, hh1


def _cochain_map(vec, sl):
    """C1 coordinate vector -> {x in B+ : value vector over B}."""
    a = sl.algebra
    zero = a.field.zero
    out = {}
    for i, c in enumerate(vec):
        if c == zero:
            continue
        x, b = sl.c1_basis[i]
        val = out.get(x)
        if val is None:
            val = a.zero_vector()
            out[x] = val
        val[a.index[b]] = a.field.add(val[a.index[b]], c)
    return out


def _apply(fmap, vec, sl):
    """f(pA(v)) for v a vector over B: feed the B+ coordinates through f."""
    a = sl.algebra
    field = a.field
    zero = field.zero
    out = a.zero_vector()
    for x in sl._bplus:
        c = vec[a.index[x]]
        if c == zero:
            continue
        val = fmap.get(x)
        if val is None:
            continue
        for j, w in enumerate(val):
            if w != zero:
                out[j] = field.add(out[j], field.mul(c, w))
    return out


def bracket_c1(u, v, sl):
    """[u, v] = u.pA.v - v.pA.u as C1 coordinate vectors."""
    a = sl.algebra
    field = a.field
    zero = field.zero
    umap = _cochain_map(u, sl)
    vmap = _cochain_map(v, sl)
    out = [zero] * len(sl.c1_basis)
    for x in sl._bplus:
        acc = None
        vval = vmap.get(x)
        if vval is not None:
            acc = _apply(umap, vval, sl)
        uval = umap.get(x)
        if uval is not None:
            sub = _apply(vmap, uval, sl)
            if acc is None:
                acc = [field.neg(c) for c in sub]
            else:
                acc = [field.sub(p, q) for p, q in zip(acc, sub)]
        if acc is None:
            continue
        for j, c in enumerate(acc):
            if c != zero:
                idx = sl.c1_index[(x, a.basis[j])]
                out[idx] = field.add(out[idx], c)
    return out


def bar_derived_series(algebra, slice_=None):
    """Derived-series dims of Ker D1 / Im D0 under the cochain bracket."""
    sl = slice_ or BarSlice(algebra)
    field = algebra.field
    zero = field.zero
    k1 = kernel_basis(sl.d1, field, ncols=len(sl.c1_basis))
    u0 = column_space(sl.d0, field, ambient_dim=len(sl.c1_basis))
    dim_l = subspace_quotient(k1, u0)[0]
    dims = [dim_l]
    if dim_l == 0:
        return dims
    current = k1
    while True:
        gens = list(u0.basis)
        basis = current.basis
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                w = bracket_c1(basis[i], basis[j], sl)
                if any(c != zero for c in w):
                    gens.append(w)
        nxt = row_space(gens, field, len(sl.c1_basis))
        dims.append(nxt.dim - u0.dim)
        if dims[-1] == 0 or dims[-1] == dims[-2]:
            return dims
        current = nxt
