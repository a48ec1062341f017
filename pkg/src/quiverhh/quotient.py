"""Finite-dimensional quotient algebras A = kQ/I as normal-form calculators.

A QuotientAlgebra is the reduced Groebner basis plus the NonTip monomial
basis B in llex order.  Everything downstream (cohomology, the bar
oracle) works in coordinates over B.
"""

from __future__ import annotations

from .groebner import CapExceeded, normal_form, nontip_enumerate
from .pathalg import FreeElement, compose


class InfiniteDimensional(Exception):
    """NonTip enumeration blew the cap; the quotient is (probably) infinite."""

    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"quotient dimension exceeds cap {cap}")


class QuotientAlgebra:
    __slots__ = ("quiver", "field", "gb", "basis", "index", "_multable")

    def __init__(self, quiver, field, gb, basis):
        self.quiver = quiver
        self.field = field
        self.gb = gb
        self.basis = basis
        self.index = {p: i for i, p in enumerate(basis)}
        self._multable = {}

    @property
    def dim(self):
        return len(self.basis)

    def zero_vector(self):
        return [self.field.zero] * len(self.basis)

    def coords_of(self, f):
        """Coordinates over B of an element already in normal form."""
        vec = self.zero_vector()
        for p, c in f.terms.items():
            vec[self.index[p]] = c
        return vec

    def element_of(self, vec):
        terms = {}
        zero = self.field.zero
        for i, c in enumerate(vec):
            if c != zero:
                terms[self.basis[i]] = c
        return FreeElement(self.quiver, self.field, terms)

    def __repr__(self):
        return f"QuotientAlgebra(dim={self.dim})"


def build_quotient(gb, max_basis=100000):
    """Enumerate B = NonTip and wrap it up; InfiniteDimensional past the cap."""
    try:
        basis = nontip_enumerate(gb, max_basis=max_basis)
    except CapExceeded:
        raise InfiniteDimensional(max_basis) from None
    return QuotientAlgebra(gb.quiver, gb.field, gb, basis)


def project_pi(f, algebra):
    """Coordinates over B of the canonical projection of f."""
    nf = normal_form(f, algebra.gb)
    return algebra.coords_of(nf)


def project_element(f, algebra):
    """pi(f) as a FreeElement in normal form."""
    return normal_form(f, algebra.gb)


def algebra_multiply(u, v, algebra):
    """pi(basis[u] * basis[v]) as a coordinate vector, memoized."""
    memo = algebra._multable
    got = memo.get((u, v))
    if got is not None:
        return got
    p, q = algebra.basis[u], algebra.basis[v]
    r = compose(p, q)
    if not r:
        vec = algebra.zero_vector()
    elif r in algebra.index:
        # NonTip is subword-closed but not product-closed; a product of
        # basis paths can still be a basis path, skip the reduction then
        vec = algebra.zero_vector()
        vec[algebra.index[r]] = algebra.field.one
    else:
        vec = project_pi(FreeElement.from_path(r, algebra.field), algebra)
    memo[(u, v)] = vec
    return vec


def multiply_coords(a, b, algebra):
    """Product in A of two coordinate vectors over B."""
    f = algebra.field
    zero = f.zero
    out = algebra.zero_vector()
    for i, ca in enumerate(a):
        if ca == zero:
            continue
        for j, cb in enumerate(b):
            if cb == zero:
                continue
            c = f.mul(ca, cb)
            prod = algebra_multiply(i, j, algebra)
            for k, pk in enumerate(prod):
                if pk != zero:
                    out[k] = f.add(out[k], f.mul(c, pk))
    return out
