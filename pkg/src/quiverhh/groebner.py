"""Noncommutative Groebner bases for path-algebra ideals.

Reduction, overlap relations, Buchberger-style completion, NonTip basis
enumeration, and the chain sets of the Uf-graph.  All ideals live in the
arrow-square part kQ_{>=2}, so tips always have length at least 2.

Words below are manipulated in traversal order (tuples of arrow indices,
first applied first).  A subword at traversal offset s corresponds to a
written occurrence further right, so the leftmost written occurrence of a
tip is the one with the largest traversal offset.
"""

from __future__ import annotations

from collections import deque

from .pathalg import FreeElement, Path, compose, multiply


class Incomplete(Exception):
    """Completion hit the tip-length cap; carries the partial basis."""

    def __init__(self, partial, offender):
        self.partial = partial
        self.offender = offender
        t, _ = offender.tip()
        super().__init__(f"completion exceeded tip-length cap at tip of length {t.length}")


class CapExceeded(Exception):
    """NonTip enumeration passed max_basis; the algebra may be infinite dimensional."""

    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"NonTip enumeration exceeded {cap} paths")


class GroebnerBasis:
    """A list of monic elements closed under overlap reduction.

    When ``reduced`` is set the basis is the unique reduced one: tips are
    pairwise non-dividing and every tail is supported on NonTip.
    """

    __slots__ = ("quiver", "field", "elements", "reduced", "closure_added")

    def __init__(self, quiver, field, elements, reduced=False, closure_added=0):
        self.quiver = quiver
        self.field = field
        self.elements = list(elements)
        self.reduced = reduced
        self.closure_added = closure_added

    def tips(self):
        return [g.tip()[0] for g in self.elements]

    def tip_words(self):
        return [g.tip()[0].arrows for g in self.elements]

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        tag = "reduced " if self.reduced else ""
        return f"GroebnerBasis({tag}{len(self.elements)} elements)"


def _contains_word(word, sub):
    m = len(sub)
    if m > len(word):
        return False
    return any(word[s:s + m] == sub for s in range(len(word) - m + 1))


def _occurrences(word, sub):
    """Traversal offsets where sub occurs in word."""
    m = len(sub)
    return [s for s in range(len(word) - m + 1) if word[s:s + m] == sub]


def _elements_of(basis):
    return basis.elements if isinstance(basis, GroebnerBasis) else list(basis)


def _outer_factors(quiver, word, s, m, tip_path):
    """Paths b, c with path(word) = b*tip*c written, tip at traversal [s, s+m)."""
    if s + m < len(word):
        b = Path(quiver, word[s + m:])
    else:
        b = Path(quiver, (), base=tip_path.target)
    if s > 0:
        c = Path(quiver, word[:s])
    else:
        c = Path(quiver, (), base=tip_path.source)
    return b, c


def normal_form(f, basis, rng=None):
    """Remainder of f with no support path divisible by any basis tip.

    Deterministic by default: rewrite the llex-greatest reducible support
    path, at the leftmost written occurrence of any tip, by the first
    matching basis element.  Pass an ``rng`` (random.Random) to randomize
    all three choices; confluence of a completed basis makes the result
    identical either way, which the property tests exercise.
    """
    elems = _elements_of(basis)
    if not elems:
        return f
    tips = []
    for idx, g in enumerate(elems):
        t, _ = g.tip()
        tips.append((idx, t.arrows))
    quiver, field = f.quiver, f.field
    work = f
    while True:
        reducible = []
        for p in work.terms:
            word = p.arrows
            if any(_contains_word(word, tw) for _, tw in tips):
                reducible.append(p)
        if not reducible:
            return work
        if rng is None:
            p = max(reducible, key=lambda q: q.key)
        else:
            p = rng.choice(sorted(reducible, key=lambda q: q.key))
        word = p.arrows
        hits = []
        for idx, tw in tips:
            for s in _occurrences(word, tw):
                hits.append((s, idx))
        if rng is None:
            # max offset = leftmost written; ties to the first element
            best_s = max(s for s, _ in hits)
            idx = min(i for s, i in hits if s == best_s)
            s = best_s
        else:
            s, idx = rng.choice(sorted(hits))
        g = elems[idx]
        tpath, _ = g.tip()
        b, c = _outer_factors(quiver, word, s, tpath.length, tpath)
        lam = work.terms[p]
        # p = b*tip*c, so lam*p rewrites to -lam * b*(g - tip)*c, i.e.
        # work -= lam * b*g*c  (g is monic)
        bgc = multiply(multiply(FreeElement.from_path(b, field), g),
                       FreeElement.from_path(c, field))
        work = work.sub(bgc.scale(lam))


def overlap_pairs(f, g):
    """All (b, c) with Tip(f)*c = b*Tip(g), neither tip dividing b or c.

    Only proper suffix-prefix matches of the written words can satisfy the
    equation, so the divisibility conditions hold automatically.  The full
    self-match (f is g, both factors trivial) is included; its overlap
    relation is identically zero and reduces away.
    """
    tf, _ = f.tip()
    tg, _ = g.tip()
    wf, wg = tf.written(), tg.written()
    m, n = len(wf), len(wg)
    quiver = tf.quiver
    out = []
    for l in range(1, min(m, n) + 1):
        if wf[m - l:] != wg[:l]:
            continue
        # written b = wf[:m-l] -> traversal = arrows[l:]
        if l < m:
            b = Path(quiver, tf.arrows[l:])
        else:
            b = Path(quiver, (), base=tf.target)
        if l < n:
            c = Path(quiver, tg.arrows[:n - l])
        else:
            c = Path(quiver, (), base=tg.source)
        out.append((b, c))
    return out


def overlap_relation(f, g, b, c):
    """o(f,g,b,c) = CTip(f)^-1 f*c - CTip(g)^-1 b*g."""
    field = f.field
    fm, gm = f.monic(), g.monic()
    fc = multiply(fm, FreeElement.from_path(c, field))
    bg = multiply(FreeElement.from_path(b, field), gm)
    return fc.sub(bg)


def _validate_generators(generators):
    for a in generators:
        if a.is_zero:
            raise ValueError("zero generator")
        for p in a.terms:
            if p.length < 2:
                raise ValueError(
                    f"generator support must sit in length >= 2, found {p!r}")


def complete(generators, max_tip_length=50, quiver=None, field=None):
    """Overlap-closure completion to the unique reduced Groebner basis.

    Inserts generators one at a time (normal form against the earlier
    ones), then drains a FIFO queue of (i, j) index pairs, reducing every
    overlap relation and adjoining nonzero remainders made monic.  A
    remainder whose tip exceeds max_tip_length raises Incomplete carrying
    the partial basis.  On saturation the set is inter-reduced.  The empty
    basis (zero ideal) is fine; pass quiver and field explicitly then.
    """
    _validate_generators(generators)
    if generators:
        quiver = generators[0].quiver
        field = generators[0].field
    elems = []
    for a in generators:
        h = normal_form(a, elems)
        if not h.is_zero:
            elems.append(h.monic())
    queue = deque()

    def push_pairs(k):
        for i in range(k + 1):
            queue.append((i, k))
        for i in range(k):
            queue.append((k, i))

    for k in range(len(elems)):
        push_pairs(k)
    closure_added = 0
    while queue:
        i, j = queue.popleft()
        f, g = elems[i], elems[j]
        for b, c in overlap_pairs(f, g):
            h = normal_form(overlap_relation(f, g, b, c), elems)
            if h.is_zero:
                continue
            h = h.monic()
            t, _ = h.tip()
            if t.length > max_tip_length:
                raise Incomplete(elems, h)
            elems.append(h)
            closure_added += 1
            push_pairs(len(elems) - 1)
    elems = _interreduce(elems)
    return GroebnerBasis(quiver, field, elems, reduced=True,
                         closure_added=closure_added)


def _interreduce(elems):
    """Reduce each element by the others until stable; sort by tip."""
    elems = list(elems)
    changed = True
    while changed:
        changed = False
        for idx in range(len(elems)):
            others = elems[:idx] + elems[idx + 1:]
            h = normal_form(elems[idx], others)
            if h.is_zero:
                del elems[idx]
                changed = True
                break
            h = h.monic()
            if h != elems[idx]:
                elems[idx] = h
                changed = True
    elems.sort(key=lambda g: g.tip()[0].key)
    return elems


def is_reduced(basis):
    """Check the reduced-GB invariants (monic, tip-reduced, NonTip tails)."""
    elems = _elements_of(basis)
    words = [g.tip()[0].arrows for g in elems]
    for i, g in enumerate(elems):
        t, c = g.tip()
        if c != g.field.one:
            return False
        for j, w in enumerate(words):
            if i != j and _contains_word(t.arrows, w):
                return False
        for p in g.terms:
            if p is t or p == t:
                continue
            if any(_contains_word(p.arrows, w) for w in words):
                return False
    return True


def nontip_enumerate(basis, max_basis=100000):
    """All paths avoiding every tip as a subword, in llex order.

    Breadth first by length; within a length, extension by smaller arrows
    first keeps llex order.  Raises CapExceeded past max_basis, which is
    the infinite-dimensionality signal.
    """
    elems = _elements_of(basis)
    quiver = basis.quiver if isinstance(basis, GroebnerBasis) else elems[0].quiver
    tip_words = [g.tip()[0].arrows for g in elems]
    by_len = {}
    for w in tip_words:
        by_len.setdefault(len(w), set()).add(w)
    out = [quiver.trivial(v) for v in range(quiver.n_vertices)]
    if len(out) > max_basis:
        raise CapExceeded(max_basis)
    level = out[:]
    while level:
        nxt = []
        for a in range(quiver.n_arrows):
            src = quiver.arrow_src[a]
            for w in level:
                if w.target != src:
                    continue
                word = w.arrows + (a,)
                # the new letter is written first, so only a new written
                # prefix (= traversal suffix) can introduce a tip
                k = len(word)
                bad = False
                for m, tips in by_len.items():
                    if m <= k and word[k - m:] in tips:
                        bad = True
                        break
                if not bad:
                    nxt.append(Path(quiver, word))
        nxt.sort(key=lambda p: p.key)
        out.extend(nxt)
        if len(out) > max_basis:
            raise CapExceeded(max_basis)
        level = nxt
    return out


class UfGraph:
    """The left-factor graph whose paths from Q0 are the chain sets."""

    __slots__ = ("quiver", "nodes", "succ")

    def __init__(self, quiver, nodes, succ):
        self.quiver = quiver
        self.nodes = nodes
        self.succ = succ


def build_uf_graph(basis):
    """Graph on Q0, Q1 and proper right factors of tips.

    u -> v iff the written concatenation uv contains a tip but no proper
    written prefix of it does; equivalently some tip ends exactly at the
    end of uv and none occurs earlier.
    """
    quiver = basis.quiver
    tip_words = [g.tip()[0].arrows for g in basis.elements]
    nodes = {quiver.arrow(a) for a in range(quiver.n_arrows)}
    for w in tip_words:
        for k in range(1, len(w)):
            nodes.add(Path(quiver, w[:k]))  # written suffix = right factor
    nodes = sorted(nodes, key=lambda p: p.key)

    def has_tip(word):
        return any(_contains_word(word, t) for t in tip_words)

    succ = {u: [] for u in nodes}
    for u in nodes:
        for v in nodes:
            if u.source != v.target:
                continue
            word = v.arrows + u.arrows  # uv: v applied first
            n = len(word)
            # tip ends at the written front = traversal offset 0
            if not any(word[:len(t)] == t for t in tip_words if len(t) <= n):
                continue
            # no tip inside the proper written prefix (drop last applied
            # letter = first written letter = final traversal entry)
            if has_tip(word[1:]):
                continue
            succ[u].append(v)
    for u in nodes:
        succ[u].sort(key=lambda p: p.key)
    return UfGraph(quiver, nodes, succ)


def uf_chains(basis, n):
    """Chain sets W^(-1) .. W^(n) of the Uf-graph.

    W^(-1) is the trivial paths; an i-chain is a tuple (w_1, .., w_{i+1})
    of graph nodes reachable from a vertex, every node a nontrivial
    NonTip path.  For a reduced basis W^(0) matches Q1 and W^(1) the tips.
    """
    graph = build_uf_graph(basis)
    quiver = basis.quiver
    tip_words = [g.tip()[0].arrows for g in basis.elements]
    levels = [[quiver.trivial(v) for v in range(quiver.n_vertices)]]
    if n < 0:
        return levels[: n + 2]
    chains = [(quiver.arrow(a),) for a in range(quiver.n_arrows)]
    chains.sort(key=lambda ch: ch[0].key)
    levels.append(chains)
    for _ in range(n):
        nxt = []
        for ch in chains:
            for v in graph.succ.get(ch[-1], ()):  # right factors only
                if any(_contains_word(v.arrows, t) for t in tip_words):
                    continue
                nxt.append(ch + (v,))
        nxt.sort(key=lambda ch: tuple(p.key for p in ch))
        levels.append(nxt)
        chains = nxt
    return levels
