"""Diamond-lemma rewriting engine for homogeneous two-sided ideals.

Rules rewrite a monomial high term to a strictly smaller tail.  Overlap
completion up to a degree bound turns a presentation into a Gröbner basis
to that degree; normal words (no high term as subword) then form a basis
of the quotient, giving the Hilbert function.  A brute-force linear-algebra
oracle recomputes the same dimensions with no rewriting involved.
"""

from __future__ import annotations

import heapq

from .freealg import DEG_LEFT_LEX, NCPoly
from .scalars import EchelonSpan


class NotCompleted(Exception):
    pass


class Rule:
    """Rewrite rule high -> tail, representing high - tail in the ideal."""

    __slots__ = ("high", "tail")

    def __init__(self, high, tail, order=DEG_LEFT_LEX):
        high = tuple(high)
        alphabet = tail.alphabet
        hkey = order.sort_key(alphabet, high)
        hdeg = alphabet.degree(high)
        for w in tail.terms:
            if order.sort_key(alphabet, w) >= hkey:
                raise ValueError(f"tail word {alphabet.word_str(w)} not below high term")
            if alphabet.degree(w) != hdeg:
                raise ValueError("tail not homogeneous of the high term's degree")
        self.high = high
        self.tail = tail

    def element(self):
        """The ideal element high - tail as a polynomial."""
        alphabet, field = self.tail.alphabet, self.tail.field
        return NCPoly(alphabet, field, {self.high: field.one()}) - self.tail

    def degree(self):
        return self.tail.alphabet.degree(self.high)

    def __repr__(self):
        alphabet = self.tail.alphabet
        return f"{alphabet.word_str(self.high)} -> {self.tail}"


class RewriteSystem:
    """An ordered set of rules with a completion certificate."""

    __slots__ = ("alphabet", "field", "order", "rules", "completed_to")

    def __init__(self, alphabet, field, rules, order=DEG_LEFT_LEX, completed_to=None):
        self.alphabet = alphabet
        self.field = field
        self.order = order
        self.rules = tuple(rules)
        self.completed_to = completed_to
        highs = [r.high for r in self.rules]
        for i, h in enumerate(highs):
            for j, g in enumerate(highs):
                if i != j and _contains(h, g):
                    raise ValueError(
                        f"high term {alphabet.word_str(g)} is a subword of "
                        f"{alphabet.word_str(h)}; system is not interreduced"
                    )

    @staticmethod
    def from_relations(relations, order=DEG_LEFT_LEX):
        """Orient and interreduce homogeneous relations into a rule set."""
        relations = [r for r in relations if not r.is_zero()]
        if not relations:
            raise ValueError("no nonzero relations")
        alphabet, field = relations[0].alphabet, relations[0].field
        for r in relations:
            if not r.is_homogeneous():
                raise ValueError(f"inhomogeneous relation {r}")
        rules = []
        work = list(relations)
        while work:
            p = _reduce_terms(work.pop(0), rules, order)
            if p.is_zero():
                continue
            w, c = p.leading_term(order)
            tail = (NCPoly(alphabet, field, {w: c}) - p).scale(c.inv())
            new = Rule(w, tail, order)
            keep = []
            for r in rules:
                if _contains(r.high, new.high):
                    work.append(r.element())
                else:
                    keep.append(r)
            keep.append(new)
            rules = keep
        rules = _interreduce_tails(rules, alphabet, field, order)
        rules.sort(key=lambda r: order.sort_key(alphabet, r.high))
        return RewriteSystem(alphabet, field, rules, order)

    def high_terms(self):
        return [r.high for r in self.rules]

    def reduce(self, p, rng=None):
        """Normal form of p: no high term occurs as a subword of any word.

        Deterministic strategy: rewrite the order-largest reducible word at
        its leftmost redex.  Passing an rng picks redexes at random instead,
        which is useful for confluence spot checks.
        """
        return _reduce_terms(p, self.rules, self.order, rng)

    def is_reduced(self, p):
        return all(self._find_redex(w) is None for w in p.terms)

    def _find_redex(self, word):
        return _find_redex(word, self.rules)

    def overlaps(self):
        """All overlap configurations (i, j, m, mid, mpp), sorted by degree.

        Rule i's high term is m+mid, rule j's is mid+mpp, with mid nonempty;
        the overlap word m+mid+mpp admits two one-step reductions.
        """
        out = []
        for i, ri in enumerate(self.rules):
            for j, rj in enumerate(self.rules):
                hi, hj = ri.high, rj.high
                for ell in range(1, min(len(hi), len(hj))):
                    if hi[len(hi) - ell :] == hj[:ell]:
                        out.append((i, j, hi[: len(hi) - ell], hj[:ell], hj[ell:]))
        key = lambda o: (
            self.alphabet.degree(o[2] + o[3] + o[4]),
            o[2] + o[3] + o[4],
            o[0],
            o[1],
        )
        return sorted(out, key=key)

    def s_difference(self, overlap):
        """tail_i * mpp - m * tail_j for the two reductions of the overlap word."""
        i, j, m, mid, mpp = overlap
        alphabet, field = self.alphabet, self.field
        left = self.rules[i].tail * NCPoly(alphabet, field, {tuple(mpp): field.one()})
        right = NCPoly(alphabet, field, {tuple(m): field.one()}) * self.rules[j].tail
        return left - right

    def complete(self, d):
        """Resolve all overlaps of total degree <= d; returns (system, added).

        Added rules are the monic normalized unresolved S-differences,
        processed in increasing overlap degree and, within a degree, in
        lexicographic order of the overlap word.
        """
        if self.completed_to is not None and self.completed_to >= d:
            return self, []
        alphabet, field, order = self.alphabet, self.field, self.order
        rules = list(self.rules)
        counter = 0
        queue = []

        def push_overlaps(i, j):
            nonlocal counter
            hi, hj = rules[i].high, rules[j].high
            for ell in range(1, min(len(hi), len(hj))):
                if hi[len(hi) - ell :] == hj[:ell]:
                    word = hi + hj[ell:]
                    deg = alphabet.degree(word)
                    if deg <= d:
                        counter += 1
                        heapq.heappush(
                            queue,
                            (deg, word, i, j, counter, hi[: len(hi) - ell], hj[:ell], hj[ell:]),
                        )

        n = len(rules)
        for i in range(n):
            for j in range(n):
                push_overlaps(i, j)

        added = []
        while queue:
            _, _, i, j, _, m, mid, mpp = heapq.heappop(queue)
            left = rules[i].tail * NCPoly(alphabet, field, {tuple(mpp): field.one()})
            right = NCPoly(alphabet, field, {tuple(m): field.one()}) * rules[j].tail
            sdiff = _reduce_terms(left - right, rules, order)
            if sdiff.is_zero():
                continue
            w, c = sdiff.leading_term(order)
            tail = (NCPoly(alphabet, field, {w: c}) - sdiff).scale(c.inv())
            rules.append(Rule(w, tail, order))
            added.append(rules[-1])
            k = len(rules) - 1
            for i2 in range(len(rules)):
                push_overlaps(i2, k)
                if i2 != k:
                    push_overlaps(k, i2)
        rules = _interreduce_tails(rules, alphabet, field, order)
        done = max(d, self.completed_to or 0)
        return RewriteSystem(alphabet, field, rules, order, completed_to=done), added

    def normal_words(self, d):
        """Per-degree lists of normal words up to degree d (a basis)."""
        if self.completed_to is None or self.completed_to < d:
            raise NotCompleted(f"system completed to {self.completed_to}, need {d}")
        return self._normal_words_unchecked(d)

    def _normal_words_unchecked(self, d):
        highs = self.high_terms()
        buckets = [[] for _ in range(d + 1)]
        buckets[0].append(())
        weights = self.alphabet.weights
        for n in range(d + 1):
            for w in buckets[n]:
                for i in range(len(self.alphabet)):
                    n2 = n + weights[i]
                    if n2 > d:
                        continue
                    u = w + (i,)
                    if any(len(h) <= len(u) and u[len(u) - len(h) :] == h for h in highs):
                        continue
                    buckets[n2].append(u)
        return buckets

    def hilbert(self, d):
        return HilbertProfile(tuple(len(b) for b in self.normal_words(d)))


class HilbertProfile:
    """Graded dimension counts, dims[n] = dim of the degree-n component."""

    __slots__ = ("dims",)

    def __init__(self, dims):
        self.dims = tuple(dims)

    def __getitem__(self, n):
        return self.dims[n]

    def __len__(self):
        return len(self.dims)

    def __iter__(self):
        return iter(self.dims)

    def __eq__(self, other):
        if isinstance(other, HilbertProfile):
            return self.dims == other.dims
        return self.dims == tuple(other)

    def __repr__(self):
        return f"HilbertProfile{self.dims}"


def _contains(word, sub):
    """Whether sub occurs as a (contiguous) subword of word."""
    ls = len(sub)
    if ls == 0 or ls > len(word):
        return False
    return any(word[i : i + ls] == sub for i in range(len(word) - ls + 1))


def _find_redex(word, rules):
    best = None
    for pos in range(len(word)):
        for rule in rules:
            h = rule.high
            if word[pos : pos + len(h)] == h:
                return pos, rule
    return best


def _reduce_terms(p, rules, order, rng=None):
    alphabet, field = p.alphabet, p.field
    terms = dict(p.terms)
    key = lambda w: order.sort_key(alphabet, w)
    while True:
        if rng is None:
            target = None
            for w in sorted(terms, key=key, reverse=True):
                hit = _find_redex(w, rules)
                if hit is not None:
                    target = (w, hit)
                    break
            if target is None:
                break
        else:
            redexes = []
            for w in terms:
                for pos in range(len(w)):
                    for rule in rules:
                        h = rule.high
                        if w[pos : pos + len(h)] == h:
                            redexes.append((w, (pos, rule)))
            if not redexes:
                break
            target = redexes[rng.randrange(len(redexes))]
        w, (pos, rule) = target
        c = terms.pop(w)
        u, v = w[:pos], w[pos + len(rule.high) :]
        for tw, tc in rule.tail.terms.items():
            nw = u + tw + v
            acc = terms.get(nw)
            s = tc * c if acc is None else acc + tc * c
            if s.is_zero():
                terms.pop(nw, None)
            else:
                terms[nw] = s
    out = NCPoly(alphabet, field)
    out.terms = terms
    return out


def _interreduce_tails(rules, alphabet, field, order):
    """Reduce every tail to normal form with respect to the whole system."""
    out = []
    for r in rules:
        tail = _reduce_terms(r.tail, rules, order)
        out.append(Rule(r.high, tail, order))
    return out


def reduce(p, rs, rng=None):
    return rs.reduce(p, rng=rng)


def overlaps(rs):
    return rs.overlaps()


def complete(rs, d):
    return rs.complete(d)


def normal_words(rs, d):
    return rs.normal_words(d)


def hilbert(rs, d):
    return rs.hilbert(d)


def enumerate_words(alphabet, d):
    """All words of each (weighted) degree up to d in lexicographic order."""
    buckets = [[] for _ in range(d + 1)]
    buckets[0].append(())
    for n in range(d + 1):
        for w in buckets[n]:
            for i in range(len(alphabet)):
                n2 = n + alphabet.weights[i]
                if n2 <= d:
                    buckets[n2].append(w + (i,))
    return buckets


def hilbert_oracle(relations, d):
    """Quotient dimensions by brute-force linear algebra, no rewriting.

    For each degree n the span of {m * r * m'} inside the full word space
    is accumulated in echelon form; the codimension is the quotient dim.
    """
    relations = [r for r in relations if not r.is_zero()]
    if not relations:
        raise ValueError("no relations")
    alphabet, field = relations[0].alphabet, relations[0].field
    for r in relations:
        if not r.is_homogeneous():
            raise ValueError("relations must be homogeneous")
    words = enumerate_words(alphabet, d)
    dims = []
    for n in range(d + 1):
        index = {w: i for i, w in enumerate(words[n])}
        span = EchelonSpan(field, len(index))
        for r in relations:
            k = r.degree()
            if k > n:
                continue
            for dm in range(n - k + 1):
                for m in words[dm]:
                    for mp in words[n - k - dm]:
                        vec = [field.zero()] * len(index)
                        for w, c in r.terms.items():
                            vec[index[m + w + mp]] = c
                        span.insert(vec)
        dims.append(len(index) - span.rank)
    return HilbertProfile(tuple(dims))


def degree3_overlap_elements(params):
    """The two reduced degree-3 S-differences of the f=1 normalized system.

    params must carry field and coefficients a,b,c,d,e,f,A,B,C,D,E,F with
    D = F = 0 and f = 1.  The rule set is
        xy -> yx
        z^2 -> zx - a x^2 - b yx - c y^2 - d xz - e yz
        zy -> A x^2 + B yx + C y^2 + E yz
    and the returned pair is (G1, G2) with
        G1 = reduce(tail(z^2) z - z tail(z^2))   (overlap z^3)
        G2 = reduce(tail(z^2) y - z tail(zy))    (overlap z^2 y)
    """
    field = params.field
    one = field.one()
    if not (params.D.is_zero() and params.F.is_zero() and params.f == one):
        raise ValueError("parameters must be normalized with D = F = 0 and f = 1")
    from .freealg import Alphabet

    A3 = Alphabet(["y", "x", "z"])

    def poly(spec):
        return NCPoly(A3, field, {A3.word(w): c for w, c in spec.items()})

    tail_z2 = poly(
        {"zx": one, "x^2": -params.a, "yx": -params.b, "y^2": -params.c, "xz": -params.d, "yz": -params.e}
    )
    tail_zy = poly({"x^2": params.A, "yx": params.B, "y^2": params.C, "yz": params.E})
    rules = [
        Rule(A3.word("xy"), poly({"yx": one})),
        Rule(A3.word("z^2"), tail_z2),
        Rule(A3.word("zy"), tail_zy),
    ]
    rs = RewriteSystem(A3, field, rules)
    z = NCPoly.letter(A3, field, "z")
    y = NCPoly.letter(A3, field, "y")
    g1 = rs.reduce(tail_z2 * z - z * tail_z2)
    g2 = rs.reduce(tail_z2 * y - z * tail_zy)
    return g1, g2
