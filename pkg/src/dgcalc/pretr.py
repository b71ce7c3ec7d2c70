"""One-sided twisted complexes over a DG category.

Shift convention: a morphism f: X[r] -> Y[s] of degree l is stored as its
underlying morphism f0 in hom^(l+s-r)(X, Y).  Composition of stored
morphisms is plain composition; the differential of a morphism landing in
Y[s] is (-1)^s d(f0).  Hence X[1] negates the differential, X[1] twisted by
-q is the shift of (X, q), and the first block of a cone carries the twist
of the shifted source.
"""

from itertools import product

from .cochain import CochainComplex, GradedVS, Report, cohomology_dims, nonzero
from .dgcore import CategoryError, DGCategory
from .exactla import ONE, add_into, scaled


class TwistError(ValueError):
    pass


class TwistedComplex:
    """Terms (object index, shift) and a strictly upper-triangular twist."""

    def __init__(self, base, terms, q=None, check=True):
        self.base = base
        self.terms = tuple((int(o), int(r)) for o, r in terms)
        self.q = {}
        for (a, b), v in (q or {}).items():
            v = {k: x for k, x in v.items() if x}
            if not v:
                continue
            if not 0 <= a < b < len(self.terms):
                raise TwistError("twist entry (%d, %d) is not strictly upper triangular" % (a, b))
            oa, ra = self.terms[a]
            ob, rb = self.terms[b]
            want = 1 + rb - ra
            degs = base.degrees(oa, ob)
            for k in v:
                if degs[k] != want:
                    raise TwistError(
                        "twist entry (%d, %d) must have underlying degree %d, found %d" % (a, b, want, degs[k])
                    )
            self.q[(a, b)] = v
        if check:
            rep = check_mc(self)
            if not rep.ok:
                a, b, res = rep.failures[0]
                raise TwistError("Maurer-Cartan equation fails at entry (%d, %d)" % (a, b))

    def __len__(self):
        return len(self.terms)

    def describe(self):
        names = self.base.objects
        return " (+) ".join("%s[%d]" % (names[o], r) for o, r in self.terms) or "0"


def embed(c, obj):
    return TwistedComplex(c, [(c.index(obj), 0)])


def check_mc(t):
    """d q + q q = 0 entrywise; failures are (a, b, residue)."""
    rep = Report()
    base = t.base
    n = len(t.terms)
    for a in range(n):
        for c in range(a + 1, n):
            oa, _ = t.terms[a]
            oc, rc = t.terms[c]
            res = {}
            if (a, c) in t.q:
                dq = base.d(oa, oc, t.q[(a, c)])
                add_into(res, dq, -ONE if rc % 2 else ONE)
            for b in range(a + 1, c):
                if (a, b) in t.q and (b, c) in t.q:
                    ob, _ = t.terms[b]
                    add_into(res, base.compose(oa, ob, oc, t.q[(b, c)], t.q[(a, b)]))
            if res:
                rep.fail(a, c, res)
    return rep


class TwistedHom:
    """The complex of matrix morphisms between two twisted complexes."""

    def __init__(self, a, b):
        if a.base is not b.base:
            raise TwistError("twisted complexes live over different base categories")
        self.source = a
        self.target = b
        base = a.base
        basis, degs, labels = [], [], []
        names = base.objects
        for i, (oi, ri) in enumerate(a.terms):
            for j, (oj, sj) in enumerate(b.terms):
                hd = base.degrees(oi, oj)
                hl = base.labels(oi, oj)
                for e in range(len(hd)):
                    basis.append((i, j, e))
                    degs.append(hd[e] - sj + ri)
                    labels.append("%s[%d,%d]" % (hl[e], i, j))
        self.basis = basis
        self.index = {x: n for n, x in enumerate(basis)}
        self.by_src_term = {}
        self.by_tgt_term = {}
        for n, (i, j, e) in enumerate(basis):
            self.by_src_term.setdefault(i, []).append(n)
            self.by_tgt_term.setdefault(j, []).append(n)
        cols = [self._d_basis(n, degs[n]) for n in range(len(basis))]
        self.complex = CochainComplex(GradedVS(degs, labels), cols)
        del names

    def _d_basis(self, n, deg):
        a, b = self.source, self.target
        base = a.base
        i, j, e = self.basis[n]
        oi, _ = a.terms[i]
        oj, sj = b.terms[j]
        out = {}
        de = base.d(oi, oj, {e: ONE})
        if de:
            sign = -ONE if sj % 2 else ONE
            for k, x in de.items():
                add_into(out, {self.index[(i, j, k)]: x}, sign)
        for (j0, j1), qv in b.q.items():
            if j0 != j:
                continue
            oj1, _ = b.terms[j1]
            v = base.compose(oi, oj, oj1, qv, {e: ONE})
            for k, x in v.items():
                add_into(out, {self.index[(i, j1, k)]: x})
        sign = ONE if deg % 2 else -ONE
        for (i0, i1), qv in a.q.items():
            if i1 != i:
                continue
            oi0, _ = a.terms[i0]
            v = base.compose(oi0, oi, oj, {e: ONE}, qv)
            for k, x in v.items():
                add_into(out, {self.index[(i0, j, k)]: x}, sign)
        return out

    def __len__(self):
        return len(self.basis)

    def d(self, vec):
        return self.complex.apply(vec)

    def degree_of(self, vec):
        degs = {self.complex.space.degrees[k] for k in vec}
        if len(degs) > 1:
            raise TwistError("inhomogeneous morphism")
        return degs.pop() if degs else None

    def block_vector(self, i, j, vec):
        """Embed an underlying vector of the (i, j) block."""
        return {self.index[(i, j, k)]: x for k, x in vec.items() if x}

    def blocks(self, vec):
        out = {}
        for n, x in vec.items():
            i, j, e = self.basis[n]
            out.setdefault((i, j), {})[e] = x
        return out

    def identity(self):
        if self.source is not self.target:
            raise TwistError("identity needs equal source and target")
        base = self.source.base
        out = {}
        for i, (o, _) in enumerate(self.source.terms):
            u = base.units.get(o)
            if u is None:
                raise CategoryError("object %s has no unit" % base.objects[o])
            add_into(out, self.block_vector(i, i, u))
        return out


def twisted_hom(a, b):
    return TwistedHom(a, b)


def tw_compose(hbc, hab, g, f):
    """g o f for g in hbc = Hom(b, c) and f in hab = Hom(a, b)."""
    if hbc.source is not hab.target:
        raise TwistError("morphisms are not composable")
    a, b, c = hab.source, hab.target, hbc.target
    base = a.base
    out = {}
    fb = hab.blocks(f)
    gb = hbc.blocks(g)
    by_mid = {}
    for (j, k), gv in gb.items():
        by_mid.setdefault(j, []).append((k, gv))
    for (i, j), fv in fb.items():
        for k, gv in by_mid.get(j, ()):
            oi, oj, ok = a.terms[i][0], b.terms[j][0], c.terms[k][0]
            v = base.compose(oi, oj, ok, gv, fv)
            if v:
                add_into(out, hbc_ac_vector(a, c, i, k, v))
    return out


_HOM_CACHE = {}


def hbc_ac_vector(a, c, i, k, v):
    h = _cached_hom(a, c)
    return h.block_vector(i, k, v)


def _cached_hom(a, b):
    key = (id(a), id(b))
    h = _HOM_CACHE.get(key)
    if h is None or h.source is not a or h.target is not b:
        h = TwistedHom(a, b)
        if len(_HOM_CACHE) > 4096:
            _HOM_CACHE.clear()
        _HOM_CACHE[key] = h
    return h


def hom_of(a, b):
    """Cached twisted_hom; twisted complexes are immutable so this is safe."""
    return _cached_hom(a, b)


class TwMorphism:
    def __init__(self, source, target, vec):
        self.hom = hom_of(source, target)
        self.source = source
        self.target = target
        self.vec = {k: x for k, x in vec.items() if x}

    def degree(self):
        return self.hom.degree_of(self.vec)

    def is_closed(self):
        return not self.hom.d(self.vec)


def shift_tw(c, n):
    sign = -ONE if n % 2 else ONE
    terms = [(o, r + n) for o, r in c.terms]
    q = {k: scaled(v, sign) for k, v in c.q.items()}
    return TwistedComplex(c.base, terms, q, check=False)


def cone(f):
    """Cone of a closed degree-0 morphism f: A -> B, terms A[1] then B."""
    a, b = f.source, f.target
    if f.vec:
        if f.degree() != 0:
            raise TwistError("cone needs a degree-0 morphism, got degree %d" % f.degree())
        if not f.is_closed():
            raise TwistError("cone needs a closed morphism")
    m = len(a.terms)
    terms = [(o, r + 1) for o, r in a.terms] + list(b.terms)
    q = {}
    for (i, j), v in a.q.items():
        q[(i, j)] = scaled(v, -ONE)
    for (i, j), v in b.q.items():
        q[(m + i, m + j)] = dict(v)
    for (i, j), v in f.hom.blocks(f.vec).items():
        q[(i, m + j)] = dict(v)
    return TwistedComplex(a.base, terms, q)


def cone_maps(f, cn):
    """Canonical i: A[1] -> C, p: C -> A[1], j: B -> C, s: C -> B as TwMorphisms."""
    a1 = shift_tw(f.source, 1)
    b = f.target
    base = b.base
    m = len(a1.terms)

    def ident(src, tgt, pairs):
        h = hom_of(src, tgt)
        out = {}
        for x, y in pairs:
            o = src.terms[x][0]
            add_into(out, h.block_vector(x, y, base.units[o]))
        return TwMorphism(src, tgt, out)

    i_map = ident(a1, cn, [(k, k) for k in range(m)])
    p_map = ident(cn, a1, [(k, k) for k in range(m)])
    j_map = ident(b, cn, [(k, m + k) for k in range(len(b.terms))])
    s_map = ident(cn, b, [(m + k, k) for k in range(len(b.terms))])
    return a1, i_map, p_map, j_map, s_map


def check_cone_identities(f):
    """pi = 1, sj = 1, si = 0, pj = 0, ip + js = 1; returns failing names."""
    cn = cone(f)
    a1, i_map, p_map, j_map, s_map = cone_maps(f, cn)
    b = f.target

    def comp(g, h):
        return tw_compose(g.hom, h.hom, g.vec, h.vec)

    bad = []
    if comp(p_map, i_map) != hom_of(a1, a1).identity():
        bad.append("pi=1")
    if comp(s_map, j_map) != hom_of(b, b).identity():
        bad.append("sj=1")
    if comp(s_map, i_map):
        bad.append("si=0")
    if comp(p_map, j_map):
        bad.append("pj=0")
    tot_ = comp(i_map, p_map)
    add_into(tot_, comp(j_map, s_map))
    if tot_ != hom_of(cn, cn).identity():
        bad.append("ip+js=1")
    return bad


def tot(items, twist):
    """Convolution of a twisted complex whose terms are twisted complexes.

    items are the (already shifted) inner complexes; twist[(x, y)] for x < y
    is a degree-1 vector in twisted_hom(items[x], items[y]).
    """
    items = list(items)
    if not items:
        raise TwistError("tot of an empty complex")
    base = items[0].base
    for t in items:
        if t.base is not base:
            raise TwistError("inner complexes over different bases")
    for (x, y), v in twist.items():
        if not 0 <= x < y < len(items):
            raise TwistError("outer twist (%d, %d) is not strictly upper triangular" % (x, y))
        if v and hom_of(items[x], items[y]).degree_of(v) != 1:
            raise TwistError("outer twist (%d, %d) must have degree 1" % (x, y))
    for x in range(len(items)):
        for z in range(x + 1, len(items)):
            h = hom_of(items[x], items[z])
            res = {}
            if twist.get((x, z)):
                add_into(res, h.d(twist[(x, z)]))
            for y in range(x + 1, z):
                if twist.get((x, y)) and twist.get((y, z)):
                    add_into(res, tw_compose(hom_of(items[y], items[z]), hom_of(items[x], items[y]),
                                             twist[(y, z)], twist[(x, y)]))
            if res:
                raise TwistError("outer Maurer-Cartan equation fails at (%d, %d)" % (x, z))
    offs, terms, q = [], [], {}
    for t in items:
        offs.append(len(terms))
        terms.extend(t.terms)
    for x, t in enumerate(items):
        for (i, j), v in t.q.items():
            q[(offs[x] + i, offs[x] + j)] = dict(v)
    for (x, y), v in twist.items():
        for (i, j), bv in hom_of(items[x], items[y]).blocks(v).items():
            key = (offs[x] + i, offs[y] + j)
            q[key] = add_into(q.get(key, {}), bv)
    return TwistedComplex(base, terms, q)


def tensor_with_complex(c, v, return_layout=False):
    """C (x) V: a copy C[-k] per basis vector of V^k, joined by d_V (x) id."""
    order = sorted(range(len(v)), key=lambda b: (v.space.degrees[b], b))
    pos = {b: n for n, b in enumerate(order)}
    items = [shift_tw(c, -v.space.degrees[b]) for b in order]
    base = c.base
    twist = {}
    for b in order:
        for b2, coef in v.dcols[b].items():
            x, y = pos[b], pos[b2]
            h = hom_of(items[x], items[y])
            vec = {}
            for i, (o, _) in enumerate(c.terms):
                add_into(vec, h.block_vector(i, i, base.units[o]), coef)
            twist[(x, y)] = vec
    if not items:
        out = TwistedComplex(base, [], {})
    else:
        out = tot(items, twist)
    if return_layout:
        offs = [n * len(c.terms) for n in range(len(order))]
        return out, order, offs
    return out


def pretr_category(objs, names=None):
    """Full DG subcategory of twisted complexes on the given list."""
    objs = list(objs)
    n = len(objs)
    if names is None:
        names = ["T%d" % k for k in range(n)]
    homs, hs = {}, {}
    for x, y in product(range(n), repeat=2):
        h = hom_of(objs[x], objs[y])
        hs[(x, y)] = h
        if len(h):
            homs[(x, y)] = h.complex
    comp = {}
    base = objs[0].base if objs else None
    for x, y, z in product(range(n), repeat=3):
        hab, hbc, hac = hs[(x, y)], hs[(y, z)], hs[(x, z)]
        if not len(hab) or not len(hbc):
            continue
        a, b, c = objs[x], objs[y], objs[z]
        table = {}
        for jmid, gidx in hbc.by_src_term.items():
            fidx = hab.by_tgt_term.get(jmid, ())
            for ga in gidx:
                _, k, eg = hbc.basis[ga]
                for fb in fidx:
                    i, _, ef = hab.basis[fb]
                    oi, oj, ok = a.terms[i][0], b.terms[jmid][0], c.terms[k][0]
                    v = base.compose(oi, oj, ok, {eg: ONE}, {ef: ONE})
                    if v:
                        table[(ga, fb)] = hac.block_vector(i, k, v)
        comp[(x, y, z)] = table
    units = {x: hs[(x, x)].identity() for x in range(n)}
    ordered = all(not len(hs[(x, y)]) for x in range(n) for y in range(x))
    return DGCategory(names, homs, comp, units, ordered=ordered)


def hom_table(a, b):
    return nonzero(cohomology_dims(hom_of(a, b).complex))


def collection_table(items):
    return {(x, y): hom_table(a, b) for x, a in enumerate(items) for y, b in enumerate(items)}


__all__ = [
    "TwistedComplex", "TwistedHom", "TwMorphism", "TwistError", "embed", "check_mc", "twisted_hom",
    "tw_compose", "shift_tw", "cone", "cone_maps", "check_cone_identities", "tot", "tensor_with_complex",
    "pretr_category", "hom_of", "hom_table", "collection_table",
]

