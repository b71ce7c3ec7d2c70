"""Finite DG categories with chosen bases, DG quivers and their path algebras.

Composition is written right to left, g o f with f acting first, and obeys
d(g o f) = dg o f + (-1)^|g| g o df.  A path is a tuple of arrow names in
the same order: the rightmost arrow acts first.
"""

from dataclasses import dataclass, field
from itertools import product

from .cochain import CochainComplex, GradedVS, Report, cohomology_basis, cohomology_dims, nonzero
from .exactla import ONE, ZERO, Coords, Echelon, add_into, kernel_basis, to_q


class CategoryError(ValueError):
    pass


class QuiverError(ValueError):
    pass


def _zero_complex():
    return CochainComplex(GradedVS([]))


class DGCategory:
    """Objects, hom complexes with bases, composition structure constants.

    homs[(i, j)] is the complex hom(i, j) (missing pairs are zero);
    comp[(i, j, k)][(a, b)] is the sparse vector g_a o f_b in hom(i, k) for
    g_a in hom(j, k) and f_b in hom(i, j); units[i] is a sparse vector.
    """

    def __init__(self, objects, homs, comp, units, ordered=False):
        self.objects = tuple(objects)
        n = len(self.objects)
        self.homs = {}
        for (i, j), h in homs.items():
            if len(h):
                self.homs[(i, j)] = h
        self.comp = {}
        for key, table in comp.items():
            t = {ab: dict(v) for ab, v in table.items() if v}
            if t:
                self.comp[key] = t
        self.units = {i: dict(units[i]) for i in range(n) if i in units}
        self.ordered = bool(ordered)
        self._zero = _zero_complex()

    def index(self, obj):
        if isinstance(obj, int):
            if 0 <= obj < len(self.objects):
                return obj
            raise CategoryError("object index %d out of range" % obj)
        try:
            return self.objects.index(obj)
        except ValueError:
            raise CategoryError("unknown object %r" % (obj,)) from None

    def hom(self, i, j):
        return self.homs.get((i, j), self._zero)

    def dim(self, i, j):
        return len(self.homs.get((i, j), ()))

    def degrees(self, i, j):
        return self.hom(i, j).space.degrees

    def labels(self, i, j):
        return self.hom(i, j).space.labels

    def d(self, i, j, vec):
        return self.hom(i, j).apply(vec)

    def compose(self, i, j, k, g, f):
        table = self.comp.get((i, j, k))
        if not table or not g or not f:
            return {}
        out = {}
        for a, x in g.items():
            for b, y in f.items():
                v = table.get((a, b))
                if v:
                    add_into(out, v, x * y)
        return out

    def pairs(self):
        n = len(self.objects)
        return [(i, j) for i in range(n) for j in range(n)]

    def nonzero_pairs(self):
        return sorted(self.homs)

    def vector_degree(self, i, j, vec):
        degs = {self.degrees(i, j)[k] for k in vec}
        if len(degs) > 1:
            raise CategoryError("inhomogeneous vector in hom(%s, %s)" % (self.objects[i], self.objects[j]))
        return degs.pop() if degs else None

    def is_reduced(self):
        return all(self.dim(i, i) == 1 for i in range(len(self.objects)))

    def total_dims(self):
        return {p: self.hom(*p).space.dims() for p in self.nonzero_pairs()}


def basis_vec(k, c=ONE):
    return {k: to_q(c)}


def _fmt_vec(vec, labels):
    return " + ".join("%s*%s" % (c, labels[k]) for k, c in sorted(vec.items())) or "0"


def check_dg_axioms(c, limit=None):
    """Check d^2 = 0, degrees, Leibniz, associativity and unit laws on bases."""
    rep = Report()
    n = len(c.objects)
    name = c.objects
    for (i, j), h in c.homs.items():
        degs = h.space.degrees
        for s, col in enumerate(h.dcols):
            for r in col:
                if degs[r] != degs[s] + 1:
                    rep.fail("degree of d", name[i], name[j], h.space.labels[s])
            dd = h.apply(col)
            if dd:
                rep.fail("d^2", name[i], name[j], h.space.labels[s], _fmt_vec(dd, h.space.labels))
    for (i, j, k), table in c.comp.items():
        dg, df, dh = c.degrees(j, k), c.degrees(i, j), c.degrees(i, k)
        for (a, b), v in table.items():
            for r in v:
                if dh[r] != dg[a] + df[b]:
                    rep.fail("degree of composition", name[i], name[j], name[k], a, b)
    for i in range(n):
        u = c.units.get(i)
        if u is None:
            rep.fail("missing unit", name[i])
            continue
        if c.d(i, i, u):
            rep.fail("unit not closed", name[i])
        if any(c.degrees(i, i)[k] != 0 for k in u):
            rep.fail("unit not of degree 0", name[i])
    for i in range(n):
        for j in range(n):
            if not c.dim(i, j):
                continue
            for b in range(c.dim(i, j)):
                f = {b: ONE}
                if i in c.units and c.compose(i, j, j, c.units.get(j, {}), f) != f:
                    rep.fail("left unit law", name[i], name[j], c.labels(i, j)[b])
                if j in c.units and c.compose(i, i, j, f, c.units.get(i, {})) != f:
                    rep.fail("right unit law", name[i], name[j], c.labels(i, j)[b])
    for i, j, k in product(range(n), repeat=3):
        if not c.dim(i, j) or not c.dim(j, k):
            continue
        dgs = c.degrees(j, k)
        for a in range(c.dim(j, k)):
            g = {a: ONE}
            dg = c.d(j, k, g)
            sign = -ONE if dgs[a] % 2 else ONE
            for b in range(c.dim(i, j)):
                f = {b: ONE}
                lhs = c.d(i, k, c.compose(i, j, k, g, f))
                rhs = c.compose(i, j, k, dg, f)
                add_into(rhs, c.compose(i, j, k, g, c.d(i, j, f)), sign)
                if lhs != rhs:
                    rep.fail("Leibniz", name[i], name[j], name[k], c.labels(j, k)[a], c.labels(i, j)[b])
    for i, j, k, l in product(range(n), repeat=4):
        if not (c.dim(i, j) and c.dim(j, k) and c.dim(k, l)):
            continue
        for a in range(c.dim(k, l)):
            for b in range(c.dim(j, k)):
                gh = c.compose(j, k, l, {a: ONE}, {b: ONE})
                for e in range(c.dim(i, j)):
                    lhs = c.compose(i, j, l, gh, {e: ONE})
                    rhs = c.compose(i, k, l, {a: ONE}, c.compose(i, j, k, {b: ONE}, {e: ONE}))
                    if lhs != rhs:
                        rep.fail("associativity", name[i], name[j], name[k], name[l], a, b, e)
                        if limit and len(rep.failures) >= limit:
                            return rep
    if c.ordered:
        for i in range(n):
            for j in range(i):
                if c.dim(i, j):
                    rep.fail("order violated", name[i], name[j])
    return rep


def hom_cohomology(c):
    """{(i, j): {degree: dim}} with zero entries dropped."""
    out = {}
    for p in c.nonzero_pairs():
        dims = nonzero(cohomology_dims(c.hom(*p)))
        if dims:
            out[p] = dims
    return out


def named_table(c, table):
    return {(c.objects[i], c.objects[j]): dict(v) for (i, j), v in table.items()}


def is_exceptional_collection(c, table=None):
    if table is None:
        table = hom_cohomology(c)
    n = len(c.objects)
    for i in range(n):
        if table.get((i, i), {}) != {0: 1}:
            return False
        for j in range(i):
            if table.get((i, j)):
                return False
    return True


def is_ordered(c):
    n = len(c.objects)
    return all(not c.dim(i, j) for i in range(n) for j in range(i))


def is_finite(c):
    return all(len(h) < float("inf") for h in c.homs.values())


# sub-categories given by spans -------------------------------------------------

def restrict(c, spans, labels=None, ordered=None):
    """The subcategory whose hom(i, j) is spanned by spans[(i, j)].

    Each span must be homogeneous vectors closed under d and composition;
    the result uses the given vectors as its basis.  Also returns the
    inclusion as {pair: list of vectors}.
    """
    coords = {}
    homs = {}
    for p, vecs in spans.items():
        if not vecs:
            continue
        i, j = p
        co = Coords(vecs)
        coords[p] = co
        degs = [c.vector_degree(i, j, v) for v in vecs]
        labs = labels[p] if labels and p in labels else [_fmt_vec(v, c.labels(i, j)) for v in vecs]
        cols = []
        for v in vecs:
            dv = c.d(i, j, v)
            x = co.of(dv)
            if x is None:
                raise CategoryError("span of hom(%s, %s) is not closed under d" % (c.objects[i], c.objects[j]))
            cols.append(x)
        homs[p] = CochainComplex(GradedVS(degs, labs), cols)
    comp = {}
    n = len(c.objects)
    for i, j, k in product(range(n), repeat=3):
        if (i, j) not in coords or (j, k) not in coords:
            continue
        table = {}
        for a, g in enumerate(spans[(j, k)]):
            for b, f in enumerate(spans[(i, j)]):
                v = c.compose(i, j, k, g, f)
                if not v:
                    continue
                co = coords.get((i, k))
                x = co.of(v) if co else None
                if x is None:
                    raise CategoryError(
                        "spans not closed under composition at (%s, %s, %s)" % (c.objects[i], c.objects[j], c.objects[k])
                    )
                if x:
                    table[(a, b)] = x
        comp[(i, j, k)] = table
    units = {}
    for i in range(n):
        if i in c.units and (i, i) in coords:
            x = coords[(i, i)].of(c.units[i])
            if x is None:
                raise CategoryError("unit of %s is not in the span" % c.objects[i])
            units[i] = x
    if ordered is None:
        ordered = c.ordered
    return DGCategory(c.objects, homs, comp, units, ordered=ordered)


def full_subcategory(c, objs):
    idx = [c.index(o) for o in objs]
    homs, comp, units = {}, {}, {}
    for a, i in enumerate(idx):
        if i in c.units:
            units[a] = c.units[i]
        for b, j in enumerate(idx):
            if c.dim(i, j):
                homs[(a, b)] = c.hom(i, j)
            for e, k in enumerate(idx):
                if (i, j, k) in c.comp:
                    comp[(a, b, e)] = c.comp[(i, j, k)]
    ordered = c.ordered and idx == sorted(idx)
    return DGCategory([c.objects[i] for i in idx], homs, comp, units, ordered=ordered)


def truncate_CI(c):
    """C_I: negative degrees plus the degree-0 cocycles.

    Returns the category and the inclusion {pair: list of vectors of c}.
    """
    spans = {}
    for p in c.nonzero_pairs():
        h = c.hom(*p)
        vecs = []
        for k in h.space.present_degrees():
            if k < 0:
                vecs.extend({i: ONE} for i in h.space.indices(k))
            elif k == 0:
                ix = h.space.indices(0)
                for v in kernel_basis(h.d_matrix(0)):
                    vecs.append({ix[t]: x for t, x in enumerate(v) if x})
        spans[p] = vecs
    labels = {}
    for p, vecs in spans.items():
        labels[p] = [_fmt_vec(v, c.labels(*p)) if len(v) != 1 or next(iter(v.values())) != 1
                     else c.labels(*p)[next(iter(v))] for v in vecs]
    return restrict(c, spans, labels=labels), spans


def collapse_CIJ(c):
    """C_I / J, an ordinary category isomorphic to H(C) when H is in degree 0."""
    table = hom_cohomology(c)
    for (i, j), dims in sorted(table.items()):
        for k, v in dims.items():
            if k != 0:
                raise CategoryError(
                    "not quasi-ordinary: H^%d hom(%s, %s) has dimension %d" % (k, c.objects[i], c.objects[j], v)
                )
    reps, projs, homs = {}, {}, {}
    for p in c.nonzero_pairs():
        i, j = p
        h = c.hom(i, j)
        prefer = [c.units[i]] if i == j and i in c.units else ()
        s = cohomology_basis(h, prefer=prefer)
        if not s.hdegrees:
            continue
        reps[p] = s.iota_cols()
        projs[p] = s.pi_rows()
        labs = []
        for v in reps[p]:
            if len(v) == 1 and next(iter(v.values())) == 1:
                labs.append(h.space.labels[next(iter(v))])
            else:
                labs.append("[" + _fmt_vec(v, h.space.labels) + "]")
        homs[p] = CochainComplex(GradedVS([0] * len(reps[p]), labs))
    n = len(c.objects)
    comp = {}
    for i, j, k in product(range(n), repeat=3):
        if (i, j) not in reps or (j, k) not in reps or (i, k) not in reps:
            continue
        table = {}
        for a, g in enumerate(reps[(j, k)]):
            for b, f in enumerate(reps[(i, j)]):
                v = c.compose(i, j, k, g, f)
                x = _project(projs[(i, k)], v)
                if x:
                    table[(a, b)] = x
        comp[(i, j, k)] = table
    units = {}
    for i in range(n):
        if (i, i) in reps and i in c.units:
            units[i] = _project(projs[(i, i)], c.units[i])
    return DGCategory(c.objects, homs, comp, units, ordered=c.ordered or is_ordered_dims(homs, n))


def is_ordered_dims(homs, n):
    return all((i, j) not in homs for i in range(n) for j in range(i))


def _project(rows, vec):
    out = {}
    for r, row in enumerate(rows):
        s = ZERO
        for k, v in vec.items():
            x = row.get(k)
            if x:
                s += x * v
        if s:
            out[r] = s
    return out


# DG quivers ---------------------------------------------------------------------

@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    tgt: str
    degree: int = 0


def combo(*terms):
    """combo((c, path), ...) with path a tuple or space-separated string."""
    out = []
    for c, p in terms:
        if isinstance(p, str):
            p = tuple(p.split())
        out.append((to_q(c), tuple(p)))
    return tuple(out)


@dataclass
class DGQuiver:
    vertices: tuple
    arrows: tuple
    differential: dict = field(default_factory=dict)
    relations: list = field(default_factory=list)
    lattice: dict = None
    parameters: dict = None
    comment: str = None

    def __post_init__(self):
        self.vertices = tuple(self.vertices)
        self.arrows = tuple(self.arrows)
        self.differential = {a: tuple(v) for a, v in self.differential.items()}
        self.relations = [tuple(r) for r in self.relations]
        self._arrow = {}
        for a in self.arrows:
            if a.name in self._arrow:
                raise QuiverError("duplicate arrow %r" % a.name)
            if a.src not in self.vertices or a.tgt not in self.vertices:
                raise QuiverError("arrow %r has an unknown endpoint" % a.name)
            self._arrow[a.name] = a
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex")

    def arrow(self, name):
        try:
            return self._arrow[name]
        except KeyError:
            raise QuiverError("unknown arrow %r" % name) from None

    def path_info(self, path):
        """(src, tgt, degree) of a nonempty composable path."""
        if not path:
            raise QuiverError("empty path in a combination")
        arrows = [self.arrow(a) for a in path]
        for left, right in zip(arrows, arrows[1:]):
            if right.tgt != left.src:
                raise QuiverError("path %s is not composable at %s" % ("*".join(path), left.name))
        return arrows[-1].src, arrows[0].tgt, sum(a.degree for a in arrows)

    def combo_info(self, comb, what):
        infos = {self.path_info(p) for c, p in comb if c}
        if len(infos) > 1:
            raise QuiverError("%s is inhomogeneous in endpoints or degree" % what)
        return infos.pop() if infos else None

    def validate(self):
        for name, comb in self.differential.items():
            a = self.arrow(name)
            info = self.combo_info(comb, "differential of %s" % name)
            if info is not None and info != (a.src, a.tgt, a.degree + 1):
                raise QuiverError(
                    "differential of %s must go %s -> %s in degree %d" % (name, a.src, a.tgt, a.degree + 1)
                )
        for n, r in enumerate(self.relations):
            self.combo_info(r, "relation %d (%s)" % (n, format_combo(r)))
        return self

    def is_acyclic_forward(self):
        pos = {v: i for i, v in enumerate(self.vertices)}
        return all(pos[a.src] < pos[a.tgt] for a in self.arrows)


def format_combo(comb):
    parts = []
    for c, p in comb:
        parts.append("%s*%s" % (c, "*".join(p)))
    return " + ".join(parts) or "0"


class PathAlgebra:
    """Path enumeration and reduction data behind path_algebra."""

    def __init__(self, q, max_path_len):
        self.q = q
        self.L = max_path_len
        self.vidx = {v: i for i, v in enumerate(q.vertices)}
        self.deg = {a.name: a.degree for a in q.arrows}
        self.paths = {}
        self._enumerate()

    def _enumerate(self):
        q = self.q
        by_src = {}
        for a in q.arrows:
            by_src.setdefault(a.src, []).append(a)
        cur = [((a.name,), a.src, a.tgt, a.degree) for a in q.arrows]
        self.by_len = {1: cur}
        for n in range(2, self.L + 1):
            nxt = []
            for p, s, t, d in cur:
                for a in by_src.get(t, ()):
                    nxt.append(((a.name,) + p, s, a.tgt, d + a.degree))
            self.by_len[n] = nxt
            cur = nxt
            if not cur:
                break


def _leibniz(q, path, dmap):
    """d of a path as a list of (coeff, path), no reduction."""
    out = []
    sign = ONE
    for k, a in enumerate(path):
        for c, p in dmap.get(a, ()):
            out.append((sign * c, path[:k] + p + path[k + 1:]))
        if q.arrow(a).degree % 2:
            sign = -sign
    return out


def path_algebra(q, max_path_len=8):
    """The DG category presented by the quiver, truncated at max_path_len."""
    if max_path_len < 1:
        raise QuiverError("max_path_len must be at least 1")
    q.validate()
    L = max_path_len
    pa = PathAlgebra(q, L)
    rels = [tuple((c, p) for c, p in r if c) for r in q.relations]
    rels = [r for r in rels if r]
    rel_info = [q.combo_info(r, "relation") for r in rels]
    maxrel = max((len(p) for r in rels for _, p in r), default=0)
    minrel = {n: min(len(p) for _, p in r) for n, r in enumerate(rels)}

    # paths grouped by (src, tgt, degree), lengths 1..L
    groups = {}
    for n in range(1, L + 1):
        for p, s, t, d in pa.by_len.get(n, ()):
            groups.setdefault((s, t, d), []).append(p)
    # walk helpers: all paths between vertices (including trivial) up to a length
    def paths_from(v, maxlen):
        out = [()]
        for n in range(1, maxlen + 1):
            out.extend(p for p, s, t, d in pa.by_len.get(n, ()) if s == v)
        return out

    def paths_to(v, maxlen):
        out = [()]
        for n in range(1, maxlen + 1):
            out.extend(p for p, s, t, d in pa.by_len.get(n, ()) if t == v)
        return out

    def endpoints(p, default):
        if not p:
            return default, default
        return q.arrow(p[-1]).src, q.arrow(p[0]).tgt

    def ideal_elements(budget, keep_len):
        """u r v with len(u) + len(v) + minlen(r) <= budget, terms of length < keep_len kept."""
        out = {}
        for n, r in enumerate(rels):
            s, t, d = rel_info[n]
            room = budget - minrel[n]
            if room < 0:
                continue
            for u in paths_from(t, room):
                for v in paths_to(s, room - len(u)):
                    key = (endpoints(v, s)[0], endpoints(u, t)[1], d + sum(pa.deg[a] for a in u + v))
                    terms = [(c, u + p + v) for c, p in r if len(u) + len(p) + len(v) < keep_len]
                    out.setdefault(key, []).append(terms)
        return out

    # stabilization: every path of length L must lie in the ideal
    long_paths = pa.by_len.get(L, [])
    if long_paths:
        wide = L + maxrel
        big = ideal_elements(wide, wide + 1)
        for p, s, t, d in long_paths:
            elems = big.get((s, t, d), [])
            cols = {}
            ech = Echelon()
            for terms in elems:
                row = {}
                for c, path in terms:
                    j = cols.setdefault(path, len(cols))
                    row[j] = row.get(j, ZERO) + c
                ech.add(row)
            j = cols.get(p)
            if j is None or not ech.contains({j: ONE}):
                raise QuiverError(
                    "path algebra not stabilized at length %d: witness path %s (%s -> %s)" % (L, "*".join(p), s, t)
                )
    relspan = ideal_elements(L - 1, L)

    basis, reducers = {}, {}
    for v in q.vertices:
        groups.setdefault((v, v, 0), [])
    for key in sorted(groups, key=lambda k: (pa.vidx[k[0]], pa.vidx[k[1]], k[2])):
        s, t, d = key
        paths = [p for p in groups[key] if len(p) < L]
        if s == t and d == 0:
            paths = paths + [()]
        paths.sort(key=lambda p: (-len(p), p))
        col = {p: i for i, p in enumerate(paths)}
        ech = Echelon()
        for terms in relspan.get(key, []):
            row = {}
            for c, p in terms:
                if p in col:
                    row[col[p]] = row.get(col[p], ZERO) + c
            ech.add(row)
        free = [p for p in paths if col[p] not in ech.pivots]
        free.sort(key=lambda p: (len(p), p))
        if not free:
            continue
        basis[key] = free
        reducers[key] = (col, ech, {col[p]: i for i, p in enumerate(free)})

    # flatten to hom(i, j) with degree-sorted bases
    V = q.vertices
    hom_index = {}
    hom_basis = {}
    for (s, t, d), free in basis.items():
        hom_basis.setdefault((s, t), []).extend((d, p) for p in free)
    for st in hom_basis:
        hom_basis[st].sort(key=lambda dp: (dp[0], len(dp[1]), dp[1]))
        hom_index[st] = {dp: n for n, dp in enumerate(hom_basis[st])}

    def reduce_combo(terms, s, t, d):
        key = (s, t, d)
        if key not in reducers:
            return {}
        col, ech, fpos = reducers[key]
        row = {}
        for c, p in terms:
            if len(p) >= L:
                continue
            j = col.get(p)
            if j is None:
                raise QuiverError("internal: path %s not enumerated" % "*".join(p))
            row[j] = row.get(j, ZERO) + c
        row = ech.reduce(row)
        out = {}
        idx = hom_index[(s, t)]
        for j, c in row.items():
            p = col_inv(col)[j]
            out[idx[(d, p)]] = c
        return out

    inv_cache = {}

    def col_inv(col):
        k = id(col)
        if k not in inv_cache:
            inv_cache[k] = {j: p for p, j in col.items()}
        return inv_cache[k]

    def path_degree(p):
        return sum(pa.deg[a] for a in p)

    dmap = {a: tuple((c, p) for c, p in comb if c) for a, comb in q.differential.items()}

    # relations and d^2 must vanish in the quotient
    for n, r in enumerate(rels):
        s, t, d = rel_info[n]
        dterms = []
        for c, p in r:
            dterms.extend((c * c2, p2) for c2, p2 in _leibniz(q, p, dmap))
        if reduce_combo(dterms, s, t, d + 1):
            raise QuiverError("d of relation %d (%s) is not in the relation ideal" % (n, format_combo(r)))
    for a in q.arrows:
        first = list(dmap.get(a.name, ()))
        second = []
        for c, p in first:
            second.extend((c * c2, p2) for c2, p2 in _leibniz(q, p, dmap))
        if reduce_combo(second, a.src, a.tgt, a.degree + 2):
            raise QuiverError("d^2 of arrow %s is not in the relation ideal" % a.name)

    homs, comp = {}, {}
    for (s, t), items in hom_basis.items():
        i, j = pa.vidx[s], pa.vidx[t]
        labels = ["*".join(p) if p else "1_" + s for d, p in items]
        cols = []
        for d, p in items:
            cols.append(reduce_combo(_leibniz(q, p, dmap), s, t, d + 1))
        homs[(i, j)] = CochainComplex(GradedVS([d for d, p in items], labels), cols)
    for (s, t), items_f in hom_basis.items():
        for (t2, u), items_g in hom_basis.items():
            if t2 != t:
                continue
            table = {}
            for a, (dg, g) in enumerate(items_g):
                for b, (df, f) in enumerate(items_f):
                    v = reduce_combo([(ONE, g + f)], s, u, dg + df)
                    if v:
                        table[(a, b)] = v
            comp[(pa.vidx[s], pa.vidx[t], pa.vidx[u])] = table
    units = {}
    for v in V:
        idx = hom_index.get((v, v), {})
        if (0, ()) in idx:
            units[pa.vidx[v]] = {idx[(0, ())]: ONE}
    cat = DGCategory(V, homs, comp, units, ordered=q.is_acyclic_forward())
    cat.path_basis = {(pa.vidx[s], pa.vidx[t]): [p for d, p in items] for (s, t), items in hom_basis.items()}
    cat.reduce_paths = lambda terms, s, t, d: reduce_combo(terms, s, t, d)
    return cat


def path_vector(cat, q, comb):
    """Coordinates in path_algebra(q) of a combination of paths."""
    info = q.combo_info(comb, "combination")
    if info is None:
        return {}
    s, t, d = info
    return cat.reduce_paths(list(comb), s, t, d)


def relation_profile(q, max_path_len=8):
    """dim(I ∩ span(paths of length >= l)) per (src, tgt, degree, l).

    The relation ideal I is taken inside paths of length < max_path_len,
    which contain every class when the algebra is nilpotent below that bound.
    """
    cat = path_algebra(q, max_path_len)
    pa = PathAlgebra(q, max_path_len)
    groups = {}
    for n in range(1, max_path_len):
        for p, s, t, d in pa.by_len.get(n, ()):
            groups.setdefault((s, t, d), []).append(p)
    prof = {}
    for (s, t, d), paths in sorted(groups.items()):
        i, j = pa.vidx[s], pa.vidx[t]
        vecs = [cat.reduce_paths([(ONE, p)], s, t, d) for p in paths]
        lens = sorted({len(p) for p in paths})
        for ell in lens:
            idx = [n for n, p in enumerate(paths) if len(p) >= ell]
            ech = Echelon()
            for n in idx:
                ech.add(vecs[n])
            kernel = len(idx) - len(ech)
            prof[(i, j, d, ell)] = kernel
    return prof


def chain_dims(c):
    return {(c.objects[i], c.objects[j]): c.hom(i, j).space.dims() for (i, j) in c.nonzero_pairs()}
