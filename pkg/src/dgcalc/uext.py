"""Universal extensions, the tilting recursion, reconstruction and quiver extraction.

Everything happens with twisted complexes: the universal extension of E by
F is the two-level complex E -> F (x) Ext^1(E, F)^*, whose twist to the copy
of F indexed by a basis class e_a of Ext^1 is a cocycle representing e_a.
"""

from dataclasses import dataclass, field
from itertools import product

from .cochain import CochainComplex, GradedVS, cohomology_basis, cohomology_dims, euler_characteristic, nonzero
from .dgcore import (Arrow, CategoryError, DGCategory, DGQuiver, collapse_CIJ, hom_cohomology, is_ordered,
                     path_algebra, relation_profile, restrict)
from .exactla import ONE, Coords, Echelon, add_into, complement_basis, independent_subset, kernel_basis, Matrix
from .mutation import Collection
from .pretr import TwMorphism, cone, embed, hom_of, hom_table, pretr_category, tensor_with_complex, tot


class ExtensionError(ValueError):
    pass


def _cocycles(h, degree):
    """Deterministic cohomology representatives of one degree, as sparse vectors."""
    s = cohomology_basis(h.complex)
    return [v for v, k in zip(s.iota_cols(), s.hdegrees) if k == degree]


@dataclass
class ExtensionClass:
    source: object
    target: object
    reps: list


def extension_class(E, F):
    h = hom_of(E, F)
    dims = nonzero(cohomology_dims(h.complex))
    high = {k: v for k, v in dims.items() if k > 1}
    if high:
        k = min(high)
        raise ExtensionError("Ext^%d is nonzero (dimension %d); universal extension needs Ext^>1 = 0" % (k, high[k]))
    return ExtensionClass(E, F, _cocycles(h, 1))


def universal_extension(E, F, check=True):
    """E twisted onto F (x) Ext^1(E, F)^*; returns E itself when Ext^1 = 0."""
    ext = extension_class(E, F)
    m = len(ext.reps)
    if not m:
        return E
    items = [E] + [F] * m
    twist = {(0, a + 1): rep for a, rep in enumerate(ext.reps)}
    out = tot(items, twist)
    if check and hom_table(F, F) == {0: 1}:
        t = hom_table(out, F)
        if t.get(1):
            raise ExtensionError("universal extension still has Ext^1 against F (dimension %d)" % t[1])
    return out


@dataclass
class TiltingData:
    items: list
    names: list
    stages: dict
    objects: list
    pretr: object
    algebra: object
    reconstructed: list = field(default_factory=list)


def _items(col):
    if isinstance(col, Collection):
        return list(col.items), list(col.names)
    if isinstance(col, DGCategory):
        return [embed(col, i) for i in range(len(col.objects))], list(col.objects)
    items = list(col)
    return items, ["E%d" % (k + 1) for k in range(len(items))]


def _check_hypothesis(items, names):
    for x, a in enumerate(items):
        for y, b in enumerate(items):
            for k, v in hom_table(a, b).items():
                if k > 1:
                    raise ExtensionError("Ext^%d(%s, %s) = %d is nonzero" % (k, names[x], names[y], v))


def tilting_collection(col, names=None):
    """E_i(j) = universal extension of E_i(j-1) by E_j; returns the tilting data."""
    items, default = _items(col)
    names = list(names or default)
    _check_hypothesis(items, names)
    n = len(items)
    stages = {}
    tops = []
    for i in range(n):
        cur = items[i]
        stages[(i, i)] = cur
        for j in range(i + 1, n):
            try:
                cur = universal_extension(cur, items[j])
            except ExtensionError as e:
                raise ExtensionError("step E_%d(%d): %s" % (i + 1, j + 1, e)) from None
            stages[(i, j)] = cur
        tops.append(cur)
    for x, a in enumerate(tops):
        for y, b in enumerate(tops):
            t = hom_table(a, b)
            for k, v in t.items():
                if k != 0:
                    raise ExtensionError("tilting fails: H^%d hom(%s, %s) = %d" % (k, names[x], names[y], v))
    bar_names = [nm if len(t.terms) == len(e.terms) else nm + "~" for nm, t, e in zip(names, tops, items)]
    P = pretr_category(tops, bar_names)
    A = collapse_CIJ(P)
    return TiltingData(items, names, stages, tops, P, A)


def _can_map(F, X):
    """F (x) H^0 hom(F, X) -> X built from deterministic degree-0 representatives."""
    reps = _cocycles(hom_of(F, X), 0)
    if not reps:
        return None
    V = CochainComplex(GradedVS([0] * len(reps)))
    src, order, offs = tensor_with_complex(F, V, return_layout=True)
    hf = hom_of(F, X)
    h = hom_of(src, X)
    vec = {}
    for pos, b in enumerate(order):
        for k, x in reps[b].items():
            i, j, e = hf.basis[k]
            add_into(vec, {h.index[(offs[pos] + i, j, e)]: x})
    return TwMorphism(src, X, vec)


def reconstruct_all(td):
    """Unwind the recursion over the tilting algebra; index order as the input."""
    if td.reconstructed:
        return td.reconstructed
    A = td.algebra
    n = len(td.objects)
    rec = [None] * n
    for i in range(n - 1, -1, -1):
        X = embed(A, i)
        for j in range(n - 1, i, -1):
            f = _can_map(rec[j], X)
            if f is not None:
                X = cone(f)
        rec[i] = X
    td.reconstructed = rec
    return rec


def reconstruct(td, i):
    return reconstruct_all(td)[i]


def reconstructed_category(td):
    """Full pretriangulated subcategory on the reconstructed objects."""
    return pretr_category(reconstruct_all(td), list(td.names))


def directed_part(c):
    """Forward homs plus units; quasi-equivalent to c for an exceptional collection."""
    spans = {}
    n = len(c.objects)
    for i in range(n):
        for j in range(n):
            if i < j and c.dim(i, j):
                spans[(i, j)] = [{k: ONE} for k in range(c.dim(i, j))]
            elif i == j:
                spans[(i, i)] = [dict(c.units[i])]
    labels = {p: [c.labels(*p)[k] for k in range(len(v))] if p[0] < p[1] else ["1"] for p, v in spans.items()}
    return restrict(c, spans, labels=labels, ordered=True)


# quiver extraction ----------------------------------------------------------------

def _rad(c, i, j):
    """Radical of hom(i, j): everything off the diagonal, trace-free left multiplication on it."""
    dim = c.dim(i, j)
    if i != j:
        return [{k: ONE} for k in range(dim)]
    rows = []
    for a in range(dim):
        tr = 0
        for b in range(dim):
            tr += c.compose(i, i, i, {a: ONE}, {b: ONE}).get(b, 0)
        rows.append(tr)
    m = Matrix.from_rows([rows], dim)
    return [{k: x for k, x in enumerate(v) if x} for v in kernel_basis(m)]


@dataclass
class Extraction:
    quiver: DGQuiver
    lifts: dict
    spans: dict
    subcategory: object


def extract_quiver(c, max_len=None, arrow_prefix="a"):
    """DG quiver presentation from indecomposables of c.

    Arrows are lifts of the cohomology of rad/Dec with its induced
    differential; their compositions span a subcategory S that must be
    closed under d and quasi-isomorphic to c.
    """
    n = len(c.objects)
    rad = {(i, j): _rad(c, i, j) for i in range(n) for j in range(n) if c.dim(i, j)}
    rad = {p: v for p, v in rad.items() if v}
    arrows = []
    for (i, k), rvecs in sorted(rad.items()):
        dec = Echelon()
        for j in range(n):
            for g in rad.get((j, k), ()):
                for f in rad.get((i, j), ()):
                    v = c.compose(i, j, k, g, f)
                    if v:
                        dec.add(v)
        # complement of Dec inside rad, degree by degree
        comp = []
        ech = Echelon()
        for row in dec.rows():
            ech.add(dict(row))
        for v in rvecs:
            if ech.add(dict(v)):
                comp.append(v)
        if not comp:
            continue
        degs = [c.vector_degree(i, k, v) for v in comp]
        co = Coords(list(dec.rows()) + comp)
        nd = len(dec)
        cols = []
        for v in comp:
            x = co.of(c.d(i, k, v)) or {}
            cols.append({t - nd: y for t, y in x.items() if t >= nd})
        Q = CochainComplex(GradedVS(degs), cols)
        s = cohomology_basis(Q)
        for qv, d in zip(s.iota_cols(), s.hdegrees):
            lift = {}
            for t, y in qv.items():
                add_into(lift, comp[t], y)
            arrows.append((i, k, d, lift))
    names = {}
    for num, (i, k, d, lift) in enumerate(arrows):
        names[num] = "%s%d" % (arrow_prefix, num + 1)
    # paths by length
    by_len = {1: [((num,), arrows[num][0], arrows[num][1], arrows[num][2], arrows[num][3])
                  for num in range(len(arrows))]}
    bound = max_len or 12
    L = 1
    while by_len[L]:
        nxt = []
        for p, s0, t0, d0, v0 in by_len[L]:
            for num, (i, k, d, lift) in enumerate(arrows):
                if i != t0:
                    continue
                v = c.compose(s0, t0, k, lift, v0)
                nxt.append(((num,) + p, s0, k, d0 + d, v))
        if all(not x[4] for x in nxt):
            by_len[L + 1] = []
            # paths of this length are zero; keep them so the relations include them
            by_len["zero"] = nxt
            break
        L += 1
        if L > bound:
            raise ExtensionError("path evaluation does not vanish below length %d" % bound)
        by_len[L] = nxt
    all_paths = [x for ell in range(1, L + 1) for x in by_len[ell]]
    zero_paths = by_len.get("zero", [])
    # the subcategory S spanned by the paths
    spans = {}
    for p, s0, t0, d0, v in all_paths:
        if v:
            spans.setdefault((s0, t0), Echelon()).add(v)
    span_vecs = {p: [dict(r) for r in e.rows()] for p, e in spans.items()}
    for i in range(n):
        span_vecs.setdefault((i, i), [])
        u = c.units.get(i)
        if u:
            e = Echelon()
            for r in span_vecs[(i, i)]:
                e.add(dict(r))
            if e.add(dict(u)):
                span_vecs[(i, i)] = [dict(u)] + span_vecs[(i, i)]
    for (i, k, d, lift) in arrows:
        dv = c.d(i, k, lift)
        if dv and not Echelon_from(span_vecs.get((i, k), ())).contains(dv):
            raise ExtensionError("d of a generator leaves the generated subcategory")
    S = restrict(c, {p: v for p, v in span_vecs.items() if v}, ordered=is_ordered(c))
    _check_quasi_iso(c, S, span_vecs)
    q = _present(c, arrows, names, all_paths, zero_paths)
    return Extraction(q, {names[k]: a for k, a in enumerate(arrows)}, span_vecs, S)


def Echelon_from(vecs):
    e = Echelon()
    for v in vecs:
        e.add(dict(v))
    return e


def _check_quasi_iso(c, S, spans):
    """Inclusion S -> c induces an isomorphism on every hom cohomology."""
    hs, hc = hom_cohomology(S), hom_cohomology(c)
    if hs != hc:
        raise ExtensionError("generated subcategory has different cohomology")
    for p, vecs in spans.items():
        if not vecs or p not in hc:
            continue
        i, j = p
        sub = S.hom(i, j)
        s = cohomology_basis(sub)
        reps = []
        for v in s.iota_cols():
            w = {}
            for t, y in v.items():
                add_into(w, vecs[t], y)
            reps.append(w)
        h = c.hom(i, j)
        bnd = Echelon()
        for col in h.dcols:
            if col:
                bnd.add(dict(col))
        base = len(bnd)
        for r in reps:
            bnd.add(r)
        if len(bnd) - base != len(reps):
            raise ExtensionError("inclusion is not injective on cohomology at (%s, %s)" % (c.objects[i], c.objects[j]))


def _present(c, arrows, names, all_paths, zero_paths):
    verts = list(c.objects)
    arrow_objs = [Arrow(names[k], verts[i], verts[j], d) for k, (i, j, d, _) in enumerate(arrows)]
    groups = {}
    for entry in all_paths + zero_paths:
        p, s0, t0, d0, v = entry
        groups.setdefault((s0, t0, d0), []).append(entry)
    # differential of each arrow in terms of paths, short paths preferred
    diff = {}
    for k, (i, j, d, lift) in enumerate(arrows):
        dv = c.d(i, j, lift)
        if not dv:
            continue
        cand = sorted(groups.get((i, j, d + 1), []), key=lambda e: (len(e[0]), e[0]))
        x = _solve_combo([e[4] for e in cand], dv)
        if x is None:
            raise ExtensionError("differential of %s is not a combination of paths" % names[k])
        diff[names[k]] = tuple((y, tuple(names[a] for a in cand[t][0])) for t, y in sorted(x.items()))
    # relations: kernel of evaluation, minimal modulo the ideal of shorter ones
    rels = []
    key_order = sorted(groups)
    kernels = {}
    for key in key_order:
        ents = sorted(groups[key], key=lambda e: (len(e[0]), e[0]))
        groups[key] = ents
        kernels[key] = _kernel(ents)
    pidx = {key: {e[0]: t for t, e in enumerate(ents)} for key, ents in groups.items()}
    # minimal relations: K modulo arrows * K + K * arrows
    for key in key_order:
        s0, t0, d0 = key
        ents = groups[key]
        K = kernels[key]
        if not K:
            continue
        ideal = []
        for k, (ai, aj, ad, _) in enumerate(arrows):
            if aj == t0:
                sub = (s0, ai, d0 - ad)
                for r in kernels.get(sub, []):
                    ideal.append(_mul(r, groups[sub], pidx[key], left=k))
            if ai == s0:
                sub = (aj, t0, d0 - ad)
                for r in kernels.get(sub, []):
                    ideal.append(_mul(r, groups[sub], pidx[key], right=k))
        ech = Echelon_from(v for v in ideal if v is not None)
        for v in sorted(K, key=lambda v: (max(len(ents[t][0]) for t in v), len(v))):
            if ech.add(dict(v)):
                rels.append(tuple((y, tuple(names[a] for a in ents[t][0])) for t, y in sorted(v.items())))
    q = DGQuiver(verts, arrow_objs, diff, rels)
    q.validate()
    return q


def _mul(rel, ents, target_idx, left=None, right=None):
    out = {}
    for t, y in rel.items():
        p = ents[t][0]
        np_ = ((left,) + p) if left is not None else (p + (right,))
        if np_ not in target_idx:
            return None
        out[target_idx[np_]] = y
    return out


def _kernel(ents):
    if not ents:
        return []
    rows = {}
    for t, e in enumerate(ents):
        for k, x in e[4].items():
            rows.setdefault(k, {})[t] = x
    m = Matrix.from_rows([[r.get(t, 0) for t in range(len(ents))] for _, r in sorted(rows.items())], len(ents)) \
        if rows else Matrix(0, len(ents))
    vecs = [{t: x for t, x in enumerate(v) if x} for v in kernel_basis(m)]
    # prefer relations supported on short paths: reduce against later columns
    return vecs


def _solve_combo(cols, target):
    """Coefficients x with sum x_t cols[t] = target, earliest columns preferred."""
    ech = Echelon(track=True)
    basis = []
    for t, v in enumerate(cols):
        if v and ech.add(dict(v)):
            basis.append(t)
    co = Coords([cols[t] for t in basis]) if basis else None
    if co is None:
        return None if target else {}
    x = co.of(target)
    if x is None:
        return None
    return {basis[k]: y for k, y in x.items()}


# the pipeline ---------------------------------------------------------------------

def dg_quiver_of_collection(td, mode="direct"):
    """DG quiver of the reconstructed collection.

    mode "direct" extracts generators from the directed part of the
    reconstructed category; mode "universal" presents the universal DG
    category of its minimal model (free, so no relations).
    """
    D = reconstructed_category(td)
    Dp = directed_part(D)
    if mode == "direct":
        return extract_quiver(Dp).quiver
    if mode == "universal":
        from .barcobar import CobarCategory, bar
        from .transfer import minimal_model
        mm = minimal_model(Dp)
        return cobar_quiver(CobarCategory(bar(mm.structure)))
    raise ValueError("mode must be 'direct' or 'universal'")


def cobar_quiver(cb):
    """Free DG quiver of a cobar category: one arrow per bar word."""
    b = cb.bar
    verts = list(cb.objects)
    names = {}
    arrows = []
    for w in b.all_words():
        ch, args = w
        if not args:
            continue
        nm = "w%d" % (len(arrows) + 1)
        names[w] = nm
        arrows.append(Arrow(nm, verts[ch[0]], verts[ch[-1]], cb.gen_degree(w)))
    diff = {}
    for w, nm in names.items():
        terms = cb.d_gen(w)
        if terms:
            diff[nm] = tuple((c, tuple(names[g] for g in key)) for key, c in sorted(terms.items(), key=lambda kv: [names[g] for g in kv[0]]))
    q = DGQuiver(verts, arrows, diff, [])
    q.validate()
    return q


def quiver_of_category(c, max_len=None):
    """Ordinary (or DG) quiver of a finite category via rad / rad^2."""
    return extract_quiver(c, max_len=max_len).quiver


# comparisons ----------------------------------------------------------------------

def arrow_signature(q):
    pos = {v: k for k, v in enumerate(q.vertices)}
    out = {}
    for a in q.arrows:
        key = (pos[a.src], pos[a.tgt], a.degree)
        out[key] = out.get(key, 0) + 1
    return out


def graded_dims(c):
    return {p: c.hom(*p).space.dims() for p in c.nonzero_pairs()}


def massey_profile(c):
    """Rank of triple products on every ascending 4-chain and degree triple."""
    from .transfer import massey_rank, minimal_model
    mm = minimal_model(c)
    a = mm.structure
    n = len(c.objects)
    prof = {}
    for ch in product(range(n), repeat=4):
        if not all(ch[k] < ch[k + 1] for k in range(3)):
            continue
        dsets = []
        for k in range(3, 0, -1):
            dsets.append(sorted(set(a.hom(ch[k - 1], ch[k]).degrees)))
        for degs in product(*dsets):
            r = massey_rank(mm, ch, degs)
            if r:
                prof[(ch, degs)] = r
    return prof


def compare_quivers(q1, q2, max_path_len=8):
    """Basis-free comparison; returns the list of differing invariants."""
    c1, c2 = path_algebra(q1, max_path_len), path_algebra(q2, max_path_len)
    diffs = []
    if graded_dims(c1) != graded_dims(c2):
        diffs.append("chain-level hom dims")
    if hom_cohomology(c1) != hom_cohomology(c2):
        diffs.append("hom cohomology")
    if arrow_signature(q1) != arrow_signature(q2):
        diffs.append("arrow signature")
    if relation_profile(q1, max_path_len) != relation_profile(q2, max_path_len):
        diffs.append("relation profile")
    if is_ordered(c1) and is_ordered(c2) and massey_profile(c1) != massey_profile(c2):
        diffs.append("Massey profile")
    return diffs


def euler_table(items):
    return [[euler_characteristic(hom_table(a, b)) for b in items] for a in items]


__all__ = [
    "ExtensionError", "ExtensionClass", "extension_class", "universal_extension", "TiltingData",
    "tilting_collection", "reconstruct", "reconstruct_all", "reconstructed_category", "directed_part",
    "extract_quiver", "dg_quiver_of_collection", "quiver_of_category", "cobar_quiver", "arrow_signature",
    "graded_dims", "massey_profile", "compare_quivers", "euler_table", "CategoryError", "complement_basis",
    "independent_subset",
]
