"""A-infinity categories as explicit operation tables.

An operation m_n on the object chain (X_0, ..., X_n) takes arguments
(x_n, ..., x_1) with x_k in hom(X_{k-1}, X_k), written left to right in that
order, and lands in hom(X_0, X_n).  Tables are sparse: ops[n][chain] maps a
tuple of basis indices (a_n, ..., a_1) to a sparse output vector.

Stasheff identities are checked in the form
    sum (-1)^(r + s t) m_{r+1+t}(1^r (x) m_s (x) 1^t) = 0,
with the Koszul sign (-1)^(s (|x_n| + ... |x_{n-r+1}|)) for moving m_s past
the r leftmost arguments.  DG categories embed with m_1 = d and m_2 the
plain composition.
"""

import json
from itertools import product

from .cochain import GradedVS, Report
from .exactla import ONE, add_into, to_q


class AInfinityError(ValueError):
    pass


class AInfinityStructure:
    """objects, graded homs, sparse op tables and units.

    homs[(i, j)] is a GradedVS; units[i] is a sparse vector in hom(i, i).
    Lookups beyond max_arity are zero only if `vanish_above` is set (ordered
    structures whose reduced chains are short); otherwise they raise.
    """

    def __init__(self, objects, homs, ops, units=None, max_arity=2, vanish_above=False):
        self.objects = tuple(objects)
        self.homs = {p: h for p, h in homs.items() if len(h)}
        self.ops = {n: {ch: {a: dict(v) for a, v in t.items() if v} for ch, t in tab.items()}
                    for n, tab in ops.items()}
        self.units = {i: dict(u) for i, u in (units or {}).items()}
        self.max_arity = max_arity
        self.vanish_above = vanish_above

    def hom(self, i, j):
        return self.homs.get((i, j), _EMPTY)

    def dim(self, i, j):
        return len(self.hom(i, j))

    def deg(self, i, j, a):
        return self.hom(i, j).degrees[a]

    def m(self, n, chain, args):
        """m_n on basis arguments (a_n, ..., a_1) along `chain`."""
        if n > self.max_arity:
            if self.vanish_above:
                return {}
            raise AInfinityError("m_%d requested above the computed arity %d" % (n, self.max_arity))
        return self.ops.get(n, {}).get(tuple(chain), {}).get(tuple(args), {})

    def m_vec(self, n, chain, vecs):
        """Multilinear extension; vecs listed as (v_n, ..., v_1)."""
        out = {}
        for combo in product(*[sorted(v.items()) for v in vecs]):
            coef = ONE
            for _, c in combo:
                coef *= c
            r = self.m(n, chain, [a for a, _ in combo])
            if r:
                add_into(out, r, coef)
        return out

    def chains(self, n, reduced=False):
        """Object chains of length n with every consecutive hom nonzero."""
        k = len(self.objects)
        out = []

        def rec(ch):
            if len(ch) == n + 1:
                out.append(tuple(ch))
                return
            for y in range(k):
                if self.dim(ch[-1], y) and (not reduced or self._has_reduced(ch[-1], y)):
                    rec(ch + [y])

        for x in range(k):
            rec([x])
        return out

    def _has_reduced(self, i, j):
        if i != j:
            return True
        u = self.units.get(i)
        return self.dim(i, i) > (1 if u else 0)

    def arg_tuples(self, chain, reduced=False):
        """Basis argument tuples (a_n, ..., a_1) along a chain."""
        n = len(chain) - 1
        ranges = []
        for k in range(n, 0, -1):
            i, j = chain[k - 1], chain[k]
            r = list(range(self.dim(i, j)))
            if reduced and i == j and i in self.units:
                u = self.units[i]
                if len(u) == 1:
                    r = [a for a in r if a not in u]
            ranges.append(r)
        return product(*ranges)


_EMPTY = GradedVS([])


def from_dg(c):
    """m_1 = d, m_2 = composition, nothing higher."""
    homs = {p: c.hom(*p).space for p in c.nonzero_pairs()}
    ops = {1: {}, 2: {}}
    for (i, j), h in c.homs.items():
        ops[1][(i, j)] = {(s,): dict(col) for s, col in enumerate(h.dcols) if col}
    for (i, j, k), table in c.comp.items():
        ops[2][(i, j, k)] = {(a, b): dict(v) for (a, b), v in table.items()}
    return AInfinityStructure(c.objects, homs, ops, units=c.units, max_arity=2, vanish_above=True)


def _vec_degree(a, i, j, vec):
    degs = {a.deg(i, j, k) for k in vec}
    if len(degs) > 1:
        raise AInfinityError("inhomogeneous vector")
    return degs.pop()


def stasheff_residue(a, chain, args):
    """Left side of the arity-n identity on one basis chain."""
    n = len(args)
    degs = [a.deg(chain[n - p - 1], chain[n - p], args[p]) for p in range(n)]
    out = {}
    for s in range(1, n + 1):
        for r in range(0, n - s + 1):
            t = n - r - s
            outer = r + 1 + t
            if outer > a.max_arity and not a.vanish_above:
                raise AInfinityError("identity of arity %d needs m_%d" % (n, outer))
            if s > a.max_arity:
                if a.vanish_above:
                    continue
                raise AInfinityError("identity of arity %d needs m_%d" % (n, s))
            lo, hi = t, t + s
            inner_chain = chain[lo:hi + 1]
            inner_args = args[r:r + s]
            inner = a.m(s, inner_chain, inner_args)
            if not inner:
                continue
            sign = (r + s * t) + s * sum(degs[:r])
            outer_chain = chain[:lo + 1] + chain[hi:]
            vecs = [{x: ONE} for x in args[:r]] + [inner] + [{x: ONE} for x in args[r + s:]]
            res = a.m_vec(outer, outer_chain, vecs)
            if res:
                add_into(out, res, -ONE if sign % 2 else ONE)
    return out


def check_stasheff(a, up_to, reduced=False):
    """Report with (n, chain names, args, residue) per failing basis chain."""
    rep = Report()
    for n in range(1, up_to + 1):
        for ch in a.chains(n, reduced=reduced):
            for args in a.arg_tuples(ch, reduced=reduced):
                res = stasheff_residue(a, list(ch), list(args))
                if res:
                    rep.fail(n, tuple(a.objects[x] for x in ch), args, res)
    return rep


def check_strict_unit(a, up_to=None):
    """m_2(1, x) = x = m_2(x, 1); m_n (n != 2) vanishes on chains holding a unit."""
    rep = Report()
    up_to = a.max_arity if up_to is None else up_to
    for i in range(len(a.objects)):
        if i not in a.units:
            rep.fail("missing unit", a.objects[i])
    if rep.failures:
        return rep
    for (i, j), h in a.homs.items():
        for x in range(len(h)):
            e = {x: ONE}
            if a.m_vec(2, (i, j, j), [a.units[j], e]) != e:
                rep.fail("left unit", a.objects[i], a.objects[j], x)
            if a.m_vec(2, (i, i, j), [e, a.units[i]]) != e:
                rep.fail("right unit", a.objects[i], a.objects[j], x)
    for i, u in a.units.items():
        if a.m_vec(1, (i, i), [u]):
            rep.fail("unit not closed", a.objects[i])
    for n in range(3, up_to + 1):
        for ch in a.chains(n):
            seen = set()
            for args in a.arg_tuples(ch):
                for k in range(n):
                    i, j = ch[n - 1 - k], ch[n - k]
                    if i != j:
                        continue
                    key = (k,) + args[:k] + args[k + 1:]
                    if key in seen:
                        continue
                    seen.add(key)
                    vecs = [{x: ONE} for x in args]
                    vecs[k] = a.units[i]
                    if a.m_vec(n, ch, vecs):
                        rep.fail("m_%d on a unit" % n, tuple(a.objects[x] for x in ch), args)
    return rep


class Augmentation:
    """A = k{objects} + reduced part; unit_index[i] is the unit basis vector of hom(i, i)."""

    def __init__(self, a, unit_index):
        self.structure = a
        self.unit_index = dict(unit_index)

    def reduced_basis(self, i, j):
        n = self.structure.dim(i, j)
        if i == j:
            return [x for x in range(n) if x != self.unit_index[i]]
        return list(range(n))


def augment(a):
    unit_index = {}
    for i, name in enumerate(a.objects):
        u = a.units.get(i)
        if not u:
            raise AInfinityError("not augmentable: %s has no unit" % name)
        if a.dim(i, i) != 1:
            raise AInfinityError(
                "not augmentable: hom(%s, %s) has dimension %d, reduced endomorphisms must vanish"
                % (name, name, a.dim(i, i)))
        if len(u) != 1 or next(iter(u.values())) != 1:
            raise AInfinityError("not augmentable: unit of %s is not a basis vector" % name)
        unit_index[i] = next(iter(u))
    rep = check_strict_unit(a)
    if not rep.ok:
        raise AInfinityError("not augmentable: units are not strict (%s)" % (rep.failures[0],))
    return Augmentation(a, unit_index)


def vanishing_above_order(a):
    """For ordered reduced structures: chains of non-unit arguments are shorter than N.

    Returns the list of (n, chain) with a nonzero stored m_n on a reduced
    chain of length n >= N; it must be empty.
    """
    n_obj = len(a.objects)
    bad = []
    for n, tab in a.ops.items():
        if n < n_obj:
            continue
        for ch, t in tab.items():
            aug_units = {i: next(iter(u)) for i, u in a.units.items() if len(u) == 1}
            for args, v in t.items():
                if not v:
                    continue
                reduced = all(not (ch[n - 1 - p] == ch[n - p] and aug_units.get(ch[n - p]) == x)
                              for p, x in enumerate(args))
                if reduced:
                    bad.append((n, ch))
    return bad


# .ainf sidecar ------------------------------------------------------------------

def to_doc(a):
    homs = []
    for (i, j), h in sorted(a.homs.items()):
        homs.append({"src": a.objects[i], "tgt": a.objects[j], "degrees": list(h.degrees),
                     "labels": list(h.labels)})
    ops = []
    for n in sorted(a.ops):
        for ch in sorted(a.ops[n]):
            for args in sorted(a.ops[n][ch]):
                v = a.ops[n][ch][args]
                if v:
                    ops.append({"arity": n, "chain": [a.objects[x] for x in ch], "args": list(args),
                                "value": [[k, str(c)] for k, c in sorted(v.items())]})
    units = {a.objects[i]: [[k, str(c)] for k, c in sorted(u.items())] for i, u in sorted(a.units.items())}
    return {"objects": list(a.objects), "homs": homs, "ops": ops, "units": units,
            "max_arity": a.max_arity, "vanish_above": a.vanish_above}


def from_doc(doc):
    try:
        objects = list(doc["objects"])
        idx = {o: k for k, o in enumerate(objects)}
        homs = {}
        for h in doc["homs"]:
            homs[(idx[h["src"]], idx[h["tgt"]])] = GradedVS(h["degrees"], h.get("labels"))
        ops = {}
        for e in doc["ops"]:
            ch = tuple(idx[o] for o in e["chain"])
            n = int(e["arity"])
            if len(ch) != n + 1 or len(e["args"]) != n:
                raise AInfinityError("op entry with inconsistent arity")
            ops.setdefault(n, {}).setdefault(ch, {})[tuple(e["args"])] = {int(k): to_q(c) for k, c in e["value"]}
        units = {idx[o]: {int(k): to_q(c) for k, c in v} for o, v in doc.get("units", {}).items()}
        return AInfinityStructure(objects, homs, ops, units, max_arity=int(doc["max_arity"]),
                                  vanish_above=bool(doc.get("vanish_above", False)))
    except (KeyError, TypeError) as e:
        raise AInfinityError("malformed .ainf document: %s" % e) from None


def dumps_ainf(a):
    return json.dumps(to_doc(a), sort_keys=True, indent=2) + "\n"
