"""Bar cocategory, cobar DG category and the universal DG category.

Bar words (a_n, ..., a_1) sit on strictly ascending object chains and carry
suspended degree sum(|a_k| - 1).  The differential inserts
b_k(y) = -(-1)^(sum_j (j-1)|y_j|) m_k(x) with a Koszul sign for the letters
it passes; `sign_rule` selects whether those are the letters on the left
("left", the usual convention) or on the right ("right").  Comultiplication
splits words, including the empty ends.

Cobar generators are w-words omega(w) for nonempty bar words w, of degree
|w| + 1; homs are spanned by concatenations, with
    d omega(w) = -omega(dw) + sum (-1)^|w'| omega(w') omega(w'')
over splittings w = w' w'', extended by the Leibniz rule.
"""

from itertools import combinations, product

from .ainfty import augment
from .cochain import CochainComplex, GradedVS, Report
from .dgcore import DGCategory, is_ordered
from .exactla import ONE


class BarError(ValueError):
    pass


def _reduced_dims(a, aug):
    return {(i, j): aug.reduced_basis(i, j) for (i, j) in a.homs}


def _ascending_chains(a, red, n):
    """Object chains of length n along nonzero reduced homs (no repeats allowed)."""
    k = len(a.objects)
    out = []

    def rec(ch):
        if len(ch) == n + 1:
            out.append(tuple(ch))
            return
        for y in range(k):
            if y != ch[-1] and red.get((ch[-1], y)):
                if y in ch:
                    raise BarError("object chain %s revisits an object: the structure is not ordered" % (ch + [y],))
                rec(ch + [y])

    for x in range(k):
        rec([x])
    return out


class BarCocategory:
    def __init__(self, a, aug=None, sign_rule="left"):
        if sign_rule not in ("left", "right"):
            raise BarError("sign_rule must be 'left' or 'right'")
        self.a = a
        self.aug = aug or augment(a)
        self.sign_rule = sign_rule
        self.objects = a.objects
        red = _reduced_dims(a, self.aug)
        for (i, j), r in red.items():
            if i == j and r:
                raise BarError("reduced endomorphisms of %s are nonzero" % a.objects[i])
        self.red = red
        words = {}
        n = 1
        while True:
            chs = _ascending_chains(a, red, n)
            if not chs:
                break
            for ch in chs:
                ranges = [red[(ch[k - 1], ch[k])] for k in range(n, 0, -1)]
                for args in product(*ranges):
                    words.setdefault((ch[0], ch[-1]), []).append((ch, tuple(args)))
            n += 1
        self.max_length = n - 1
        for i in range(len(self.objects)):
            words.setdefault((i, i), []).insert(0, ((i,), ()))
        self.words = {p: sorted(ws, key=lambda w: (len(w[1]), w)) for p, ws in words.items()}
        self.index = {w: k for p, ws in self.words.items() for k, w in enumerate(ws)}

    def degree(self, w):
        ch, args = w
        n = len(args)
        return sum(self.a.deg(ch[n - p - 1], ch[n - p], args[p]) - 1 for p in range(n))

    def label(self, w):
        ch, args = w
        if not args:
            return "1_%s" % self.objects[ch[0]]
        n = len(args)
        return "|".join(self.a.hom(ch[n - p - 1], ch[n - p]).labels[args[p]] for p in range(n))

    def d(self, w):
        """Sparse dict word -> coefficient."""
        a = self.a
        ch, args = w
        n = len(args)
        out = {}
        if not n:
            return out
        ys = [self.degree(((ch[n - p - 1], ch[n - p]), (args[p],))) for p in range(n)]
        for k in range(1, n + 1):
            if k > a.max_arity and a.vanish_above:
                continue
            for p in range(0, n - k + 1):
                l = n - p - k + 1
                sub_chain = ch[l - 1:l + k]
                block = args[p:p + k]
                val = a.m(k, sub_chain, block)
                if not val:
                    continue
                # y_j = alpha_{l+j-1} sits at args position p + k - j
                e = sum((j - 1) * ys[p + k - j] for j in range(1, k + 1))
                if self.sign_rule == "left":
                    e += sum(ys[:p])
                else:
                    e += sum(ys[p + k:])
                sign = ONE if e % 2 else -ONE
                new_chain = ch[:l] + ch[l + k - 1:]
                for out_idx, x in val.items():
                    nw = (new_chain, args[:p] + (out_idx,) + args[p + k:])
                    out[nw] = out.get(nw, 0) + sign * x
        return {k: v for k, v in out.items() if v}

    def delta(self, w):
        """Splittings (left, right), the empty words included."""
        ch, args = w
        n = len(args)
        out = []
        for q in range(n + 1):
            # left part: alpha_n .. alpha_{q+1} on chain[q:], right: alpha_q .. alpha_1 on chain[:q+1]
            left = (ch[q:], args[:n - q])
            right = (ch[:q + 1], args[n - q:])
            out.append((left, right))
        return out

    def complex(self, i, j):
        ws = self.words.get((i, j), [])
        idx = {w: k for k, w in enumerate(ws)}
        degs = [self.degree(w) for w in ws]
        cols = []
        for w in ws:
            cols.append({idx[v]: x for v, x in self.d(w).items()})
        return CochainComplex(GradedVS(degs, [self.label(w) for w in ws]), cols)

    def all_words(self):
        return [w for p in sorted(self.words) for w in self.words[p]]


def bar(a, sign_rule="left"):
    return BarCocategory(a, sign_rule=sign_rule)


def check_bar(b):
    """d^2 = 0 and co-Leibniz on every word; failures name the word."""
    rep = Report()
    for w in b.all_words():
        dw = b.d(w)
        dd = {}
        for v, x in dw.items():
            for u, y in b.d(v).items():
                dd[u] = dd.get(u, 0) + x * y
        if any(dd.values()):
            rep.fail("d^2", b.label(w))
        lhs = {}
        for v, x in dw.items():
            for pair in b.delta(v):
                lhs[pair] = lhs.get(pair, 0) + x
        rhs = {}
        for (u, v) in b.delta(w):
            for u2, x in b.d(u).items():
                s = 1
                if b.sign_rule == "right":
                    s = -1 if b.degree(v) % 2 else 1
                rhs[(u2, v)] = rhs.get((u2, v), 0) + s * x
            for v2, x in b.d(v).items():
                s = 1
                if b.sign_rule == "left":
                    s = -1 if b.degree(u) % 2 else 1
                rhs[(u, v2)] = rhs.get((u, v2), 0) + s * x
        diff = {k: lhs.get(k, 0) - rhs.get(k, 0) for k in set(lhs) | set(rhs)}
        if any(diff.values()):
            rep.fail("co-Leibniz", b.label(w))
    return rep


# cobar ---------------------------------------------------------------------------

def _cobar_basis(b, i, j):
    """Concatenations of nonempty bar words from i to j, as tuples (w_m, ..., w_1)."""
    out = []
    if i == j:
        out.append(())
    for w in b.words.get((i, j), []):
        ch, args = w
        n = len(args)
        if not n:
            continue
        # cut the word between letters; cut q means a break after alpha_q (1 <= q < n)
        for r in range(n):
            for cuts in combinations(range(1, n), r):
                pieces = []
                bounds = [0] + list(cuts) + [n]
                for s in range(len(bounds) - 1, 0, -1):
                    lo, hi = bounds[s - 1], bounds[s]
                    pieces.append((ch[lo:hi + 1], args[n - hi:n - lo]))
                out.append(tuple(pieces))
    return out


class CobarCategory:
    def __init__(self, b):
        self.bar = b
        self.objects = b.objects
        n = len(self.objects)
        self.basis = {}
        for i in range(n):
            for j in range(n):
                bs = _cobar_basis(b, i, j)
                if bs:
                    bs.sort(key=lambda x: (len(x), x))
                    self.basis[(i, j)] = bs
        self.index = {p: {x: k for k, x in enumerate(bs)} for p, bs in self.basis.items()}

    def gen_degree(self, w):
        return self.bar.degree(w) + 1

    def degree(self, x):
        return sum(self.gen_degree(w) for w in x)

    def label(self, x):
        if not x:
            return "1"
        return " * ".join("w(%s)" % self.bar.label(w) for w in x)

    def d_gen(self, w):
        b = self.bar
        out = {}
        for v, c in b.d(w).items():
            key = (v,)
            out[key] = out.get(key, 0) - c
        for (u, v) in b.delta(w):
            if not u[1] or not v[1]:
                continue
            s = -1 if b.degree(u) % 2 else 1
            key = (u, v)
            out[key] = out.get(key, 0) + s
        return {k: x for k, x in out.items() if x}

    def d(self, x):
        out = {}
        acc = 0
        for k, w in enumerate(x):
            s = -1 if acc % 2 else 1
            for y, c in self.d_gen(w).items():
                key = x[:k] + y + x[k + 1:]
                out[key] = out.get(key, 0) + s * c
            acc += self.gen_degree(w)
        return {k: v for k, v in out.items() if v}

    def to_category(self):
        n = len(self.objects)
        homs = {}
        for p, bs in self.basis.items():
            idx = self.index[p]
            degs = [self.degree(x) for x in bs]
            cols = []
            for x in bs:
                col = {}
                for y, c in self.d(x).items():
                    if y not in idx:
                        raise BarError("cobar differential leaves the basis at %s" % self.label(x))
                    col[idx[y]] = col.get(idx[y], 0) + c
                cols.append(col)
            homs[p] = CochainComplex(GradedVS(degs, [self.label(x) for x in bs]), cols)
        comp = {}
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if (i, j) not in self.basis or (j, k) not in self.basis:
                        continue
                    tab = {}
                    tgt = self.index[(i, k)]
                    for ga, g in enumerate(self.basis[(j, k)]):
                        for fb, f in enumerate(self.basis[(i, j)]):
                            tab[(ga, fb)] = {tgt[g + f]: ONE}
                    comp[(i, j, k)] = tab
        units = {i: {self.index[(i, i)][()]: ONE} for i in range(n)}
        c = DGCategory(self.objects, homs, comp, units)
        c.ordered = is_ordered(c)
        return c


def cobar(b):
    return CobarCategory(b).to_category()


def universal_dg(a, sign_rule="left"):
    """Omega(B(a)) as a DGCategory."""
    return cobar(bar(a, sign_rule=sign_rule))


def finiteness_report(c):
    """(ordered, finite, total dimension) for a DGCategory."""
    total = sum(len(h) for h in c.homs.values())
    return {"ordered": is_ordered(c), "finite": True, "total_dim": total,
            "max_hom_dim": max((len(h) for h in c.homs.values()), default=0)}
