"""Minimal A-infinity models by homotopy transfer, and Massey products.

Transfer runs in the suspended picture, where every map has degree 0 or 1
and no Koszul signs appear in the recursion:

    gamma_1 = iota,   beta_n = sum_{k+l=n} b_2(gamma_k, gamma_l),
    gamma_n = H beta_n,   b'_n = pi beta_n,

with b_2(u, v) = -(-1)^(|u|-1) m_2(u, v) and H = +-h.  The m-picture
operations are m'_n(x_n..x_1) = -(-1)^(sum_j (j-1)(|x_j|-1)) b'_n, so that
m'_2 = pi m_2(iota, iota).  The sign of H is settled by the Stasheff
check: the construction is accepted only if the identities hold.
"""

from dataclasses import dataclass, field

from .ainfty import AInfinityError, AInfinityStructure, check_stasheff, check_strict_unit
from .cochain import GradedVS, cohomology_basis
from .dgcore import is_ordered
from .exactla import ONE, Echelon, add_into


class TransferError(ValueError):
    pass


@dataclass
class TransferData:
    iota: dict
    pi: dict
    h: dict
    h_sign: int
    variant: int
    gamma: dict = field(default_factory=dict)


@dataclass
class MinimalModel:
    structure: AInfinityStructure
    data: TransferData
    source: object

    def F1(self, i, j, vec):
        """The chain-level representative of a class."""
        out = {}
        if not vec:
            return out
        cols = self.data.iota[(i, j)]
        for k, x in vec.items():
            add_into(out, cols[k], x)
        return out

    def F2(self, chain, args):
        """Second component of the quasi-isomorphism H -> C.

        Normalized so that d F2(x2, x1) = m2(F1 x2, F1 x1) - F1 m'_2(x2, x1).
        """
        g = self.data.gamma.get((tuple(chain), tuple(args)), {})
        a = self.structure
        y2 = a.deg(chain[1], chain[2], args[0]) - 1
        sign = -self.data.h_sign * (-1 if y2 % 2 else 1)
        return {k: sign * x for k, x in g.items()}


def _sparse_cols(m):
    return [{i: m[i, j] for i in range(m.rows) if m[i, j]} for j in range(m.cols)]


def _sparse_rows(m):
    return [{j: m[i, j] for j in range(m.cols) if m[i, j]} for i in range(m.rows)]


def _apply_cols(cols, vec):
    out = {}
    for k, x in vec.items():
        add_into(out, cols[k], x)
    return out


def _apply_rows(rows, vec):
    out = {}
    for r, row in enumerate(rows):
        s = sum((x * vec[k] for k, x in row.items() if k in vec), 0)
        if s:
            out[r] = s
    return out


def _splittings(c, variant):
    iota, pi, h, homs = {}, {}, {}, {}
    for (i, j) in c.nonzero_pairs():
        hom = c.hom(i, j)
        prefer = [c.units[i]] if i == j and i in c.units else ()
        s = cohomology_basis(hom, prefer=prefer, variant=variant)
        # acyclic homs still carry a homotopy, and the tree formulas need it
        h[(i, j)] = _sparse_cols(s.h)
        if not s.hdegrees:
            continue
        iota[(i, j)] = _sparse_cols(s.iota)
        pi[(i, j)] = _sparse_rows(s.pi)
        labels = []
        for v in iota[(i, j)]:
            if len(v) == 1 and next(iter(v.values())) == 1:
                labels.append(hom.space.labels[next(iter(v))])
            else:
                labels.append("[" + " + ".join("%s*%s" % (x, hom.space.labels[k]) for k, x in sorted(v.items())) + "]")
        homs[(i, j)] = GradedVS(list(s.hdegrees), labels)
    return iota, pi, h, homs


def _default_arity(c):
    n = len(c.objects)
    if is_ordered(c) and c.is_reduced():
        return max(2, n - 1), True
    return None, False


def _build(c, max_arity, variant, h_sign, vanish):
    iota, pi, h, homs = _splittings(c, variant)
    data = TransferData(iota, pi, h, h_sign, variant)
    units = {}
    for i in range(len(c.objects)):
        if (i, i) in pi and i in c.units:
            units[i] = _apply_rows(pi[(i, i)], c.units[i])
    shell = AInfinityStructure(c.objects, homs, {}, units, max_arity=max_arity, vanish_above=vanish)

    def cdeg(i, j, vec):
        return c.degrees(i, j)[next(iter(vec))]

    def b2(i, j, k, u, v):
        if not u or not v:
            return {}
        s = cdeg(j, k, u) - 1
        out = c.compose(i, j, k, u, v)
        return {x: (y if s % 2 else -y) for x, y in out.items()}

    memo = data.gamma

    def gamma(chain, args):
        key = (chain, args)
        if key in memo:
            return memo[key]
        n = len(args)
        if n == 1:
            val = iota[(chain[0], chain[1])][args[0]]
        else:
            beta = _beta(chain, args)
            hcols = h.get((chain[0], chain[-1]))
            val = {}
            if beta and hcols:
                val = _apply_cols(hcols, beta)
                if h_sign < 0:
                    val = {x: -y for x, y in val.items()}
        memo[key] = val
        return val

    def _beta(chain, args):
        n = len(args)
        out = {}
        for l in range(1, n):
            # gamma_{n-l} on x_n .. x_{l+1}, gamma_l on x_l .. x_1
            left = gamma(chain[l:], args[:n - l])
            if not left:
                continue
            right = gamma(chain[:l + 1], args[n - l:])
            if not right:
                continue
            add_into(out, b2(chain[0], chain[l], chain[-1], left, right))
        return out

    ops = {}
    for n in range(2, max_arity + 1):
        tab = {}
        for ch in shell.chains(n):
            if (ch[0], ch[-1]) not in pi:
                for args in shell.arg_tuples(ch):
                    gamma(ch, tuple(args))
                continue
            rows = pi[(ch[0], ch[-1])]
            t = {}
            for args in shell.arg_tuples(ch):
                args = tuple(args)
                beta = _beta(ch, args)
                gamma(ch, args)
                if not beta:
                    continue
                val = _apply_rows(rows, beta)
                if not val:
                    continue
                ys = [shell.deg(ch[n - p - 1], ch[n - p], args[p]) - 1 for p in range(n)]
                e = sum((n - p - 1) * ys[p] for p in range(n))
                sign = ONE if e % 2 else -ONE
                t[args] = {k: sign * x for k, x in val.items()}
            if t:
                tab[ch] = t
        ops[n] = tab
    shell.ops = ops
    return MinimalModel(shell, data, c)


def minimal_model(c, max_arity=None, variant=0, check=True):
    """Minimal model with m_1 = 0 and operations up to max_arity.

    Without an explicit bound the category must be ordered with reduced
    endomorphisms; the bound is then N - 1 and higher operations vanish.
    """
    auto, vanish = _default_arity(c)
    if max_arity is None:
        if auto is None:
            raise TransferError("category is not ordered and reduced: pass max_arity explicitly")
        max_arity = auto
    else:
        vanish = vanish and max_arity >= auto
    if max_arity < 2:
        raise TransferError("max_arity must be at least 2")
    last = None
    for h_sign in (1, -1):
        mm = _build(c, max_arity, variant, h_sign, vanish)
        if not check:
            return mm
        rep = check_stasheff(mm.structure, max_arity)
        if rep.ok:
            return mm
        last = rep
    n, chain, args, res = last.failures[0]
    raise TransferError("transferred structure fails the arity-%d identity on %s %s" % (n, chain, args))


def strictify(mm):
    """Identity when the unit-adapted splitting already gives strict units."""
    rep = check_strict_unit(mm.structure)
    if not rep.ok:
        raise TransferError("minimal model is not strictly unital (%s); no strictification fallback"
                            % (rep.failures[0],))
    return mm


def check_F2(mm):
    """d F2 = m2(F1, F1) - F1 m'_2 on every arity-2 chain; returns failures."""
    c, a = mm.source, mm.structure
    bad = []
    for ch in a.chains(2):
        i, j, k = ch
        for args in a.arg_tuples(ch):
            lhs = c.d(i, k, mm.F2(ch, args))
            rhs = c.compose(i, j, k, mm.F1(j, k, {args[0]: ONE}), mm.F1(i, j, {args[1]: ONE}))
            add_into(rhs, mm.F1(i, k, a.m(2, ch, args)), -ONE)
            add_into(rhs, lhs, -ONE)
            if rhs:
                bad.append((ch, args))
    return bad


# classes -------------------------------------------------------------------------

def class_of(mm, src, tgt, what):
    """Project a cocycle (sparse vector or basis label) of hom(src, tgt) to H."""
    c = mm.source
    i, j = c.index(src), c.index(tgt)
    if isinstance(what, str):
        labels = c.labels(i, j)
        if what not in labels:
            raise TransferError("no basis element %r in hom(%s, %s)" % (what, c.objects[i], c.objects[j]))
        what = {labels.index(what): ONE}
    if c.d(i, j, what):
        raise TransferError("element is not closed")
    rows = mm.data.pi.get((i, j))
    if rows is None:
        return (i, j, {})
    return (i, j, _apply_rows(rows, what))


@dataclass
class MasseyCoset:
    value: dict
    indeterminacy: list
    target: tuple

    def _ech(self):
        e = Echelon()
        for v in self.indeterminacy:
            e.add(dict(v))
        return e

    def contains(self, vec):
        diff = dict(vec)
        add_into(diff, self.value, -ONE)
        return not diff or self._ech().contains(diff)

    def contains_zero(self):
        return self.contains({})

    @property
    def nonzero(self):
        return not self.contains_zero()


def _m2(a, i, j, k, g, f):
    return a.m_vec(2, (i, j, k), [g, f])


def massey3(mm, x, y, z):
    """<x, y, z> = m_3(x, y, z) modulo x H + H z.

    Each argument is a class (src, tgt, vec); z acts first.
    """
    a = mm.structure
    (i2, i3, xv), (i1, i2b, yv), (i0, i1b, zv) = x, y, z
    if i2 != i2b or i1 != i1b:
        raise TransferError("classes are not composable")
    if _m2(a, i1, i2, i3, xv, yv) or _m2(a, i0, i1, i2, yv, zv):
        raise TransferError("Massey product undefined: a pairwise product is nonzero")
    chain = (i0, i1, i2, i3)

    def deg(p, q, v):
        return a.deg(p, q, next(iter(v))) if v else None

    value = a.m_vec(3, chain, [xv, yv, zv]) if xv and yv and zv else {}
    ind = []
    dx, dy, dz = deg(i2, i3, xv), deg(i1, i2, yv), deg(i0, i1, zv)
    for k in range(a.dim(i0, i2)):
        if dx is None or dy is None or dz is None or a.deg(i0, i2, k) == dy + dz - 1:
            v = _m2(a, i0, i2, i3, xv, {k: ONE})
            if v:
                ind.append(v)
    for k in range(a.dim(i1, i3)):
        if dx is None or dy is None or dz is None or a.deg(i1, i3, k) == dx + dy - 1:
            v = _m2(a, i0, i1, i3, {k: ONE}, zv)
            if v:
                ind.append(v)
    return MasseyCoset(value, ind, (i0, i3))


def massey_rank(mm, chain, degrees):
    """Rank of triple products along an object chain.

    Takes every basis triple (x, y, z) of the given degrees (x last) with
    vanishing pairwise products, and returns the dimension of the span of
    their m_3 values modulo the images of m_2 in the target degree.
    """
    a = mm.structure
    i0, i1, i2, i3 = chain
    dx, dy, dz = degrees
    tdeg = dx + dy + dz - 1
    base = Echelon()
    for k in range(a.dim(i2, i3)):
        for l in range(a.dim(i0, i2)):
            v = _m2(a, i0, i2, i3, {k: ONE}, {l: ONE})
            if v and a.deg(i0, i3, next(iter(v))) == tdeg:
                base.add(v)
    for k in range(a.dim(i1, i3)):
        for l in range(a.dim(i0, i1)):
            v = _m2(a, i0, i1, i3, {k: ONE}, {l: ONE})
            if v and a.deg(i0, i3, next(iter(v))) == tdeg:
                base.add(v)
    start = len(base)

    def of_deg(p, q, d):
        return [k for k in range(a.dim(p, q)) if a.deg(p, q, k) == d]

    for xk in of_deg(i2, i3, dx):
        for yk in of_deg(i1, i2, dy):
            if _m2(a, i1, i2, i3, {xk: ONE}, {yk: ONE}):
                continue
            for zk in of_deg(i0, i1, dz):
                if _m2(a, i0, i1, i2, {yk: ONE}, {zk: ONE}):
                    continue
                v = a.m(3, chain, (xk, yk, zk)) if a.max_arity >= 3 else {}
                if v:
                    base.add(dict(v))
    return len(base) - start


def compare_models(m_a, m_b):
    """Soundness check between two transfers of the same category.

    T = pi_b iota_a identifies the cohomology bases.  Checks equal dims,
    T m2_a = m2_b (T, T) on all pairs, and that m3 agrees modulo the
    Massey indeterminacy on every basis triple with vanishing products.
    Returns a list of failure descriptions.
    """
    A, B = m_a.structure, m_b.structure
    bad = []
    if {p: list(h.degrees) for p, h in A.homs.items()} != {p: list(h.degrees) for p, h in B.homs.items()}:
        bad.append("dims")
        return bad

    def T(i, j, vec):
        rows = m_b.data.pi.get((i, j))
        if rows is None:
            return {}
        return _apply_rows(rows, m_a.F1(i, j, vec))

    for ch in A.chains(2):
        i, j, k = ch
        for args in A.arg_tuples(ch):
            lhs = T(i, k, A.m(2, ch, args))
            rhs = _m2(B, i, j, k, T(j, k, {args[0]: ONE}), T(i, j, {args[1]: ONE}))
            if lhs != rhs:
                bad.append(("m2", ch, args))
    if A.max_arity >= 3:
        for ch in A.chains(3):
            i0, i1, i2, i3 = ch
            for args in A.arg_tuples(ch):
                xa, ya, za = ({args[0]: ONE}, {args[1]: ONE}, {args[2]: ONE})
                if _m2(A, i1, i2, i3, xa, ya) or _m2(A, i0, i1, i2, ya, za):
                    continue
                xb, yb, zb = T(i2, i3, xa), T(i1, i2, ya), T(i0, i1, za)
                cos = massey3(m_b, (i2, i3, xb), (i1, i2, yb), (i0, i1, zb))
                if not cos.contains(T(i0, i3, A.m(3, ch, args))):
                    bad.append(("m3", ch, args))
    return bad


__all__ = [
    "TransferError", "TransferData", "MinimalModel", "minimal_model", "strictify", "check_F2", "class_of",
    "MasseyCoset", "massey3", "massey_rank", "compare_models", "AInfinityError",
]
