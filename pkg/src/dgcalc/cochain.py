"""Graded vector spaces and cochain complexes (differential of degree +1).

A complex is stored flat: one degree per basis vector and the differential
as sparse columns, d(e_k) = sum_r dcols[k][r] e_r.  Per-degree matrices are
views computed on demand.
"""

from dataclasses import dataclass, field

from .exactla import ONE, ZERO, Echelon, Matrix, complement_basis, inverse, kernel_basis, rank_sparse, to_q


class ComplexError(ValueError):
    pass


class GradedVS:
    __slots__ = ("degrees", "labels", "_by_degree")

    def __init__(self, degrees, labels=None):
        self.degrees = tuple(int(k) for k in degrees)
        if labels is None:
            labels = ["e%d" % i for i in range(len(self.degrees))]
        self.labels = tuple(labels)
        if len(self.labels) != len(self.degrees):
            raise ComplexError("%d labels for %d basis vectors" % (len(self.labels), len(self.degrees)))
        by = {}
        for i, k in enumerate(self.degrees):
            by.setdefault(k, []).append(i)
        self._by_degree = {k: tuple(v) for k, v in sorted(by.items())}

    @classmethod
    def from_dims(cls, dims):
        degrees, labels = [], []
        for k in sorted(dims):
            for a in range(dims[k]):
                degrees.append(k)
                labels.append("e%d_%d" % (k, a))
        return cls(degrees, labels)

    def __len__(self):
        return len(self.degrees)

    def indices(self, k):
        return self._by_degree.get(k, ())

    def dim(self, k):
        return len(self._by_degree.get(k, ()))

    def present_degrees(self):
        return list(self._by_degree)

    def components(self):
        return {k: (len(ix), [self.labels[i] for i in ix]) for k, ix in self._by_degree.items()}

    def dims(self):
        return {k: len(ix) for k, ix in self._by_degree.items()}


class CochainComplex:
    __slots__ = ("space", "dcols")

    def __init__(self, space, dcols=None):
        self.space = space
        n = len(space)
        if dcols is None:
            dcols = [{} for _ in range(n)]
        if len(dcols) != n:
            raise ComplexError("differential has %d columns for a %d-dimensional space" % (len(dcols), n))
        clean = []
        for col in dcols:
            clean.append({r: to_q(c) for r, c in col.items() if c})
        self.dcols = tuple(clean)

    @classmethod
    def from_matrices(cls, dims, mats):
        """Build from per-degree dims and matrices d_k : V^k -> V^(k+1)."""
        space = GradedVS.from_dims(dims)
        dcols = [{} for _ in range(len(space))]
        for k, m in mats.items():
            src, tgt = space.indices(k), space.indices(k + 1)
            if m.shape != (len(tgt), len(src)):
                raise ComplexError(
                    "d_%d has shape %dx%d but dims are %d -> %d" % (k, m.rows, m.cols, len(src), len(tgt))
                )
            for j, s in enumerate(src):
                for i, t in enumerate(tgt):
                    if m[i, j]:
                        dcols[s][t] = m[i, j]
        return cls(space, dcols)

    def __len__(self):
        return len(self.space)

    @property
    def degrees(self):
        return self.space.degrees

    def apply(self, vec):
        out = {}
        for k, c in vec.items():
            for r, v in self.dcols[k].items():
                nv = out.get(r, ZERO) + c * v
                if nv:
                    out[r] = nv
                else:
                    out.pop(r, None)
        return out

    def d_matrix(self, k):
        src, tgt = self.space.indices(k), self.space.indices(k + 1)
        pos = {t: i for i, t in enumerate(tgt)}
        rows = [[ZERO] * len(src) for _ in tgt]
        for j, s in enumerate(src):
            for r, c in self.dcols[s].items():
                if r not in pos:
                    raise ComplexError(
                        "differential sends basis %r in degree %d outside degree %d" % (self.space.labels[s], k, k + 1)
                    )
                rows[pos[r]][j] = c
        return Matrix.from_rows(rows, len(src)) if tgt else Matrix(0, len(src))

    def full_matrix(self):
        n = len(self)
        e = [ZERO] * (n * n)
        for j, col in enumerate(self.dcols):
            for i, c in col.items():
                e[i * n + j] = c
        return Matrix(n, n, e)


@dataclass
class Report:
    ok: bool = True
    failures: list = field(default_factory=list)

    def fail(self, *item):
        self.ok = False
        self.failures.append(item)

    def __bool__(self):
        return self.ok


def check_complex(c):
    rep = Report()
    deg = c.space.degrees
    for s, col in enumerate(c.dcols):
        for r in col:
            if r >= len(deg) or deg[r] != deg[s] + 1:
                raise ComplexError(
                    "differential of %r (degree %d) has a component outside degree %d"
                    % (c.space.labels[s], deg[s], deg[s] + 1)
                )
    for s, col in enumerate(c.dcols):
        if col:
            dd = c.apply(col)
            if dd:
                rep.fail(deg[s], c.space.labels[s], dd)
    return rep


def _require(c):
    rep = check_complex(c)
    if not rep.ok:
        raise ComplexError("d^2 != 0 in degree %d" % rep.failures[0][0])


def _rank_block(c, k):
    return rank_sparse(c.dcols[s] for s in c.space.indices(k))


def cohomology_dims(c, check=True):
    if check:
        _require(c)
    out = {}
    for k in c.space.present_degrees():
        n = c.space.dim(k)
        out[k] = n - _rank_block(c, k) - _rank_block(c, k - 1)
    return out


def nonzero(dims):
    return {k: v for k, v in sorted(dims.items()) if v}


def euler_characteristic(dims):
    return sum((-1) ** (k % 2) * v for k, v in dims.items())


@dataclass
class Splitting:
    """Deformation-retract data between a complex and its cohomology.

    iota, pi, h are dense matrices in flat coordinates; hdegrees lists the
    degree of each cohomology basis vector.
    """

    hdegrees: tuple
    iota: Matrix
    pi: Matrix
    h: Matrix

    def iota_cols(self):
        return [{i: c for i, c in enumerate(self.iota.column(j)) if c} for j in range(self.iota.cols)]

    def pi_rows(self):
        return [{i: c for i, c in enumerate(self.pi.row(j)) if c} for j in range(self.pi.rows)]

    def h_cols(self):
        return [{i: c for i, c in enumerate(self.h.column(j)) if c} for j in range(self.h.cols)]


def _local(vec, ix):
    return [vec.get(i, ZERO) for i in ix]


def cohomology_basis(c, prefer=(), variant=0):
    """Kernel/image/complement splitting.

    `prefer` lists flat sparse vectors that should become the first
    cohomology representatives of their degree when they are cocycles not
    killed by boundaries (used to make units their own representatives).
    `variant` 1 runs every complement choice on reversed coordinates, giving
    a second deterministic splitting.
    """
    _require(c)
    n = len(c)
    space = c.space
    iota_cols, pi_rows, hdeg = [], [], []
    h_entries = {}
    carried = {}
    for k in space.present_degrees():
        ix = list(space.indices(k))
        m = len(ix)
        order = list(range(m))
        if variant:
            order.reverse()
        dk = c.d_matrix(k)
        perm = Matrix.from_rows([[dk[i, order[j]] for j in range(m)] for i in range(dk.rows)], m) if dk.rows else Matrix(0, m)
        z = [_unperm(v, order) for v in kernel_basis(perm)]
        comp = [_unperm(v, order) for v in complement_basis([_perm(v, order) for v in z], m)]
        bnd = carried.get(k, ([], []))
        b_vecs, b_pre = bnd
        ech = Echelon()
        for v in b_vecs:
            ech.add(_sp(v))
        cands = []
        for p in prefer:
            if p and all(space.degrees[i] == k for i in p):
                cands.append(_local(p, ix))
        cands.extend(z)
        zech = Echelon()
        for v in z:
            zech.add(_sp(v))
        h_vecs = []
        for v in cands:
            if not zech.contains(_sp(v)):
                continue
            if ech.add(_sp(v)):
                h_vecs.append(v)
        basis = list(b_vecs) + h_vecs + comp
        if len(basis) != m:
            raise ComplexError("splitting failed in degree %d: %d vectors for dimension %d" % (k, len(basis), m))
        if m:
            pinv = inverse(Matrix.from_columns(basis, m))
        nb = len(b_vecs)
        for j, v in enumerate(h_vecs):
            iota_cols.append({ix[i]: x for i, x in enumerate(v) if x})
            row = pinv.row(nb + j)
            pi_rows.append({ix[i]: x for i, x in enumerate(row) if x})
            hdeg.append(k)
        for j in range(nb):
            row = pinv.row(j)
            target = b_pre[j]
            for i, x in enumerate(row):
                if x:
                    for t, y in target.items():
                        h_entries[(t, ix[i])] = h_entries.get((t, ix[i]), ZERO) + x * y
        if comp:
            nxt = list(space.indices(k + 1))
            imgs, pres = [], []
            for v in comp:
                flat = {ix[i]: x for i, x in enumerate(v) if x}
                img = c.apply(flat)
                imgs.append(_local(img, nxt))
                pres.append(flat)
            carried[k + 1] = (imgs, pres)
    r = len(hdeg)
    iota = Matrix(n, r, [iota_cols[j].get(i, ZERO) for i in range(n) for j in range(r)])
    pi = Matrix(r, n, [pi_rows[j].get(i, ZERO) for j in range(r) for i in range(n)])
    h = Matrix(n, n, [h_entries.get((i, j), ZERO) for i in range(n) for j in range(n)])
    return Splitting(tuple(hdeg), iota, pi, h)


def _sp(v):
    return {i: x for i, x in enumerate(v) if x}


def _perm(v, order):
    return [v[o] for o in order]


def _unperm(v, order):
    out = [ZERO] * len(v)
    for j, o in enumerate(order):
        out[o] = v[j]
    return out


def check_splitting(c, s):
    """The five identities; returns the list of the ones that fail."""
    n = len(c)
    d = c.full_matrix()
    one = Matrix.identity(n)
    bad = []
    if s.pi @ s.iota != Matrix.identity(len(s.hdegrees)):
        bad.append("pi iota = 1")
    if d @ s.h + s.h @ d != one - s.iota @ s.pi:
        bad.append("dh + hd = 1 - iota pi")
    if not (s.h @ s.h).is_zero():
        bad.append("h h = 0")
    if not (s.h @ s.iota).is_zero():
        bad.append("h iota = 0")
    if not (s.pi @ s.h).is_zero():
        bad.append("pi h = 0")
    return bad


def shift(c, n):
    """c[n]: degree k moves to k - n, differential scaled by (-1)^n."""
    sign = -ONE if n % 2 else ONE
    space = GradedVS([k - n for k in c.space.degrees], c.space.labels)
    return CochainComplex(space, [{r: sign * v for r, v in col.items()} for col in c.dcols])


def dual(c):
    """Linear dual; d*(b*) = -(-1)^|b| b* o d."""
    space = GradedVS([-k for k in c.space.degrees], [lab + "*" for lab in c.space.labels])
    cols = [{} for _ in range(len(c))]
    for s, col in enumerate(c.dcols):
        for r, v in col.items():
            sign = ONE if c.space.degrees[r] % 2 else -ONE
            cols[r][s] = cols[r].get(s, ZERO) + sign * v
    return CochainComplex(space, cols)


def tensor(c1, c2):
    """Koszul tensor product, basis ordered lexicographically in (a, b)."""
    n2 = len(c2)
    degs, labs, cols = [], [], []
    for a in range(len(c1)):
        for b in range(n2):
            degs.append(c1.space.degrees[a] + c2.space.degrees[b])
            labs.append(c1.space.labels[a] + "(x)" + c2.space.labels[b])
    for a in range(len(c1)):
        sa = -ONE if c1.space.degrees[a] % 2 else ONE
        for b in range(n2):
            col = {}
            for r, v in c1.dcols[a].items():
                col[r * n2 + b] = col.get(r * n2 + b, ZERO) + v
            for r, v in c2.dcols[b].items():
                col[a * n2 + r] = col.get(a * n2 + r, ZERO) + sa * v
            cols.append(col)
    return CochainComplex(GradedVS(degs, labs), cols)


def same_complex(c1, c2):
    return c1.space.degrees == c2.space.degrees and c1.dcols == c2.dcols
