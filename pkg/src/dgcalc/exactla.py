"""Exact linear algebra over the rationals.

Everything is built on one incremental reduced-row-echelon engine working on
sparse rows (dicts column -> Fraction).  The reduced row echelon form of a
row space is unique, so every basis handed out here is canonical.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class ShapeError(ValueError):
    pass


def to_q(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


class Matrix:
    """Dense immutable matrix, entries stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ShapeError("negative shape %dx%d" % (rows, cols))
        if entries is None:
            entries = [ZERO] * (rows * cols)
        else:
            entries = [to_q(x) for x in entries]
            if len(entries) != rows * cols:
                raise ShapeError(
                    "expected %d entries for %dx%d, got %d" % (rows * cols, rows, cols, len(entries))
                )
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ShapeError("ragged rows: expected width %d, got %d" % (cols, len(r)))
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, columns, rows):
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ShapeError("column of length %d, expected %d" % (len(c), rows))
        return cls(rows, len(columns), [columns[j][i] for i in range(rows) for j in range(len(columns))])

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        e = [ZERO] * (n * n)
        for i in range(n):
            e[i * n + i] = ONE
        return cls(n, n, e)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def sparse_rows(self):
        out = []
        for i in range(self.rows):
            base = i * self.cols
            out.append({j: self.entries[base + j] for j in range(self.cols) if self.entries[base + j]})
        return out

    def transpose(self):
        return Matrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ShapeError("cannot multiply %dx%d by %dx%d" % (self.rows, self.cols, other.rows, other.cols))
            out = [ZERO] * (self.rows * other.cols)
            ocols = other.cols
            oent = other.entries
            for i in range(self.rows):
                base = i * ocols
                for k in range(self.cols):
                    a = self.entries[i * self.cols + k]
                    if not a:
                        continue
                    kb = k * ocols
                    for j in range(ocols):
                        b = oent[kb + j]
                        if b:
                            out[base + j] += a * b
            return Matrix(self.rows, other.cols, out)
        v = list(other)
        if len(v) != self.cols:
            raise ShapeError("cannot apply %dx%d to a vector of length %d" % (self.rows, self.cols, len(v)))
        return [sum((self.entries[i * self.cols + k] * v[k] for k in range(self.cols) if v[k]), ZERO)
                for i in range(self.rows)]

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ShapeError("shape mismatch %dx%d vs %dx%d" % (self.rows, self.cols, other.rows, other.cols))

    def __add__(self, other):
        self._check_same(other)
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check_same(other)
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c):
        c = to_q(c)
        return Matrix(self.rows, self.cols, [c * a for a in self.entries])

    def is_zero(self):
        return not any(self.entries)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return "Matrix(%d, %d, %s)" % (self.rows, self.cols, [str(x) for x in self.entries])


class Echelon:
    """Incrementally maintained reduced row echelon form of a row space.

    Rows are sparse dicts.  The pivot of a row is its smallest column, so the
    stored rows are exactly the RREF of the span of everything added so far.
    With track=True each stored row also remembers how it was combined from
    the inserted rows, which is what Coords needs.
    """

    def __init__(self, track=False):
        self.pivots = {}
        self.track = track
        self.combos = {}
        self._count = 0

    def __len__(self):
        return len(self.pivots)

    def reduce(self, row, combo=None):
        row = {k: v for k, v in row.items() if v}
        for p in sorted(k for k in row if k in self.pivots):
            c = row.get(p)
            if not c:
                continue
            for k, v in self.pivots[p].items():
                nv = row.get(k, ZERO) - c * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            if combo is not None:
                for k, v in self.combos[p].items():
                    nv = combo.get(k, ZERO) - c * v
                    if nv:
                        combo[k] = nv
                    else:
                        combo.pop(k, None)
        return row

    def add(self, row):
        """Insert a row; returns True when it enlarges the span."""
        combo = None
        if self.track:
            combo = {self._count: ONE}
        self._count += 1
        row = self.reduce(row, combo)
        if not row:
            return False
        p = min(row)
        inv = ONE / row[p]
        if inv != ONE:
            row = {k: v * inv for k, v in row.items()}
            if combo is not None:
                combo = {k: v * inv for k, v in combo.items()}
        for q, other in self.pivots.items():
            c = other.get(p)
            if not c:
                continue
            for k, v in row.items():
                nv = other.get(k, ZERO) - c * v
                if nv:
                    other[k] = nv
                else:
                    other.pop(k, None)
            if combo is not None:
                oc = self.combos[q]
                for k, v in combo.items():
                    nv = oc.get(k, ZERO) - c * v
                    if nv:
                        oc[k] = nv
                    else:
                        oc.pop(k, None)
        self.pivots[p] = row
        if combo is not None:
            self.combos[p] = combo
        return True

    def contains(self, row):
        return not self.reduce(dict(row))

    def rows(self):
        return [self.pivots[p] for p in sorted(self.pivots)]


def _dense(row, n):
    v = [ZERO] * n
    for k, x in row.items():
        v[k] = x
    return v


def _sparse(vec):
    return {i: to_q(x) for i, x in enumerate(vec) if x}


def rref(m):
    """Reduced row echelon form and the tuple of pivot columns."""
    ech = Echelon()
    for r in m.sparse_rows():
        ech.add(r)
    piv = tuple(sorted(ech.pivots))
    rows = [_dense(ech.pivots[p], m.cols) for p in piv]
    rows += [[ZERO] * m.cols for _ in range(m.rows - len(rows))]
    return Matrix(m.rows, m.cols, [x for r in rows for x in r]), piv


def rank(m):
    ech = Echelon()
    for r in m.sparse_rows():
        ech.add(r)
    return len(ech)


def rank_sparse(rows):
    """Rank by forward elimination only; no back-substitution is needed for a count."""
    piv = {}
    for r in rows:
        row = {k: v for k, v in r.items() if v}
        while row:
            p = min(row)
            prow = piv.get(p)
            if prow is None:
                inv = ONE / row[p]
                piv[p] = {k: v * inv for k, v in row.items()}
                break
            c = row[p]
            for k, v in prow.items():
                nv = row.get(k, ZERO) - c * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(piv)


def kernel_basis(m):
    """Basis of {v : m v = 0}, one vector per free column, in column order."""
    ech = Echelon()
    for r in m.sparse_rows():
        ech.add(r)
    piv = ech.pivots
    out = []
    for f in range(m.cols):
        if f in piv:
            continue
        v = [ZERO] * m.cols
        v[f] = ONE
        for p, row in piv.items():
            c = row.get(f)
            if c:
                v[p] = -c
        out.append(v)
    return out


def image_basis(m):
    """Columns of m at the pivot positions; they span the column space."""
    _, piv = rref(m)
    return [m.column(j) for j in piv]


def solve(m, b):
    """Some x with m x = b, or None.  Free variables are set to zero."""
    b = [to_q(x) for x in b]
    if len(b) != m.rows:
        raise ShapeError("right-hand side of length %d for a %dx%d matrix" % (len(b), m.rows, m.cols))
    ech = Echelon()
    n = m.cols
    for i, r in enumerate(m.sparse_rows()):
        if b[i]:
            r[n] = b[i]
        ech.add(r)
    if n in ech.pivots:
        return None
    x = [ZERO] * n
    for p, row in ech.pivots.items():
        x[p] = row.get(n, ZERO)
    return x


def complement_basis(sub, ambient_dim):
    """Standard basis vectors completing `sub` to a basis of Q^ambient_dim."""
    ech = Echelon()
    for v in sub:
        v = list(v)
        if len(v) != ambient_dim:
            raise ShapeError("vector of length %d in ambient dimension %d" % (len(v), ambient_dim))
        if not ech.add(_sparse(v)):
            raise ValueError("sub vectors are linearly dependent")
    out = []
    for j in range(ambient_dim):
        if j not in ech.pivots:
            v = [ZERO] * ambient_dim
            v[j] = ONE
            out.append(v)
    return out


def quotient_matrix(sub, ambient_dim):
    """Matrix of the projection Q^n -> Q^n / span(sub).

    Coordinates are taken on the complement from complement_basis, so the
    rows are indexed by the non-pivot columns of the RREF of sub.
    """
    ech = Echelon()
    for v in sub:
        v = list(v)
        if len(v) != ambient_dim:
            raise ShapeError("vector of length %d in ambient dimension %d" % (len(v), ambient_dim))
        if not ech.add(_sparse(v)):
            raise ValueError("sub vectors are linearly dependent")
    free = [j for j in range(ambient_dim) if j not in ech.pivots]
    index = {j: k for k, j in enumerate(free)}
    out = [[ZERO] * ambient_dim for _ in free]
    for j in range(ambient_dim):
        if j in index:
            out[index[j]][j] = ONE
        else:
            for k, c in ech.pivots[j].items():
                if k in index:
                    out[index[k]][j] = -c
    return Matrix.from_rows(out, ambient_dim) if free else Matrix(0, ambient_dim)


def independent_subset(vectors, start=()):
    """Indices of a greedy maximal independent subfamily of vectors.

    Vectors in `start` are inserted first and never reported.
    """
    ech = Echelon()
    for v in start:
        ech.add(v if isinstance(v, dict) else _sparse(v))
    keep = []
    for i, v in enumerate(vectors):
        if ech.add(v if isinstance(v, dict) else _sparse(v)):
            keep.append(i)
    return keep


def inverse(m):
    if m.rows != m.cols:
        raise ShapeError("inverse of a non-square %dx%d matrix" % (m.rows, m.cols))
    n = m.rows
    ech = Echelon()
    for i, r in enumerate(m.sparse_rows()):
        r = dict(r)
        r[n + i] = ONE
        ech.add(r)
    if any(p >= n for p in ech.pivots) or len(ech) != n:
        raise ValueError("matrix is singular")
    rows = []
    for p in range(n):
        row = ech.pivots[p]
        rows.append([row.get(n + j, ZERO) for j in range(n)])
    return Matrix.from_rows(rows, n)


class Coords:
    """Coordinates with respect to a fixed independent family of sparse vectors."""

    def __init__(self, basis):
        self.basis = [dict(b) for b in basis]
        self._ech = Echelon(track=True)
        for b in self.basis:
            if not self._ech.add(b):
                raise ValueError("basis vectors are linearly dependent")

    def __len__(self):
        return len(self.basis)

    def of(self, vec):
        """Coordinates of vec, or None when vec is outside the span."""
        combo = {}
        rest = self._ech.reduce(dict(vec), combo)
        if rest:
            return None
        return {k: -v for k, v in combo.items() if v}

    def contains(self, vec):
        return self._ech.contains(vec)


def add_into(acc, vec, c=ONE):
    for k, v in vec.items():
        nv = acc.get(k, ZERO) + c * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


def scaled(vec, c):
    if not c:
        return {}
    return {k: c * v for k, v in vec.items()}
