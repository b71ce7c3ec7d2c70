"""Picard lattice bookkeeping for rational surfaces."""

from dataclasses import dataclass

from .cochain import cohomology_dims, euler_characteristic


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class PicardLattice:
    generators: tuple
    form: tuple
    canonical: tuple

    def __post_init__(self):
        n = len(self.generators)
        if len(self.form) != n or any(len(r) != n for r in self.form):
            raise LatticeError("intersection matrix must be %dx%d" % (n, n))
        for i in range(n):
            for j in range(n):
                if self.form[i][j] != self.form[j][i]:
                    raise LatticeError("intersection matrix is not symmetric")
        if len(self.canonical) != n:
            raise LatticeError("canonical class has the wrong length")

    @classmethod
    def from_doc(cls, doc):
        return cls(
            tuple(doc["generators"]),
            tuple(tuple(int(x) for x in r) for r in doc["intersection"]),
            tuple(int(x) for x in doc["canonical"]),
        )

    def dot(self, a, b):
        return sum(a[i] * self.form[i][j] * b[j] for i in range(len(a)) for j in range(len(b)))

    def parse(self, text):
        """Divisor from text like '2H - E1 + E2' (or a list of integers)."""
        if not isinstance(text, str):
            return tuple(int(x) for x in text)
        s = text.replace(" ", "")
        if s in ("0", "O", ""):
            return tuple(0 for _ in self.generators)
        out = [0] * len(self.generators)
        pos = 0
        names = sorted(self.generators, key=len, reverse=True)
        while pos < len(s):
            sign = 1
            if s[pos] in "+-":
                sign = -1 if s[pos] == "-" else 1
                pos += 1
            num = ""
            while pos < len(s) and s[pos].isdigit():
                num += s[pos]
                pos += 1
            if pos < len(s) and s[pos] == "*":
                pos += 1
            for g in names:
                if s.startswith(g, pos):
                    out[self.generators.index(g)] += sign * (int(num) if num else 1)
                    pos += len(g)
                    break
            else:
                raise LatticeError("cannot parse divisor %r" % text)
        return tuple(out)

    def format(self, d):
        parts = []
        for c, g in zip(d, self.generators):
            if c:
                parts.append(("%+d" % c if abs(c) != 1 else ("+" if c > 0 else "-")) + g)
        s = "".join(parts).lstrip("+")
        return s or "0"


def chi(lat, d):
    """Riemann-Roch: chi(O(D)) = 1 + D.(D - K)/2."""
    d = tuple(d)
    dk = tuple(x - k for x, k in zip(d, lat.canonical))
    v = lat.dot(d, dk)
    if v % 2:
        raise LatticeError("D.(D-K) = %d is odd for D = %s" % (v, lat.format(d)))
    return 1 + v // 2


def chi_pair(lat, a, b):
    """chi(O(A), O(B)) = chi(O(B - A))."""
    return chi(lat, tuple(y - x for x, y in zip(a, b)))


def euler_pairing(c, i, j):
    return euler_characteristic(cohomology_dims(c.hom(c.index(i), c.index(j))))


def augment_collection(lat, classes, r, k):
    """<L1(R), ..., L_{k-1}(R), L_k, L_k(R), L_{k+1}, ..., L_s>."""
    s = len(classes)
    if not 1 <= k <= s:
        raise LatticeError("slot %d outside 1..%d" % (k, s))
    r = tuple(r)

    def tw(x):
        return tuple(a + b for a, b in zip(x, r))

    classes = [tuple(x) for x in classes]
    return [tw(x) for x in classes[:k - 1]] + [classes[k - 1], tw(classes[k - 1])] + classes[k:]


def line_bundle_checks(c, lattice_doc):
    """Compare chi with euler_pairing on every pair of vertices carrying a class.

    Returns a list of (src, tgt, chi, euler) mismatches.
    """
    lat = PicardLattice.from_doc(lattice_doc)
    classes = lattice_doc.get("classes", {})
    bad = []
    names = [o for o in c.objects if o in classes]
    for a in names:
        for b in names:
            x = chi_pair(lat, classes[a], classes[b])
            y = euler_pairing(c, a, b)
            if x != y:
                bad.append((a, b, x, y))
    return bad
