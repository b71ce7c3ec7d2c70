"""Canonical (co)evaluation, left and right mutations, braid words."""

import re
from dataclasses import dataclass

from .cochain import dual, euler_characteristic
from .exactla import ONE
from .pretr import TwistError, TwMorphism, cone, hom_of, hom_table, shift_tw, tensor_with_complex


class MutationError(ValueError):
    pass


def canonical_eval(c, d):
    """phi: c (x) Hom(c, d) -> d, one layer per chain-level basis vector."""
    v = hom_of(c, d)
    src, order, offs = tensor_with_complex(c, v.complex, return_layout=True)
    h = hom_of(src, d)
    vec = {}
    for pos, b in enumerate(order):
        i, j, e = v.basis[b]
        vec[h.index[(offs[pos] + i, j, e)]] = ONE
    f = TwMorphism(src, d, vec)
    if f.vec and (f.degree() != 0 or not f.is_closed()):
        raise MutationError("evaluation morphism is not a closed degree-0 map")
    return f


def canonical_coeval(c, d):
    """psi: c -> Hom(c, d)^* (x) d; the layer of b^* carries (-1)^|b| b."""
    v = hom_of(c, d)
    vd = dual(v.complex)
    tgt, order, offs = tensor_with_complex(d, vd, return_layout=True)
    h = hom_of(c, tgt)
    degs = v.complex.space.degrees
    vec = {}
    for pos, b in enumerate(order):
        i, j, e = v.basis[b]
        vec[h.index[(i, offs[pos] + j, e)]] = -ONE if degs[b] % 2 else ONE
    f = TwMorphism(c, tgt, vec)
    if f.vec and (f.degree() != 0 or not f.is_closed()):
        raise MutationError("coevaluation morphism is not a closed degree-0 map")
    return f


def left_mutation(c, d):
    """L_c d: the cone of evaluation, shifted by -1."""
    return shift_tw(cone(canonical_eval(c, d)), -1)


def right_mutation(d, c):
    """R_d c: the cone of coevaluation c -> Hom(c, d)^* (x) d."""
    return cone(canonical_coeval(c, d))


@dataclass(frozen=True)
class Collection:
    base: object
    items: tuple
    names: tuple = None

    def __post_init__(self):
        for t in self.items:
            if t.base is not self.base:
                raise MutationError("collection items must share the base category")
        if self.names is None:
            object.__setattr__(self, "names", tuple("E%d" % (k + 1) for k in range(len(self.items))))

    def table(self):
        return {(x, y): hom_table(a, b) for x, a in enumerate(self.items) for y, b in enumerate(self.items)}

    def euler_matrix(self):
        return [[euler_characteristic(hom_table(a, b)) for b in self.items] for a in self.items]

    def is_exceptional(self):
        for x, a in enumerate(self.items):
            if hom_table(a, a) != {0: 1}:
                return False
            for y in range(x):
                if hom_table(a, self.items[y]):
                    return False
        return True


_LETTER = re.compile(r"([LR])(\d+)")


@dataclass(frozen=True)
class BraidWord:
    letters: tuple

    @classmethod
    def parse(cls, text):
        out = []
        for tok in text.replace(",", " ").split():
            pos = 0
            while pos < len(tok):
                m = _LETTER.match(tok, pos)
                if not m:
                    raise MutationError("bad braid letter %r (expected L<i> or R<i>)" % tok[pos:])
                out.append((int(m.group(2)), m.group(1)))
                pos = m.end()
        return cls(tuple(out))

    def __str__(self):
        return " ".join("%s%d" % (dr, i) for i, dr in self.letters)


def apply_braid(col, word):
    if isinstance(word, str):
        word = BraidWord.parse(word)
    items, names = list(col.items), list(col.names)
    n = len(items)
    for step, (i, dr) in enumerate(word.letters, 1):
        if not 1 <= i <= n - 1:
            raise MutationError("step %d (%s%d): index outside 1..%d" % (step, dr, i, n - 1))
        a, b = items[i - 1], items[i]
        na, nb = names[i - 1], names[i]
        try:
            if dr == "L":
                items[i - 1:i + 1] = [left_mutation(a, b), a]
                names[i - 1:i + 1] = ["L(%s,%s)" % (na, nb), na]
            else:
                items[i - 1:i + 1] = [b, right_mutation(b, a)]
                names[i - 1:i + 1] = [nb, "R(%s,%s)" % (nb, na)]
        except TwistError as e:
            raise MutationError("step %d (%s%d): %s" % (step, dr, i, e)) from None
    return Collection(col.base, tuple(items), tuple(names))


def mutation_matrix_check(col, i, dr):
    """Gram matrix of chi after one mutation: (predicted, actual).

    In K_0, [L_a b] = chi(a, b)[a] - [b] and [R_b a] = chi(a, b)[b] - [a].
    """
    g = col.euler_matrix()
    new = apply_braid(col, BraidWord(((i, dr),)))
    return _predict(g, i - 1, i, dr), new.euler_matrix()


def _classes_after(g, a, b, dr):
    n = len(g)
    e = [[1 if x == y else 0 for x in range(n)] for y in range(n)]
    new = [list(v) for v in e]
    if dr == "L":
        new[a] = [g[a][b] * e[a][x] - e[b][x] for x in range(n)]
        new[b] = e[a]
    else:
        new[a] = e[b]
        new[b] = [g[a][b] * e[b][x] - e[a][x] for x in range(n)]
    return new


def _predict(g, a, b, dr):
    new = _classes_after(g, a, b, dr)
    n = len(g)
    return [[sum(new[p][x] * g[x][y] * new[r][y] for x in range(n) for y in range(n)) for r in range(n)]
            for p in range(n)]
