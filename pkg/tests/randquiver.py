"""Seeded generator of small ordered DG quivers used by the property suites.

Closed arrows go forward between at most four vertices.  A few monomial
relations among closed paths may be imposed.  "Top" arrows then get a
differential equal to a random combination of closed paths with the right
endpoints and degree, which is automatically a cocycle.  Candidates whose
chain-level hom spaces exceed `max_hom` are rejected and redrawn.
"""

import random
from fractions import Fraction

from dgcalc.dgcore import Arrow, DGQuiver, path_algebra


def _paths(arrows, src, tgt, max_len=3):
    out = []
    frontier = [((a.name,), a.tgt, a.degree) for a in arrows if a.src == src]
    for _ in range(max_len):
        nxt = []
        for p, t, d in frontier:
            if t == tgt:
                out.append((p, d))
            for a in arrows:
                if a.src == t:
                    nxt.append(((a.name,) + p, a.tgt, d + a.degree))
        frontier = nxt
    return out


def random_quiver(rng, max_objects=4, max_hom=3, degrees=(-1, 0, 0, 0, 1), min_objects=2, motif=0.4, strong=False):
    """strong=True draws degree-0 arrows only, with no differential: an ordinary quiver with monomial relations."""
    if strong:
        degrees, motif = (0,), 0
    n = rng.randint(min_objects, max_objects)
    verts = tuple("v%d" % i for i in range(n))
    closed, tops, diff = [], [], {}
    if n >= 4 and rng.random() < motif:
        # a chain with both length-two composites killed: a nonzero triple product lives on it
        i, j, k, l = sorted(rng.sample(range(n), 4))
        da, db, dc = (rng.choice(degrees) for _ in range(3))
        closed += [Arrow("c0", verts[i], verts[j], da), Arrow("c1", verts[j], verts[k], db),
                   Arrow("c2", verts[k], verts[l], dc)]
        tops += [Arrow("t0", verts[i], verts[k], da + db - 1), Arrow("t1", verts[j], verts[l], db + dc - 1)]
        diff["t0"] = ((Fraction(1), ("c1", "c0")),)
        diff["t1"] = ((Fraction(rng.choice([-1, 1, 2])), ("c2", "c1")),)
        # anything more would overflow max_hom on the long hom space
        return DGQuiver(verts, tuple(closed + tops), diff, [])
    for i in range(n):
        for j in range(i + 1, n):
            for _ in range(rng.choice([1, 1, 2] if strong else [0, 0, 1, 1, 2])):
                closed.append(Arrow("c%d" % len(closed), verts[i], verts[j], rng.choice(degrees)))
    rels = []
    for i in range(n):
        for j in range(i + 2, n):
            for p, d in _paths(closed, verts[i], verts[j]):
                if len(p) > 1 and rng.random() < 0.3:
                    rels.append(((Fraction(1), p),))
    for i in range(n):
        for j in range(i + 1, n):
            if strong:
                break
            cands = [(p, d) for p, d in _paths(closed, verts[i], verts[j]) if ((Fraction(1), p),) not in rels]
            if not cands or rng.random() < 0.5:
                continue
            d = rng.choice(cands)[1]
            same = [p for p, e in cands if e == d]
            name = "t%d" % len(tops)
            tops.append(Arrow(name, verts[i], verts[j], d - 1))
            diff[name] = tuple((Fraction(rng.choice([-2, -1, 1, 2])), p) for p in same if rng.random() < 0.7)
            if not diff[name]:
                diff[name] = ((Fraction(1), same[0]),)
    return DGQuiver(verts, tuple(closed + tops), diff, rels)


def random_category(seed, max_objects=4, max_hom=3, attempts=200, min_objects=2, strong=False):
    """(quiver, category) for a seed, by rejection on hom dimensions."""
    rng = random.Random(seed)
    for _ in range(attempts):
        q = random_quiver(rng, max_objects, max_hom, min_objects=min_objects, strong=strong)
        c = path_algebra(q, max_path_len=max_objects + 1)
        if all(len(h) <= max_hom for (i, j), h in c.homs.items() if i != j):
            return q, c
    raise RuntimeError("no admissible quiver for seed %d" % seed)
