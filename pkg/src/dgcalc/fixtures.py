"""Bundled quivers for the two-point blow-up example and its deformation.

The .dgq files under fixtures/ are generated from the definitions below
(`python -m dgcalc.fixtures` rewrites them) and the test-suite checks they
agree byte for byte.
"""

import os

from .dgcore import Arrow, DGQuiver, combo
from .fileformat import dumps, quiver_to_doc, read_doc

HERE = os.path.join(os.path.dirname(__file__), "fixtures")

X_VERTICES = ("O", "O(E2)", "O(E1+E2)", "O(H)", "O(2H)")

# H, E1, E2 with E1^2 = -2, E2^2 = -1, E1.E2 = 1
X_LATTICE = {
    "generators": ["H", "E1", "E2"],
    "intersection": [[1, 0, 0], [0, -2, 1], [0, 1, -1]],
    "canonical": [-3, 1, 2],
    "classes": {
        "O": [0, 0, 0],
        "O(E2)": [0, 0, 1],
        "O(E1+E2)": [0, 1, 1],
        "O(H)": [1, 0, 0],
        "O(2H)": [2, 0, 0],
    },
}

# blow-up of two distinct points: F1^2 = F2^2 = -1, F1.F2 = 0
Y_LATTICE = {
    "generators": ["H", "F1", "F2"],
    "intersection": [[1, 0, 0], [0, -1, 0], [0, 0, -1]],
    "canonical": [-3, 1, 1],
    "classes": {
        "O": [0, 0, 0],
        "O(F2)": [0, 0, 1],
        "O(F1)": [0, 1, 0],
        "O(H)": [1, 0, 0],
        "O(2H)": [2, 0, 0],
    },
}


def _delta_arrows(a, b):
    return [Arrow("delta%d" % k, a, b, 0) for k in (1, 2, 3)]


def _x_arrows():
    O, E2, R1, H, H2 = X_VERTICES
    return [
        Arrow("alpha", O, E2, 0),
        Arrow("beta", E2, R1, 0),
        Arrow("betabar", E2, R1, 1),
        Arrow("eps1", E2, H, 0),
        Arrow("eps2", E2, H, 0),
        Arrow("gamma1", R1, H, 0),
        Arrow("gamma2", R1, H, 0),
    ] + _delta_arrows(H, H2)


def x_surface():
    """Final DG quiver of the collection <O, O(E2), O(E1+E2), O(H), O(2H)>."""
    diff = {
        "eps1": combo((1, "gamma1 betabar")),
        "eps2": combo((1, "gamma2 betabar")),
    }
    rels = [
        combo((1, "eps2 alpha")),
        combo((1, "betabar alpha")),
        combo((1, "delta1 gamma2"), (-1, "delta2 gamma1")),
        combo((1, "delta1 eps1 alpha"), (-1, "delta3 gamma1 beta alpha")),
        combo((1, "delta2 eps1 alpha"), (-1, "delta3 gamma2 beta alpha")),
        combo((1, "delta1 eps2"), (1, "delta3 gamma2 beta"), (-1, "delta2 eps1")),
    ]
    return DGQuiver(X_VERTICES, _x_arrows(), diff, rels, lattice=X_LATTICE)


def x_first_quiver():
    """First presentation: no differential, beta-bar killed by relations."""
    O, E2, R1, H, H2 = X_VERTICES
    arrows = [
        Arrow("alpha", O, E2, 0),
        Arrow("eta", O, H, 0),
        Arrow("beta", E2, R1, 0),
        Arrow("betabar", E2, R1, 1),
        Arrow("gamma1", R1, H, 0),
        Arrow("gamma2", R1, H, 0),
    ] + _delta_arrows(H, H2)
    rels = [
        combo((1, "delta1 gamma2"), (-1, "delta2 gamma1")),
        combo((1, "delta1 eta"), (-1, "delta3 gamma1 beta alpha")),
        combo((1, "delta2 eta"), (-1, "delta3 gamma2 beta alpha")),
        combo((1, "betabar alpha")),
        combo((1, "gamma1 betabar")),
        combo((1, "gamma2 betabar")),
    ]
    return DGQuiver(X_VERTICES, arrows, {}, rels, lattice=X_LATTICE)


V_COMMENT = (
    "Last relation: the form delta1*iota2 - iota2*delta1 does not compose, so it is "
    "encoded as delta1*iota2 + delta3*iota2*phi1*bphi2 - delta2*iota1."
)


def v_collection():
    """Quiver of <O, V, O(E1+E2), O(H), O(2H)> with V the universal extension."""
    O, V, R1, H, H2 = "O", "V", "O(E1+E2)", "O(H)", "O(2H)"
    arrows = [
        Arrow("zeta", O, V, 0),
        Arrow("bphi2", V, R1, 0),
        Arrow("phi1", R1, V, 0),
        Arrow("iota1", V, H, 0),
        Arrow("iota2", V, H, 0),
    ] + _delta_arrows(H, H2)
    rels = [
        combo((1, "iota2 zeta")),
        combo((1, "bphi2 phi1")),
        combo((1, "delta1 iota1 zeta"), (-1, "delta3 iota1 phi1 bphi2 zeta")),
        combo((1, "delta1 iota2"), (1, "delta3 iota2 phi1 bphi2"), (-1, "delta2 iota1")),
    ]
    lattice = dict(X_LATTICE)
    lattice["classes"] = {k: v for k, v in X_LATTICE["classes"].items() if k != "O(E2)"}
    return DGQuiver((O, V, R1, H, H2), arrows, {}, rels, lattice=lattice, comment=V_COMMENT)


def y_surface():
    """Ordinary quiver of the collection on the blow-up of two distinct points."""
    O, F2, F1, H, H2 = "O", "O(F2)", "O(F1)", "O(H)", "O(2H)"
    arrows = [
        Arrow("alpha", O, F2, 0),
        Arrow("eta", O, F1, 0),
        Arrow("eps1", F2, H, 0),
        Arrow("eps2", F2, H, 0),
        Arrow("gamma1", F1, H, 0),
        Arrow("gamma2", F1, H, 0),
    ] + _delta_arrows(H, H2)
    rels = [
        combo((1, "delta1 gamma2"), (-1, "delta2 gamma1")),
        combo((1, "delta3 eps2"), (-1, "delta2 eps1")),
        combo((1, "eps2 alpha"), (-1, "gamma2 eta")),
        combo((1, "delta3 gamma1 eta"), (-1, "delta1 eps1 alpha")),
    ]
    return DGQuiver((O, F2, F1, H, H2), arrows, {}, rels, lattice=Y_LATTICE)


def _term(c, path):
    return {"coeff": c, "path": path.split()}


def delta_family_doc():
    """Delta(t): d beta = t betabar and a t-deformed last relation."""
    doc = quiver_to_doc(x_surface())
    doc["parameters"] = ["t"]
    doc["differential"]["beta"] = [_term("t", "betabar")]
    last = doc["relations"][-1]
    last.append(_term("-t", "delta3 eps2"))
    return doc


BUILDERS = {
    "x_surface": lambda: quiver_to_doc(x_surface()),
    "x_first_quiver": lambda: quiver_to_doc(x_first_quiver()),
    "v_collection": lambda: quiver_to_doc(v_collection()),
    "y_surface": lambda: quiver_to_doc(y_surface()),
    "delta_family": delta_family_doc,
}


def fixture_path(name):
    if not name.endswith(".dgq"):
        name = name + ".dgq"
    return os.path.join(HERE, name)


def load_doc(name):
    return read_doc(fixture_path(name))


def write_all():
    os.makedirs(HERE, exist_ok=True)
    for name, build in BUILDERS.items():
        with open(fixture_path(name), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(dumps(build()))


if __name__ == "__main__":
    write_all()
