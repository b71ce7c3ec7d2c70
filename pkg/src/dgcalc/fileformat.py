"""The .dgq JSON format and one-parameter families.

A document has "vertices", "arrows" (name/src/tgt/degree), "differential"
(arrow -> list of {"coeff", "path"}), "relations" (list of such lists) and
optionally "lattice", "parameters" and "comment".  Paths list arrow names
with the rightmost arrow acting first.  Coefficients are rational strings;
in a family they may be polynomials in the declared parameter, e.g. "-2*t^2+1/3".
"""

import json
import re
from fractions import Fraction

from .dgcore import Arrow, DGQuiver, QuiverError


class FormatError(ValueError):
    def __init__(self, msg, line=None, col=None):
        if line is not None:
            msg = "%s (line %d, column %d)" % (msg, line, col)
        super().__init__(msg)
        self.line = line
        self.col = col


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_text(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError("malformed JSON: %s" % e.msg, e.lineno, e.colno) from None


def read_doc(path):
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())


def write_doc(path, doc):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(doc))


def q_str(c):
    return str(Fraction(c))


# polynomial coefficients ----------------------------------------------------------

_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(?:([A-Za-z_]\w*)(?:\s*\^\s*(\d+))?)?\s*"
)


def parse_poly(text, params=()):
    """Parse a coefficient into {power: Fraction}; power 0 when constant."""
    if not isinstance(text, str):
        raise FormatError("coefficient %r must be a string" % (text,))
    s = text.strip()
    if not s:
        raise FormatError("empty coefficient")
    pos = 0
    out = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise FormatError("cannot parse coefficient %r" % text)
        sign, num, var, power = m.groups()
        if not first and sign is None:
            raise FormatError("cannot parse coefficient %r" % text)
        if num is None and var is None:
            raise FormatError("cannot parse coefficient %r" % text)
        c = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            c = -c
        k = 0
        if var is not None:
            if var not in params:
                raise FormatError("unknown parameter %r in coefficient %r" % (var, text))
            k = int(power) if power else 1
        out[k] = out.get(k, Fraction(0)) + c
        pos = m.end()
        first = False
    return {k: v for k, v in out.items() if v}


def eval_poly(poly, t):
    return sum((c * Fraction(t) ** k for k, c in poly.items()), Fraction(0))


# documents <-> quivers ------------------------------------------------------------

def _combo_doc(comb):
    return [{"coeff": q_str(c), "path": list(p)} for c, p in comb]


def quiver_to_doc(q):
    doc = {
        "vertices": list(q.vertices),
        "arrows": [{"name": a.name, "src": a.src, "tgt": a.tgt, "degree": a.degree} for a in q.arrows],
        "differential": {a: _combo_doc(v) for a, v in q.differential.items() if v},
        "relations": [_combo_doc(r) for r in q.relations],
    }
    if q.lattice is not None:
        doc["lattice"] = q.lattice
    if q.parameters is not None:
        doc["parameters"] = q.parameters
    if q.comment is not None:
        doc["comment"] = q.comment
    return doc


def _need(doc, key, kind):
    if key not in doc:
        raise FormatError("missing key %r" % key)
    if not isinstance(doc[key], kind):
        raise FormatError("key %r has the wrong type" % key)
    return doc[key]


def _parse_combo(items, where, coeff):
    if not isinstance(items, list):
        raise FormatError("%s must be a list of terms" % where)
    out = []
    for n, term in enumerate(items):
        if not isinstance(term, dict) or set(term) != {"coeff", "path"}:
            raise FormatError("%s, term %d: expected keys coeff and path" % (where, n))
        path = term["path"]
        if not isinstance(path, list) or not all(isinstance(a, str) for a in path):
            raise FormatError("%s, term %d: path must be a list of arrow names" % (where, n))
        out.append((coeff(term["coeff"], "%s, term %d" % (where, n)), tuple(path)))
    return tuple(out)


def doc_to_quiver(doc, t=None):
    """Build a DGQuiver; family coefficients are evaluated at t (required then)."""
    if not isinstance(doc, dict):
        raise FormatError("top level must be a JSON object")
    allowed = {"vertices", "arrows", "differential", "relations", "lattice", "parameters", "comment"}
    extra = set(doc) - allowed
    if extra:
        raise FormatError("unknown keys %s" % sorted(extra))
    params = doc.get("parameters")
    if params is not None:
        if not isinstance(params, list) or not all(isinstance(p, str) for p in params) or len(params) != 1:
            raise FormatError("parameters must be a list with one name")
        if t is None:
            raise FormatError("family with parameter %r needs a value" % params[0])

    def coeff(text, where):
        try:
            if params is None:
                if not isinstance(text, str):
                    raise FormatError("coefficient must be a string")
                return Fraction(text.strip())
            return eval_poly(parse_poly(text, params), t)
        except (ValueError, ZeroDivisionError) as e:
            raise FormatError("%s: bad coefficient %r (%s)" % (where, text, e)) from None

    vertices = _need(doc, "vertices", list)
    arrows = []
    for n, a in enumerate(_need(doc, "arrows", list)):
        if not isinstance(a, dict) or set(a) != {"name", "src", "tgt", "degree"}:
            raise FormatError("arrow %d: expected keys name, src, tgt, degree" % n)
        if not isinstance(a["degree"], int):
            raise FormatError("arrow %d: degree must be an integer" % n)
        arrows.append(Arrow(a["name"], a["src"], a["tgt"], a["degree"]))
    diff = {}
    for name, items in _need(doc, "differential", dict).items():
        comb = tuple((c, p) for c, p in _parse_combo(items, "differential of %s" % name, coeff) if c)
        if comb:
            diff[name] = comb
    rels = []
    for n, items in enumerate(_need(doc, "relations", list)):
        comb = tuple((c, p) for c, p in _parse_combo(items, "relation %d" % n, coeff) if c)
        if comb:
            rels.append(comb)
    try:
        q = DGQuiver(vertices, arrows, diff, rels, lattice=doc.get("lattice"), comment=doc.get("comment"))
        q.validate()
    except QuiverError as e:
        raise FormatError(str(e)) from None
    return q


def specialize_doc(doc, t):
    """Substitute the parameter; the result is a plain .dgq document."""
    q = doc_to_quiver(doc, t=Fraction(t))
    q.parameters = None
    return quiver_to_doc(q)


def load_quiver(path, t=None):
    return doc_to_quiver(read_doc(path), t=t)


def save_quiver(path, q):
    write_doc(path, quiver_to_doc(q))
