"""Command line entry point: `dgcalc <command> FILE ...`.

Exit codes: 0 pass, 1 mathematical failure, 2 bad input.
"""

import argparse
import os
import re
import sys
from fractions import Fraction

from . import fixtures
from .ainfty import AInfinityError, dumps_ainf, from_doc
from .barcobar import BarError, CobarCategory, bar, finiteness_report
from .dgcore import (CategoryError, QuiverError, check_dg_axioms, hom_cohomology, is_exceptional_collection,
                     path_algebra)
from .fileformat import FormatError, doc_to_quiver, dumps, quiver_to_doc, parse_text, specialize_doc
from .mutation import Collection, MutationError, apply_braid
from .pretr import TwistError, embed
from .surfaces import LatticeError, PicardLattice, chi, euler_pairing
from .transfer import TransferError, class_of, massey3, minimal_model
from .uext import ExtensionError, cobar_quiver, compare_quivers, dg_quiver_of_collection, tilting_collection


class InputError(Exception):
    pass


class MathFailure(Exception):
    pass


def _resolve(path):
    if os.path.exists(path):
        return path
    base = os.path.basename(path)
    name = base[:-4] if base.endswith(".dgq") else base
    if name in fixtures.BUILDERS:
        return fixtures.fixture_path(name)
    raise InputError("no such file: %s" % path)


def _read_text(path):
    try:
        with open(_resolve(path), encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e.strerror)) from None
    except UnicodeDecodeError:
        raise InputError("%s is not UTF-8 text (line 1, column 1)" % path) from None


def _locate(text, msg):
    """Best-effort (line, column) for a semantic error: first quoted token in the message."""
    m = re.search(r"'([^']+)'", msg)
    pos = text.find('"%s"' % m.group(1)) if m else -1
    if pos < 0:
        return 1, 1
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def _load_doc(path):
    text = _read_text(path)
    try:
        return parse_text(text), text
    except FormatError as e:
        raise InputError(str(e)) from None


def _semantic(text, e):
    if getattr(e, "line", None) is not None:
        return InputError(str(e))
    return InputError("%s (line %d, column %d)" % ((e,) + _locate(text, str(e))))


def _quiver(args):
    doc, text = _load_doc(args.file)
    t = getattr(args, "t", None)
    try:
        t = Fraction(t) if t is not None else None
    except (ValueError, ZeroDivisionError):
        raise InputError("bad value for --t: %r" % t) from None
    try:
        return doc_to_quiver(doc, t=t)
    except (FormatError, QuiverError) as e:
        raise _semantic(text, e) from None


def _load_ainf(path):
    doc, text = _load_doc(path)
    try:
        return from_doc(doc)
    except AInfinityError as e:
        raise _semantic(text, e) from None


class _Model:
    """Adapter so an A-infinity structure read from disk can feed massey3."""

    def __init__(self, structure):
        self.structure = structure


def _category(args):
    q = _quiver(args)
    try:
        return q, path_algebra(q, args.max_path_len)
    except QuiverError as e:
        raise MathFailure(str(e)) from None


def _fmt_dims(d):
    return " ".join("H^%d=%d" % (k, v) for k, v in sorted(d.items())) or "0"


def _emit(text, target, out):
    if target in (None, "-"):
        out.write(text)
    else:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# commands --------------------------------------------------------------------------

def cmd_check(args, out):
    q, c = _category(args)
    rep = check_dg_axioms(c)
    if not rep.ok:
        for f in rep.failures[:20]:
            out.write("FAIL %s\n" % (f,))
        raise MathFailure("DG axioms fail (%d problems)" % len(rep.failures))
    dims = sum(len(h) for h in c.homs.values())
    out.write("ok: %d objects, %d arrows, total hom dimension %d\n" % (len(c.objects), len(q.arrows), dims))


def cmd_cohomology(args, out):
    _, c = _category(args)
    table = hom_cohomology(c)
    for (i, j), d in sorted(table.items()):
        out.write("%s -> %s: %s\n" % (c.objects[i], c.objects[j], _fmt_dims(d)))


def cmd_exceptional(args, out):
    _, c = _category(args)
    table = hom_cohomology(c)
    if is_exceptional_collection(c, table):
        out.write("exceptional\n")
        return
    n = len(c.objects)
    for i in range(n):
        if table.get((i, i), {}) != {0: 1}:
            out.write("End(%s): %s\n" % (c.objects[i], _fmt_dims(table.get((i, i), {}))))
        for j in range(i):
            if table.get((i, j)):
                out.write("backward %s -> %s: %s\n" % (c.objects[i], c.objects[j], _fmt_dims(table[(i, j)])))
    raise MathFailure("not exceptional")


def cmd_mutate(args, out):
    _, c = _category(args)
    col = Collection(c, tuple(embed(c, o) for o in c.objects), c.objects)
    try:
        new = apply_braid(col, args.word)
    except MutationError as e:
        if "bad braid letter" in str(e) or "index outside" in str(e):
            raise InputError(str(e)) from None
        raise MathFailure(str(e)) from None
    for name, t in zip(new.names, new.items):
        out.write("%s = %s\n" % (name, t.describe()))
    for (x, y), d in sorted(new.table().items()):
        if d:
            out.write("%s -> %s: %s\n" % (new.names[x], new.names[y], _fmt_dims(d)))
    out.write("exceptional: %s\n" % ("yes" if new.is_exceptional() else "no"))


def cmd_minimal_model(args, out):
    _, c = _category(args)
    try:
        mm = minimal_model(c, max_arity=args.max_arity)
    except (TransferError, AInfinityError) as e:
        raise MathFailure(str(e)) from None
    a = mm.structure
    if args.emit:
        _emit(dumps_ainf(a), args.emit, out)
        if args.emit == "-":
            return
    out.write("minimal model up to arity %d\n" % a.max_arity)
    for n in sorted(a.ops):
        count = sum(len(t) for t in a.ops[n].values())
        out.write("m_%d: %d nonzero entries\n" % (n, count))


def _class_args(q, c, mm, labels):
    out = []
    for lab in labels:
        path = tuple(x for x in lab.replace("*", " ").split())
        try:
            src, tgt, _ = q.path_info(path)
        except QuiverError as e:
            raise InputError(str(e)) from None
        try:
            out.append(class_of(mm, src, tgt, "*".join(path)))
        except TransferError as e:
            raise MathFailure(str(e)) from None
    return out


def _ainf_class_args(a, labels):
    out = []
    for lab in labels:
        hits = [(i, j, k) for (i, j), h in sorted(a.homs.items()) for k, x in enumerate(h.labels) if x == lab]
        if len(hits) != 1:
            raise InputError("label %r names %d basis elements, need exactly one" % (lab, len(hits)))
        i, j, k = hits[0]
        out.append((i, j, {k: 1}))
    return out


def cmd_massey(args, out):
    labels = [x.strip() for x in args.chain.split(",")]
    if len(labels) != 3:
        raise InputError("--chain needs three comma-separated classes, e.g. gamma1,betabar,alpha")
    if args.file.endswith(".ainf"):
        mm = _Model(_load_ainf(args.file))
        x, y, z = _ainf_class_args(mm.structure, labels)
    else:
        q, c = _category(args)
        try:
            mm = minimal_model(c, max_arity=args.max_arity)
        except (TransferError, AInfinityError) as e:
            raise MathFailure(str(e)) from None
        x, y, z = _class_args(q, c, mm, labels)
    try:
        cos = massey3(mm, x, y, z)
    except (TransferError, AInfinityError) as e:
        raise MathFailure(str(e)) from None
    i, j = cos.target
    hl = mm.structure.hom(i, j).labels
    val = " + ".join("%s*%s" % (v, hl[k]) for k, v in sorted(cos.value.items())) or "0"
    ind = len(cos.indeterminacy)
    out.write("<%s> = %s\n" % (", ".join(labels), val))
    out.write("indeterminacy spanned by %d products\n" % ind)
    out.write("%s modulo indeterminacy\n" % ("nonzero" if cos.nonzero else "zero"))


def cmd_universal_dg(args, out):
    c = None
    try:
        if args.file.endswith(".ainf"):
            a = _load_ainf(args.file)
        else:
            _, c = _category(args)
            a = minimal_model(c).structure
        cb = CobarCategory(bar(a))
        u = cb.to_category()
    except (TransferError, AInfinityError, BarError) as e:
        raise MathFailure(str(e)) from None
    if args.emit:
        _emit(dumps(quiver_to_doc(cobar_quiver(cb))), args.emit, out)
        if args.emit == "-":
            return
    rep = finiteness_report(u)
    out.write("ordered: %s\nfinite: %s\ntotal dimension: %d\n" % (rep["ordered"], rep["finite"], rep["total_dim"]))
    same = True
    if c is not None:
        same = hom_cohomology(u) == hom_cohomology(c)
        out.write("cohomology matches input: %s\n" % same)
    if not (same and rep["ordered"]):
        raise MathFailure("universal DG category check failed")


def cmd_uext(args, out):
    q, c = _category(args)
    if not is_exceptional_collection(c):
        raise MathFailure("input is not an exceptional collection")
    col = Collection(c, tuple(embed(c, o) for o in c.objects), c.objects)
    try:
        td = tilting_collection(col)
        dq = dg_quiver_of_collection(td, mode=args.mode)
    except (ExtensionError, TwistError, CategoryError) as e:
        raise MathFailure(str(e)) from None
    if args.emit:
        _emit(dumps(quiver_to_doc(dq)), args.emit, out)
        if args.emit == "-":
            return
    out.write("tilting objects: %s\n" % ", ".join(td.algebra.objects))
    out.write("arrows: %d, relations: %d\n" % (len(dq.arrows), len(dq.relations)))
    if args.mode == "direct":
        diffs = compare_quivers(dq, q, args.max_path_len)
        out.write("matches input up to basis: %s\n" % ("yes" if not diffs else "no (%s)" % ", ".join(diffs)))
        if diffs:
            raise MathFailure("reconstruction differs")


def cmd_deform(args, out):
    doc, text = _load_doc(args.file)
    try:
        t = Fraction(args.t)
    except (ValueError, ZeroDivisionError):
        raise InputError("bad value for --t: %r" % args.t) from None
    try:
        fixed = specialize_doc(doc, t)
    except FormatError as e:
        raise _semantic(text, e) from None
    except QuiverError as e:
        raise MathFailure(str(e)) from None
    out.write(dumps(fixed))


def cmd_chi(args, out):
    doc, text = _load_doc(args.file)
    lat = doc.get("lattice")
    if not lat:
        raise InputError("file has no lattice")
    try:
        L = PicardLattice.from_doc(lat)
        d = L.parse(args.divisor)
        out.write("chi(%s) = %d\n" % (L.format(d), chi(L, d)))
    except (LatticeError, KeyError, TypeError) as e:
        raise _semantic(text, LatticeError(str(e))) from None
    if args.pair:
        _, c = _category(args)
        try:
            a, b = [x.strip() for x in args.pair.split(",")]
        except ValueError:
            raise InputError("--pair needs two vertex names: A,B") from None
        cls = lat.get("classes", {})
        if a not in cls or b not in cls:
            raise InputError("--pair names a vertex without a lattice class")
        x = chi(L, tuple(y - z for y, z in zip(cls[b], cls[a])))
        e = euler_pairing(c, a, b)
        out.write("chi(%s, %s) = %d, euler pairing = %d\n" % (a, b, x, e))
        if x != e:
            raise MathFailure("Riemann-Roch disagrees with the quiver")


def build_parser():
    p = argparse.ArgumentParser(prog="dgcalc", description="Exact computations with finite DG categories.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file", help=".dgq file or bundled fixture name")
        s.add_argument("--max-path-len", type=int, default=8)
        s.set_defaults(fn=fn)
        return s

    add("check", cmd_check, "validate a DG quiver").add_argument("--t", default=None)
    add("cohomology", cmd_cohomology, "hom cohomology table").add_argument("--t", default=None)
    add("exceptional", cmd_exceptional, "exceptional collection verdict").add_argument("--t", default=None)
    s = add("mutate", cmd_mutate, "apply a braid word such as 'L2 R1'")
    s.add_argument("--word", required=True)
    s = add("minimal-model", cmd_minimal_model, "A-infinity minimal model")
    s.add_argument("--max-arity", type=int, default=None)
    s.add_argument("--emit", default=None, help="write a .ainf file ('-' for stdout)")
    s = add("massey", cmd_massey, "triple Massey product")
    s.add_argument("--chain", required=True, help="x,y,z with z acting first")
    s.add_argument("--max-arity", type=int, default=None)
    s = add("universal-dg", cmd_universal_dg, "universal DG category of the minimal model")
    s.add_argument("--emit", default=None)
    s = add("uext", cmd_uext, "universal-extension pipeline")
    s.add_argument("--emit", default=None)
    s.add_argument("--mode", choices=("direct", "universal"), default="direct")
    s = add("deform", cmd_deform, "specialize a one-parameter family")
    s.add_argument("--t", required=True)
    s = add("chi", cmd_chi, "Riemann-Roch on the file's lattice")
    s.add_argument("--divisor", required=True)
    s.add_argument("--pair", default=None, help="also compare with the Euler pairing of two vertices: A,B")
    return p


def _threads():
    """DGCALC_THREADS is accepted as a hint; computations here run on one thread."""
    raw = os.environ.get("DGCALC_THREADS")
    if raw is None:
        return 1
    if not raw.isdigit() or int(raw) < 1:
        raise InputError("DGCALC_THREADS must be a positive integer")
    return int(raw)


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        _threads()
        args.fn(args, out)
    except InputError as e:
        sys.stderr.write("error: %s\n" % e)
        return 2
    except MathFailure as e:
        sys.stderr.write("failed: %s\n" % e)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
