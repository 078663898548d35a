"""Command-line front end.

Exit codes: 0 success or a positive answer, 1 a valid negative answer (not a
member, not separable, law fails), 2 a usage or input-format error, 3 when
the intrinsic-core methods disagree.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import json
import re
import sys
from typing import Optional

from . import closure, faces, icore, polyset, seqgallery
from . import exactla as la
from .errors import (
    ChainNotNested,
    ConvexError,
    DimensionMismatch,
    EmptyInput,
    EmptySet,
    IsInteriorPoint,
    MethodDisagreement,
    NotMember,
    NotProperFace,
    NotProperlySeparable,
    OverlappingInteriors,
    TooLarge,
    UnsupportedComposite,
    UnsupportedStrict,
    ZeroScale,
)

OK, NEGATIVE, USAGE, DISAGREE = 0, 1, 2, 3


class UsageError(Exception):
    """Bad flag or malformed input; the message names the culprit."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# input helpers

def _load_set(path: Optional[str], flag: str, stdin: Optional[str]):
    if path is None:
        raise UsageError(f"{flag}: required")
    try:
        if path == "-":
            text = stdin if stdin is not None else sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"{flag}: cannot read {path}: {exc.strerror}") from exc
    try:
        return polyset.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def _point(text: Optional[str], C, flag: str = "--point"):
    if text is None:
        raise UsageError(f"{flag}: required")
    try:
        x = la.parse_point(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{flag}: {exc}") from exc
    if len(x) != C.dim:
        raise UsageError(f"{flag}: point has {len(x)} coordinates, set has dimension {C.dim}")
    return x


def _finseq(text: Optional[str], flag: str = "--point") -> seqgallery.FinSeq:
    if text is None:
        raise UsageError(f"{flag}: required")
    try:
        return seqgallery.FinSeq.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def _vec_text(v) -> str:
    return "(" + ", ".join(la.fmt_rat(q) for q in v) + ")"


def _vec_json(v) -> list:
    return [la.fmt_rat(q) for q in v]


def _face_json(F: faces.FaceDescriptor) -> dict:
    out = {"kind": F.kind, "dim": F.dim}
    if F.kind == faces.ACTIVE:
        out["active"] = sorted(F.indices)
    elif F.kind == faces.GENERATORS:
        out["points"] = sorted(F.points)
        out["rays"] = sorted(F.rays)
    return out


def _face_text(F: faces.FaceDescriptor) -> str:
    return f"face dim {F.dim}: {F.label()}"


def _row_text(a, rel: str, b) -> str:
    terms = []
    for i, q in enumerate(a):
        if q == 0:
            continue
        coef = la.fmt_rat(q)
        coef = "" if coef == "1" else "-" if coef == "-1" else coef + "*"
        terms.append(f"{coef}x{i + 1}")
    lhs = " + ".join(terms).replace("+ -", "- ") if terms else "0"
    return f"{lhs} {rel} {la.fmt_rat(b)}"


def _set_text(C) -> str:
    lines = []
    if isinstance(C, polyset.HSet):
        lines.append(f"hset in dimension {C.dim}")
        for r in C.ineqs:
            lines.append("  " + _row_text(r.a, "<" if r.strict else "<=", r.b))
        for e, f in C.eqs:
            lines.append("  " + _row_text(e, "=", f))
    else:
        lines.append(f"vset in dimension {C.dim}")
        lines += ["  point " + _vec_text(p) for p in C.points]
        lines += ["  ray " + _vec_text(r) for r in C.rays]
    return "\n".join(lines) + "\n"


def _cert_text(cert: closure.SeparationCertificate) -> str:
    a, b = cert.strict_witness
    return (f"phi = {_vec_text(cert.phi)}\nalpha = {la.fmt_rat(cert.alpha)}\n"
            f"strict witness: {_vec_text(a)} -> {la.fmt_rat(la.dot(cert.phi, a))}, "
            f"{_vec_text(b)} -> {la.fmt_rat(la.dot(cert.phi, b))}\n")


# ---------------------------------------------------------------------------
# commands; each returns (exit code, stdout text)

def cmd_minface(args, stdin):
    C = _load_set(args.set, "--set", stdin)
    pts = [_point(p, C) for p in args.point or [None]]
    try:
        F = faces.minimal_face(C, pts[0]) if len(pts) == 1 else faces.minimal_face_of_set(C, pts)
    except NotMember as exc:
        return NEGATIVE, _dump({"member": False}) if args.json else f"not a member: {exc}\n"
    if args.json:
        return OK, _dump(_face_json(F))
    return OK, _face_text(F) + "\n"


def cmd_icr_test(args, stdin):
    C = _load_set(args.set, "--set", stdin)
    x = _point(args.point, C)
    method = icore.IcrMethod(args.method)
    try:
        if method is icore.IcrMethod.ALL:
            verdicts = icore.icr_verdicts(C, x)
            values = set(verdicts.values())
            if len(values) != 1:
                raise MethodDisagreement(verdicts)
            ans = values.pop()
            note = f"all {len(verdicts)} methods agree"
        else:
            ans = icore.icr_contains(C, x, method)
            verdicts = {method.value: ans}
            note = f"method {method.value}"
    except NotMember as exc:
        return NEGATIVE, _dump({"member": False}) if args.json else f"not a member: {exc}\n"
    code = OK if ans else NEGATIVE
    if args.json:
        return code, _dump({"icr": ans, "verdicts": verdicts})
    return code, f"{'true' if ans else 'false'} ({note})\n"


def cmd_ri(args, stdin):
    C = _load_set(args.set, "--set", stdin)
    R = icore.relative_interior(C)
    return OK, _dump(polyset.set_to_json(R)) if args.json else _set_text(R)


def _lattice(args, stdin):
    C = _load_set(args.set, "--set", stdin)
    return C, faces.face_lattice(C)


def cmd_lattice(args, stdin):
    _, L = _lattice(args, stdin)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(faces.lattice_to_dot(L))
    if args.json:
        return OK, _dump({"nodes": [_face_json(F) for F in L.nodes],
                          "covers": [list(c) for c in L.covers]})
    lines = [f"{len(L.nodes)} faces"]
    lines += [f"  n{i} {_face_text(F)}" for i, F in enumerate(L.nodes)]
    lines += [f"  n{a} < n{b}" for a, b in L.covers]
    return OK, "\n".join(lines) + "\n"


def cmd_chains(args, stdin):
    _, L = _lattice(args, stdin)
    index = {F: i for i, F in enumerate(L.nodes)}
    chains = [[index[F] for F in ch] for ch in faces.maximal_chains(L)]
    if args.json:
        return OK, _dump({"chains": chains, "lengths": [len(c) for c in chains]})
    lines = [f"{len(chains)} maximal chains"]
    lines += [f"  length {len(c)}: " + " < ".join(f"n{i}" for i in c) for c in chains]
    return OK, "\n".join(lines) + "\n"


def cmd_decompose(args, stdin):
    C = _load_set(args.set, "--set", stdin)
    parts = icore.decompose(C)
    if args.json:
        return OK, _dump({"faces": [_face_json(F) for F in parts]})
    lines = [f"{len(parts)} nonempty faces"] + ["  " + _face_text(F) for F in parts]
    return OK, "\n".join(lines) + "\n"


def cmd_locate(args, stdin):
    C = _load_set(args.set, "--set", stdin)
    x = _point(args.point, C)
    try:
        F = icore.locate(C, x)
    except NotMember as exc:
        return NEGATIVE, _dump({"member": False}) if args.json else f"not a member: {exc}\n"
    return OK, _dump(_face_json(F)) if args.json else _face_text(F) + "\n"


def cmd_separate(args, stdin):
    A = _load_set(args.set, "--set", stdin)
    B = _load_set(args.set2, "--set2", stdin)
    if A.dim != B.dim:
        raise UsageError(f"--set2: dimension {B.dim} differs from --set dimension {A.dim}")
    try:
        cert = closure.properly_separate(A, B)
    except (OverlappingInteriors, NotProperlySeparable) as exc:
        if args.json:
            return NEGATIVE, _dump({"separable": False, "reason": type(exc).__name__})
        return NEGATIVE, f"not properly separable: {exc}\n"
    if args.json:
        return OK, _dump(dict(cert.to_json(), verified=cert.verify(A, B)))
    return OK, _cert_text(cert)


def cmd_support(args, stdin):
    C = _load_set(args.set, "--set", stdin)
    x = _point(args.point, C)
    try:
        cert = closure.support_functional(C, x)
    except (NotMember, IsInteriorPoint) as exc:
        if args.json:
            return NEGATIVE, _dump({"support": False, "reason": type(exc).__name__})
        return NEGATIVE, f"no proper support: {exc}\n"
    return OK, _dump(cert.to_json()) if args.json else _cert_text(cert)


def _parse_map(text: Optional[str]) -> polyset.LinearMap:
    if text is None:
        raise UsageError("--map: required for linear-image")
    try:
        return polyset.LinearMap(tuple(la.parse_point(r) for r in text.split(";")))
    except (ValueError, ZeroDivisionError, DimensionMismatch) as exc:
        raise UsageError(f"--map: {exc}") from exc


def cmd_check(args, stdin):
    law = icore.Law(args.law)
    C = _load_set(args.set, "--set", stdin)
    if law in (icore.Law.SUM, icore.Law.PRODUCT):
        operands = (C, _load_set(args.set2, "--set2", stdin))
        if law is icore.Law.SUM and operands[1].dim != C.dim:
            raise UsageError(f"--set2: dimension {operands[1].dim} differs from --set dimension {C.dim}")
    elif law is icore.Law.TRANSLATE:
        operands = (C, _point(args.vector, C, "--vector"))
    elif law is icore.Law.SCALE:
        if args.factor is None:
            raise UsageError("--factor: required for scale")
        try:
            lam = la.rat(args.factor)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"--factor: {exc}") from exc
        if lam == 0:
            raise UsageError("--factor: must be nonzero")
        operands = (C, lam)
    elif law is icore.Law.LINEAR_IMAGE:
        M = _parse_map(args.map)
        if M.source_dim != C.dim:
            raise UsageError(f"--map: expects dimension {M.source_dim}, set has {C.dim}")
        operands = (C, M)
    else:
        operands = (C,)
    if args.samples < 1:
        raise UsageError("--samples: must be at least 1")
    try:
        v = icore.check_calculus(law, operands, count=args.samples, seed=args.seed)
    except UnsupportedComposite as exc:
        return NEGATIVE, _dump({"law": law.value, "supported": False}) if args.json else \
            f"unsupported composite: {exc}\n"
    code = OK if v.holds else NEGATIVE
    if args.json:
        out = {"law": law.value, "holds": v.holds, "checked": v.checked}
        if v.counterexample:
            out["counterexample"] = {"point": _vec_json(v.counterexample[0]),
                                     "side": v.counterexample[1]}
        return code, _dump(out)
    text = f"{law.value}: {'holds' if v.holds else 'fails'} on {v.checked} samples\n"
    if v.counterexample:
        text += f"counterexample {_vec_text(v.counterexample[0])}: {v.counterexample[1]}\n"
    return code, text


def cmd_gallery(args, stdin):
    sg = seqgallery
    what = args.what
    if what == "box-minface":
        x = _finseq(args.point)
        try:
            F = sg.box_minimal_face(x)
        except NotMember:
            return NEGATIVE, _dump({"member": False})
        return OK, _dump({"fixed": {str(i): v for i, v in F.fixed.items()},
                          "free": sorted(F.free)})
    if what in ("box-empty-icr", "ubiq-not-icr", "ubiq-lin"):
        x = _finseq(args.point)
        make = {"box-empty-icr": sg.box_empty_icr_witness,
                "ubiq-not-icr": sg.ubiq_not_icr_witness,
                "ubiq-lin": sg.ubiq_lin_witness}[what]
        try:
            w = make(x)
        except NotMember:
            return NEGATIVE, _dump({"member": False})
        return OK, _dump(w.to_json())
    if what == "ubiq-contains":
        ans = sg.ubiq_contains(_finseq(args.point))
        return (OK if ans else NEGATIVE), _dump({"member": ans})
    if what == "ubiq-minface":
        x, u = _finseq(args.point), _finseq(args.other, "--other")
        try:
            ans = sg.ubiq_minface_contains(x, u)
        except NotMember:
            return NEGATIVE, _dump({"member": False})
        return (OK if ans else NEGATIVE), _dump({"in_minimal_face": ans})
    if what == "orthant-minface":
        try:
            face = sg.orthant_minimal_face(_finseq(args.point))
        except NotMember:
            return NEGATIVE, _dump({"member": False})
        return OK, _dump({"face": sorted(face)})
    if what == "orthant-gap":
        if args.chain is None:
            raise UsageError("--chain: required")
        try:
            chain = [[int(i) for i in part.split(",") if i.strip()]
                     for part in args.chain.split(";")]
        except ValueError as exc:
            raise UsageError(f"--chain: {exc}") from exc
        try:
            w = sg.orthant_chain_gap(chain)
        except ChainNotNested as exc:
            return NEGATIVE, _dump({"nested": False, "reason": str(exc)})
        return OK, _dump(w.to_json())
    # cube-chain
    if args.thresholds is None:
        raise UsageError("--thresholds: required")
    try:
        ts = la.parse_point(args.thresholds)
        chain = sg.cube_chain_from_cuts(ts, args.prefix)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--thresholds: {exc}") from exc
    return OK, _dump({"chain": [sorted(c.full_indices) for c in chain],
                      "coincident": sg.coincident_links(chain),
                      "enumeration": [la.fmt_rat(q) for q in sg.calkin_wilf(args.prefix)]})


COMMANDS = {
    "minface": cmd_minface, "icr-test": cmd_icr_test, "ri": cmd_ri,
    "lattice": cmd_lattice, "chains": cmd_chains, "decompose": cmd_decompose,
    "locate": cmd_locate, "separate": cmd_separate, "support": cmd_support,
    "check": cmd_check, "gallery": cmd_gallery,
}

GALLERY = ("box-minface", "box-empty-icr", "cube-chain", "ubiq-contains", "ubiq-lin",
           "ubiq-not-icr", "ubiq-minface", "orthant-minface", "orthant-gap")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="convexfaces", description="Facial structure of convex sets, exactly.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--set", help="JSON set file, or - for stdin")
    common.add_argument("--set2", help="second JSON set file")
    common.add_argument("--point", action="append", help="point such as 1/2,0")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=200)
    for name in COMMANDS:
        if name == "gallery":
            continue
        sp = sub.add_parser(name, parents=[common])
        if name == "icr-test":
            sp.add_argument("--method", default="all", choices=[m.value for m in icore.IcrMethod])
        if name == "lattice":
            sp.add_argument("--dot", metavar="FILE", help="write the lattice as DOT")
        if name == "check":
            sp.add_argument("--law", required=True, choices=[l.value for l in icore.Law])
            sp.add_argument("--vector", help="translation vector")
            sp.add_argument("--factor", help="nonzero scale factor")
            sp.add_argument("--map", help="matrix rows separated by ';'")
    g = sub.add_parser("gallery")
    g.add_argument("what", choices=GALLERY)
    g.add_argument("--point", help="finite sequence such as 1:-5,3:2")
    g.add_argument("--other", help="second finite sequence")
    g.add_argument("--chain", help="nested index sets such as 1;1,2;1,2,3")
    g.add_argument("--thresholds", help="increasing rationals such as 1/2,3/2")
    g.add_argument("--prefix", type=int, default=16, help="enumeration length")
    g.add_argument("--json", action="store_true", help="accepted for symmetry; output is JSON")
    g.add_argument("--seed", type=int, default=0)
    return p


_NEGATIVE_VALUE = re.compile(r"-[0-9.]")


def _attach_negative_values(argv) -> list:
    """Join ``--flag -1/2,0`` into ``--flag=-1/2,0``.

    argparse only accepts a leading minus on plain numbers such as ``-2``;
    coordinates like ``-1/2`` or ``-1,0`` would otherwise read as flags.
    """
    out = []
    for a in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEGATIVE_VALUE.match(a):
            out[-1] = f"{out[-1]}={a}"
        else:
            out.append(a)
    return out


def run(argv, stdin: Optional[str] = None) -> tuple:
    """Run one command; returns ``(exit code, stdout, stderr)``."""
    err = io.StringIO()
    try:
        with contextlib.redirect_stderr(err):
            args = build_parser().parse_args(_attach_negative_values(argv))
        if args.command is None:
            raise UsageError("missing command; choose one of " + ", ".join(COMMANDS))
        # only minface accepts several points (their smallest common face)
        if args.command not in ("gallery", "minface"):
            pts = args.point or []
            if len(pts) > 1:
                raise UsageError("--point: given more than once")
            args.point = pts[0] if pts else None
        code, out = COMMANDS[args.command](args, stdin)
        return code, out, err.getvalue()
    except UsageError as exc:
        return USAGE, "", f"error: {exc}\n"
    except SystemExit as exc:  # --help
        return (exc.code if isinstance(exc.code, int) else USAGE), "", err.getvalue()
    except MethodDisagreement as exc:
        return DISAGREE, "", f"error: {exc}\n"
    except (EmptySet, EmptyInput, UnsupportedStrict, TooLarge, NotProperFace,
            ZeroScale, DimensionMismatch) as exc:
        return USAGE, "", f"error: --set: {exc}\n"
    except ConvexError as exc:  # pragma: no cover - every library error is mapped above
        return USAGE, "", f"error: {exc}\n"


def main(argv=None) -> int:
    # help text goes to stdout, so capture it through the parser directly
    argv = sys.argv[1:] if argv is None else argv
    if any(a in ("-h", "--help") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return exc.code or 0
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
