"""Command-line front end: ``ga2 <verb> [--field Q|Fp:p] ARGS``.

Every handler returns a list of records and an exit code. A record is a dict
whose ``rec`` key names its kind; the human renderer uses the templates
below and the machine renderers print the same fields as ``key=value``
pairs or JSON lines. Exit codes: 0 success, 1 negative answer, 2 error.
"""
from __future__ import annotations

import argparse
import json
import re
import shlex
import sys

from .algebra import INFINITE, UNKNOWN, FieldCtx
from .amalgam import (NormalForm, Word, cyclically_reduce, decompose, letter_line, nf_degree,
                      nf_lines, normalize, parse_letter_line, parse_word, poly_degree,
                      to_normal_form)
from .conjugacy import crnf_conjugacy_necessary, crnf_conjugate, order_of_element
from .dynamics import cycle_statistics, fixed_points_fp, induced_permutation
from .errors import GA2Error, InvalidLetters, NotCyclicallyReduced, ParseError
from .generators import CosetRepA, CosetRepE
from .parsing import parse_map_expr, parse_scalar
from .symmetry import (build_reversible_involutory, build_reversible_order4,
                       fixed_point_spectrum_check, involutory_symmetry_of_crnf, is_reversor,
                       reversibility_necessary, reversor_order)

HUMAN = {
    "B": "B {alpha} {beta} {gamma} {u} {v}",
    "A": "A {beta}",
    "E": "E {poly}",
    "CONJ": "CONJ {letter}",
    "STATUS": "STATUS {tag}",
    "LENGTH": "LENGTH {value}",
    "POLYDEG": "POLYDEG {value}",
    "DEGREE": "DEGREE {value}",
    "ORDER": "ORDER {value}",
    "CYCLE": "CYCLE len={len} count={count}",
    "FIXED": "FIXED {count}",
    "POINT": "POINT {x} {y}",
    "SYM": "SYM u={u} v={v}",
    "REV": "REV order={order} word={word}",
    "GROUP": "GROUP tag={tag}",
    "VERDICT": "{verdict}",
    "SPECTRUM": "SPECTRUM reciprocal={reciprocal}",
}


def render_human(rec) -> str:
    fields = {k: v for k, v in rec.items() if k != "rec"}
    return HUMAN[rec["rec"]].format(**fields)


def parse_human(line: str) -> dict:
    """Invert :func:`render_human` (used to compare output modes)."""
    for kind, tpl in HUMAN.items():
        pattern = re.sub(r"\\\{(\w+)\\\}", r"(?P<\1>.+)", re.escape(tpl))
        m = re.fullmatch(pattern, line)
        if m and (kind != "VERDICT" or line.startswith(("NOT-", "REVERSIBLE", "CONJUGATE",
                                                         "NO-"))):
            return {"rec": kind, **m.groupdict()}
    raise ParseError(f"unrecognized output line {line!r}", 0)


def render_machine(rec) -> str:
    return " ".join(f"{k}={shlex.quote(str(v))}" for k, v in rec.items())


def parse_machine(line: str) -> dict:
    return dict(part.split("=", 1) for part in shlex.split(line))


def render_json(rec) -> str:
    return json.dumps({k: str(v) for k, v in rec.items()})


# --- input --------------------------------------------------------------------------

def _read_arg(text: str) -> str:
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise InputFileError(f"cannot read {text[1:]}: {exc.strerror}") from exc
    return text


class InputFileError(GA2Error):
    pass


def load_element(text: str, ctx: FieldCtx):
    """A map expression ``(P, Q)`` or letter lines; returns (PolyMap or None, NormalForm)."""
    text = _read_arg(text).strip()
    if text.startswith("("):
        f = parse_map_expr(text, ctx)
        return f, normalize(decompose(f), ctx)
    return None, normalize(parse_word(text, ctx), ctx)


def load_map(text: str, ctx: FieldCtx):
    f, nf = load_element(text, ctx)
    return f if f is not None else nf


def _nf_records(nf: NormalForm):
    recs = []
    for line in nf_lines(nf):
        head, _, rest = line.partition(" ")
        if head == "B":
            recs.append(dict(zip(("rec", "alpha", "beta", "gamma", "u", "v"),
                                 [head] + rest.split())))
        elif head == "A":
            recs.append({"rec": "A", "beta": rest})
        else:
            recs.append({"rec": "E", "poly": rest})
    return recs


def _verdict(text):
    return {"rec": "VERDICT", "verdict": text}


def _order_text(n):
    if n is INFINITE:
        return "Infinite"
    if n is UNKNOWN:
        return "Unknown"
    return str(n)


# --- handlers -----------------------------------------------------------------------

def cmd_decompose(a, ctx):
    f = parse_map_expr(_read_arg(a.map).strip(), ctx)
    return _nf_records(normalize(decompose(f), ctx)), 0


def cmd_normalform(a, ctx):
    return _nf_records(load_element(a.map, ctx)[1]), 0


def cmd_length(a, ctx):
    return [{"rec": "LENGTH", "value": load_element(a.map, ctx)[1].length}], 0


def cmd_polydeg(a, ctx):
    pd = poly_degree(load_element(a.map, ctx)[1])
    return [{"rec": "POLYDEG", "value": "(" + ",".join(map(str, pd)) + ")"}], 0


def cmd_degree(a, ctx):
    return [{"rec": "DEGREE", "value": nf_degree(load_element(a.map, ctx)[1])}], 0


def _reduce(nf):
    st = cyclically_reduce(nf)
    recs = [{"rec": "STATUS", "tag": st.tag}]
    recs += [{"rec": "CONJ", "letter": letter_line(c)} for c in st.conjugator]
    return st, recs


def cmd_cyclereduce(a, ctx):
    st, recs = _reduce(load_element(a.map, ctx)[1])
    return recs + _nf_records(st.nf), 0


def cmd_order(a, ctx):
    n = order_of_element(load_element(a.map, ctx)[1], cap=a.cap)
    return [{"rec": "ORDER", "value": _order_text(n)}], 0


def _require_cr(st):
    if st.tag != "CR":
        raise NotCyclicallyReduced(f"element reduces to {st.tag}, not a cyclically reduced form")


def cmd_conjtest(a, ctx):
    st1 = cyclically_reduce(load_element(a.map, ctx)[1])
    st2 = cyclically_reduce(load_element(a.other, ctx)[1])
    _require_cr(st1)
    _require_cr(st2)
    if not crnf_conjugacy_necessary(st1.nf, st2.nf):
        return [_verdict("NOT-CONJUGATE (poly-degree)")], 1
    h = crnf_conjugate(st1.nf, st2.nf)
    if h is None:
        return [_verdict("NOT-CONJUGATE")], 1
    # g1 = c1 G1 c1^-1, g2 = c2 G2 c2^-1, h G1 h^-1 = G2
    full = normalize(st2.conjugator @ h @ st1.conjugator.inverse(), ctx)
    return [_verdict("CONJUGATE")] + _nf_records(full), 0


def cmd_symcheck(a, ctx):
    st, recs = _reduce(load_element(a.map, ctx)[1])
    _require_cr(st)
    w = involutory_symmetry_of_crnf(st.nf)
    if w is None:
        return recs + [_verdict("NO-SYMMETRY")], 1
    return recs + [{"rec": "SYM", "u": w.u, "v": w.v}], 0


def _rev_record(nf, order):
    return {"rec": "REV", "order": order, "word": "; ".join(nf_lines(nf))}


def cmd_revcheck(a, ctx):
    _, nf = load_element(a.map, ctx)
    st = cyclically_reduce(nf)
    _require_cr(st)
    g = st.nf
    pd = poly_degree(g)
    if not reversibility_necessary(g):
        from .conjugacy import is_cyclic_shift
        why = "poly-degree" if not is_cyclic_shift(pd, pd[::-1]) else "det"
        return [_verdict(f"NOT-REVERSIBLE ({why})")], 1
    recs = [_verdict("REVERSIBLE-NECESSARY")]
    if a.reversor is None:
        return recs, 0
    _, r = load_element(a.reversor, ctx)
    if not is_reversor(nf, r):
        return recs + [_verdict("NOT-REVERSOR")], 1
    return recs + [_rev_record(r, reversor_order(nf, r, a.cap))], 0


def _letters(text, ctx):
    return parse_word(_read_arg(text), ctx).letters


def cmd_buildrev(a, ctx):
    letters = _letters(a.letters, ctx)
    if a.form == 4:
        e_letters = tuple(c for c in letters if isinstance(c, CosetRepE))
        a_letters = tuple(c for c in letters if isinstance(c, CosetRepA))
        if len(e_letters) + len(a_letters) != len(letters):
            raise InvalidLetters("form 4 takes only A and E letter lines")
        f, w = build_reversible_order4(e_letters, a_letters, parse_scalar(a.alpha, ctx),
                                       parse_scalar(a.gamma, ctx))
    else:
        one = lambda t: parse_letter_line(_read_arg(t), ctx) if t is not None else None  # noqa: E731
        f, w = build_reversible_involutory(letters, a.form, lead=one(a.lead), hat=one(a.hat),
                                           bar=one(a.bar))
    return _nf_records(f) + [_rev_record(w.r, w.order)], 0


def cmd_orbits(a, ctx):
    perm = induced_permutation(load_map(a.map, ctx), max_p=a.max_p, threads=a.threads)
    return cycle_statistics(perm).records(), 0


def cmd_fixpoints(a, ctx):
    pts = fixed_points_fp(load_map(a.map, ctx), max_p=a.max_p)
    return [{"rec": "POINT", "x": x, "y": y} for x, y in pts] + [{"rec": "FIXED",
                                                                  "count": len(pts)}], 0


def cmd_spectrum(a, ctx):
    f = load_map(a.map, ctx)
    r = load_map(a.reversor, ctx)
    pt = tuple(parse_scalar(t, ctx) for t in a.point.split(","))
    if len(pt) != 2:
        raise ParseError("--point needs two comma-separated scalars", 0)
    ok = fixed_point_spectrum_check(f, r, pt)
    return [{"rec": "SPECTRUM", "reciprocal": str(ok).lower()}], 0 if ok else 1


# --- parser -------------------------------------------------------------------------

def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", default="Q", help="Q or Fp:<prime>")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--machine", action="store_true", help="key=value records")
    out.add_argument("--json", action="store_true", help="one JSON object per record")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--cap", type=int, default=64, help="brute-force power cap")
    return p


VERBS = {
    "decompose": (cmd_decompose, "decompose a map and print its normal form"),
    "normalform": (cmd_normalform, "normal form of a map or letter word"),
    "length": (cmd_length, "normal-form length"),
    "polydeg": (cmd_polydeg, "poly-degree sequence"),
    "degree": (cmd_degree, "degree via the normal form"),
    "cyclereduce": (cmd_cyclereduce, "conjugate to a cyclically reduced form"),
    "order": (cmd_order, "order of the element"),
    "conjtest": (cmd_conjtest, "search a conjugator between two elements"),
    "symcheck": (cmd_symcheck, "involutory symmetry (-x+u, -y+v)"),
    "revcheck": (cmd_revcheck, "necessary reversibility test, optional reversor check"),
    "buildrev": (cmd_buildrev, "build a reversible normal form"),
    "orbits": (cmd_orbits, "cycle report over F_p"),
    "fixpoints": (cmd_fixpoints, "fixed points over F_p"),
    "spectrum": (cmd_spectrum, "reciprocal-spectrum test at a fixed point"),
}


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="ga2", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, (_, help_) in VERBS.items():
        sp = sub.add_parser(verb, parents=[common], help=help_)
        if verb == "buildrev":
            sp.add_argument("--form", type=int, choices=(1, 2, 3, 4), required=True)
            sp.add_argument("--letters", required=True, help="A/E lines, ';' separated")
            sp.add_argument("--lead", help="B line for the leading basic map")
            sp.add_argument("--hat", help="ELEM line of the first elementary involution")
            sp.add_argument("--bar", help="ELEM line of the second elementary involution")
            sp.add_argument("--alpha", default="0")
            sp.add_argument("--gamma", default="1")
            continue
        sp.add_argument("map", help="map '(P, Q)', letter lines, or @file")
        if verb == "conjtest":
            sp.add_argument("other")
        if verb in ("revcheck", "spectrum"):
            sp.add_argument("--reversor", required=verb == "spectrum")
        if verb == "spectrum":
            sp.add_argument("--point", default="0,0")
        if verb in ("orbits", "fixpoints"):
            sp.add_argument("--max-p", type=int, default=101)
    return parser


def run(argv):
    """Returns (exit code, stdout lines, stderr lines)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), [], []
    try:
        ctx = FieldCtx.parse(args.field)
        records, code = VERBS[args.verb][0](args, ctx)
    except GA2Error as exc:
        return 2, [], [f"ERROR {exc.kind}: {exc}"]
    if args.machine:
        lines = [render_machine(r) for r in records]
    elif args.json:
        lines = [render_json(r) for r in records]
    else:
        lines = [render_human(r) for r in records]
    return code, lines, []


def main(argv=None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    for line in out:
        print(line)
    for line in err:
        print(line, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
