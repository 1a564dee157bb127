"""Command-line front end.

A query is a line of ``key=value`` pairs, for example::

    algebra=gl(1|2) borel=edd form=unitary(1,i,i) weight=1+1i, 3/2, -5/2

Keys: ``algebra`` (required), ``borel``, ``form`` (required), ``weight``
(required), ``route`` (auto, group or cascade).  A value runs until the next
key, so weights may contain blanks after the commas.

The structured report is a block of ``key: value`` lines in the fixed order
endotype, divalg, splits, lambdaB, r, c_lambda, followed by one comment line
starting with ``#``.
"""

import argparse
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .algebra_model import BorelShuffle, ModelError, build_algebra, dominance_warnings
from .bw_monoid import Endotype, report
from .engine import classify, endotype_from_table2, endotype_warnings
from .errors import InvariantViolation, PreconditionError
from .real_forms import InvolutionError, InvolutionSpec, Recipe, make_involution
from .scalars import G, I, ONE

__all__ = [
    "ParseError", "Query", "Report", "parse_query", "run", "emit",
    "parse_report", "main", "REPORT_KEYS",
]

REPORT_KEYS = ("endotype", "divalg", "splits", "lambdaB", "r", "c_lambda")
KEYS = ("algebra", "borel", "form", "weight", "route")
ROUTES = ("auto", "group", "cascade")

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INVARIANT = 0, 1, 2, 3


class ParseError(ValueError):
    """Syntax or arity error, annotated with a 0-based character position."""

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        where = "" if position is None else " at column %d" % (position + 1)
        super().__init__(message + where)

    def pointer(self):
        if self.position is None or self.text is None:
            return ""
        return "%s\n%s^" % (self.text, " " * self.position)


@dataclass(frozen=True)
class Query:
    family: str
    m: int
    n: int
    borel: str
    form: InvolutionSpec
    weight: tuple
    route: str = "auto"
    text: str = ""

    def model(self):
        return build_algebra(self.family, self.m, self.n)


@dataclass(frozen=True)
class Report:
    endotype: str
    divalg: str
    splits: str
    lambdaB: str
    r: str
    c_lambda: str
    summary: str = ""

    def fields(self):
        return [(k, getattr(self, k)) for k in REPORT_KEYS]


# ------------------------------------------------------------------ parsing

_KEY = re.compile(r"(?:(?<=\s)|^)(%s)=" % "|".join(KEYS))
_ALGEBRA = re.compile(
    r"^(?P<fam>gl|sl|psl|q)\((?P<m>\d+)(?:\|(?P<n>\d+))?\)$")
_SIGS = re.compile(r"^(?P<kind>u|hyperbolic)\((\d+),(\d+)\|(\d+),(\d+)\)$")
_UNIT = {"1": ONE, "-1": -ONE, "i": I, "-i": -I, "+i": I, "+1": ONE}


def _split_pairs(text):
    matches = list(_KEY.finditer(text))
    if not matches:
        raise ParseError("expected key=value pairs", 0, text)
    head = text[:matches[0].start()]
    if head.strip():
        raise ParseError("unknown token %r" % head.strip(),
                         len(head) - len(head.lstrip()), text)
    out = {}
    for k, mt in enumerate(matches):
        end = matches[k + 1].start() if k + 1 < len(matches) else len(text)
        key = mt.group(1)
        if key in out:
            raise ParseError("duplicate key %r" % key, mt.start(), text)
        out[key] = (text[mt.end():end].strip(), mt.end())
    return out


def _parse_algebra(value, pos, text):
    mt = _ALGEBRA.match(value.replace(" ", ""))
    if mt is None:
        raise ParseError("unknown algebra %r; expected gl(m|n), sl(m|n), "
                         "psl(m|n), q(n), gl(n) or sl(n)" % value, pos, text)
    fam, m = mt.group("fam"), int(mt.group("m"))
    n = mt.group("n")
    if fam == "q":
        if n is not None:
            raise ParseError("q(n) takes a single size", pos, text)
        if m < 1:
            raise ParseError("unsupported size q(%d)" % m, pos, text)
        return "q", m, m
    if n is None:
        # purely even algebras
        fam = "reductive_gl" if fam == "gl" else fam
        n = 0
    n = int(n)
    if m + n == 0:
        raise ParseError("unsupported size (%d|%d)" % (m, n), pos, text)
    return fam, m, n


def _gaussian(token, pos, text):
    try:
        return G.parse(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError("bad coefficient %r" % token.strip(), pos, text) from None


def _parse_weight(value, pos, text, arity):
    if not value:
        raise ParseError("empty weight", pos, text)
    coeffs, offset = [], pos
    for token in value.split(","):
        coeffs.append(_gaussian(token, offset + len(token) - len(token.lstrip()), text))
        offset += len(token) + 1
    if len(coeffs) != arity:
        raise ParseError("weight needs %d coefficients, got %d"
                         % (arity, len(coeffs)), pos, text)
    return tuple(coeffs)


def _unit(token, pos, text, strict=False):
    token = token.strip()
    if token in _UNIT:
        return _UNIT[token]
    if strict:
        raise ParseError("unitary entries must be 1, -1, i or -i, got %r" % token,
                         pos, text)
    return _gaussian(token, pos, text)


def _parse_form(value, pos, text, size, blocks):
    compact = value.replace(" ", "")
    if compact in ("split", "qbar", "pebar"):
        return getattr(InvolutionSpec, compact)()
    mt = _SIGS.match(compact)
    if mt:
        p, q, r, s = (int(mt.group(k)) for k in range(2, 6))
        if p + q + r + s != size:
            raise ParseError("form has %d entries, algebra needs %d"
                             % (p + q + r + s, size), pos, text)
        if blocks and (p + q, r + s) != blocks:
            raise ParseError("form has blocks (%d|%d), algebra needs (%d|%d)"
                             % ((p + q, r + s) + blocks), pos, text)
        maker = InvolutionSpec.u if mt.group("kind") == "u" else InvolutionSpec.hyperbolic_unitary
        return maker(p, q, r, s)
    if compact.startswith("unitary(") and compact.endswith(")"):
        signs = [_unit(t, pos, text, strict=True) for t in compact[8:-1].split(",")]
        if len(signs) != size:
            raise ParseError("unitary form has %d entries, algebra needs %d"
                             % (len(signs), size), pos, text)
        return InvolutionSpec.unitary(signs)
    if compact.startswith("custom(") and compact.endswith(")"):
        body = compact[7:-1]
        recipe, _, rows = body.partition(";")
        try:
            recipe = Recipe(recipe)
        except ValueError:
            raise ParseError("unknown recipe %r" % recipe, pos, text) from None
        matrix = [[_unit(t, pos, text) for t in row.split(",")]
                  for row in rows.split(";") if row]
        if len(matrix) != size or any(len(row) != size for row in matrix):
            raise ParseError("custom matrix must be %dx%d" % (size, size), pos, text)
        return InvolutionSpec.custom(matrix, recipe)
    raise ParseError("unknown form %r" % value, pos, text)


def parse_query(text):
    """Parse one query line into a Query, raising ParseError."""
    text = text.rstrip("\n")
    pairs = _split_pairs(text)
    if "algebra" not in pairs:
        raise ParseError("missing key 'algebra'", 0, text)
    fam, m, n = _parse_algebra(*pairs["algebra"], text)
    for key in ("form", "weight"):
        if key not in pairs:
            raise ParseError("missing key %r" % key, len(text), text)
    size = 2 * m if fam == "q" else m + n
    arity = m if fam == "q" else m + n
    borel = ""
    if "borel" in pairs:
        borel, pos = pairs["borel"]
        if not re.fullmatch(r"[ed]+", borel):
            raise ParseError("shuffle word must match [ed]+", pos, text)
        want = (m, 0) if fam == "q" else (m, n)
        if (borel.count("e"), borel.count("d")) != want:
            raise ParseError("word %r needs %d e's and %d d's" % ((borel,) + want),
                             pos, text)
    blocks = None if fam == "q" else (m, n)
    form = _parse_form(*pairs["form"], text, size, blocks)
    weight = _parse_weight(*pairs["weight"], text, arity)
    route = "auto"
    if "route" in pairs:
        route, pos = pairs["route"]
        if route not in ROUTES:
            raise ParseError("route must be one of %s" % ", ".join(ROUTES), pos, text)
    return Query(fam, m, n, borel, form, weight, route, text)


# ------------------------------------------------------------------ running

def _format_weight(w):
    return ", ".join(str(c) for c in w.coeffs)


def _make_report(e, lam_b, r, c):
    rep = report(e)
    splits = rep.splits_as.value
    if rep.restriction_irreducible:
        summary = "# endotype=%s; restriction stays irreducible? yes (E(V)=%s)" % (e, splits)
    else:
        summary = "# endotype=%s; restriction stays irreducible? no (F(W)=%s)" % (e, splits)
    return Report(
        endotype=str(e),
        divalg=rep.divalg,
        splits=splits,
        lambdaB=_format_weight(lam_b),
        r=str(r),
        c_lambda="none" if c is None else str(c),
        summary=summary,
    )


def _group(model, tau, b, lam):
    res = classify(model, tau, lam, b)
    return res.endotype, res.lambda_B, res.r, res.c_lambda, res.data.trace


def _cascade(model, tau, b, lam):
    from .cascade import CascadeContext, c_lambda_cascade
    from .engine import lambda_data
    if model.is_q:
        raise PreconditionError("the cascade route covers type-A models only")
    ctx = CascadeContext.build(model, tau, b)
    data, _ = lambda_data(model, tau, b, lam, rel=ctx.lifted)
    if not data.matches:
        return Endotype.C0, data.lambda_B, data.r, None, data.trace
    c = c_lambda_cascade(lam, ctx.cascade, data.hc_value)
    data.trace.append("cascade roots %s" % " ".join(map(str, ctx.cascade.roots)))
    return endotype_from_table2(data.r, c), data.lambda_B, data.r, c, data.trace


def run(query, verify=False, log=None):
    """Classify a parsed query; returns a Report.

    ``log`` receives trace and warning lines when given.
    """
    model = query.model()
    tau = make_involution(query.form, model)
    b = BorelShuffle(query.borel) if query.borel else model.standard_borel()
    model.check_borel(b)
    lam = model.weight(query.weight)
    route = query.route
    if route == "cascade":
        e, lam_b, r, c, trace = _cascade(model, tau, b, lam)
    else:
        e, lam_b, r, c, trace = _group(model, tau, b, lam)
    if verify:
        other = _group if route == "cascade" else _cascade
        e2, _, _, c2, _ = other(model, tau, b, lam)
        if e2 != e or (c is None) != (c2 is None) or (c is not None and c.sign() != c2.sign()):
            raise InvariantViolation("group and cascade routes disagree: %s vs %s" % (e, e2))
    if log is not None:
        for line in trace:
            log("trace: " + line)
        for line in dominance_warnings(model, lam) + endotype_warnings(e, model, query.form):
            log("warning: " + line)
    return _make_report(e, lam_b, r, c)


# ----------------------------------------------------------------- emitting

def emit(rep):
    lines = ["%s: %s" % kv for kv in rep.fields()]
    if rep.summary:
        lines.append(rep.summary)
    return "\n".join(lines) + "\n"


def parse_report(text):
    """Inverse of ``emit``."""
    values, summary = {}, ""
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            summary = line
            continue
        key, sep, value = line.partition(": ")
        if not sep or key not in REPORT_KEYS or key in values:
            raise ParseError("bad report line %r" % line)
        values[key] = value
    if [k for k in REPORT_KEYS if k in values] != list(REPORT_KEYS):
        raise ParseError("report is missing keys")
    return Report(summary=summary, **values)


# ---------------------------------------------------------------------- main

def _classify_line(line, verify, verbose):
    """(exit code, stdout text, stderr lines) for one query."""
    messages = []
    log = messages.append if verbose else None
    try:
        query = parse_query(line)
        out = emit(run(query, verify=verify, log=log))
        return EXIT_OK, out, messages
    except ParseError as exc:
        messages.append("parse error: %s" % exc)
        if exc.pointer():
            messages.append(exc.pointer())
        return EXIT_PARSE, "", messages
    except InvariantViolation as exc:
        messages.append("internal error: %s" % exc)
        return EXIT_INVARIANT, "", messages
    except (PreconditionError, ModelError, InvolutionError) as exc:
        messages.append("precondition: %s" % exc)
        return EXIT_PRECONDITION, "", messages


def _batch_lines(path):
    handle = sys.stdin if path == "-" else open(path, encoding="utf-8")
    with handle:
        return [ln.rstrip("\n") for ln in handle
                if ln.strip() and not ln.lstrip().startswith("#")]


def build_parser():
    p = argparse.ArgumentParser(
        prog="endotype",
        description="Classify irreducible modules of real forms of Lie "
                    "superalgebras by their endotype.")
    p.usage = "endotype [--verify] [--verbose] [--batch FILE] [--jobs N] [key=value ...]"
    p.add_argument("--batch", metavar="FILE",
                   help="one query per line; '-' reads standard input")
    p.add_argument("--verify", action="store_true",
                   help="run the group and cascade routes and compare")
    p.add_argument("--verbose", action="store_true",
                   help="print the odd-reflection trace to stderr")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                   help="worker threads in batch mode")
    return p


_VALUED = ("--batch", "--jobs")


def _separate(argv):
    """Split argv into option tokens and query tokens.

    Query tokens may begin with '-' (a weight such as ``-5/2``), so argparse
    only sees tokens that start with '--' and the values that follow them.
    """
    options, query = [], []
    it = iter(argv)
    for tok in it:
        if tok.startswith("--") or tok in ("-h",):
            options.append(tok)
            if tok in _VALUED:
                options.append(next(it, ""))
        else:
            query.append(tok)
    return options, query


def main(argv=None):
    parser = build_parser()
    options, tokens = _separate(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(options)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    args.query = tokens
    if args.batch and args.query:
        print("error: give either a query or --batch", file=sys.stderr)
        return EXIT_PARSE
    if args.batch:
        try:
            lines = _batch_lines(args.batch)
        except OSError as exc:
            print("error: %s" % exc, file=sys.stderr)
            return EXIT_PARSE
    elif args.query:
        lines = [" ".join(args.query)]
    else:
        parser.print_usage(sys.stderr)
        return EXIT_PARSE
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(
            lambda ln: _classify_line(ln, args.verify, args.verbose), lines))
    code = EXIT_OK
    for k, (status, out, messages) in enumerate(results):
        if len(lines) > 1:
            sys.stdout.write("query: %s\n" % lines[k])
        sys.stdout.write(out)
        for msg in messages:
            print(msg, file=sys.stderr)
        if len(lines) > 1:
            sys.stdout.write("\n")
        code = max(code, status)
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
