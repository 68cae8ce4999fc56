"""Command-line entry point.

Exit status is 0 when the command ran (the verdict is on stdout), 1 for
usage and input errors, 2 when a budget or time limit was hit.
"""

from __future__ import annotations

import argparse
import contextlib
import signal
import sys

from . import __version__
from .bench import FAMILIES, run_bench, to_csv
from .errors import BudgetExceeded, NutlError
from .kripke import parse_kripke
from .lasso import eval_lasso, parse_lasso
from .mc import build_product, model_check, pg_reduction, product_dot
from .parser import parse
from .formula import Next, conj
from .pf import Compiled, mark_of, root_conjuncts
from .pfg import build_pfg, dot_export
from .printer import to_text
from .sat import check_sat
from .transforms import guard_transform, is_guarded, negate


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Timeout(Exception):
    pass


@contextlib.contextmanager
def _time_limit(seconds):
    if not seconds or not hasattr(signal, "setitimer"):
        yield
        return

    def fire(signum, frame):
        raise _Timeout()

    old = signal.signal(signal.SIGALRM, fire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _formula(args):
    if args.expr is not None and args.file is not None:
        raise UsageError("give either -e FORMULA or a formula file, not both")
    if args.expr is None and args.file is None:
        raise UsageError("no formula given (use -e FORMULA or a file)")
    text = args.expr if args.expr is not None else _read(args.file)
    f = parse(text)
    if args.guard:
        f = guard_transform(f, budget=args.budget)
    elif not is_guarded(f):
        raise UsageError("formula is not guarded; rerun with --guard")
    return f


def _write_dot(path, text, out):
    if path == "-":
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_sat(args, out):
    f = _formula(args)
    v = check_sat(f, budget=args.budget, single_pass=args.single_pass,
                  simple_loops=args.simple_loops)
    out.write("SAT\n" if v.satisfiable else "UNSAT\n")
    if v.satisfiable and args.witness:
        out.write(f"witness: {v.lasso}\n")
    if args.dot:
        hl = v.witness.prefix_edges + v.witness.loop_edges if v.witness else ()
        _write_dot(args.dot, dot_export(v.graph, highlight=hl), out)


def cmd_mc(args, out):
    f = _formula(args)
    m = parse_kripke(_read(args.model))
    v = model_check(m, f, budget=args.budget, single_pass=args.single_pass,
                    simple_loops=args.simple_loops)
    out.write("HOLDS\n" if v.holds else "VIOLATED\n")
    if not v.holds and args.witness:
        out.write(f"counterexample: {v.counterexample}\n")
    if args.dot:
        hl = v.witness.prefix_edges + v.witness.loop_edges if v.witness else ()
        _write_dot(args.dot, product_dot(v.product, highlight=hl), out)


def _pf_lines(f):
    c = Compiled(f)
    for d in c.decompose(root_conjuncts(c), first_unfold=True):
        fut = Next(conj(c.closed(fc.formula) for fc in d.future))
        yield f"{d.present} /\\ {to_text(fut)} [{' '.join(sorted(mark_of(d)))}]\n"


def cmd_pfg(args, out):
    f = _formula(args)
    if args.pf:
        out.writelines(_pf_lines(f))
        return
    if args.model:
        m = parse_kripke(_read(args.model))
        g = build_pfg(negate(f), budget=args.budget, single_pass=args.single_pass)
        pg = pg_reduction(build_product(m, g), single_pass=args.single_pass)
        text = product_dot(pg) if args.dot else pg.dump()
    else:
        g = build_pfg(f, budget=args.budget, single_pass=args.single_pass)
        text = dot_export(g) if args.dot else g.dump()
    if args.dot and args.dot != "-":
        _write_dot(args.dot, text, out)
    else:
        out.write(text)


def cmd_eval(args, out):
    if args.expr is not None and args.file is not None:
        raise UsageError("give either -e FORMULA or a formula file, not both")
    text = args.expr if args.expr is not None else _read(args.file) if args.file else None
    if text is None:
        raise UsageError("no formula given (use -e FORMULA or a file)")
    f = parse(text)
    w = parse_lasso(args.lasso)
    out.write("true\n" if eval_lasso(f, w) else "false\n")


def _range(text):
    try:
        if "..." in text or ".." in text:
            a, b = text.replace("...", "..").split("..")
            return range(int(a), int(b) + 1)
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad range {text!r} (use A..B or a comma list)") from None


def cmd_bench(args, out):
    recs = run_bench(args.family, _range(args.n), reps=args.reps, timeout=args.timeout,
                     single_pass=args.single_pass, parallel=args.parallel)
    text = to_csv(recs)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def build_parser():
    p = _Parser(prog="nutl", description="Decision procedures for the linear-time mu-calculus.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def formula_opts(sp, graph=True):
        sp.add_argument("file", nargs="?", help="formula file ('-' for stdin)")
        sp.add_argument("-e", "--expr", help="formula text")
        if not graph:
            return
        sp.add_argument("--guard", action="store_true",
                        help="rewrite unguarded formulas into guarded ones first")
        sp.add_argument("--paper-prune", dest="single_pass", action="store_true",
                        help="single dead-node pruning pass")
        sp.add_argument("--budget", type=int, default=200_000, help="node budget")
        sp.add_argument("--timeout", type=float, default=None, help="seconds")

    s = sub.add_parser("sat", help="decide satisfiability")
    formula_opts(s)
    s.add_argument("--witness", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("--dot", metavar="PATH", help="write the graph as DOT ('-' for stdout)")
    s.add_argument("--simple-loops", action="store_true",
                   help="depth-first simple-loop search only")
    s.set_defaults(run=cmd_sat)

    s = sub.add_parser("mc", help="check a Kripke structure against a property")
    formula_opts(s)
    s.add_argument("--model", required=True, help="Kripke structure file")
    s.add_argument("--witness", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("--dot", metavar="PATH", help="write the product as DOT ('-' for stdout)")
    s.add_argument("--simple-loops", action="store_true",
                   help="depth-first simple-loop search only")
    s.set_defaults(run=cmd_mc)

    s = sub.add_parser("pfg", help="print the present-future graph (or a product)")
    formula_opts(s)
    s.add_argument("--model", help="print the product of this structure with the negation")
    s.add_argument("--dot", metavar="PATH", help="DOT instead of the text dump ('-' for stdout)")
    s.add_argument("--pf", action="store_true",
                   help="print the root's PF form, one disjunct per line with its marks")
    s.set_defaults(run=cmd_pfg)

    s = sub.add_parser("eval", help="evaluate a formula on a lasso word")
    formula_opts(s, graph=False)
    s.add_argument("--lasso", required=True, help="e.g. 'prefix: {p} ; period: {q} {}'")
    s.add_argument("--timeout", type=float, default=None, help="seconds")
    s.set_defaults(run=cmd_eval)

    s = sub.add_parser("bench", help="run a benchmark family, CSV output")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("-n", default="0..3", help="indices, A..B or a comma list")
    s.add_argument("--reps", type=int, default=1)
    s.add_argument("--timeout", type=float, default=None, help="seconds per row")
    s.add_argument("--paper-prune", dest="single_pass", action="store_true",
                   help="single dead-node pruning pass")
    s.add_argument("--parallel", action="store_true", help="run rows in parallel")
    s.add_argument("--out", help="CSV file instead of stdout")
    s.set_defaults(run=cmd_bench)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        limit = args.timeout if args.command != "bench" else None
        with _time_limit(limit):
            args.run(args, out)
        return 0
    except UsageError as e:
        err.write(f"nutl: error: {e}\n")
        return 1
    except (BudgetExceeded, _Timeout) as e:
        err.write(f"nutl: {'time limit exceeded' if isinstance(e, _Timeout) else e}\n")
        return 2
    except NutlError as e:
        err.write(f"nutl: error: {e}\n")
        return 1
    except (OSError, ValueError, UnicodeDecodeError) as e:
        err.write(f"nutl: error: {e}\n")
        return 1
    except RecursionError:
        err.write("nutl: error: input nested too deeply\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
