"""Benchmark families and a small timing harness.

Each family is generated as text in the input grammar and parsed, so the
desugaring of ``->``, ``<->`` and ``^`` is the parser's.  The decision
target is always the negation of the generated formula.
"""

from __future__ import annotations

import csv
import io
import multiprocessing as mp
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .parser import parse
from .sat import check_sat
from .transforms import negate

FAMILIES = ("include", "nester", "counter")
_OR = " \\/ "
FIELDS = ("family", "n", "time_ms", "nodes", "edges", "verdict")


def include_text(n: int) -> str:
    if n < 0:
        raise ValueError("n must be >= 0")
    body = "(!q /\\ ()X)"
    for _ in range(2 * n):
        body = f"(q /\\ (){body})"
    return f"nu X.{body} -> nu Z.(mu Y.(!q /\\ ()Z \\/ q /\\ ()(q /\\ ()Y)))"


def nester_psi_text(n: int) -> str:
    if n < 1:
        raise ValueError("n must be >= 1")
    inner = f"(q{n} \\/ ()X{n})"
    for i in range(n - 1, 0, -1):
        inner = f"(q{i} \\/ ()(X{i} /\\ {inner}))"
    text = inner
    for i in range(n, 0, -1):
        kind = "mu" if i % 2 else "nu"
        text = f"{kind} X{i}.{text}" if i == n else f"{kind} X{i}.({text})"
    return text


def nester_text(n: int) -> str:
    psi = nester_psi_text(n)
    return f"({psi}) \\/ !({psi})"


def counter_text(n: int) -> str:
    if n < 0:
        raise ValueError("n must be >= 0")
    steps = ["(c0 ^ ()!c0)"]
    for i in range(1, n + 1):
        steps.append(f"(()c{i} ^ (c{i} /\\ !c{i - 1} \\/ c{i - 1} /\\ (()c{i - 1} <-> c{i})))")
    inits = _OR.join(f"!c{i}" for i in range(n + 1))
    return f"{inits}{_OR}mu X.(()X{_OR}{_OR.join(steps)})"


def gen_include(n):
    return parse(include_text(n))


def gen_nester(n):
    return parse(nester_text(n))


def gen_counter(n):
    return parse(counter_text(n))


GENERATORS = {"include": gen_include, "nester": gen_nester, "counter": gen_counter}


@dataclass(frozen=True)
class BenchRecord:
    family: str
    n: int
    time_ms: float | None
    nodes: int | None
    edges: int | None
    verdict: str                  # "sat", "unsat" or "timeout"

    def row(self):
        t = "" if self.time_ms is None else f"{self.time_ms:.1f}"
        return [self.family, self.n, t,
                "" if self.nodes is None else self.nodes,
                "" if self.edges is None else self.edges, self.verdict]


def _measure(family, n, reps, single_pass):
    target = negate(GENERATORS[family](n))
    times = []
    for _ in range(max(1, reps)):
        t0 = time.perf_counter()
        v = check_sat(target, single_pass=single_pass)
        times.append((time.perf_counter() - t0) * 1000.0)
    g = v.graph
    return BenchRecord(family, n, statistics.median(times), g.n, len(g.edges),
                       "sat" if v.satisfiable else "unsat")


def _child(conn, args):
    try:
        conn.send(("ok", _measure(*args)))
    except BaseException as exc:      # reported to the parent
        conn.send(("err", repr(exc)))
    finally:
        conn.close()


def _measure_with_timeout(family, n, reps, single_pass, timeout):
    if timeout is None:
        return _measure(family, n, reps, single_pass)
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    parent, child = ctx.Pipe(duplex=False)
    p = ctx.Process(target=_child, args=(child, (family, n, reps, single_pass)))
    p.start()
    child.close()
    if parent.poll(timeout):
        status, value = parent.recv()
        p.join()
        if status == "err":
            raise RuntimeError(value)
        return value
    p.terminate()
    p.join()
    return BenchRecord(family, n, timeout * 1000.0, None, None, "timeout")


def run_bench(family, ns, reps=1, timeout=None, single_pass=False, parallel=False):
    """One record per n; rows that exceed `timeout` seconds are recorded
    as such and the run continues."""
    if family not in GENERATORS:
        raise ValueError(f"unknown family {family!r}")
    ns = list(ns)
    if parallel and ns:
        with ProcessPoolExecutor() as ex:
            futs = [ex.submit(_measure_with_timeout, family, n, reps, single_pass, timeout)
                    for n in ns]
            return [f.result() for f in futs]
    return [_measure_with_timeout(family, n, reps, single_pass, timeout) for n in ns]


def to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()
