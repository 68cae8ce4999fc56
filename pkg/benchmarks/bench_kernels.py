"""Compare the compiled and pure-Python graph kernels.

    python3 benchmarks/bench_kernels.py [--sizes 1000,10000,100000] [--reps 3]

Times scc and nu_decompose on random sparse graphs, then a full model
check over a large ring-shaped structure with each backend swapped in.
"""

import argparse
import random
import statistics
import time

from nutl import kernels
from nutl.kernels import _pure
from nutl.kripke import KripkeStructure
from nutl.mc import model_check
from nutl.parser import parse

try:
    from nutl.kernels import _fast
except ImportError:
    _fast = None


def timed(fn, reps):
    ts = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        ts.append(time.perf_counter() - t0)
    return statistics.median(ts) * 1000.0


def random_graph(n, rng, degree=3, nvars=6):
    m = n * degree
    src = [rng.randrange(n) for _ in range(m)]
    dst = [rng.randrange(n) for _ in range(m)]
    masks = [rng.randrange(1 << nvars) for _ in range(m)]
    cover = [(1 << v, (1 << v) | (1 << ((v + 1) % nvars))) for v in range(0, nvars, 2)]
    return src, dst, masks, cover


def ring(n):
    states = tuple(f"s{i}" for i in range(n))
    trans = {(states[i], states[(i + 1) % n]) for i in range(n)}
    trans |= {(states[i], states[(i * 7 + 3) % n]) for i in range(n)}
    labels = {s: frozenset({"p"} if i % 3 else {"q"}) for i, s in enumerate(states)}
    return KripkeStructure(states, states[0], frozenset(trans), labels)


def with_backend(mod, fn):
    saved = kernels.scc, kernels.nu_decompose
    kernels.scc, kernels.nu_decompose = mod.scc, mod.nu_decompose
    try:
        return fn()
    finally:
        kernels.scc, kernels.nu_decompose = saved


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="1000,10000,100000")
    ap.add_argument("--states", type=int, default=3000)
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()
    if _fast is None:
        raise SystemExit("compiled kernels are not built; run: pip install -e . --no-build-isolation")
    backends = [("python", _pure), ("cython", _fast)]
    print(f"{'kernel':<14}{'size':>8}{'python ms':>12}{'cython ms':>12}{'speedup':>9}")
    rng = random.Random(0)
    for n in (int(x) for x in args.sizes.split(",")):
        src, dst, masks, cover = random_graph(n, rng)
        idx = list(range(len(src)))
        rows = {
            "scc": lambda mod: mod.scc(n, src, dst),
            "nu_decompose": lambda mod: mod.nu_decompose(n, src, dst, masks, cover, idx),
        }
        for name, call in rows.items():
            results = [call(mod) for _, mod in backends]
            assert results[0] == results[1], f"{name}: backends disagree"
            t = [timed(lambda: call(mod), args.reps) for _, mod in backends]
            print(f"{name:<14}{n:>8}{t[0]:>12.1f}{t[1]:>12.1f}{t[0] / t[1]:>8.1f}x")
    m = ring(args.states)
    phi = parse("nu X.(mu Y.(q \\/ ()Y) /\\ ()X)")
    t = []
    for _, mod in backends:
        verdicts = with_backend(mod, lambda: model_check(m, phi).holds)
        t.append(timed(lambda: with_backend(mod, lambda: model_check(m, phi)), args.reps))
    print(f"{'model_check':<14}{args.states:>8}{t[0]:>12.1f}{t[1]:>12.1f}{t[0] / t[1]:>8.1f}x"
          f"   (holds={verdicts})")


if __name__ == "__main__":
    main()
