"""Compare the compiled word kernel against the pure-Python fallback.

Times the three hot kernel functions on identical random inputs, plus one
representative full search run per backend (in subprocesses, so each one
goes through normal backend selection).

Usage:  python3 bench/bench_kernels.py [--repeat N] [--seed S]
"""

import argparse
import os
import random
import subprocess
import sys
import time

from ackirby import _kernel_c, _kernel_py


def make_words(rng, count, max_len):
    out = []
    for _ in range(count):
        raw = tuple(rng.choice((1, -1)) * rng.randrange(1, 4)
                    for _ in range(rng.randrange(1, max_len + 1)))
        out.append(raw)
    return out


def time_call(fn, args_list, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


SEARCH_SNIPPET = (
    "from ackirby.family import presentation_Ln1\n"
    "from ackirby.search import SearchConfig, search\n"
    "import ackirby, time\n"
    "t0 = time.perf_counter()\n"
    "out = search(presentation_Ln1(1), SearchConfig(max_total_length=13, max_depth=6))\n"
    "dt = time.perf_counter() - t0\n"
    "print('%s %s %d %.3f' % (ackirby.BACKEND, out.status, out.stats.visited, dt))\n"
)


def bench_search(pure):
    env = dict(os.environ)
    if pure:
        env["ACKIRBY_PURE"] = "1"
    else:
        env.pop("ACKIRBY_PURE", None)
    out = subprocess.run([sys.executable, "-c", SEARCH_SNIPPET], env=env,
                         capture_output=True, text=True, check=True)
    backend, status, visited, dt = out.stdout.split()
    return backend, status, int(visited), float(dt)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5,
                    help="timing repetitions, best-of (default %(default)s)")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    raw = [(w,) for w in make_words(rng, 4000, 64)]
    cores = [_kernel_py.canonical_relator(w) for (w,) in raw[:1600]]
    pairs = [(_kernel_py.canonical_relator(a[:8]),
              _kernel_py.canonical_relator(b[:8]))
             for a, b in zip(cores[0::2], cores[1::2])]

    rows = [("function", "compiled", "pure", "speedup")]
    for name, args_list in (("reduce_word", raw),
                            ("canonical_relator", raw),
                            ("expand_multiply", pairs)):
        tc = time_call(getattr(_kernel_c, name), args_list, args.repeat)
        tp = time_call(getattr(_kernel_py, name), args_list, args.repeat)
        rows.append((name, "%.4fs" % tc, "%.4fs" % tp, "%.1fx" % (tp / tc)))

    widths = [max(len(r[k]) for r in rows) for k in range(4)]
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())

    print()
    for pure in (False, True):
        backend, status, visited, dt = bench_search(pure)
        print("full search (%s backend): %s, visited=%d, %.3fs"
              % (backend, status, visited, dt))


if __name__ == "__main__":
    main()
