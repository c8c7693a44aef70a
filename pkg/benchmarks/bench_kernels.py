"""Compare the compiled and pure-Python kernels on identical inputs.

    python benchmarks/bench_kernels.py [--words 20000] [--length 60] [--repeat 3]
"""
import argparse
import random
import timeit

from bsva import _pykernels

try:
    from bsva import _ckernels
except ImportError:
    _ckernels = None


def make_inputs(rng, count, length, n, m):
    words = []
    for _ in range(count):
        e0 = rng.randint(-5, 5)
        syls = []
        for _ in range(length):
            if rng.random() < 0.5:
                e = rng.choice((n, m)) * rng.choice((1, -1, 2))
            else:
                e = rng.randint(-2 * abs(m), 2 * abs(m))
            syls.append((rng.choice((1, -1)), e))
        words.append((e0, syls))
    return words


def bench(mod, name, words, n, m, angles, repeat):
    calls = {
        "normal_form": lambda: [mod.normal_form(n, m, e0, s) for e0, s in words],
        "britton_left+sweep": lambda: [mod.sweep(n, m, *mod.britton_left(n, m, e0, s)) for e0, s in words],
        "britton_right+sweep": lambda: [mod.sweep(n, m, *mod.britton_right(n, m, e0, s)) for e0, s in words],
        "neighbors": lambda: [(mod.forward_neighbors(n, m, p, q), mod.backward_neighbors(n, m, p, q))
                              for p, q in angles],
    }
    out = {}
    for label, fn in calls.items():
        out[label] = min(timeit.repeat(fn, number=1, repeat=repeat))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--words", type=int, default=20000)
    ap.add_argument("--length", type=int, default=60)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    words = make_inputs(rng, args.words, args.length, args.n, args.m)
    angles = []
    for _ in range(args.words):
        q = rng.randint(1, 10**6)
        angles.append((rng.randrange(q), q))

    py = bench(_pykernels, "python", words, args.n, args.m, angles, args.repeat)
    if _ckernels is None:
        print("compiled kernels not built; python timings only")
        for k, v in py.items():
            print(f"{k:24s} python {v:8.3f}s")
        return
    for e0, s in words[:200]:
        assert _ckernels.normal_form(args.n, args.m, e0, s) == _pykernels.normal_form(args.n, args.m, e0, s)
    cy = bench(_ckernels, "cython", words, args.n, args.m, angles, args.repeat)
    print(f"{args.words} words of {args.length} syllables, BS({args.n},{args.m})")
    print(f"{'kernel':24s} {'python':>9s} {'cython':>9s} {'speedup':>8s}")
    for k in py:
        print(f"{k:24s} {py[k]:8.3f}s {cy[k]:8.3f}s {py[k] / cy[k]:7.1f}x")


if __name__ == "__main__":
    main()
