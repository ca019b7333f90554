"""Time the compiled kernels against the pure-Python/numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

from clusterword import _pykernels
from clusterword.corpus import corpus, language_semigroup
from clusterword.expansion import unambiguous_cover

try:
    from clusterword import _ckernels
except ImportError:
    _ckernels = None


def cases():
    members = corpus(seed=1, max_size=10, count=30)
    big = max((m.cover for m in members if m.cover is not None), key=lambda S: S.size)
    C, _, _ = unambiguous_cover(language_semigroup("(ab|ba)*a"))
    mid = next(m.S for m in members if m.S.size >= 8)
    return [("size %d" % S.size, S) for S in sorted({mid, big, C}, key=lambda S: S.size)]


def kernels(S):
    T, n = S.ext, S.size
    leq = S.green.leqR
    s = S.size - 1
    return {
        "leq_two_sided": lambda k: k.leq_two_sided(T),
        "associativity_witness": lambda k: k.associativity_witness(T),
        "ambiguity_witness": lambda k: k.ambiguity_witness(leq, n + 1),
        "equidivisibility_witness": lambda k: k.equidivisibility_witness(T, n),
        "factorization_edges": lambda k: k.factorization_edges(T, s),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; nothing to compare")
        return
    print(f"{'case':<10} {'kernel':<26} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, S in cases():
        for kname, f in kernels(S).items():
            tp = min(timeit.repeat(lambda: f(_pykernels), number=1, repeat=args.repeat)) * 1e3
            tc = min(timeit.repeat(lambda: f(_ckernels), number=1, repeat=args.repeat)) * 1e3
            print(f"{name:<10} {kname:<26} {tp:10.2f} {tc:10.2f} {tp / tc:8.1f}")


if __name__ == "__main__":
    main()
