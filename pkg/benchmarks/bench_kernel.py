"""Compare the compiled and pure-Python reduction kernels.

    python benchmarks/bench_kernel.py [--repeat N]

Workloads: one-step successors over every enumerated term of cxty <= 6, and
full reduction graphs of the counter-example terms (the graph builder is run
with each backend patched in).
"""
from __future__ import annotations

import argparse
import time

from lambdamu import analysis, codec, kernel, reduce
from lambdamu.gen import GenConfig, enumerate_codes


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def successors_workload(impl, codes: list[bytes]):
    def run() -> int:
        n = 0
        for c in codes:
            n += len(impl.successors(c, 7))
        return n

    return run


def graph_workload(impl, terms: list[bytes]):
    def run() -> int:
        saved = reduce.kernel.successors
        reduce.kernel.successors = impl.successors
        try:
            return sum(len(reduce.build_graph(t, reduce.ALL)) for t in terms)
        finally:
            reduce.kernel.successors = saved

    return run


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = kernel.backends()
    codes = list(enumerate_codes(GenConfig(max_size=6, free_lambda_pool=("x", "y"), free_mu_pool=("a", "b"))))
    cx = analysis.counterexample_terms()
    graphs = [codec.encode(cx[k]) for k in ("(M0 M0)", "(M1 M1)", "M'[b=_r mu a.N]")]
    print(f"backends: {', '.join(impls)} (default: {kernel.BACKEND})")
    rows = []
    for label, make in (("successors, 12641 terms", lambda i: successors_workload(i, codes)),
                        ("graphs, 3 SN counter-example terms", lambda i: graph_workload(i, graphs))):
        times = {name: _time(make(impl), args.repeat) for name, impl in impls.items()}
        rows.append((label, times))
    for label, times in rows:
        parts = "  ".join(f"{k}={v * 1000:8.1f} ms" for k, v in times.items())
        speed = ""
        if "cython" in times:
            speed = f"  speed-up {times['python'] / times['cython']:.1f}x"
        print(f"{label:38s} {parts}{speed}")


if __name__ == "__main__":
    main()
