"""Compare the compiled and pure-Python rewriting kernels.

    python benchmarks/bench_kernel.py [--repeat 3]

Each workload builds fresh presentations, so caches never carry over
between kernels.  Outputs are hashed to confirm both kernels agree.
"""
import argparse
import hashlib
import itertools
import time

from ckhopf import Presentation, check_confluence
from ckhopf.bicross import check_bicrossproduct, check_hopf_axioms


def workload(kernel):
    out = []
    for om in itertools.product((-1, 0, 1), repeat=3):
        p = Presentation(4, om).use_kernel(kernel)
        out.append(check_confluence(p).to_json())
        out.append(check_hopf_axioms(p).to_json())
    p = Presentation(4, (0, 0, 1), "new", 3).use_kernel(kernel)
    out.append(check_bicrossproduct(p).to_json())
    return hashlib.sha256("".join(out).encode()).hexdigest()


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    try:
        from ckhopf import _kernel  # noqa: F401
        kernels = ["python", "c"]
    except ImportError:
        print("compiled kernel not built; timing the Python kernel only")
        kernels = ["python"]
    best, digests = {}, {}
    for k in kernels:
        times = []
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            digests[k] = workload(k)
            times.append(time.perf_counter() - t0)
        best[k] = min(times)
        print(f"{k:>6}: best of {args.repeat}: {best[k]:.3f}s")
    if len(kernels) == 2:
        print(f"speedup: {best['python'] / best['c']:.2f}x")
        print("outputs identical" if digests["python"] == digests["c"] else "OUTPUTS DIFFER")


if __name__ == "__main__":
    main()
