"""Compare the compiled and pure-Python integer kernels.

Micro timings call both modules directly; the end-to-end timing runs a
workload in a subprocess once per backend (REALRANK_PURE_PYTHON switches
the dispatcher at import).
"""

import argparse
import json
import os
import random
import subprocess
import sys
import timeit

from realrank import _kernels_py as pure

try:
    from realrank import _kernels as compiled
except ImportError:  # extension not built
    compiled = None

WORKLOADS = {
    "quintic-region": (
        "from realrank.plane_curves import region_map\n"
        "from realrank.plane_curves.presets import FIGURE2_CHART, figure2_curve\n"
        "region_map(figure2_curve(), FIGURE2_CHART, resolution=({n}, {n}))\n"
    ),
    "real-rank": (
        "import random\n"
        "from fractions import Fraction\n"
        "from realrank import BinaryForm, real_rank\n"
        "rng = random.Random(0)\n"
        "for _ in range({n}):\n"
        "    f = BinaryForm(tuple(Fraction(rng.randint(-50, 50)) for _ in range(6)))\n"
        "    real_rank(f, seed=0)\n"
    ),
}


def micro_cases(rng: random.Random, degree: int):
    def poly(d):
        return [rng.randint(-10 ** 6, 10 ** 6) for _ in range(d)] + [rng.randint(1, 10 ** 6)]

    p, q = poly(degree), poly(degree // 2)
    chain = pure.sturm_chain(list(p))
    m = [[rng.randint(-100, 100) for _ in range(8)] for _ in range(8)]
    return {
        "mul": lambda k: k.mul(p, q),
        "sturm_chain": lambda k: k.sturm_chain(list(p)),
        "poly_gcd": lambda k: k.poly_gcd(list(p), list(q)),
        "squarefree_part": lambda k: k.squarefree_part(list(p)),
        "count_real_roots": lambda k: k.count_real_roots(list(p)),
        "sign_variations": lambda k: k.sign_variations(chain, 12345, 678),
        "bareiss_det": lambda k: k.bareiss_det([r[:] for r in m]),
    }


def run_micro(degree: int, repeat: int, seed: int) -> dict:
    rng = random.Random(seed)
    out = {}
    for name, fn in micro_cases(rng, degree).items():
        row = {"python": min(timeit.repeat(lambda: fn(pure), number=20, repeat=repeat)) / 20}
        if compiled is not None:
            row["cython"] = min(timeit.repeat(lambda: fn(compiled), number=20, repeat=repeat)) / 20
            row["speedup"] = row["python"] / row["cython"]
        out[name] = row
    return out


def run_end_to_end(workload: str, n: int) -> dict:
    code = (
        "import time\n"
        "t0 = time.perf_counter()\n"
        + WORKLOADS[workload].format(n=n)
        + "import realrank.kernels as k\n"
        "print(k.BACKEND, time.perf_counter() - t0)\n"
    )
    out = {}
    for pure_flag in ("0", "1"):
        env = dict(os.environ, REALRANK_PURE_PYTHON=pure_flag)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, seconds = res.stdout.split()
        out[backend] = float(seconds)
    if "cython" in out:
        out["speedup"] = out["python"] / out["cython"]
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--degree", type=int, default=20, help="degree of the random test polynomials")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workload", choices=sorted(WORKLOADS), default="quintic-region")
    parser.add_argument("--size", type=int, default=20, help="grid side or number of forms for the workload")
    parser.add_argument("--skip-end-to-end", action="store_true")
    args = parser.parse_args(argv)

    report = {"compiled_available": compiled is not None,
              "micro": run_micro(args.degree, args.repeat, args.seed)}
    if not args.skip_end_to_end:
        report["end_to_end"] = {"workload": args.workload, "size": args.size,
                                "seconds": run_end_to_end(args.workload, args.size)}
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
