"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat N]

Reports the best wall time per workload and checks both backends return
identical results.
"""

from __future__ import annotations

import argparse
import math
import timeit

import numpy as np

from nullpoint import _backend
from nullpoint.determinants import determinant_form
from nullpoint.kinematics import CircuitSpec, Rectangular, Triangular

XS = np.linspace(-60.0, 60.0, 20001)
RECT = determinant_form(CircuitSpec(Rectangular(1.0, 0.5), 0.3))
TRI = determinant_form(CircuitSpec(Triangular(1.0, 1.0), 0.5))
WINDOW = (-4.0 * math.pi - 1.0, 0.0)

WORKLOADS = {
    "airy_vec (20k points)": lambda k: k.airy_vec(XS),
    "airy scalar (2k calls)": lambda k: [k.airy(float(x)) for x in XS[::10]],
    "scan rect (1e-3 grid)": lambda k: k.scan_trig(
        RECT.c0, RECT.cs, RECT.cc, *WINDOW, 1e-3, 1e-12, 1e-10),
    "scan tri (1e-4 grid)": lambda k: k.scan_trig(
        TRI.c0, TRI.cs, TRI.cc, *WINDOW, 1e-4, 1e-12, 1e-10 * TRI.scale),
}


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    names = _backend.available()
    print(f"backends: {', '.join(names)}")
    if "compiled" not in names:
        print("compiled extension not built; only the Python timings are shown")
    print(f"{'workload':<26}" + "".join(f"{n:>14}" for n in names) + "   speedup")
    for label, fn in WORKLOADS.items():
        times, results = {}, {}
        for n in names:
            with _backend.using(n) as k:
                results[n] = fn(k)
                times[n] = min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat))
        same = all(np.array_equal(np.asarray(results[names[0]]), np.asarray(r))
                   for r in results.values())
        speed = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        row = f"{label:<26}" + "".join(f"{times[n] * 1e3:>12.2f}ms" for n in names)
        print(row + f"   {speed:6.1f}x" + ("" if same else "   RESULTS DIFFER"))


if __name__ == "__main__":
    main()
