"""Time the compiled kernels against the pure-numpy fallback.

Each backend runs in its own interpreter, because the backend is chosen at
import time from LENSRING_DISABLE_NUMBA. The compiled side is warmed up
first so JIT compilation is not counted.

    python3 benchmarks/bench_kernels.py [--p-max 2000] [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from lensring import _accel
from lensring.changemaker import surgery_obstruction
from lensring.kernels import cf_sweep, norm_vectors

p_max, repeat = int(sys.argv[1]), int(sys.argv[2])
cases = {
    "cf_sweep": lambda: cf_sweep(p_max),
    "norm_vectors": lambda: norm_vectors(60, [[1, 1, 2, 3, 5, 8]], [0]),
    "obstruct_398": lambda: surgery_obstruction((6, 2, 2, 5, 6)),
}
for fn in cases.values():
    fn()
best = {}
for name, fn in cases.items():
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    best[name] = min(times)
print(json.dumps({"numba": _accel.NUMBA_ENABLED, "best": best}))
"""


def measure(disable, p_max, repeat):
    env = dict(os.environ)
    env.pop("LENSRING_DISABLE_NUMBA", None)
    if disable:
        env["LENSRING_DISABLE_NUMBA"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", WORKER, str(p_max), str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    ).stdout
    return json.loads(out)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p-max", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = measure(False, args.p_max, args.repeat)
    slow = measure(True, args.p_max, args.repeat)
    if not fast["numba"]:
        print("numba is unavailable; both columns use the fallback")
    print(f"{'kernel':<14}{'numba (s)':>12}{'fallback (s)':>14}{'speedup':>10}")
    for name, t_fast in fast["best"].items():
        t_slow = slow["best"][name]
        print(f"{name:<14}{t_fast:>12.4f}{t_slow:>14.4f}{t_slow / t_fast:>9.1f}x")


if __name__ == "__main__":
    main()
