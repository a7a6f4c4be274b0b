#!/usr/bin/env python3
"""Compare the compiled and the plain kernel backends.

Each workload runs in a fresh subprocess so the backend choice (made once at
import from LADGET_NUMBA) is honored, with one untimed warmup inside the
child so compilation never pollutes the measurement.  Run from the
repository root:

    python benchmarks/bench.py            # full comparison table
    python benchmarks/bench.py --quick    # smaller workloads
"""

import argparse
import json
import os
import subprocess
import sys
import time
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
STREAM8 = ROOT / "tests" / "data" / "connected8.g6"


def wl_census7() -> float:
    from ladget.graphcore import encode_graph6, generate_connected
    from ladget.search import SearchOptions, search_stream

    stream = [encode_graph6(g) for g in generate_connected(7)]
    opts = SearchOptions(targets=("NAND",), minimal_mode=True)
    search_stream(stream[:40], opts)  # warmup
    t0 = time.perf_counter()
    rep = search_stream(stream, opts)
    dt = time.perf_counter() - t0
    assert len(rep.hits.get("NAND", [])) == 2
    return dt


def wl_census8(limit: int) -> float:
    from ladget.search import SearchOptions, search_stream

    records = STREAM8.read_text().split()[:limit]
    opts = SearchOptions(targets=("AND", "OR"), minimal_mode=True)
    search_stream(records[:40], opts)  # warmup
    t0 = time.perf_counter()
    search_stream(records, opts)
    return time.perf_counter() - t0


def wl_colorings() -> float:
    import numpy as np

    from ladget.coloring import all_colorings
    from ladget.graphcore import random_connected

    rng = np.random.default_rng(42)
    graphs = [random_connected(10, rng, 0.4) for _ in range(300)]
    all_colorings(graphs[0], None, 3)  # warmup
    t0 = time.perf_counter()
    total = sum(all_colorings(g, None, 3).shape[0] for g in graphs)
    dt = time.perf_counter() - t0
    assert total > 0
    return dt


def wl_filter10() -> float:
    import numpy as np

    from ladget import _kernels
    from ladget.coloring import all_colorings
    from ladget.graphcore import random_connected
    from ladget.search import enumerate_configs

    rng = np.random.default_rng(7)
    graphs = [random_connected(10, rng, 0.5) for _ in range(60)]
    cfgs = enumerate_configs(10, 2)

    def scan(g):
        C = all_colorings(g, None, 3)
        return _kernels.scan_configs(
            C, g.adj_array(), g.deg_array(), cfgs, 2, True, True
        )

    scan(graphs[0])  # warmup
    t0 = time.perf_counter()
    for g in graphs:
        scan(g)
    return time.perf_counter() - t0


WORKLOADS = {
    "census7": ("order-7 NAND census, 853 graphs", lambda q: wl_census7()),
    "census8": (
        "order-8 AND/OR census slice",
        lambda q: wl_census8(1000 if q else 4000),
    ),
    "colorings": ("3-colorings of 300 order-10 graphs", lambda q: wl_colorings()),
    "filter10": ("minimal filter scan, 60 order-10 graphs", lambda q: wl_filter10()),
}


def run_child(name: str, quick: bool) -> int:
    _, fn = WORKLOADS[name]
    seconds = fn(quick)
    from ladget import _kernels

    print(json.dumps({"workload": name, "backend": _kernels.BACKEND, "seconds": seconds}))
    return 0


def spawn(name: str, numba: bool, quick: bool) -> dict:
    env = dict(os.environ)
    env["LADGET_NUMBA"] = "1" if numba else "0"
    cmd = [sys.executable, __file__, "--child", name]
    if quick:
        cmd.append("--quick")
    proc = subprocess.run(
        cmd, capture_output=True, text=True, env=env, cwd=ROOT, timeout=1800
    )
    if proc.returncode != 0:
        raise RuntimeError(f"{name} failed:\n{proc.stderr}")
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--child", help=argparse.SUPPRESS)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    if args.child:
        return run_child(args.child, args.quick)

    rows = []
    for name, (desc, _) in WORKLOADS.items():
        plain = spawn(name, numba=False, quick=args.quick)
        fast = spawn(name, numba=True, quick=args.quick)
        if fast["backend"] != "numba":
            print("numba backend unavailable; comparison is plain vs plain")
        rows.append((desc, plain["seconds"], fast["seconds"]))
        print(
            f"{desc:42s} plain {plain['seconds']:8.3f}s   "
            f"numba {fast['seconds']:8.3f}s   "
            f"x{plain['seconds'] / max(fast['seconds'], 1e-9):.1f}"
        )
    total_p = sum(r[1] for r in rows)
    total_n = sum(r[2] for r in rows)
    print(
        f"{'total':42s} plain {total_p:8.3f}s   numba {total_n:8.3f}s   "
        f"x{total_p / max(total_n, 1e-9):.1f}"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
