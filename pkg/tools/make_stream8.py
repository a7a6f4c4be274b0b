#!/usr/bin/env python3
"""Regenerate tests/data/connected8.g6.

The built-in exhaustive generator stops at 7 vertices; the census at order 8
runs from a pre-generated stream instead, which this script rebuilds by one
more vertex-extension round (11117 connected graphs, one per isomorphism
class, one graph6 record per line).  The output is deterministic, so a
rebuild must reproduce the committed file byte for byte.
"""

import sys
from pathlib import Path

from ladget.graphcore import _extend_connected, encode_graph6, generate_connected


def main() -> int:
    out = Path(__file__).resolve().parent.parent / "tests" / "data" / "connected8.g6"
    graphs = _extend_connected(generate_connected(7))
    if len(graphs) != 11117:
        print(f"expected 11117 graphs, generated {len(graphs)}", file=sys.stderr)
        return 1
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("".join(encode_graph6(g) + "\n" for g in graphs))
    print(f"wrote {len(graphs)} records to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
