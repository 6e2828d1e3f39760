"""Write the exchange graph of maximal rigid objects and the folded hexagon as DOT and JSON."""
from __future__ import annotations

import argparse
import json
from pathlib import Path

from clusterfold.folding import hexagon_dot, hexagon_json, stable_exchange_graph
from clusterfold.rigidmut import exchange_graph


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out", help="output directory")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    g = exchange_graph()
    (out / "exchange_graph.dot").write_text(g.to_dot())
    (out / "exchange_graph.json").write_text(json.dumps(g.to_json(), sort_keys=True, indent=2) + "\n")
    h = stable_exchange_graph()
    (out / "folded_hexagon.dot").write_text(hexagon_dot(h))
    (out / "folded_hexagon.json").write_text(json.dumps(hexagon_json(h), sort_keys=True, indent=2) + "\n")
    print(f"{len(g.vertices)} maximal rigid objects, {len(g.edges)} mutations; "
          f"{len(h.vertices)} stable objects, {len(h.edges)} folded mutations -> {out}/")


if __name__ == "__main__":
    main()
