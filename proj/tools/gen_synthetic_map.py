#!/usr/bin/env python3
"""Regenerates data/synthetic27.map, the 27-intersection test city.

Intersections sit on a jittered 6x5 street grid (three corner slots unused) with a
few diagonal avenues. Streets are two-way except 6->7 and 7->3. Distances are meters
and at least the straight-line length; the other five parameters are normalized
costs in [0, 10] (width and road quality already inverted so lower is better).
"""

import math
import random
import sys

SEED = 20090601
COLS, ROWS = 6, 5
SPACING = 320.0

# Grid slot (col, row) -> intersection id. Origin 24 on the west edge, destination 23 east.
SLOTS = {
    (0, 0): 18, (1, 0): 19, (2, 0): 20, (3, 0): 21, (4, 0): 27,
    (0, 1): 22, (1, 1): 26, (2, 1): 11, (3, 1): 12, (4, 1): 14, (5, 1): 15,
    (0, 2): 24, (1, 2): 25, (2, 2): 6, (3, 2): 7, (4, 2): 23, (5, 2): 16,
    (0, 3): 1, (1, 3): 3, (2, 3): 13, (3, 3): 10, (4, 3): 9, (5, 3): 17,
    (1, 4): 2, (2, 4): 4, (3, 4): 5, (4, 4): 8,
}

ONE_WAY = {(6, 7), (7, 3)}
# Extra avenues beyond the orthogonal grid.
DIAGONALS = [(25, 11), (6, 23), (7, 3), (10, 23), (24, 3), (26, 6), (13, 5), (12, 23), (9, 16)]


def main(out):
    rng = random.Random(SEED)
    pos = {}
    for (c, r), nid in SLOTS.items():
        pos[nid] = (round(c * SPACING + rng.uniform(-40, 40), 1),
                    round(r * SPACING + rng.uniform(-40, 40), 1))

    edges = []
    seen = set()

    def add(a, b):
        key = tuple(sorted((a, b)))
        if key in seen:
            return
        seen.add(key)
        edges.append((a, b))

    for (c, r), nid in SLOTS.items():
        for dc, dr in ((1, 0), (0, 1)):
            other = SLOTS.get((c + dc, r + dr))
            if other is not None:
                add(nid, other)
    for a, b in DIAGONALS:
        add(a, b)

    lines = [
        "# Synthetic 27-intersection city used by the hybrid vs. ants comparison.",
        "# Generated by tools/gen_synthetic_map.py; distances in meters.",
        "PARAMS distance width traffic_load road_risk road_quality traffic_lights",
    ]
    for nid in sorted(pos):
        x, y = pos[nid]
        lines.append(f"NODE {nid} {x} {y}")
    for a, b in edges:
        oneway = 0
        if (a, b) in ONE_WAY:
            oneway = 1
        elif (b, a) in ONE_WAY:
            a, b = b, a
            oneway = 1
        (xa, ya), (xb, yb) = pos[a], pos[b]
        straight = math.hypot(xa - xb, ya - yb)
        dist = round(straight * rng.uniform(1.02, 1.35) + 0.05, 1)
        width = round(rng.uniform(0.5, 9.5), 2)
        traffic = round(rng.uniform(0.5, 9.5), 2)
        risk = round(rng.uniform(0.5, 9.5), 2)
        quality = round(rng.uniform(0.5, 9.5), 2)
        lights = float(rng.randint(0, 6))
        lines.append(f"EDGE {a} {b} {oneway} {dist} {width} {traffic} {risk} {quality} {lights}")
    text = "\n".join(lines) + "\n"
    with open(out, "w", encoding="utf-8") as f:
        f.write(text)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/synthetic27.map")
