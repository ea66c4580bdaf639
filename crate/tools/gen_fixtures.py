#!/usr/bin/env python3
"""Regenerates crates/core/fixtures/*.pc and *.adj.

named.pc holds 20:1, 40:40 and 60:1812, rebuilt from straight-line
drawings (rotation = neighbours sorted counterclockwise by angle).
isomers.pc holds small fullerenes built with the face-spiral windup.
"""

import math
import os
import re
import sys

HEADER = b">>planar_code<<"

DRAWINGS = {
    "20:1": (
        "a1=54:0.8 a2=126:0.8 a3=198:0.8 a4=270:0.8 a5=342:0.8 b1=90:2.25 b2=126:1.5 "
        "b3=162:2.25 b4=198:1.5 b5=234:2.25 b6=270:1.5 b7=306:2.25 b8=342:1.5 b9=18:2.25 "
        "b10=54:1.5 c1=90:3 c2=162:3 c3=234:3 c4=306:3 c5=18:3",
        "a1-a2 a2-a3 a3-a4 a4-a5 a5-a1 b1-b2 b2-b3 b3-b4 b4-b5 b5-b6 b6-b7 b7-b8 b8-b9 "
        "b9-b10 b10-b1 c1-c2 c2-c3 c3-c4 c4-c5 c5-c1 a1-b10 a2-b2 a3-b4 a4-b6 a5-b8 b1-c1 "
        "b3-c2 b5-c3 b7-c4 b9-c5",
    ),
    "40:40": (
        "o=0:0 a1=90:0.8-0.3 a2=130:0.8 a3=170:0.8 a4=210:0.8-0.3 a5=250:0.8 a6=290:0.8 "
        "a7=330:0.8-0.3 a8=10:0.8 a9=50:0.8 b1=90:2-0.5 b2=110:2-0.7 b3=190:2-0.7 "
        "b4=210:2-0.5 b5=230:2-0.7 b6=310:2-0.7 b7=330:2-0.5 b8=350:2-0.7 b9=70:2-0.7 "
        "c1=90:2 c2=110+25:2 c3=190-25:2 c4=210:2 c5=230+25:2 c6=310-25:2 c7=330:2 "
        "c8=350+25:2 c9=70-25:2 d1=100+20:2.5 d2=200-20:2.5 d3=220+20:2.5 d4=320-20:2.5 "
        "d5=340+20:2.5 d6=80-20:2.5 e1=120:3 e2=180:3 e3=240:3 e4=300:3 e5=0:3 e6=60:3",
        "o-a1 o-a4 o-a7 a1-a2 a2-a3 a3-a4 a4-a5 a5-a6 a6-a7 a7-a8 a8-a9 a9-a1 a9-b9 b9-b1 "
        "b1-b2 b2-a2 a3-b3 b3-b4 b4-b5 b5-a5 a6-b6 b6-b7 b7-b8 b8-a8 b1-c1 b2-c2 b3-c3 "
        "b4-c4 b5-c5 b6-c6 b7-c7 b8-c8 b9-c9 c1-d1 d1-c2 c2-c3 c3-d2 d2-c4 c4-d3 d3-c5 "
        "c5-c6 c6-d4 d4-c7 c7-d5 d5-c8 c8-c9 c9-d6 d6-c1 d1-e1 d2-e2 d3-e3 d4-e4 d5-e5 "
        "d6-e6 e1-e2 e2-e3 e3-e4 e4-e5 e5-e6 e6-e1",
    ),
    "60:1812": (
        "a1=126:0.35 a2=198:0.35 a3=270:0.35 a4=342:0.35 a5=54:0.35 b1=102:1-0.1 "
        "b2=126:1-0.3 b3=150:1-0.1 b4=174:1-0.1 b5=198:1-0.3 b6=222:1-0.1 b7=246:1-0.1 "
        "b8=270:1-0.3 b9=294:1-0.1 b10=318:1-0.1 b11=342:1-0.3 b12=6:1-0.1 b13=30:1-0.1 "
        "b14=54:1-0.3 b15=78:1-0.1 c1=99:1.5 c2=117:1.5-0.3 c3=135:1.5-0.3 c4=153:1.5 "
        "c5=171:1.5 c6=189:1.5-0.3 c7=207:1.5-0.3 c8=225:1.5 c9=243:1.5 c10=261:1.5-0.3 "
        "c11=279:1.5-0.3 c12=297:1.5 c13=315:1.5 c14=333:1.5-0.3 c15=351:1.5-0.3 c16=9:1.5 "
        "c17=27:1.5 c18=45:1.5-0.3 c19=63:1.5-0.3 c20=81:1.5 d1=90:2.5 d2=114-5:2-0.2 "
        "d3=138+5:2-0.2 d4=162:2.5 d5=186-5:2-0.2 d6=210+5:2-0.2 d7=234:2.5 "
        "d8=258-5:2-0.2 d9=282+5:2-0.2 d10=306:2.5 d11=330-5:2-0.2 d12=354+5:2-0.2 "
        "d13=18:2.5 d14=44-5:2-0.2 d15=68+5:2-0.2 e1=90:3 e2=162:3 e3=234:3 e4=306:3 e5=18:3",
        "a1-a2 a2-a3 a3-a4 a4-a5 a5-a1 b1-b2 b2-b3 b3-b4 b4-b5 b5-b6 b6-b7 b7-b8 b8-b9 "
        "b9-b10 b10-b11 b11-b12 b12-b13 b13-b14 b14-b15 b15-b1 a1-b2 a2-b5 a3-b8 a4-b11 "
        "a5-b14 c1-c2 c2-c3 c3-c4 c4-c5 c5-c6 c6-c7 c7-c8 c8-c9 c9-c10 c10-c11 c11-c12 "
        "c12-c13 c13-c14 c14-c15 c15-c16 c16-c17 c17-c18 c18-c19 c19-c20 c20-c1 b1-c2 "
        "b3-c3 b4-c6 b6-c7 b7-c10 b9-c11 b10-c14 b12-c15 b13-c18 b15-c19 d1-d2 d2-d3 d3-d4 "
        "d4-d5 d5-d6 d6-d7 d7-d8 d8-d9 d9-d10 d10-d11 d11-d12 d12-d13 d13-d14 d14-d15 "
        "d15-d1 c1-d2 c4-d3 c5-d5 c8-d6 c9-d8 c12-d9 c13-d11 c16-d12 c17-d14 c20-d15 e1-e2 "
        "e2-e3 e3-e4 e4-e5 e5-e1 d1-e1 d4-e2 d7-e3 d10-e4 d13-e5",
    ),
}


def arith(expr):
    if not re.fullmatch(r"[0-9.+\-]+", expr):
        raise ValueError(expr)
    return float(eval(expr))


def from_drawing(coords, edges):
    names, pos = [], {}
    for item in coords.split():
        name, polar = item.split("=")
        angle, radius = polar.split(":")
        a, r = math.radians(arith(angle)), arith(radius)
        names.append(name)
        pos[name] = (r * math.cos(a), r * math.sin(a))
    index = {name: i for i, name in enumerate(names)}
    adj = [[] for _ in names]
    for e in edges.split():
        u, v = (index[x] for x in e.split("-"))
        adj[u].append(v)
        adj[v].append(u)
    rotation = []
    for u, name in enumerate(names):
        x0, y0 = pos[name]
        key = lambda v: math.atan2(pos[names[v]][1] - y0, pos[names[v]][0] - x0)
        rotation.append(sorted(adj[u], key=key))
    return rotation


def windup(sizes):
    """Face-spiral windup. Returns oriented triangles of the dual."""
    n = len(sizes)
    rem = list(sizes)
    tris = []

    def conn(a, b):
        rem[a] -= 1
        rem[b] -= 1

    conn(0, 1)
    conn(2, 1)
    conn(2, 0)
    tris.append((0, 1, 2))
    ring = [0, 1, 2]
    for k in range(3, n - 1):
        b, a = ring[-1], ring[0]
        conn(k, b)
        conn(k, a)
        tris.append((a, b, k))
        while rem[ring[0]] == 0:
            a0 = ring.pop(0)
            a1 = ring[0]
            conn(k, a1)
            tris.append((a1, a0, k))
        while rem[ring[-1]] == 0:
            b0 = ring.pop()
            b1 = ring[-1]
            conn(k, b1)
            tris.append((b0, b1, k))
        if min(rem) < 0:
            raise ValueError("spiral does not close")
        ring.append(k)
    last = n - 1
    for i in range(len(ring)):
        x, y = ring[i], ring[(i + 1) % len(ring)]
        conn(last, x)
        tris.append((y, x, last))
    if any(rem):
        raise ValueError("spiral does not close")
    return n, tris


def rotation_from_triangles(n, tris):
    succ = [dict() for _ in range(n)]
    for t in tris:
        for i in range(3):
            a, b, c = t[i], t[(i + 1) % 3], t[(i + 2) % 3]
            if b in succ[a]:
                raise ValueError("inconsistent orientation")
            succ[a][b] = c
    rotation = []
    for v in range(n):
        start = min(succ[v])
        cyc, cur = [start], succ[v][start]
        while cur != start:
            cyc.append(cur)
            cur = succ[v][cur]
        rotation.append(cyc)
    return rotation


def dual_rotation(rotation):
    """Dual of a plane graph given as a rotation system (faces traced with the
    next-clockwise-after-reverse rule)."""
    face_of = {}
    faces = []
    for u, lst in enumerate(rotation):
        for v in lst:
            if (u, v) in face_of:
                continue
            cyc, a, b = [], u, v
            while (a, b) not in face_of:
                face_of[(a, b)] = len(faces)
                cyc.append((a, b))
                rb = rotation[b]
                w = rb[(rb.index(a) - 1) % len(rb)]
                a, b = b, w
            faces.append(cyc)
    return [[face_of[(b, a)] for (a, b) in cyc] for cyc in faces]


def spiral_fullerene(sizes):
    n, tris = windup(sizes)
    return dual_rotation(rotation_from_triangles(n, tris))


def tube(cap, belts):
    if cap == 5:
        sizes = [5] * 6 + [6] * (5 * belts) + [5] * 6
    else:
        sizes = [6] + [5] * 6 + [6] * (6 * belts) + [5] * 6 + [6]
    return spiral_fullerene(sizes)


ISOMERS = [
    ("24:1", lambda: tube(6, 0)),
    ("c30-d5h", lambda: tube(5, 1)),
    ("c36-d6h", lambda: tube(6, 1)),
    ("c40-d5d", lambda: tube(5, 2)),
    ("c48-d6d", lambda: tube(6, 2)),
    ("c50-d5h", lambda: tube(5, 3)),
]


def planar_code(graphs):
    out = bytearray(HEADER)
    for rot in graphs:
        n = len(rot)
        assert n <= 255
        out.append(n)
        for lst in rot:
            out.extend(v + 1 for v in lst)
            out.append(0)
    return bytes(out)


def adjlist(graphs):
    return "\n".join(
        "".join(" ".join(str(v + 1) for v in lst) + "\n" for lst in rot) for rot in graphs
    )


def main():
    root = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..")
    out_dir = os.path.join(root, "crates", "core", "fixtures")
    named = [from_drawing(*DRAWINGS[name]) for name in ("20:1", "40:40", "60:1812")]
    isomers = [build() for _, build in ISOMERS]
    for stem, graphs in (("named", named), ("isomers", isomers)):
        with open(os.path.join(out_dir, stem + ".pc"), "wb") as fh:
            fh.write(planar_code(graphs))
        with open(os.path.join(out_dir, stem + ".adj"), "w") as fh:
            fh.write(adjlist(graphs))
        print(stem, [len(g) for g in graphs], file=sys.stderr)


if __name__ == "__main__":
    main()
