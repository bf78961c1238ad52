#!/usr/bin/env python3
"""Regenerates the built-in tiling files in crates/core/tilings/.

Every 3D honeycomb is described by exact Cartesian data (a primitive
translation basis, one prototype cell per orbit with its vertex list, and
the 48 signed permutations of the cubic point group).  Cells of a finite
patch are generated from the prototypes, adjacency is read off from shared
vertices (two cells of a face-to-face tiling that share at least `dim`
vertices share a facet), and everything is written in lattice-basis
coordinates.  The snub trihexagonal data is entered verbatim.

Usage: python3 tools/gen_tilings.py [outdir]
"""

import itertools
import json
import math
import os
import sys
from fractions import Fraction as F


def fstr(x):
    x = F(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def matvec(a, v):
    return tuple(sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a)))


def inverse(m):
    n = len(m)
    aug = [list(map(F, row)) + [F(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(len(m)))


def frac_mod1(v):
    return tuple(x - math.floor(x) for x in v)


def signed_perms(d):
    out = []
    for perm in itertools.permutations(range(d)):
        for signs in itertools.product([1, -1], repeat=d):
            m = [[0] * d for _ in range(d)]
            for i in range(d):
                m[i][perm[i]] = signs[i]
            out.append(m)
    ident = [[int(i == j) for j in range(d)] for i in range(d)]
    out.remove(ident)
    return [ident] + out


def build(name, dim, basis_cols, prototypes, ops_cart, metadata, patch=2):
    """basis_cols: list of Cartesian basis vectors. prototypes: list of
    (center, [vertices]) in Cartesian, one per orbit."""
    B = [[F(basis_cols[j][i]) for j in range(dim)] for i in range(dim)]
    Binv = inverse(B)

    def to_basis(v):
        return matvec(Binv, tuple(map(F, v)))

    lin_ops = []
    for r in ops_cart:
        r = [[F(x) for x in row] for row in r]
        lin = matmul(matmul(Binv, r), B)
        assert all(x.denominator == 1 for row in lin for x in row), (name, lin)
        assert abs(det(lin)) == 1
        lin_ops.append((r, lin))

    # All cells within the patch, keyed by basis-coordinate center.
    cells = {}
    rng = range(-patch, patch + 1)
    for orbit_idx, (center, verts) in enumerate(prototypes):
        for r, _ in lin_ops:
            c = matvec(r, tuple(map(F, center)))
            vs = [matvec(r, tuple(map(F, v))) for v in verts]
            for t in itertools.product(rng, repeat=dim):
                shift = matvec(B, tuple(map(F, t)))
                cc = tuple(a + b for a, b in zip(c, shift))
                vv = frozenset(tuple(a + b for a, b in zip(v, shift)) for v in vs)
                key = to_basis(cc)
                if key in cells:
                    assert cells[key][1] == vv, (name, "inconsistent cell", key)
                else:
                    cells[key] = (orbit_idx, vv, cc)

    # Orbit reps: lexicographically least normalized class point.
    orbits = []
    for orbit_idx, (center, verts) in enumerate(prototypes):
        classes = set()
        for _, lin in lin_ops:
            classes.add(frac_mod1(matvec(lin, to_basis(center))))
        rep = min(classes)
        rep_cart = matvec(B, rep)
        _, rep_verts, _ = cells[rep]
        nbrs = []
        faces = []
        for key, (oi, vv, cc) in cells.items():
            if key == rep:
                continue
            shared = rep_verts & vv
            if len(shared) >= dim:
                nbrs.append(key)
                faces.append((shared, cc))
        nbrs.sort()
        orbit = {
            "id": orbit_idx,
            "rep": [fstr(x) for x in rep],
            "neighbors": [[fstr(x) for x in n] for n in nbrs],
        }
        orbit["render"] = render3d(rep_cart, rep_verts, faces, to_basis) if dim == 3 else None
        orbits.append((rep, orbit, len(classes)))

    orbits.sort(key=lambda o: o[0])
    for i, (_, orbit, _) in enumerate(orbits):
        orbit["id"] = i
    return {
        "name": name,
        "dim": dim,
        "orientations": [
            {"linear": [[fstr(x) for x in row] for row in lin], "offset": ["0"] * dim} for _, lin in lin_ops
        ],
        "orbits": [o for _, o, _ in orbits],
        "embedding": [[float(x) for x in b] for b in basis_cols],
        "metadata": metadata,
    }


def render3d(center, verts, faces, to_basis):
    vlist = sorted(verts)
    index = {v: i for i, v in enumerate(vlist)}
    out_faces = []
    for shared, ncenter in faces:
        pts = [tuple(map(float, v)) for v in shared]
        normal = [float(a - b) for a, b in zip(ncenter, center)]
        fc = [sum(p[i] for p in pts) / len(pts) for i in range(3)]
        # Orthonormal frame in the face plane.
        ref = [pts[0][i] - fc[i] for i in range(3)]
        u = ref
        w = [normal[1] * u[2] - normal[2] * u[1], normal[2] * u[0] - normal[0] * u[2], normal[0] * u[1] - normal[1] * u[0]]

        def ang(p):
            d = [p[i] - fc[i] for i in range(3)]
            return math.atan2(sum(a * b for a, b in zip(d, w)), sum(a * b for a, b in zip(d, u)))

        ordered = sorted(shared, key=lambda v: ang(tuple(map(float, v))))
        out_faces.append([index[v] for v in ordered])
    out_faces.sort()
    return {
        "vertices": [[fstr(x) for x in to_basis(v)] for v in vlist],
        "faces": out_faces,
    }


def perms(v):
    return sorted(set(itertools.permutations(v)))


def signed(vs):
    out = set()
    for v in vs:
        for signs in itertools.product([1, -1], repeat=len(v)):
            out.add(tuple(F(s) * F(x) for s, x in zip(signs, v)))
    return sorted(out)


H = F(1, 2)
Q = F(1, 4)
I3 = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
OPS3 = signed_perms(3)


def cubic():
    cube = signed([(H, H, H)])
    return build("cubic", 3, I3, [((0, 0, 0), cube)], OPS3,
                 {"oeis": "A038119", "description": "cubic honeycomb (polycubes)"})


def rectified_cubic():
    cubocta = [p for v in signed([(H, H, 0)]) for p in perms(v)]
    octa = [tuple(a + b for a, b in zip((H, H, H), p)) for v in signed([(H, 0, 0)]) for p in perms(v)]
    return build("rectified-cubic", 3, I3, [((0, 0, 0), sorted(set(cubocta))), ((H, H, H), sorted(set(octa)))], OPS3,
                 {"oeis": "A384254", "description": "rectified cubic honeycomb (cuboctahedra and octahedra)"})


BCC = [(-H, H, H), (H, -H, H), (H, H, -H)]


def truncated_octahedral():
    verts = sorted(set(p for v in signed([(0, Q, H)]) for p in perms(v)))
    return build("truncated-octahedral", 3, BCC, [((0, 0, 0), verts)], OPS3,
                 {"oeis": "A038181", "description": "bitruncated cubic honeycomb (splatts)"})


def disphenoid():
    verts = [(0, 0, 0), (0, 0, 1), (H, H, H), (-H, H, H)]
    return build("disphenoid", 3, BCC, [((0, Q, H), verts)], OPS3,
                 {"oeis": "A385024", "description": "tetragonal disphenoid honeycomb"})


FCC = [(0, 1, 1), (1, 0, 1), (1, 1, 0)]


def tet_oct():
    octa = sorted(set(p for v in signed([(1, 0, 0)]) for p in perms(v)))
    tet = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    return build("tet-oct", 3, FCC, [((0, 0, 0), octa), ((H, H, H), tet)], OPS3,
                 {"oeis": "A343909", "description": "tetrahedral-octahedral honeycomb (alternated cubic)"})


def square():
    verts = signed([(H, H)])
    data = build("square", 2, [(1, 0), (0, 1)], [((0, 0), verts)], signed_perms(2),
                 {"oeis": "A000105", "description": "square tiling (polyominoes)"})
    data["orbits"][0]["render"] = {"polygon": [["1/2", "1/2"], ["-1/2", "1/2"], ["-1/2", "-1/2"], ["1/2", "-1/2"]]}
    return data


def snub_trihexagonal():
    s3 = math.sqrt(3.0)
    b1, b2 = (5.0, s3), (1.0, 3 * s3)
    A = [[1, 1], [-1, 0]]
    orients = []
    m = [[1, 0], [0, 1]]
    for _ in range(6):
        orients.append(m)
        m = matmul(A, m)
    R = lambda p: tuple(F(x) for x in p)
    v1, v2, v3 = R((0, 0)), R((F(1, 3), F(1, 3))), R((F(2, 21), F(11, 21)))
    e1 = [R((F(-10, 21), F(8, 21))), R((F(-8, 21), F(-2, 21))), R((F(2, 21), F(-10, 21))),
          R((F(10, 21), F(-8, 21))), R((F(8, 21), F(2, 21))), R((F(-2, 21), F(10, 21)))]
    e2 = [R((F(8, 21), F(2, 21))), R((F(11, 21), F(8, 21))), R((F(2, 21), F(11, 21)))]
    # This neighbor list belongs to (8/21, 2/21), the orbit-3 cell next to
    # the origin hexagon.  Carry it to the representative (2/21, 11/21) with
    # the symmetry A^2 followed by the translation (0, 1).
    e3_at_8_2 = [R((0, 0)), R((F(1, 3), F(1, 3))), R((F(13, 21), F(-2, 21)))]
    a2 = matmul(A, A)
    assert tuple(a + b for a, b in zip(matvec(a2, R((F(8, 21), F(2, 21)))), (0, 1))) == v3
    e3 = [tuple(a + b for a, b in zip(matvec(a2, n), (0, 1))) for n in e3_at_8_2]

    def cart(p):
        return (float(p[0]) * b1[0] + float(p[1]) * b2[0], float(p[0]) * b1[1] + float(p[1]) * b2[1])

    det_b = b1[0] * b2[1] - b1[1] * b2[0]

    def to_lat(x, y):
        a = (x * b2[1] - y * b2[0]) / det_b
        b = (b1[0] * y - b1[1] * x) / det_b
        fa, fb = F(a).limit_denominator(210), F(b).limit_denominator(210)
        assert abs(float(fa) - a) < 1e-9 and abs(float(fb) - b) < 1e-9
        return (fa, fb)

    def polygon(center, nbrs, circumradius):
        # Regular polygon: vertices lie midway (in angle) between the
        # directions of consecutive neighbor centers.
        cx, cy = cart(center)
        angs = sorted(math.atan2(cart(n)[1] - cy, cart(n)[0] - cx) for n in nbrs)
        pts = []
        for i, a in enumerate(angs):
            b = angs[(i + 1) % len(angs)] + (2 * math.pi if i + 1 == len(angs) else 0)
            m = (a + b) / 2
            pts.append(to_lat(cx + circumradius * math.cos(m), cy + circumradius * math.sin(m)))
        return [[fstr(x) for x in p] for p in pts]

    orbits = []
    for i, (rep, nb, r) in enumerate([(v1, e1, 2.0), (v2, e2, 2 / s3), (v3, e3, 2 / s3)]):
        orbits.append({
            "id": i + 1,
            "rep": [fstr(x) for x in rep],
            "neighbors": [[fstr(x) for x in n] for n in nb],
            "render": {"polygon": polygon(rep, nb, r)},
        })
    return {
        "name": "snub-trihexagonal",
        "dim": 2,
        "orientations": [{"linear": [[fstr(x) for x in row] for row in o], "offset": ["0", "0"]} for o in orients],
        "orbits": orbits,
        "embedding": [list(b1), list(b2)],
        "metadata": {"oeis": "A383908", "description": "snub trihexagonal tiling, wallpaper group p6"},
    }


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "crates", "core", "tilings")
    for data in [square(), cubic(), snub_trihexagonal(), tet_oct(), rectified_cubic(), truncated_octahedral(), disphenoid()]:
        for o in data["orbits"]:
            if o.get("render") is None:
                o.pop("render", None)
        path = os.path.join(outdir, data["name"] + ".json")
        with open(path, "w") as f:
            json.dump(data, f, indent=1)
            f.write("\n")
        print(path, "orbits", [(o["rep"], len(o["neighbors"])) for o in data["orbits"]])


if __name__ == "__main__":
    main()
