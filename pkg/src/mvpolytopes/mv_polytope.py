"""Vertex data, cone inequalities, and exact rational polytopes.

The vertex map sends each finite Weyl element to the weight of its vertex
gallery.  The polytope is cut out by the inequalities
``<p - mu_w, w Lambda_i> <= 0`` over all w and fundamental weights
Lambda_i, and equals the convex hull of the vertex weights; both
descriptions are computed exactly and compared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import GalleryError, OracleMismatch
from .gallery import Gallery, GalleryType, ls_galleries
from .root_system import RootSystem, WeylElement, _det, intify, solve_fractions
from .sections import xi


def vertex_data(g: Gallery):
    """Map w -> wt(vertex gallery of g at w), over the whole Weyl group."""
    return {w: xi(g, w).weight() for w in g.apartment.rs.weyl}


def ggms_check(rs: RootSystem, data):
    """Both cone readings for every ordered pair; returns (ok, witness)."""
    for v, mu_v in data.items():
        for w, mu_w in data.items():
            diff = tuple(a - b for a, b in zip(mu_v, mu_w))
            for i in range(rs.rank):
                lam_i = rs.fundamental_weights[i]
                val = rs.weight_pair(w.inverse().apply_cw(diff), lam_i)
                if val > 0:
                    return False, (v, w, i + 1)
            back = w.inverse().apply_cw(tuple(-x for x in diff))
            if not rs.in_positive_coroot_span(back):
                return False, (v, w, "coroot-span")
    return True, None


@dataclass(frozen=True)
class Facet:
    w: WeylElement
    i: int              # fundamental-weight index, 1-based
    offset: Fraction

    def normal(self, rs: RootSystem):
        return tuple(
            Fraction(x) for x in self.w.apply_root(rs.fundamental_weights[self.i - 1])
        )


@dataclass(frozen=True)
class RationalPolytope:
    vertices: tuple     # extreme points, sorted
    facets: tuple       # all (w, i) inequalities <p, normal> <= offset

    def contains(self, rs: RootSystem, point) -> bool:
        return all(
            rs.weight_pair(point, f.normal(rs)) <= f.offset for f in self.facets
        )

    def to_json(self):
        return {
            "vertices": [[str(x) for x in v] for v in self.vertices],
            "facets": [
                {"w": list(f.w.word), "i": f.i, "offset": str(f.offset)}
                for f in self.facets
            ],
        }


def _h_vertices(rs: RootSystem, facets):
    """Exact vertex enumeration of the intersection of half-spaces.

    The normal fan is finite (|W| * rank normals); every vertex is the
    solution of rank-many independent tight constraints.
    """
    r = rs.rank
    # deduplicate parallel normals, keeping the tightest offset
    tight = {}
    for f in facets:
        n = f.normal(rs)
        if n in tight:
            tight[n] = min(tight[n], f.offset)
        else:
            tight[n] = f.offset
    normals = sorted(tight)
    verts = set()
    for combo in itertools.combinations(normals, r):
        if _det(combo) == 0:
            continue
        sol = solve_fractions(tuple(combo), tuple(tight[n] for n in combo))
        assert sol is not None
        if all(
            sum(Fraction(n[j]) * sol[j] for j in range(r)) <= off
            for n, off in tight.items()
        ):
            verts.add(intify(sol))
    return verts


def polytope(rs: RootSystem, data) -> RationalPolytope:
    """Build the polytope from vertex data and verify V = H exactly."""
    ok, witness = ggms_check(rs, data)
    if not ok:
        raise GalleryError(f"vertex data violates the cone conditions at {witness}")
    facets = []
    for w, mu_w in data.items():
        for i in range(1, rs.rank + 1):
            normal = tuple(
                Fraction(x) for x in w.apply_root(rs.fundamental_weights[i - 1])
            )
            offset = sum(Fraction(a) * Fraction(b) for a, b in zip(mu_w, normal))
            facets.append(Facet(w, i, offset))
    facets = tuple(facets)

    points = {tuple(v) for v in data.values()}
    hverts = _h_vertices(rs, facets)
    if not hverts <= points:
        raise OracleMismatch(
            f"H-representation has vertices outside the vertex data: "
            f"{sorted(hverts - points)}"
        )
    for p in points:
        for f in facets:
            if rs.weight_pair(p, f.normal(rs)) > f.offset:
                raise OracleMismatch("vertex datum escapes a facet half-space")
    # every inequality from a pair (w,i) is supported at its own mu_w by
    # construction; additionally each hull vertex supports some facet
    vertices = tuple(sorted(hverts))
    return RationalPolytope(vertices, facets)


def edge_length(rs: RootSystem, data, w: WeylElement, i: int) -> int:
    """The c >= 0 with mu_{w s_i} - mu_w = -c * w alpha_i^vee."""
    ws = w * rs.weyl.gens[i - 1]
    diff = tuple(a - b for a, b in zip(data[ws], data[w]))
    direction = w.apply_cw(tuple(-x for x in rs.root_coweight(rs.simple_roots[i - 1])))
    nonzero = [(d, e) for d, e in zip(diff, direction) if e != 0]
    if not nonzero:
        raise GalleryError("degenerate direction")
    c = Fraction(nonzero[0][0], nonzero[0][1])
    if any(Fraction(d) != c * e for d, e in zip(diff, direction)):
        raise OracleMismatch(f"edge at ({w!r}, {i}) is not parallel to w alpha_i^vee")
    if c < 0 or c.denominator != 1:
        raise OracleMismatch(f"edge coefficient {c} is not a nonnegative integer")
    return int(c)


def polytope_collection(apartment, lam, nu):
    """One polytope per LS gallery of weight nu; count checked against the
    multiplicity oracle."""
    rs = apartment.rs
    gtype = GalleryType.for_coweight(apartment, lam)
    nu = tuple(nu)
    gals = [g for g in ls_galleries(gtype) if g.weight() == nu]
    want = rs.weight_multiplicity(tuple(lam), nu)
    if len(gals) != want:
        raise OracleMismatch(
            f"{len(gals)} LS galleries of weight {nu}, multiplicity {want}"
        )
    out = []
    seen_data = []
    for g in gals:
        data = vertex_data(g)
        if data in seen_data:
            raise OracleMismatch("distinct galleries produced equal vertex data")
        seen_data.append(data)
        out.append((g, data, polytope(rs, data)))
    return out


def off_export(poly: RationalPolytope, rs: RootSystem) -> str:
    """OFF file with float coordinates for rank-3 viewing; vertices only
    faces are emitted as the full facet cycle is not tracked."""
    lines = ["OFF", f"{len(poly.vertices)} 0 0"]
    for v in poly.vertices:
        coords = [float(Fraction(x)) for x in v]
        while len(coords) < 3:
            coords.append(0.0)
        lines.append(" ".join(f"{c:.6f}" for c in coords[:3]))
    return "\n".join(lines) + "\n"
