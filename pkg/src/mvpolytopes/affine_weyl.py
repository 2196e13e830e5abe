"""The fundamental apartment: hyperplanes, alcoves, faces, minimal galleries.

An affine root is a pair ``(beta, n)`` with ``beta`` a classical root (root
coordinates) and ``n`` an integer; its hyperplane is
``H_{beta,n} = { x : <x,beta> = n }`` and its negative is ``(-beta, -n)``.
The distinguished affine simple root is ``alpha_0 = (-theta, -1)``.

Affine Weyl elements store a translation part (a coweight pairing vector)
and a linear part, acting on points as ``x -> w x + lam``.  The induced
action on affine roots, compatible with hyperplane transport, is
``(beta, n) -> (w beta, n + <lam, w beta>)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DominanceError, GalleryError
from .root_system import RootSystem, WeylElement, intify


class AffineRoot(NamedTuple):
    root: tuple
    level: int

    def negate(self) -> "AffineRoot":
        return AffineRoot(tuple(-c for c in self.root), -self.level)


def normalize_wall(ar: AffineRoot, rs: RootSystem) -> AffineRoot:
    """Rewrite so the classical part is a positive root (same hyperplane)."""
    if rs.is_positive_root(ar.root):
        return ar
    neg = ar.negate()
    assert rs.is_positive_root(neg.root)
    return neg


@dataclass(frozen=True)
class AffineWeylElement:
    trans: tuple          # pairing vector
    linear: WeylElement

    def apply(self, point):
        moved = self.linear.apply_cw(point)
        return tuple(Fraction(a) + Fraction(b) for a, b in zip(moved, self.trans))

    def apply_affine_root(self, ar: AffineRoot) -> AffineRoot:
        wroot = self.linear.apply_root(ar.root)
        shift = RootSystem.pair(self.trans, wroot)
        assert Fraction(shift).denominator == 1
        return AffineRoot(wroot, ar.level + int(shift))

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        t = tuple(
            Fraction(a) + Fraction(b)
            for a, b in zip(self.trans, self.linear.apply_cw(other.trans))
        )
        return AffineWeylElement(intify(t), self.linear * other.linear)

    def inverse(self) -> "AffineWeylElement":
        winv = self.linear.inverse()
        t = tuple(-Fraction(x) for x in winv.apply_cw(self.trans))
        return AffineWeylElement(intify(t), winv)

    def is_translation(self) -> bool:
        return self.linear.length == 0

    def __repr__(self):
        return f"[t{self.trans} {self.linear!r}]"


class Apartment:
    """Caches the fundamental-alcove geometry for one root system."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        r = rs.rank
        self.zero = tuple(0 for _ in range(r))
        self.identity = AffineWeylElement(self.zero, rs.weyl.identity)

        # vertices of the fundamental alcove: 0 and Lambda_i^vee / c_i(theta)
        theta = rs.theta
        verts = [self.zero]
        for i in range(r):
            verts.append(
                tuple(Fraction(1 if j == i else 0, theta[i]) for j in range(r))
            )
        self.fundamental_vertices = tuple(verts)
        self.barycenter = tuple(
            sum(Fraction(v[j]) for v in verts) / len(verts) for j in range(r)
        )

        # affine simple generators, indexed 0..r (0 is the extra node)
        self.gen_walls = {0: AffineRoot(theta, 1)}
        self.gen_simple_affine_roots = {
            0: AffineRoot(tuple(-c for c in theta), -1)
        }
        for i in range(1, r + 1):
            alpha = rs.simple_roots[i - 1]
            self.gen_walls[i] = AffineRoot(alpha, 0)
            self.gen_simple_affine_roots[i] = AffineRoot(alpha, 0)
        self.gen_elements = {
            s: self.reflection_element(self.gen_walls[s]) for s in range(r + 1)
        }

        # vertex sets of the wall faces of the fundamental alcove
        self._wall_vertices = {}
        for s, wall in self.gen_walls.items():
            self._wall_vertices[s] = tuple(
                v for v in verts if rs.pair(v, wall.root) == wall.level
            )
        self.classical_types = frozenset(range(1, r + 1))

    # -- basic constructions -------------------------------------------------
    def translation(self, pairvec) -> AffineWeylElement:
        return AffineWeylElement(tuple(pairvec), self.rs.weyl.identity)

    def linear(self, w: WeylElement) -> AffineWeylElement:
        return AffineWeylElement(self.zero, w)

    def reflection_element(self, ar: AffineRoot) -> AffineWeylElement:
        """s_{beta,n}: x -> x - (<x,beta> - n) beta^vee."""
        rs = self.rs
        bv = rs.root_coweight(ar.root)
        sb = rs.weyl.reflection(ar.root)
        return AffineWeylElement(tuple(ar.level * b for b in bv), sb)

    def vertex_type(self, vertex) -> frozenset:
        """Generators whose walls pass through a fundamental-alcove vertex."""
        rs = self.rs
        return frozenset(
            s
            for s, wall in self.gen_walls.items()
            if rs.pair(vertex, wall.root) == wall.level
        )

    def face_vertices(self, type_set) -> tuple:
        verts = self.fundamental_vertices
        for s in type_set:
            wall = self.gen_walls[s]
            verts = tuple(
                v for v in verts if self.rs.pair(v, wall.root) == wall.level
            )
        if not verts:
            raise GalleryError(f"no face of type {set(type_set)}")
        return verts

    # -- alcoves ---------------------------------------------------------------
    def alcove_center(self, elt: AffineWeylElement):
        return elt.apply(self.barycenter)

    def separates(self, wall: AffineRoot, alcove: AffineWeylElement,
                  direction: WeylElement) -> bool:
        """Whether H separates the alcove from translates of the chamber
        ``direction * (antidominant chamber)`` pushed to infinity."""
        rs = self.rs
        assert rs.is_positive_root(wall.root)
        c = rs.pair(self.alcove_center(alcove), wall.root)
        if c == wall.level:
            raise GalleryError("alcove center lies on the hyperplane")
        pre = direction.inverse().apply_root(wall.root)
        if rs.is_positive_root(pre):
            return c > wall.level
        return c < wall.level


@dataclass(frozen=True)
class Face:
    """A face of the Coxeter complex: a carrier alcove and a type set."""

    apartment: Apartment
    carrier: AffineWeylElement
    type_set: frozenset

    def vertices(self) -> tuple:
        base = self.apartment.face_vertices(self.type_set)
        return tuple(self.carrier.apply(v) for v in base)

    def canonical_point(self):
        vs = self.vertices()
        r = len(vs[0])
        return tuple(sum(Fraction(v[j]) for v in vs) / len(vs) for j in range(r))

    def level(self, root_coords):
        """The integer m with the face inside H_{root,m}, if any."""
        vals = {self.apartment.rs.pair(v, root_coords) for v in self.vertices()}
        if len(vals) != 1:
            return None
        (m,) = vals
        m = Fraction(m)
        return int(m) if m.denominator == 1 else None

    def hyperplanes_through(self) -> tuple:
        """All walls containing the face, classical part normalized positive."""
        out = []
        for beta in self.apartment.rs.positive_roots:
            m = self.level(beta)
            if m is not None:
                out.append(AffineRoot(beta, m))
        return tuple(out)

    def _key(self):
        return (self.type_set, self.canonical_point())

    def __eq__(self, other):
        return isinstance(other, Face) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


# ---------------------------------------------------------------------------
# minimal galleries

class MinimalGalleryData(NamedTuple):
    lam: tuple
    types: tuple          # generator indices of the small faces, length p
    alcoves: tuple        # AffineWeylElement sequence, length p + 1
    endpoint_vertex: tuple  # fundamental-alcove vertex carried to lam


def minimal_gallery(apartment: Apartment, lam) -> MinimalGalleryData:
    """Alcove walk along a perturbed straight segment from the origin to lam.

    Crossing order is the lexicographic key (t0, t1) of the exact crossing
    time and its first-order perturbation; this breaks every tie that a
    generic base point would break.
    """
    rs = apartment.rs
    lam = tuple(lam)
    if not rs.is_dominant(lam):
        raise DominanceError(f"{lam} is not dominant")
    if all(x == 0 for x in lam):
        raise DominanceError("lam must be nonzero")

    q = apartment.barycenter
    K = 257
    u = tuple(Fraction(1, K ** (j + 1)) for j in range(rs.rank))

    crossings = []
    for beta in rs.positive_roots:
        lb = rs.pair(lam, beta)
        qb = rs.pair(q, beta)
        ub = rs.pair(u, beta)
        for m in range(1, lb):
            t0 = Fraction(m - qb, lb)
            t1 = Fraction(-ub, lb)
            crossings.append(((t0, t1), beta, m))
    crossings.sort(key=lambda c: (c[0], rs.root_index[c[1]], c[2]))
    keys = [c[0] for c in crossings]
    assert len(set(keys)) == len(keys), "perturbation failed to break a tie"

    alcoves = [apartment.identity]
    types = []
    for _, beta, m in crossings:
        wall = AffineRoot(beta, m)
        prev = alcoves[-1]
        local = normalize_wall(prev.inverse().apply_affine_root(wall), rs)
        t = next(
            (s for s, w in apartment.gen_walls.items() if w == local), None
        )
        assert t is not None, "crossed wall is not a wall of the alcove"
        types.append(t)
        alcoves.append(prev * apartment.gen_elements[t])

    last = alcoves[-1]
    v = last.inverse().apply(lam)
    v = intify(v)
    if v not in apartment.fundamental_vertices:
        raise GalleryError("endpoint is not a lattice vertex of the last alcove")
    return MinimalGalleryData(lam, tuple(types), tuple(alcoves), v)
