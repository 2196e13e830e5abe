"""Combinatorial galleries of a fixed type.

A gallery is a head element of the finite Weyl group together with a
crossing/folding flag per step.  Alcove ``j`` is
``head * g_1 * ... * g_j * Delta_f`` where ``g_j`` is the type generator at a
crossing and the identity at a folding.  The small face at step ``j`` is the
type-``t_j`` wall face of alcove ``j-1``; the endpoint face is the carried
image of the vertex of the fundamental alcove recorded in the type.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import NamedTuple

from .affine_weyl import (
    AffineRoot,
    AffineWeylElement,
    Apartment,
    Face,
    MinimalGalleryData,
    minimal_gallery,
    normalize_wall,
)
from .errors import GalleryError
from .root_system import RootSystem, WeylElement, intify


@dataclass(frozen=True)
class GalleryType:
    apartment: Apartment
    lam: tuple
    types: tuple            # generator indices, length p
    endpoint_vertex: tuple  # fundamental-alcove vertex carried to the endpoint

    @property
    def p(self) -> int:
        return len(self.types)

    @staticmethod
    def for_coweight(apartment: Apartment, lam) -> "GalleryType":
        data = minimal_gallery(apartment, lam)
        return GalleryType(apartment, data.lam, data.types, data.endpoint_vertex)

    def key(self):
        return (self.apartment.rs.cartan.label, self.lam, self.types,
                self.endpoint_vertex)

    def to_json(self):
        rs = self.apartment.rs
        walls = [self.apartment.gen_walls[t] for t in self.types]
        return {
            "cartan": rs.cartan.label,
            "lambda": [str(x) for x in self.lam],
            "steps": [[rs.root_index[w.root], w.level] for w in walls],
            "endpoint_vertex": [str(x) for x in self.endpoint_vertex],
        }


class StepKind(enum.Enum):
    POSITIVE_CROSSING = "positive-crossing"
    NEGATIVE_CROSSING = "negative-crossing"
    POSITIVE_FOLDING = "positive-folding"
    NEGATIVE_FOLDING = "negative-folding"


class StepClass(NamedTuple):
    kind: StepKind
    wall: AffineRoot

    @property
    def is_folding(self):
        return self.kind in (StepKind.POSITIVE_FOLDING, StepKind.NEGATIVE_FOLDING)

    @property
    def is_positive(self):
        return self.kind in (StepKind.POSITIVE_CROSSING, StepKind.POSITIVE_FOLDING)


class LoadBearing(NamedTuple):
    j_plus: frozenset     # load-bearing crossings
    j_minus: frozenset    # load-bearing foldings
    j_zero: frozenset     # classical walls load-bearing at the head alcove

    @property
    def total(self):
        return len(self.j_plus) + len(self.j_minus) + len(self.j_zero)


class Gallery:
    """Immutable combinatorial gallery; hashable by (head word, step flags)."""

    __slots__ = ("gtype", "head", "steps", "elements", "_faces", "_walls")

    def __init__(self, gtype: GalleryType, head: WeylElement, steps):
        self.gtype = gtype
        self.head = head
        self.steps = tuple(bool(s) for s in steps)
        if len(self.steps) != gtype.p:
            raise GalleryError("wrong number of steps")
        ap = gtype.apartment
        elts = [ap.linear(head)]
        for t, crossing in zip(gtype.types, self.steps):
            nxt = elts[-1] * ap.gen_elements[t] if crossing else elts[-1]
            elts.append(nxt)
        self.elements = tuple(elts)  # x_0 .. x_p
        self._faces = None
        self._walls = None

    # -- structure -------------------------------------------------------------
    @property
    def apartment(self) -> Apartment:
        return self.gtype.apartment

    @property
    def p(self) -> int:
        return self.gtype.p

    def faces(self):
        """Small faces indexed 0..p+1 (origin vertex ... endpoint vertex)."""
        if self._faces is None:
            ap = self.apartment
            out = [Face(ap, ap.identity, ap.classical_types)]
            for j, t in enumerate(self.gtype.types):
                out.append(Face(ap, self.elements[j], frozenset({t})))
            out.append(
                Face(ap, self.elements[-1],
                     ap.vertex_type(self.gtype.endpoint_vertex))
            )
            self._faces = tuple(out)
        return self._faces

    def walls(self):
        """The wall of each step, classical part normalized positive."""
        if self._walls is None:
            ap = self.apartment
            rs = ap.rs
            out = []
            for j, t in enumerate(self.gtype.types):
                raw = self.elements[j].apply_affine_root(ap.gen_walls[t])
                out.append(normalize_wall(raw, rs))
            self._walls = tuple(out)
        return self._walls

    def weight(self):
        return intify(self.elements[-1].apply(self.gtype.endpoint_vertex))

    # -- classification ----------------------------------------------------------
    def classify_steps(self, direction: WeylElement):
        ap = self.apartment
        out = []
        for j in range(1, self.p + 1):
            wall = self.walls()[j - 1]
            sep = ap.separates(wall, self.elements[j], direction)
            if self.steps[j - 1]:
                kind = StepKind.POSITIVE_CROSSING if sep else StepKind.NEGATIVE_CROSSING
            else:
                kind = StepKind.POSITIVE_FOLDING if sep else StepKind.NEGATIVE_FOLDING
            out.append(StepClass(kind, wall))
        return tuple(out)

    def load_bearing(self, direction: WeylElement) -> LoadBearing:
        ap = self.apartment
        rs = ap.rs
        plus, minus = set(), set()
        for j, cls in enumerate(self.classify_steps(direction), start=1):
            if not cls.is_positive:
                continue
            if cls.is_folding:
                minus.add(j)   # the previous alcove equals this one: separated
            else:
                plus.add(j)    # the previous alcove is on the other side
        zero = set()
        for beta in rs.positive_roots:
            wall = AffineRoot(beta, 0)
            if ap.separates(wall, self.elements[0], direction):
                zero.add(wall)
        return LoadBearing(frozenset(plus), frozenset(minus), frozenset(zero))

    def dimension(self, direction: WeylElement) -> int:
        return self.load_bearing(direction).total

    def is_positively_folded(self, direction: WeylElement) -> bool:
        return all(
            cls.is_positive
            for cls in self.classify_steps(direction)
            if cls.is_folding
        )

    def ls_target_dimension(self, direction: WeylElement = None):
        """<lam + w^{-1} nu, rho> plus the parabolic correction.

        The endpoint is measured back through the direction so that the bound
        matches the count of walls load-bearing toward that chamber.
        """
        rs = self.apartment.rs
        lam = self.gtype.lam
        nu = self.weight()
        if direction is not None and direction.length:
            nu = direction.inverse().apply_cw(nu)
        main = rs.rho_pair(tuple(a + b for a, b in zip(lam, nu)))
        assert main.denominator == 1
        parab = sum(1 for beta in rs.positive_roots if rs.pair(lam, beta) == 0)
        return int(main) + parab

    def is_ls(self, direction: WeylElement) -> bool:
        if not self.is_positively_folded(direction):
            return False
        return self.dimension(direction) == self.ls_target_dimension(direction)

    # -- step roots ---------------------------------------------------------------
    def affine_root_at_step(self, j: int) -> AffineRoot:
        """prefix(x_{j-1}) applied to -(step image of the simple affine root)."""
        if not 1 <= j <= self.p:
            raise GalleryError("step index out of range")
        t = self.gtype.types[j - 1]
        base = self.apartment.gen_simple_affine_roots[t]
        moved = base.negate() if self.steps[j - 1] else base  # delta_j alpha_{i_j}
        return self.elements[j - 1].apply_affine_root(moved.negate())

    # -- identity / rebuild ----------------------------------------------------------
    def key(self):
        return (self.gtype.key(), self.head.word, self.steps)

    def __eq__(self, other):
        return isinstance(other, Gallery) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        flags = "".join("x" if s else "f" for s in self.steps)
        return f"Gallery({self.head!r};{flags};wt={self.weight()})"

    def to_json(self):
        return {
            "head": list(self.head.word),
            "steps": sum(1 << i for i, s in enumerate(self.steps) if s),
            "weight": [str(x) for x in self.weight()],
        }

    def act_linear(self, w: WeylElement) -> "Gallery":
        """Apply a finite Weyl element to every alcove and rebuild the word."""
        ap = self.apartment
        g = ap.linear(w)
        return from_elements(self.gtype, [g * x for x in self.elements])


def from_elements(gtype: GalleryType, elements) -> Gallery:
    """Recover (head, steps) from an alcove sequence of the given type."""
    ap = gtype.apartment
    x0 = elements[0]
    if any(x != 0 for x in x0.trans):
        raise GalleryError("first alcove does not contain the origin vertex")
    head = x0.linear
    steps = []
    for j, t in enumerate(gtype.types):
        rel = elements[j].inverse() * elements[j + 1]
        if rel == ap.identity:
            steps.append(False)
        elif rel == ap.gen_elements[t]:
            steps.append(True)
        else:
            raise GalleryError(f"alcoves {j}, {j+1} are not of type {t}")
    g = Gallery(gtype, head, steps)
    assert g.elements == tuple(elements)
    return g


def enumerate_galleries(gtype: GalleryType):
    """All |W| * 2^p galleries of the type, in canonical order, lazily."""
    for head in gtype.apartment.rs.weyl:
        for bits in itertools.product((True, False), repeat=gtype.p):
            yield Gallery(gtype, head, bits)


def ls_galleries(gtype: GalleryType, direction=None):
    direction = direction or gtype.apartment.rs.weyl.identity
    return [g for g in enumerate_galleries(gtype) if g.is_ls(direction)]
