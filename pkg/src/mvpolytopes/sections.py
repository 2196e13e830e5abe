"""Partition of a gallery along one simple root; flipping; vertex galleries.

For a fixed simple root, the face indices 0..p+1 split uniquely into
directed sections (the gallery moves one hyperplane level up or down) and
stable sections (trapped at a level plateau).  Flipping reflects every
stable plateau in its own hyperplane.  The vertex gallery for a Weyl
element w is w applied to the iterated maximal raising along any reduced
word of w.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .affine_weyl import AffineRoot
from .crystal_ops import e_max_along, face_levels, string_data
from .errors import GalleryError
from .gallery import Gallery, from_elements
from .root_system import WeylElement


def stable_indices(g: Gallery, alpha_index: int):
    """Map m -> ((i, l, r), ...) of alcoves stable at m with their witnesses.

    Alcove i is stable at m when faces l <= i < r lie in H_{alpha,m} with no
    face at level m-1 in between, m minimal with that property.
    """
    levels = face_levels(g, alpha_index)
    p = g.p
    out = {}
    for i in range(p + 1):
        found = None
        for m in sorted({v for v in levels if v is not None}):
            ls = [l for l in range(i + 1) if levels[l] == m]
            rs_ = [r for r in range(i + 1, p + 2) if levels[r] == m]
            if not ls or not rs_:
                continue
            l, r = max(ls), min(rs_)
            if any(levels[s] == m - 1 for s in range(l, r)):
                continue
            found = (m, l, r)
            break
        if found is not None:
            m, l, r = found
            out.setdefault(m, []).append((i, l, r))
    return {m: tuple(v) for m, v in out.items()}


@dataclass(frozen=True)
class Section:
    start: int
    stop: int
    kind: str               # "alpha" | "minus" | "stable"
    level: Optional[int]    # plateau level for stable sections


@dataclass(frozen=True)
class SectionPartition:
    cuts: tuple
    sections: tuple

    def directed(self, kind: str):
        return tuple(s for s in self.sections if s.kind == kind)

    def stable(self):
        return tuple(s for s in self.sections if s.kind == "stable")


def partition(g: Gallery, alpha_index: int) -> SectionPartition:
    """The unique tiling of the face range 0..p+1 into sections."""
    levels = face_levels(g, alpha_index)
    p = g.p
    stab = stable_indices(g, alpha_index)
    windows = {}
    for m, triples in stab.items():
        for i, l, r in triples:
            windows.setdefault((l, r), m)
    stable_set = {i for triples in stab.values() for i, _, _ in triples}
    for (l, r), m in windows.items():
        assert all(i in stable_set for i in range(l, r)), "plateau must be solid"

    ordered = sorted(windows)
    for (l1, r1), (l2, r2) in zip(ordered, ordered[1:]):
        if l2 < r1:
            raise GalleryError("stable windows overlap")

    inside = set()
    for l, r in windows:
        inside.update(range(l + 1, r))
    cuts = {0, p + 1}
    cuts.update(l for l, _ in windows)
    cuts.update(r for _, r in windows)
    cuts.update(
        i for i in range(p + 2) if levels[i] is not None and i not in inside
    )
    cuts = tuple(sorted(cuts))

    sections = []
    for a, b in zip(cuts, cuts[1:]):
        if (a, b) in windows:
            sections.append(Section(a, b, "stable", windows[(a, b)]))
            continue
        la, lb = levels[a], levels[b]
        if la is None or lb is None or abs(la - lb) != 1:
            raise GalleryError(f"interval [{a},{b}] is not a directed section")
        if any(i in stable_set for i in range(a, b)):
            raise GalleryError("stable alcove inside a directed section")
        if any(levels[i] is not None for i in range(a + 1, b)):
            raise GalleryError("wall face inside a directed section")
        sections.append(Section(a, b, "alpha" if lb == la + 1 else "minus", None))
    return SectionPartition(cuts, tuple(sections))


def flip(g: Gallery, alpha_index: int) -> Gallery:
    """Reflect every stable alcove in its plateau hyperplane."""
    rs = g.apartment.rs
    alpha = rs.simple_roots[alpha_index - 1]
    stab = stable_indices(g, alpha_index)
    if not stab:
        return g
    refl = {
        m: g.apartment.reflection_element(AffineRoot(alpha, m)) for m in stab
    }
    plan = {}
    for m, triples in stab.items():
        for i, _, _ in triples:
            plan[i] = refl[m]
    elts = [plan[i] * x if i in plan else x for i, x in enumerate(g.elements)]
    return from_elements(g.gtype, elts)


def xi(g: Gallery, w: WeylElement, word=None) -> Gallery:
    """Vertex gallery: w acting on the iterated maximal raising along w."""
    word = tuple(word) if word is not None else w.word
    assert g.apartment.rs.weyl.from_word(word) is w and len(word) == w.length
    raised = e_max_along(g, word)
    return raised.act_linear(w)


def xi_interleaved(g: Gallery, word) -> Gallery:
    """Stepwise form: delta_k = w_k . e_max(w_{k-1}^{-1} delta_{k-1})."""
    weyl = g.apartment.rs.weyl
    cur = g
    prefix = weyl.identity
    for i in word:
        pulled = cur.act_linear(prefix.inverse())
        raised = e_max_along(pulled, (i,))
        prefix = prefix * weyl.gens[i - 1]
        cur = raised.act_linear(prefix)
    return cur


@dataclass(frozen=True)
class CriticalIndexData:
    windows: tuple        # (u, v) pairs; first is the tail window
    critical: tuple       # per-window frozensets of face indices
    union: frozenset

    def prefix(self, j: int) -> frozenset:
        return frozenset(i for i in self.union if i < j)


def critical_indices(g: Gallery, alpha_index: int) -> CriticalIndexData:
    """Tail window from the first minimal face, plus stable windows before
    the last minimal face, in reverse order; critical = plateau-level faces."""
    levels = face_levels(g, alpha_index)
    data = string_data(g, alpha_index)
    p = g.p
    windows = []
    crit = []
    if data.t_idx <= p:
        windows.append((data.t_idx, p))
        crit.append(
            frozenset(
                i for i in range(data.t_idx, p + 1) if levels[i] == data.m
            )
        )
    part = partition(g, alpha_index)
    # Stable sections between the first and last minimal faces sit at the
    # minimal level, so their critical faces already belong to the tail
    # window; the genuinely separate windows end before the tail starts.
    before = [s for s in part.stable() if s.stop <= data.t_idx]
    for s in sorted(before, key=lambda s: -s.start):
        windows.append((s.start, s.stop))
        crit.append(
            frozenset(
                i for i in range(s.start, s.stop) if levels[i] == s.level
            )
        )
    for (u, v), c in zip(windows, crit):
        assert u in c or u > p, "window start must be critical"
    for (u1, v1), (u2, v2) in zip(windows, windows[1:]):
        assert v2 < u1, "windows must be disjoint and decreasing"
    union = frozenset().union(*crit) if crit else frozenset()
    return CriticalIndexData(tuple(windows), tuple(crit), union)


def predicted_word_flips(g: Gallery, alpha_index: int):
    """Step indices where the vertex gallery for s_alpha differs from g.

    Each maximal raising converts one minus-directed section, flipping the
    word at its two boundary faces; the cut indices stay fixed, so the total
    difference is the symmetric difference of those boundary pairs.  A
    boundary at face 0 toggles the head instead (returned as a flag: the new
    head is then head(g) rather than s_alpha * head(g)).
    """
    part = partition(g, alpha_index)
    p = g.p
    flips = set()
    head_change = False
    for s in part.directed("minus"):
        for idx in (s.start, s.stop):
            if idx == 0:
                head_change = not head_change
            elif idx <= p:
                flips ^= {idx}
    return frozenset(flips), head_change
