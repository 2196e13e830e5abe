"""Root operators on positively folded galleries and crystal generation.

The operators scan the faces 0..p+1 for their levels along a simple root,
then reflect a window of alcoves in the extremal hyperplane and translate
the tail by the coroot.  Lowering: reflect [j, k-1] in H_{alpha,m}, translate
[k, p] by -alpha^vee.  Raising: reflect [s, t-1] in H_{alpha,m+1}, translate
[t, p] by +alpha^vee.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .affine_weyl import AffineRoot, Apartment
from .errors import GalleryError, OracleMismatch
from .gallery import Gallery, GalleryType, from_elements


def face_levels(g: Gallery, alpha_index: int):
    """Level of each small face along the simple root, None if off-wall."""
    alpha = g.apartment.rs.simple_roots[alpha_index - 1]
    return tuple(f.level(alpha) for f in g.faces())


@dataclass(frozen=True)
class StringData:
    m: int                      # minimal face level
    t_idx: int                  # first face at the minimum
    s_idx: Optional[int]        # last face at m+1 before t (raising window)
    j_idx: int                  # last face at the minimum
    k_idx: Optional[int]        # first face at m+1 after j (lowering window)


def string_data(g: Gallery, alpha_index: int) -> StringData:
    levels = face_levels(g, alpha_index)
    defined = [(i, m) for i, m in enumerate(levels) if m is not None]
    m = min(v for _, v in defined)
    t_idx = min(i for i, v in defined if v == m)
    j_idx = max(i for i, v in defined if v == m)
    s_idx = max((i for i, v in defined if v == m + 1 and i <= t_idx), default=None)
    k_idx = min((i for i, v in defined if v == m + 1 and i >= j_idx), default=None)
    if m <= -1:
        assert s_idx is not None, "raising window must close"
    return StringData(m, t_idx, s_idx, j_idx, k_idx)


def _rebuild(g: Gallery, transform) -> Gallery:
    elts = [transform(i, x) for i, x in enumerate(g.elements)]
    return from_elements(g.gtype, elts)


def f_alpha(g: Gallery, alpha_index: int) -> Optional[Gallery]:
    """Lowering operator; None when undefined."""
    rs = g.apartment.rs
    alpha = rs.simple_roots[alpha_index - 1]
    data = string_data(g, alpha_index)
    nu = g.weight()
    if rs.pair(nu, alpha) - data.m < 1:
        return None
    j, k = data.j_idx, data.k_idx
    assert k is not None
    refl = g.apartment.reflection_element(AffineRoot(alpha, data.m))
    shift = g.apartment.translation(
        tuple(-x for x in rs.root_coweight(alpha))
    )

    def move(i, x):
        if i < j:
            return x
        if i <= k - 1:
            return refl * x
        return shift * x

    out = _rebuild(g, move)
    expect = tuple(a - b for a, b in zip(nu, rs.root_coweight(alpha)))
    assert out.weight() == expect
    return out


def e_alpha(g: Gallery, alpha_index: int) -> Optional[Gallery]:
    """Raising operator; None when undefined."""
    rs = g.apartment.rs
    alpha = rs.simple_roots[alpha_index - 1]
    data = string_data(g, alpha_index)
    if data.m > -1:
        return None
    s, t = data.s_idx, data.t_idx
    refl = g.apartment.reflection_element(AffineRoot(alpha, data.m + 1))
    shift = g.apartment.translation(rs.root_coweight(alpha))

    def move(i, x):
        if i < s:
            return x
        if i <= t - 1:
            return refl * x
        return shift * x

    out = _rebuild(g, move)
    expect = tuple(a + b for a, b in zip(g.weight(), rs.root_coweight(alpha)))
    assert out.weight() == expect
    return out


def phi(g: Gallery, alpha_index: int) -> int:
    n = 0
    while True:
        g2 = f_alpha(g, alpha_index)
        if g2 is None:
            return n
        g, n = g2, n + 1


def epsilon(g: Gallery, alpha_index: int) -> int:
    n = 0
    while True:
        g2 = e_alpha(g, alpha_index)
        if g2 is None:
            return n
        g, n = g2, n + 1


def f_max(g: Gallery, alpha_index: int) -> Gallery:
    while True:
        g2 = f_alpha(g, alpha_index)
        if g2 is None:
            return g
        g = g2


def e_max(g: Gallery, alpha_index: int) -> Gallery:
    while True:
        g2 = e_alpha(g, alpha_index)
        if g2 is None:
            return g
        g = g2


def e_max_along(g: Gallery, word) -> Gallery:
    """Iterated maximal raisings, first letter applied first."""
    for i in word:
        g = e_max(g, i)
    return g


@dataclass
class CrystalGraph:
    gtype: GalleryType
    nodes: list                 # Gallery, BFS order from the highest node
    edges: list                 # (source index, simple root index, target index)
    highest: int

    @property
    def rs(self):
        return self.gtype.apartment.rs

    def node_index(self, g: Gallery) -> int:
        return self._index[g]

    def __post_init__(self):
        self._index = {g: i for i, g in enumerate(self.nodes)}

    def to_json(self):
        return {
            "cartan": self.rs.cartan.label,
            "lambda": [str(x) for x in self.gtype.lam],
            "gallery_type": self.gtype.to_json(),
            "dimension": len(self.nodes),
            "highest": self.highest,
            "nodes": [g.to_json() for g in self.nodes],
            "edges": [list(e) for e in self.edges],
        }

    def to_dot(self):
        lines = ["digraph crystal {", "  rankdir=TB;"]
        for i, g in enumerate(self.nodes):
            wt = ",".join(str(x) for x in g.weight())
            bits = "".join("1" if s else "0" for s in g.steps)
            head = "".join(map(str, g.head.word)) or "e"
            lines.append(f'  n{i} [label="wt=({wt})\\n{head}|{bits}"];')
        for s, i, t in self.edges:
            lines.append(f'  n{s} -> n{t} [label="f{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def generate_crystal(apartment: Apartment, lam) -> CrystalGraph:
    """Closure of the highest-weight gallery under the lowering operators.

    Node and per-weight counts are checked against the dimension and
    multiplicity formulas; disagreement raises OracleMismatch.
    """
    rs = apartment.rs
    gtype = GalleryType.for_coweight(apartment, lam)
    highest = Gallery(gtype, rs.weyl.identity, [True] * gtype.p)
    e = rs.weyl.identity
    if not highest.is_ls(e):
        raise GalleryError("dominant minimal gallery must satisfy the dimension bound")

    nodes = [highest]
    index = {highest: 0}
    edges = []
    frontier = [0]
    while frontier:
        nxt = []
        for src in frontier:
            for i in range(1, rs.rank + 1):
                out = f_alpha(nodes[src], i)
                if out is None:
                    continue
                if out not in index:
                    index[out] = len(nodes)
                    nodes.append(out)
                    nxt.append(index[out])
                edges.append((src, i, index[out]))
        frontier = nxt

    dim = rs.weyl_dimension(tuple(lam))
    if len(nodes) != dim:
        raise OracleMismatch(f"crystal has {len(nodes)} nodes, dimension is {dim}")
    from collections import Counter

    counts = Counter(g.weight() for g in nodes)
    for nu, c in counts.items():
        want = rs.weight_multiplicity(tuple(lam), nu)
        if c != want:
            raise OracleMismatch(f"weight {nu}: {c} galleries, multiplicity {want}")
    return CrystalGraph(gtype, nodes, edges, 0)
