"""Finite root systems, Weyl groups, and two independent character oracles.

Coordinate conventions used throughout the package:

* roots live in the simple-root basis, as integer tuples ``c`` with
  ``beta = sum c_j alpha_j``;
* coweights and apartment points are stored as pairing vectors
  ``m = (<x, alpha_1>, ..., <x, alpha_r>)``, so ``<x, beta> = m . c`` is a
  plain dot product and every lattice coweight has integer coordinates;
* coroots additionally carry integer coordinates in the simple-coroot basis.

The Cartan matrix entry ``a[i][j]`` is ``<alpha_i^vee, alpha_j>``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import CartanError, DominanceError

Vec = tuple  # pairing vectors / root coordinate tuples


# ---------------------------------------------------------------------------
# small exact linear algebra helpers

def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum(a[i][s] * b[s][j] for s in range(k)) for j in range(m))
        for i in range(n)
    )


def mat_vec(a, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in a)


def identity_mat(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_inverse(a):
    """Exact inverse of a square matrix over the rationals."""
    n = len(a)
    aug = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pval = aug[col][col]
        aug[col] = [x / pval for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def solve_fractions(a, b):
    """Solve a x = b exactly; returns None if singular/inconsistent."""
    n = len(a)
    m = len(a[0])
    rows = [[Fraction(a[i][j]) for j in range(m)] + [Fraction(b[i])] for i in range(n)]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if rows[i][m] != 0:
            return None
    sol = [Fraction(0)] * m
    for i, c in enumerate(pivots):
        sol[c] = rows[i][m]
    return tuple(sol)


def intify(vec):
    """Collapse integral Fractions to ints for readable tuples."""
    out = []
    for x in vec:
        f = Fraction(x)
        out.append(int(f) if f.denominator == 1 else f)
    return tuple(out)


# ---------------------------------------------------------------------------
# Cartan data

_CHAINS = {"A", "B", "C", "D", "G"}


def _cartan_matrix_from_label(label: str):
    family, rank_s = label[0].upper(), label[1:]
    if family not in _CHAINS or not rank_s.isdigit():
        raise CartanError(f"unknown type designator {label!r}")
    n = int(rank_s)
    if n < 1 or n > 4:
        raise CartanError("supported ranks are 1..4")
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, down=-1, up=-1):
        a[i][j] = down
        a[j][i] = up

    if family == "A":
        for i in range(n - 1):
            bond(i, i + 1)
    elif family == "B":
        if n < 2:
            raise CartanError("B requires rank >= 2")
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, down=-1, up=-2)  # alpha_{n-1} long, alpha_n short
    elif family == "C":
        if n < 2:
            raise CartanError("C requires rank >= 2")
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, down=-2, up=-1)
    elif family == "D":
        if n != 4:
            raise CartanError("only D4 is supported")
        bond(0, 1)
        bond(1, 2)
        bond(1, 3)
    elif family == "G":
        if n != 2:
            raise CartanError("only G2 is supported")
        bond(0, 1, down=-3, up=-1)  # alpha_1 short
    return tuple(tuple(row) for row in a)


@dataclass(frozen=True)
class CartanDatum:
    """Cartan matrix with its type label; validated to be of finite type."""

    label: str
    matrix: tuple

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @staticmethod
    def from_label(label: str) -> "CartanDatum":
        return CartanDatum(label.upper(), _cartan_matrix_from_label(label))

    def validate(self) -> None:
        a = self.matrix
        n = len(a)
        if any(len(row) != n for row in a):
            raise CartanError("matrix not square")
        for i in range(n):
            if a[i][i] != 2:
                raise CartanError("diagonal entries must equal 2")
            for j in range(n):
                if i != j:
                    if a[i][j] > 0:
                        raise CartanError("off-diagonal entries must be <= 0")
                    if (a[i][j] == 0) != (a[j][i] == 0):
                        raise CartanError("zero pattern must be symmetric")
        # symmetrizer d_i > 0 with d_i a_ij = d_j a_ji, then positive-definiteness
        d = [None] * n
        for start in range(n):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(n):
                    if i != j and a[i][j] != 0:
                        val = d[i] * Fraction(a[i][j], a[j][i])
                        if d[j] is None:
                            d[j] = val
                            stack.append(j)
                        elif d[j] != val:
                            raise CartanError("matrix is not symmetrizable")
        sym = [[d[i] * a[i][j] for j in range(n)] for i in range(n)]
        # leading principal minors must be positive (finite type)
        for k in range(1, n + 1):
            if _det([row[:k] for row in sym[:k]]) <= 0:
                raise CartanError("matrix is not of finite type")


def _det(m):
    n = len(m)
    m = [list(map(Fraction, row)) for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


# ---------------------------------------------------------------------------
# Weyl group elements

class WeylElement:
    """Group element with its action matrices; instances are interned."""

    __slots__ = ("group", "word", "mat_cw", "mat_rt", "length")

    def __init__(self, group, word, mat_cw, mat_rt):
        self.group = group
        self.word = word          # canonical (lex-min) reduced word, 1-based letters
        self.mat_cw = mat_cw      # action on coweight pairing vectors
        self.mat_rt = mat_rt      # action on root coordinates
        self.length = len(word)

    def apply_cw(self, vec):
        return mat_vec(self.mat_cw, vec)

    def apply_root(self, coords):
        return mat_vec(self.mat_rt, coords)

    def __mul__(self, other):
        return self.group.from_mat(mat_mul(self.mat_cw, other.mat_cw))

    def inverse(self):
        return self.group.from_mat(_transpose_inverse_cw(self))

    def __repr__(self):
        return "e" if not self.word else "s" + "".join(map(str, self.word))


def _transpose_inverse_cw(w):
    # the cw-action matrices are integral with integral inverses
    return tuple(tuple(int(x) for x in row) for row in mat_inverse(w.mat_cw))


class WeylGroup:
    """Finite Weyl group, enumerated by breadth-first closure."""

    def __init__(self, rs: "RootSystem"):
        self.rs = rs
        r = rs.rank
        a = rs.cartan.matrix
        self._by_mat = {}

        def s_mats(i):
            # s_i on pairing vectors: m_j -> m_j - a[i][j] m_i
            cw = [[1 if p == q else 0 for q in range(r)] for p in range(r)]
            for j in range(r):
                cw[j][i] -= a[i][j]
            # s_i on root coords: c_i -> c_i - sum_j a[i][j] c_j
            rt = [[1 if p == q else 0 for q in range(r)] for p in range(r)]
            for j in range(r):
                rt[i][j] -= a[i][j]
            return tuple(map(tuple, cw)), tuple(map(tuple, rt))

        gen_mats = [s_mats(i) for i in range(r)]
        self.identity = self._intern((), identity_mat(r), identity_mat(r))
        frontier = [self.identity]
        while frontier:
            new = []
            for w in frontier:
                for i, (cw, rt) in enumerate(gen_mats):
                    mat = mat_mul(w.mat_cw, cw)
                    if mat not in self._by_mat:
                        elt = self._intern(
                            w.word + (i + 1,), mat, mat_mul(w.mat_rt, rt)
                        )
                        new.append(elt)
            frontier = sorted(new, key=lambda w: w.word)
        self.gens = [self._by_mat[cw] for cw, _ in gen_mats]
        self.elements = sorted(self._by_mat.values(), key=lambda w: (w.length, w.word))
        maxlen = max(w.length for w in self.elements)
        longest = [w for w in self.elements if w.length == maxlen]
        assert len(longest) == 1
        self.w0 = longest[0]
        self._words_memo = {}

    def _intern(self, word, cw, rt):
        if cw in self._by_mat:
            return self._by_mat[cw]
        elt = WeylElement(self, word, cw, rt)
        self._by_mat[cw] = elt
        return elt

    def from_mat(self, mat_cw):
        return self._by_mat[mat_cw]

    def from_word(self, word):
        w = self.identity
        for i in word:
            w = w * self.gens[i - 1]
        return w

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def simple_reflection(self, i):
        return self.gens[i - 1]

    def reflection(self, root_coords):
        """The reflection along an arbitrary root, found by matrix lookup."""
        rs = self.rs
        r = rs.rank
        cvee = rs.coroot_pairvec(rs.coroot_coords_of(root_coords))
        cols = []
        for j in range(r):
            e = tuple(1 if k == j else 0 for k in range(r))
            image = tuple(e[k] - root_coords[j] * cvee[k] for k in range(r))
            cols.append(image)
        mat = tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))
        return self.from_mat(mat)

    def all_reduced_words(self, w: WeylElement):
        """Every reduced word for w, via right descents."""
        if w in self._words_memo:
            return self._words_memo[w]
        if w.length == 0:
            res = frozenset({()})
        else:
            acc = set()
            for i in range(1, self.rs.rank + 1):
                ws = w * self.gens[i - 1]
                if ws.length < w.length:
                    for u in self.all_reduced_words(ws):
                        acc.add(u + (i,))
            res = frozenset(acc)
        self._words_memo[w] = res
        return res


# ---------------------------------------------------------------------------
# root system

class RootSystem:
    """Roots, coroots, highest root, Weyl group, and pairing helpers."""

    def __init__(self, cartan: CartanDatum):
        cartan.validate()
        self.cartan = cartan
        self.rank = cartan.rank
        a = cartan.matrix
        r = self.rank

        # reflection closure on (root coords, coroot coords) pairs
        simple = []
        for i in range(r):
            e = tuple(1 if j == i else 0 for j in range(r))
            simple.append((e, e))
        pool = dict(simple)
        frontier = list(simple)
        guard = 0
        while frontier:
            guard += 1
            if guard > 500:
                raise CartanError("root closure did not terminate")
            nxt = []
            for c, k in frontier:
                for i in range(r):
                    pc = sum(a[i][j] * c[j] for j in range(r))
                    nc = tuple(c[j] - (pc if j == i else 0) for j in range(r))
                    pk = sum(a[j][i] * k[j] for j in range(r))
                    nk = tuple(k[j] - (pk if j == i else 0) for j in range(r))
                    if nc not in pool:
                        pool[nc] = nk
                        nxt.append((nc, nk))
                    else:
                        assert pool[nc] == nk
            frontier = nxt

        self._coroot_of = pool
        self.roots = sorted(pool, key=lambda c: (sum(c), c))
        self.positive_roots = tuple(
            c for c in self.roots if all(x >= 0 for x in c) and any(x > 0 for x in c)
        )
        self.root_index = {c: i for i, c in enumerate(self.positive_roots)}
        assert 2 * len(self.positive_roots) == len(self.roots)

        by_ht = max(sum(c) for c in self.positive_roots)
        highest = [c for c in self.positive_roots if sum(c) == by_ht]
        if len(highest) != 1:
            raise CartanError("root system must be irreducible")
        self.theta = highest[0]
        assert all(
            all(t - c >= 0 for t, c in zip(self.theta, beta))
            for beta in self.positive_roots
        ), "highest root must dominate"

        self.two_rho = tuple(sum(c[j] for c in self.positive_roots) for j in range(r))
        # rho^vee pairs to 1 with every simple root
        rscheck = tuple(
            sum(self.coroot_pairvec(self._coroot_of[c])[j] for c in self.positive_roots)
            for j in range(r)
        )
        assert all(x == 2 for x in rscheck), "half-sum of positive coroots"
        self.rho_check = tuple(1 for _ in range(r))  # pairing vector of rho^vee

        self._ainv = mat_inverse(a)
        self._atinv = mat_inverse(tuple(zip(*a)))
        # fundamental weights in root coordinates (columns of A^{-1})
        self.fundamental_weights = tuple(
            tuple(self._ainv[j][i] for j in range(r)) for i in range(r)
        )
        self.simple_roots = tuple(
            tuple(1 if j == i else 0 for j in range(r)) for i in range(r)
        )

        self._weyl = None

    # -- pairing helpers ---------------------------------------------------
    @staticmethod
    def pair(vec, root_coords):
        """<x, beta> for a pairing vector x and a root in root coordinates."""
        return sum(v * c for v, c in zip(vec, root_coords))

    def coroot_of(self, root_coords):
        """Coroot coordinates (simple-coroot basis) of the given root."""
        return self._coroot_of[root_coords]

    def coroot_pairvec(self, coroot_coords):
        """Pairing vector of a coroot given in simple-coroot coordinates."""
        a = self.cartan.matrix
        r = self.rank
        return tuple(sum(coroot_coords[i] * a[i][j] for i in range(r)) for j in range(r))

    def coroot_coords_of(self, root_coords):
        return self._coroot_of[root_coords]

    def root_coweight(self, root_coords):
        """The coroot beta^vee as a pairing vector."""
        return self.coroot_pairvec(self._coroot_of[root_coords])

    def coroot_coords(self, pairvec):
        """Simple-coroot coordinates of a coweight given as a pairing vector."""
        return mat_vec(self._atinv, pairvec)

    def weight_pair(self, pairvec, weight_root_coords):
        """Pairing against a (possibly fractional) element of the weight space."""
        return sum(Fraction(v) * Fraction(c) for v, c in zip(pairvec, weight_root_coords))

    def rho_pair(self, pairvec):
        v = self.weight_pair(pairvec, self.two_rho) / 2
        return v

    def is_positive_root(self, coords):
        return coords in self.root_index

    def height(self, root_coords):
        return sum(root_coords)

    # -- Weyl group ----------------------------------------------------------
    @property
    def weyl(self) -> WeylGroup:
        if self._weyl is None:
            self._weyl = WeylGroup(self)
        return self._weyl

    # -- dominance and orbits -------------------------------------------------
    @staticmethod
    def is_dominant(pairvec):
        return all(x >= 0 for x in pairvec)

    def dominant_rep(self, pairvec):
        v = tuple(pairvec)
        while True:
            i = next((j for j in range(self.rank) if v[j] < 0), None)
            if i is None:
                return v
            v = self.weyl.gens[i].apply_cw(v)

    def orbit(self, pairvec):
        seen = {tuple(pairvec)}
        frontier = [tuple(pairvec)]
        while frontier:
            nxt = []
            for v in frontier:
                for s in self.weyl.gens:
                    u = s.apply_cw(v)
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return seen

    def in_positive_coroot_span(self, pairvec):
        """Whether the vector is a nonnegative-integer sum of simple coroots."""
        d = self.coroot_coords(pairvec)
        return all(x.denominator == 1 and x >= 0 for x in map(Fraction, d))

    # -- character oracles -----------------------------------------------------
    def weyl_dimension(self, lam) -> int:
        """Product formula for dim V(lam), lam a dominant coweight."""
        if not self.is_dominant(lam):
            raise DominanceError(f"{lam} is not dominant")
        num = Fraction(1)
        shifted = tuple(l + r for l, r in zip(lam, self.rho_check))
        for beta in self.positive_roots:
            num *= Fraction(self.pair(shifted, beta), self.pair(self.rho_check, beta))
        assert num.denominator == 1
        return int(num)

    def _bform(self, x, y):
        # W-invariant form on coweights: sum over positive roots of products
        return sum(self.pair(x, b) * self.pair(y, b) for b in self.positive_roots)

    def weight_multiplicity(self, lam, nu) -> int:
        """Multiplicity of the coweight nu in V(lam), by Freudenthal recursion."""
        if not self.is_dominant(lam):
            raise DominanceError(f"{lam} is not dominant")
        lam = tuple(lam)
        nu = self.dominant_rep(nu)
        rho = self.rho_check
        lam_shift = tuple(l + r for l, r in zip(lam, rho))
        top = self._bform(lam_shift, lam_shift)
        memo = {}

        def diff_ok(mu):
            return self.in_positive_coroot_span(tuple(l - m for l, m in zip(lam, mu)))

        def mult(mu):
            mu = self.dominant_rep(mu)
            if mu in memo:
                return memo[mu]
            if not diff_ok(mu):
                memo[mu] = 0
                return 0
            if mu == lam:
                memo[mu] = 1
                return 1
            mu_shift = tuple(m + r for m, r in zip(mu, rho))
            denom = top - self._bform(mu_shift, mu_shift)
            assert denom > 0
            total = 0
            for beta in self.positive_roots:
                bv = self.root_coweight(beta)
                k = 1
                while True:
                    up = tuple(m + k * b for m, b in zip(mu, bv))
                    up_shift = tuple(u + r for u, r in zip(up, rho))
                    # |mu + k beta^vee + rho|^2 is strictly increasing in k >= 0,
                    # so once past the bound nothing above contributes
                    if self._bform(up_shift, up_shift) > top:
                        break
                    m_up = mult(up)
                    if m_up:
                        total += m_up * self._bform(up, bv)
                    k += 1
            val = Fraction(2 * total, denom)
            assert val.denominator == 1
            memo[mu] = int(val)
            return memo[mu]

        return mult(nu)

    def weights_of(self, lam):
        """All weights of V(lam): breadth-first down the simple-coroot steps.

        A vector is kept iff its dominant representative lies below lam in the
        nonnegative-coroot order; the weight set is connected under such steps.
        """
        if not self.is_dominant(lam):
            raise DominanceError(f"{lam} is not dominant")
        lam = tuple(lam)

        def is_weight(mu):
            dom = self.dominant_rep(mu)
            return self.in_positive_coroot_span(tuple(l - d for l, d in zip(lam, dom)))

        seen = {lam}
        frontier = [lam]
        while frontier:
            nxt = []
            for mu in frontier:
                for i in range(self.rank):
                    bv = self.coroot_pairvec(
                        tuple(1 if j == i else 0 for j in range(self.rank))
                    )
                    down = tuple(m - b for m, b in zip(mu, bv))
                    if down not in seen and is_weight(down):
                        seen.add(down)
                        nxt.append(down)
            frontier = nxt
        return sorted(seen)


@lru_cache(maxsize=None)
def root_system(label: str) -> RootSystem:
    """Build the root system for a type designator such as "A2" or "G2"."""
    return RootSystem(CartanDatum.from_label(label))
