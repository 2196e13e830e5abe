"""Truncated Laurent series over the rationals, and matrices of them.

A series carries exact coefficients below its truncation order; ``order``
None means the element is known exactly (a Laurent polynomial).  Arithmetic
propagates orders so that every stored coefficient is certain.  Valuations
are certified by a nonzero stored coefficient; asking for the valuation of
a series whose known part vanishes but whose order is finite raises
PrecisionExhausted.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PrecisionExhausted


def _min_order(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Series:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs=None, order=None):
        self.order = order
        self.coeffs = {}
        if coeffs:
            for e, c in coeffs.items():
                c = Fraction(c)
                if c != 0 and (order is None or e < order):
                    self.coeffs[e] = c

    # -- constructors -----------------------------------------------------
    @staticmethod
    def const(c, order=None):
        return Series({0: Fraction(c)}, order)

    @staticmethod
    def monomial(c, e, order=None):
        return Series({e: Fraction(c)}, order)

    @staticmethod
    def zero(order=None):
        return Series({}, order)

    # -- structure ----------------------------------------------------------
    def is_certain_zero(self) -> bool:
        return not self.coeffs and self.order is None

    def val_lower(self):
        """A lower bound on the valuation; None means +infinity."""
        if self.coeffs:
            return min(self.coeffs)
        return self.order

    def valuation(self) -> int:
        """Certified valuation; raises if the known part vanishes."""
        if self.coeffs:
            return min(self.coeffs)
        if self.order is None:
            raise ZeroDivisionError("valuation of the zero series")
        raise PrecisionExhausted(f"series is O(t^{self.order}) with no known term")

    def leading(self) -> Fraction:
        return self.coeffs[self.valuation()]

    def truncate(self, order) -> "Series":
        new_order = _min_order(self.order, order)
        return Series(self.coeffs, new_order)

    # -- ring operations ---------------------------------------------------------
    def __add__(self, other):
        order = _min_order(self.order, other.order)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Series(out, order)

    def __neg__(self):
        return Series({e: -c for e, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series({e: c * other for e, c in self.coeffs.items()}, self.order)
        va, vb = self.val_lower(), other.val_lower()
        order = None
        if self.order is not None:
            order = self.order + vb if vb is not None else None
        if other.order is not None:
            o2 = other.order + va if va is not None else None
            order = _min_order(order, o2)
        if (self.order is not None and vb is None) or (
            other.order is not None and va is None
        ):
            # an uncertain series times certain zero stays certain zero
            if self.is_certain_zero() or other.is_certain_zero():
                return Series({}, None)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Series(out, order)

    __rmul__ = __mul__

    def inverse(self, upto=None) -> "Series":
        """Inverse of a series with certified valuation.

        For an exact polynomial the result is truncated at ``upto`` unless it
        is a monomial (whose inverse is exact).
        """
        v = self.valuation()
        lead = self.coeffs[v]
        if len(self.coeffs) == 1 and self.order is None:
            return Series({-v: 1 / lead}, None if upto is None else upto)
        if self.order is not None:
            order = self.order - 2 * v
            order = order if upto is None else min(order, upto)
        else:
            if upto is None:
                raise PrecisionExhausted("inverse of a polynomial needs a target order")
            order = upto
        # long division: q with q * self = 1 + O(t^{order + v... })
        q = {}
        rem = {0: Fraction(1)}
        e = -v
        while e < order and rem:
            lead_rem_exp = min(rem)
            coeff = rem[lead_rem_exp] / lead
            exp = lead_rem_exp - v
            if exp >= order:
                break
            q[exp] = q.get(exp, Fraction(0)) + coeff
            for se, sc in self.coeffs.items():
                key = exp + se
                rem[key] = rem.get(key, Fraction(0)) - coeff * sc
                if rem[key] == 0:
                    del rem[key]
            e = exp + 1
        return Series(q, order)

    def div(self, other, upto=None) -> "Series":
        return self * other.inverse(upto=upto)

    # -- comparisons ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, tuple(sorted(self.coeffs.items()))))

    def equals_mod(self, other, order) -> bool:
        """Agreement of all coefficients below the given order."""
        for e in set(self.coeffs) | set(other.coeffs):
            if e < order and self.coeffs.get(e, 0) != other.coeffs.get(e, 0):
                return False
        return True

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            terms = []
            for e in sorted(self.coeffs):
                c = self.coeffs[e]
                if e == 0:
                    terms.append(f"{c}")
                elif e == 1:
                    terms.append(f"{c}*t")
                else:
                    terms.append(f"{c}*t^{e}")
            body = " + ".join(terms)
        tail = "" if self.order is None else f" + O(t^{self.order})"
        return body + tail


ZERO = Series.zero()
ONE = Series.const(1)


class LaurentMatrix:
    """Square matrix of series; products track per-entry precision."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(rows[i]) for i in range(len(rows)))

    @property
    def n(self):
        return len(self.rows)

    @staticmethod
    def identity(n) -> "LaurentMatrix":
        return LaurentMatrix(
            [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def elementary(n, i, j, series) -> "LaurentMatrix":
        rows = [[ONE if a == b else ZERO for b in range(n)] for a in range(n)]
        rows[i][j] = rows[i][j] + series
        return LaurentMatrix(rows)

    @staticmethod
    def diagonal(entries) -> "LaurentMatrix":
        n = len(entries)
        return LaurentMatrix(
            [[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = ZERO
                for k in range(n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out)

    def truncate(self, order) -> "LaurentMatrix":
        return LaurentMatrix(
            [[e.truncate(order) for e in row] for row in self.rows]
        )

    def __eq__(self, other):
        return isinstance(other, LaurentMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def equals_mod(self, other, order) -> bool:
        return all(
            a.equals_mod(b, order)
            for ra, rb in zip(self.rows, other.rows)
            for a, b in zip(ra, rb)
        )

    def determinant(self) -> Series:
        """Leibniz expansion; fine for the small sizes used here."""
        import itertools as _it

        n = self.n
        total = ZERO
        for perm in _it.permutations(range(n)):
            sign = 1
            seen = [False] * n
            # parity via cycle count
            p = list(perm)
            for start in range(n):
                if seen[start]:
                    continue
                length = 0
                k = start
                while not seen[k]:
                    seen[k] = True
                    k = p[k]
                    length += 1
                if length % 2 == 0:
                    sign = -sign
            term = Series.const(sign)
            for i in range(n):
                term = term * self.rows[i][perm[i]]
            total = total + term
        return total

    def in_matrix_ring(self) -> bool:
        """All entries have nonnegative certified-or-bounded valuation."""
        for row in self.rows:
            for e in row:
                v = e.val_lower()
                if v is not None and v < 0:
                    return False
        return True

    def in_iwahori(self) -> bool:
        """Nonnegative valuations, strictly positive below the diagonal at
        t = 0 reducing to upper-triangular, and unit diagonal."""
        n = self.n
        if not self.in_matrix_ring():
            return False
        for i in range(n):
            for j in range(n):
                e = self.rows[i][j]
                if i > j and e.coeffs.get(0, Fraction(0)) != 0:
                    return False
                if i == j and e.coeffs.get(0, Fraction(0)) == 0:
                    return False
        return True

    def __repr__(self):
        return "LaurentMatrix([\n" + "\n".join(
            "  [" + ", ".join(repr(e) for e in row) + "]" for row in self.rows
        ) + "\n])"
