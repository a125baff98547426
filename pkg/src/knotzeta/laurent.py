"""Exact Laurent polynomial arithmetic over the rationals and over prime fields.

A Laurent polynomial is stored sparsely as a map from integer exponents to
nonzero coefficients.  Coefficients are `fractions.Fraction` in characteristic
zero, or plain ints in [1, q) when a prime modulus q is attached.  Both cases
share one interface; mixing moduli raises.

Matrices over this ring support exact determinants: cofactor expansion for
small sizes and fraction-free (Bareiss) elimination above that, with per-row
power-of-t clearing so intermediate entries stay in the polynomial subring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class CoefficientError(ValueError):
    """Raised for incompatible or malformed coefficient domains."""


def _coerce(c, modulus):
    if modulus is None:
        if isinstance(c, Fraction):
            return c
        if isinstance(c, int):
            return Fraction(c)
        raise CoefficientError(f"rational coefficient expected, got {type(c).__name__}")
    if isinstance(c, int):
        return c % modulus
    raise CoefficientError(f"integer coefficient expected mod {modulus}, got {type(c).__name__}")


class LaurentPoly:
    """A Laurent polynomial sum(c_e * t^e) with exact coefficients.

    Instances are immutable; arithmetic returns new objects.  `modulus` is
    None for rational coefficients or a prime q for coefficients in F_q.
    """

    __slots__ = ("_c", "modulus")

    def __init__(self, coeffs=None, modulus=None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _coerce(v, modulus)
                if v:
                    c[int(e)] = v
        object.__setattr__(self, "_c", dict(sorted(c.items())))
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, *a):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, modulus=None):
        return cls({}, modulus)

    @classmethod
    def one(cls, modulus=None):
        return cls({0: 1}, modulus)

    @classmethod
    def t_power(cls, e, modulus=None):
        return cls({e: 1}, modulus)

    @classmethod
    def constant(cls, c, modulus=None):
        return cls({0: c}, modulus)

    # -- inspection --------------------------------------------------------

    @property
    def coeffs(self):
        return dict(self._c)

    def is_zero(self):
        return not self._c

    def is_one(self):
        return self._c == {0: _coerce(1, self.modulus)}

    def min_exp(self):
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    def max_exp(self):
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    def leading(self):
        """Coefficient of the highest power of t."""
        return self._c[self.max_exp()]

    def coeff(self, e):
        z = Fraction(0) if self.modulus is None else 0
        return self._c.get(e, z)

    def is_monomial(self):
        return len(self._c) == 1

    def exponent_span(self):
        return 0 if not self._c else self.max_exp() - self.min_exp()

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if self.modulus != other.modulus:
            raise CoefficientError(
                f"mixed coefficient domains: {self.modulus!r} vs {other.modulus!r}")

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({0: other}, self.modulus)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()}, self.modulus)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        c = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly(c, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = LaurentPoly.one(self.modulus)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k):
        """Multiply by t^k."""
        return LaurentPoly({e + k: v for e, v in self._c.items()}, self.modulus)

    def scale(self, c):
        return LaurentPoly({e: v * c for e, v in self._c.items()}, self.modulus)

    def substitute_power(self, n):
        """The polynomial with t replaced by t^n (n a nonzero integer)."""
        if n == 0:
            raise ValueError("substitution power must be nonzero")
        return LaurentPoly({e * n: v for e, v in self._c.items()}, self.modulus)

    def evaluate(self, t0):
        """Exact value at a rational point t0 (nonzero if negative powers occur)."""
        if self.modulus is not None:
            raise CoefficientError("evaluation at a rational point needs rational coefficients")
        t0 = Fraction(t0)
        if t0 == 0 and self._c and self.min_exp() < 0:
            raise ZeroDivisionError("evaluation at 0 with negative exponents present")
        total = Fraction(0)
        for e, v in self._c.items():
            total += v * t0 ** e
        return total

    # -- comparison, hashing, display --------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly({0: other}, self.modulus)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.modulus == other.modulus and self._c == other._c

    def __hash__(self):
        return hash((self.modulus, tuple(self._c.items())))

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            if e == 0:
                term = str(v)
            else:
                tp = "t" if e == 1 else f"t^{e}"
                if v == 1:
                    term = tp
                elif v == -1:
                    term = f"-{tp}"
                else:
                    term = f"{v}*{tp}"
            parts.append(term)
        s = parts[0]
        for term in parts[1:]:
            s += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return s

    def to_json(self):
        """JSON mapping of exponent to coefficient (ints plain, else 'a/b')."""
        out = {}
        for e, v in self._c.items():
            if self.modulus is None and v.denominator != 1:
                out[str(e)] = f"{v.numerator}/{v.denominator}"
            else:
                out[str(e)] = int(v)
        return out

    @classmethod
    def from_json(cls, obj, modulus=None):
        coeffs = {}
        for e, v in obj.items():
            if isinstance(v, str):
                num, _, den = v.partition("/")
                coeffs[int(e)] = Fraction(int(num), int(den or 1))
            else:
                coeffs[int(e)] = v
        return cls(coeffs, modulus)


def _inv_scalar(c, modulus):
    if modulus is None:
        return Fraction(1) / c
    return pow(c, modulus - 2, modulus)


# -- canonical form ---------------------------------------------------------


@dataclass(frozen=True)
class CanonicalPoly:
    """A Laurent polynomial split as unit_coeff * t^unit_exp * poly.

    `poly` has minimum exponent 0 and positive leading rational coefficient
    (monic over a prime field).  The unit factor is what was divided out, so
    associate polynomials share the same `poly`.
    """

    poly: LaurentPoly
    unit_coeff: object
    unit_exp: int

    def unit_str(self):
        if self.poly.modulus is None:
            s = 0 if self.unit_coeff > 0 else 1
            return f"(-1)^{s} t^{self.unit_exp}"
        return f"{self.unit_coeff} t^{self.unit_exp}"

    def to_json(self):
        return {"coeffs": self.poly.to_json(), "unit": self.unit_str()}


def canonicalize(p):
    """Canonical associate of p under multiplication by units c*t^k.

    Over the rationals only the sign and the power of t are normalized, so
    integer content is preserved; over F_q the result is monic.  Zero maps
    to zero with unit 1.
    """
    if p.is_zero():
        return CanonicalPoly(p, _coerce(1, p.modulus), 0)
    shift = p.min_exp()
    q = p.shift(-shift)
    if p.modulus is None:
        if q.leading() < 0:
            return CanonicalPoly(-q, Fraction(-1), shift)
        return CanonicalPoly(q, Fraction(1), shift)
    lead = q.leading()
    return CanonicalPoly(q.scale(_inv_scalar(lead, p.modulus)), lead, shift)


# -- division and gcd -------------------------------------------------------


def poly_divmod(a, b):
    """Euclidean division in R[t] for operands with nonnegative exponents."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    assert a.is_zero() or a.min_exp() >= 0
    assert b.min_exp() >= 0
    modulus = a.modulus
    inv_lead = _inv_scalar(b.leading(), modulus)
    db = b.max_exp()
    q = LaurentPoly.zero(modulus)
    r = a
    while not r.is_zero() and r.max_exp() >= db:
        mono = LaurentPoly({r.max_exp() - db: r.leading() * inv_lead}, modulus)
        q = q + mono
        r = r - mono * b
    return q, r


def div_exact(a, b):
    """a / b when b divides a in the Laurent ring, else None."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    sa, sb = a.min_exp(), b.min_exp()
    q, r = poly_divmod(a.shift(-sa), b.shift(-sb))
    if not r.is_zero():
        return None
    return q.shift(sa - sb)


def poly_gcd(a, b):
    """Monic (positive-leading over Q) gcd in R[t], as a min-exponent-0 poly."""
    a = a if a.is_zero() else a.shift(-a.min_exp())
    b = b if b.is_zero() else b.shift(-b.min_exp())
    while not b.is_zero():
        _, r = poly_divmod(a, b)
        a, b = b, r
        if not a.is_zero():
            a = a.shift(-a.min_exp())
    if a.is_zero():
        return a
    return a.scale(_inv_scalar(a.leading(), a.modulus))


@dataclass(frozen=True)
class PolyFraction:
    """A reduced ratio of Laurent polynomials.

    The denominator is canonical (min exponent 0, positive leading or monic)
    and coprime to the numerator; a denominator of 1 means the quotient is an
    honest polynomial.
    """

    numerator: LaurentPoly
    denominator: LaurentPoly

    @property
    def is_polynomial(self):
        return self.denominator.is_one()

    def __str__(self):
        if self.is_polynomial:
            return str(self.numerator)
        return f"({self.numerator}) / ({self.denominator})"


def divide_exact(num, den):
    """Reduce num/den: exact quotient when den | num, else a gcd-reduced fraction."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return PolyFraction(num, LaurentPoly.one(num.modulus))
    q = div_exact(num, den)
    if q is not None:
        return PolyFraction(q, LaurentPoly.one(num.modulus))
    g = poly_gcd(num, den)
    num_r = div_exact(num, g)
    den_r = div_exact(den, g)
    assert num_r is not None and den_r is not None
    # move the denominator's unit factor into the numerator
    cd = canonicalize(den_r)
    unit_inv = LaurentPoly({-cd.unit_exp: _inv_scalar(cd.unit_coeff, den.modulus)}, den.modulus)
    return PolyFraction(num_r * unit_inv, cd.poly)


# -- matrices ---------------------------------------------------------------


class RingMatrix:
    """An immutable matrix over the Laurent polynomial ring."""

    __slots__ = ("rows", "cols", "entries", "modulus")

    def __init__(self, entries, modulus=None, cols=None):
        rows = []
        for row in entries:
            rows.append(tuple(
                e if isinstance(e, LaurentPoly) else LaurentPoly({0: e}, modulus)
                for e in row))
        object.__setattr__(self, "entries", tuple(rows))
        object.__setattr__(self, "rows", len(rows))
        ncols = len(rows[0]) if rows else (0 if cols is None else cols)
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows in matrix")
        for row in rows:
            for e in row:
                if e.modulus != modulus:
                    raise CoefficientError("matrix entry in wrong coefficient domain")
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, *a):
        raise AttributeError("RingMatrix is immutable")

    @classmethod
    def identity(cls, n, modulus=None):
        one = LaurentPoly.one(modulus)
        zero = LaurentPoly.zero(modulus)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], modulus)

    @classmethod
    def zeros(cls, rows, cols, modulus=None):
        zero = LaurentPoly.zero(modulus)
        return cls([[zero] * cols for _ in range(rows)], modulus, cols=cols)

    @classmethod
    def from_blocks(cls, blocks):
        """Assemble from a 2-d grid of equally sized square RingMatrix blocks."""
        if not blocks or not blocks[0]:
            raise ValueError("empty block grid")
        m = blocks[0][0].rows
        modulus = blocks[0][0].modulus
        rows = []
        for brow in blocks:
            for b in brow:
                if b.rows != m or b.cols != m:
                    raise ValueError("blocks must share one square size")
            for r in range(m):
                rows.append([b.entries[r][c] for b in brow for c in range(m)])
        return cls(rows, modulus)

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return (self.modulus == other.modulus and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.modulus, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"RingMatrix[{self.rows}x{self.cols}]({body})"

    def __add__(self, other):
        self._same_shape(other)
        return RingMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.modulus, cols=self.cols)

    def __sub__(self, other):
        self._same_shape(other)
        return RingMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.modulus, cols=self.cols)

    def __neg__(self):
        return RingMatrix([[-a for a in row] for row in self.entries], self.modulus, cols=self.cols)

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")
        if self.modulus != other.modulus:
            raise CoefficientError("mixed coefficient domains in matrix arithmetic")

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        if self.modulus != other.modulus:
            raise CoefficientError("mixed coefficient domains in matrix arithmetic")
        zero = LaurentPoly.zero(self.modulus)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.is_zero():
                        continue
                    acc = acc + a * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return RingMatrix(out, self.modulus, cols=other.cols)

    def scale(self, p):
        return RingMatrix([[a * p for a in row] for row in self.entries], self.modulus, cols=self.cols)

    def power(self, k):
        if self.rows != self.cols:
            raise ValueError("matrix power needs a square matrix")
        out = RingMatrix.identity(self.rows, self.modulus)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace needs a square matrix")
        acc = LaurentPoly.zero(self.modulus)
        for i in range(self.rows):
            acc = acc + self.entries[i][i]
        return acc

    def transpose(self):
        return RingMatrix([[self.entries[i][j] for i in range(self.rows)]
                           for j in range(self.cols)], self.modulus, cols=self.rows)

    def delete(self, rows=(), cols=()):
        """The submatrix with the given row and column indices removed."""
        rset, cset = set(rows), set(cols)
        for r in rset:
            if not 0 <= r < self.rows:
                raise IndexError(f"row index {r} out of range")
        for c in cset:
            if not 0 <= c < self.cols:
                raise IndexError(f"column index {c} out of range")
        ents = [[self.entries[i][j] for j in range(self.cols) if j not in cset]
                for i in range(self.rows) if i not in rset]
        return RingMatrix(ents, self.modulus, cols=self.cols - len(cset))

    def minor_matrix(self, i, j):
        return self.delete(rows=(i,), cols=(j,))

    def map_entries(self, f):
        return RingMatrix([[f(a) for a in row] for row in self.entries], self.modulus, cols=self.cols)

    def evaluate(self, t0):
        """Entrywise exact evaluation at a rational point."""
        return [[a.evaluate(t0) for a in row] for row in self.entries]

    def block(self, i, j, m):
        """The m x m block at block position (i, j)."""
        ents = [[self.entries[i * m + r][j * m + c] for c in range(m)] for r in range(m)]
        return RingMatrix(ents, self.modulus, cols=m)


def det_cofactor(mat):
    """Determinant by first-row cofactor expansion.  Exponential; small inputs only."""
    if mat.rows != mat.cols:
        raise ValueError("determinant needs a square matrix")
    n = mat.rows
    if n == 0:
        return LaurentPoly.one(mat.modulus)
    if n == 1:
        return mat.entries[0][0]
    acc = LaurentPoly.zero(mat.modulus)
    for j in range(n):
        a = mat.entries[0][j]
        if a.is_zero():
            continue
        sub = mat.minor_matrix(0, j)
        term = a * det_cofactor(sub)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _det_bareiss(mat):
    """Fraction-free elimination after clearing negative exponents rowwise."""
    n = mat.rows
    modulus = mat.modulus
    if n == 0:
        return LaurentPoly.one(modulus)
    work = []
    shift_back = 0
    for row in mat.entries:
        k = min((e.min_exp() for e in row if not e.is_zero()), default=0)
        if k < 0:
            work.append([e.shift(-k) for e in row])
            shift_back += k
        else:
            work.append(list(row))
    sign = 1
    prev = LaurentPoly.one(modulus)
    for k in range(n - 1):
        if work[k][k].is_zero():
            for r in range(k + 1, n):
                if not work[r][k].is_zero():
                    work[k], work[r] = work[r], work[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero(modulus)
        pivot = work[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = work[i][j] * pivot - work[i][k] * work[k][j]
                q = div_exact(num, prev)
                assert q is not None, "fraction-free elimination produced a nonexact division"
                work[i][j] = q
            work[i][k] = LaurentPoly.zero(modulus)
        prev = pivot
    d = work[n - 1][n - 1].shift(shift_back)
    return -d if sign < 0 else d


def det(mat, method=None):
    """Exact determinant; cofactor expansion below 5x5, Bareiss elimination above.

    method forces one algorithm: "cofactor" or "bareiss".
    """
    if mat.rows != mat.cols:
        raise ValueError("determinant needs a square matrix")
    if method == "cofactor":
        return det_cofactor(mat)
    if method == "bareiss":
        return _det_bareiss(mat)
    if method is not None:
        raise ValueError(f"unknown determinant method {method!r}")
    if mat.rows < 5:
        return det_cofactor(mat)
    return _det_bareiss(mat)


# -- exact rational linear algebra -----------------------------------------


def rational_det(rows):
    """Determinant of a square matrix of Fractions by exact elimination."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    for row in a:
        if len(row) != n:
            raise ValueError("rational determinant needs a square matrix")
    detval = Fraction(1)
    for k in range(n):
        piv = None
        for r in range(k, n):
            if a[r][k] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            detval = -detval
        detval *= a[k][k]
        inv = Fraction(1) / a[k][k]
        for r in range(k + 1, n):
            if a[r][k] == 0:
                continue
            f = a[r][k] * inv
            for c in range(k, n):
                a[r][c] -= f * a[k][c]
    return detval


def rational_solve(rows, rhs):
    """Solve A x = b exactly over the rationals; None when A is singular."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    for i, row in enumerate(a):
        if len(row) != n + 1:
            raise ValueError("rational solve needs a square system")
    for k in range(n):
        piv = None
        for r in range(k, n):
            if a[r][k] != 0:
                piv = r
                break
        if piv is None:
            return None
        a[k], a[piv] = a[piv], a[k]
        inv = Fraction(1) / a[k][k]
        a[k] = [v * inv for v in a[k]]
        for r in range(n):
            if r != k and a[r][k] != 0:
                f = a[r][k]
                a[r] = [v - f * w for v, w in zip(a[r], a[k])]
    return [a[i][n] for i in range(n)]
