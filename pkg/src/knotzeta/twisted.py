"""Twisted invariants: colorings, finite-field representations, block weights.

A representation of the diagram group into GL(m, F_q) refines the Alexander
machinery: every scalar weight becomes an m x m block carrying t^(exponent
sum) times the representation image of a short group word.  The same three
views exist as in the untwisted case and are checked against each other: the
Fox Jacobian of the Wirtinger presentation (with images applied), the block
weight matrix read off crossing by crossing, and trace sums over closed
walks with ordered block products.

Dihedral representations built from Fox p-colorings supply nontrivial test
cases; the trivial one-dimensional representation recovers the ordinary
Alexander polynomial divided by t - 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .alexander import alexander_minor, fox_derivative
from .arc_graph import build_arc_graph
from .knot_model import DiagramError, Presentation, wirtinger_presentation
from .laurent import LaurentPoly, PolyFraction, RingMatrix, canonicalize, det, \
    divide_exact
from .verdict import Verdict
from .zeta import closed_walks


# -- small dense linear algebra over a prime field ---------------------------


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _mat_mul(a, b, q):
    m = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(m)) % q
                       for j in range(m)) for i in range(m))


def _mat_identity(m):
    return tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m))


def _mat_inverse(a, q):
    """Inverse mod q by Gauss-Jordan elimination, or None when singular."""
    m = len(a)
    work = [list(row) + list(ident) for row, ident in zip(a, _mat_identity(m))]
    for c in range(m):
        pivot = next((r for r in range(c, m) if work[r][c] % q), None)
        if pivot is None:
            return None
        work[c], work[pivot] = work[pivot], work[c]
        inv = pow(work[c][c], q - 2, q)
        work[c] = [(x * inv) % q for x in work[c]]
        for r in range(m):
            if r != c and work[r][c]:
                f = work[r][c]
                work[r] = [(x - f * y) % q for x, y in zip(work[r], work[c])]
    return tuple(tuple(row[m:]) for row in work)


# -- representations ----------------------------------------------------------


class Representation:
    """Generator images in GL(dim, F_field), one per arc of a diagram.

    Only the free-group data lives here; whether the images satisfy the
    crossing relations is a separate question answered by
    verify_representation.
    """

    __slots__ = ("field", "dim", "images", "_inverses")

    def __init__(self, field, images):
        if not _is_prime(field):
            raise ValueError(f"field order {field} is not prime")
        if not images:
            raise ValueError("a representation needs at least one generator image")
        dims = set()
        cleaned = {}
        for gen, mat in images.items():
            rows = tuple(tuple(int(x) % field for x in row) for row in mat)
            dims.add(len(rows))
            for row in rows:
                if len(row) != len(rows):
                    raise ValueError(f"image of generator {gen} is not square")
            cleaned[gen] = rows
        if len(dims) != 1:
            raise ValueError("generator images must share one dimension")
        inverses = {}
        for gen, mat in cleaned.items():
            inv = _mat_inverse(mat, field)
            if inv is None:
                raise ValueError(f"image of generator {gen} is singular mod {field}")
            inverses[gen] = inv
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "dim", dims.pop())
        object.__setattr__(self, "images", cleaned)
        object.__setattr__(self, "_inverses", inverses)

    def __setattr__(self, *a):
        raise AttributeError("Representation is immutable")

    @property
    def generators(self):
        return tuple(sorted(self.images))

    def image(self, gen):
        return self.images[gen]

    def word_image(self, word):
        out = _mat_identity(self.dim)
        for g, e in word:
            if g not in self.images:
                raise KeyError(f"no image for generator {g}")
            mat = self.images[g] if e > 0 else self._inverses[g]
            for _ in range(abs(e)):
                out = _mat_mul(out, mat, self.field)
        return out


def trivial_representation(generators, field=101):
    """Every generator maps to 1 in F_field; twisting by it changes nothing."""
    return Representation(field, {g: ((1,),) for g in generators})


def verify_representation(presentation, rep):
    """Every relator must map to the identity matrix."""
    missing = [g for g in presentation.generators if g not in rep.images]
    ident = _mat_identity(rep.dim)
    failures = []
    if not missing:
        for idx, r in enumerate(presentation.relators):
            if rep.word_image(r) != ident:
                failures.append(idx)
    return Verdict("representation", not (missing or failures),
                   {"missing_generators": missing, "failed_relators": failures})


# -- Fox colorings and dihedral representations -------------------------------


@dataclass(frozen=True)
class ColoringSpace:
    """All arc colorings mod p satisfying twice-over = in + out at each crossing."""

    prime: int
    arcs: int
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    def vectors(self):
        """Every coloring, as span combinations of the basis in a fixed order."""
        p = self.prime
        for coeffs in itertools.product(range(p), repeat=self.dim):
            vec = [0] * self.arcs
            for c, b in zip(coeffs, self.basis):
                for i, x in enumerate(b):
                    vec[i] = (vec[i] + c * x) % p
            yield tuple(vec)

    def nonconstant(self):
        """Some coloring using at least two colors, or None."""
        for b in self.basis:
            if len(set(b)) > 1:
                return b
        for v in self.vectors():
            if len(set(v)) > 1:
                return v
        return None


def fox_colorings(diagram, p):
    """The space of arc colorings mod an odd prime p.

    Each crossing demands  color(under_in) + color(under_out) equal twice
    color(over) mod p.  Constants always color, so the dimension is at least
    1; anything larger detects p-torsion in the knot's homology.
    """
    if not _is_prime(p) or p == 2:
        raise ValueError(f"{p} is not an odd prime")
    n = diagram.n_arcs
    rows = []
    for c in diagram.crossings:
        row = [0] * n
        row[c.under_in - 1] = (row[c.under_in - 1] + 1) % p
        row[c.under_out - 1] = (row[c.under_out - 1] + 1) % p
        row[c.over - 1] = (row[c.over - 1] - 2) % p
        rows.append(row)
    basis = _nullspace_mod(rows, n, p)
    return ColoringSpace(p, n, tuple(basis))


def _nullspace_mod(rows, n_cols, p):
    mat = [list(row) for row in rows]
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] % p), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % p:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    basis = []
    for free in range(n_cols):
        if free in pivots:
            continue
        v = [0] * n_cols
        v[free] = 1
        for i, c in enumerate(pivots):
            v[c] = (-mat[i][free]) % p
        basis.append(tuple(v))
    return basis


def _least_prime_one_mod(p):
    q = p + 1
    while True:
        if q % p == 1 and _is_prime(q):
            return q
        q += 1


def _primitive_root(q):
    factors = []
    n = q - 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    for g in range(2, q):
        if all(pow(g, (q - 1) // f, q) != 1 for f in factors):
            return g
    raise ValueError(f"{q} has no primitive root; not prime?")


def dihedral_field(p):
    """(q, w): the least prime q = 1 mod p, and an element w of order p in F_q,
    taken as the least primitive root raised to (q-1)/p."""
    q = _least_prime_one_mod(p)
    w = pow(_primitive_root(q), (q - 1) // p, q)
    return q, w


def dihedral_rep(diagram, p, coloring):
    """The dihedral representation attached to a nonconstant p-coloring.

    Arc a with color c maps to the 2x2 matrix ((0, w^c), (w^-c, 0)) over the
    field F_q from dihedral_field(p): an involution, a reflection of the
    dihedral group of order 2p pushed into GL(2, F_q).
    """
    if not _is_prime(p) or p == 2:
        raise ValueError(f"{p} is not an odd prime")
    coloring = tuple(int(c) % p for c in coloring)
    if len(coloring) != diagram.n_arcs:
        raise ValueError(f"coloring has {len(coloring)} entries for {diagram.n_arcs} arcs")
    for c in diagram.crossings:
        lhs = (coloring[c.under_in - 1] + coloring[c.under_out - 1]) % p
        if lhs != (2 * coloring[c.over - 1]) % p:
            raise ValueError(f"not a valid coloring at the crossing over arc {c.over}")
    if len(set(coloring)) == 1:
        raise ValueError("constant coloring gives an abelian representation; refusing")
    q, w = dihedral_field(p)
    images = {}
    for a in diagram.arcs:
        c = coloring[a - 1]
        images[a] = ((0, pow(w, c, q)), (pow(w, (p - c) % p, q), 0))
    return Representation(q, images)


# -- the twisted chain: Fox Jacobian with matrix coefficients -----------------


def twisted_image(rep, word):
    """t^(exponent sum) times the representation image, over F_q[t, 1/t]."""
    k = sum(e for _, e in word)
    mat = rep.word_image(word)
    q = rep.field
    return RingMatrix([[LaurentPoly({k: x}, q) for x in row] for row in mat],
                      q, cols=rep.dim)


def _twisted_element(rep, elem):
    """Image of a group ring element: sum of coeff * twisted_image(word)."""
    out = RingMatrix.zeros(rep.dim, rep.dim, rep.field)
    for word, coeff in elem.items():
        out = out + twisted_image(rep, word).scale(coeff)
    return out


def twisted_alexander_matrix(presentation, rep):
    """Fox Jacobian with each derivative pushed through the representation.

    One m x m block per (relator, generator) pair, flattened to a plain
    matrix of size (#relators * m) x (#generators * m).
    """
    if not presentation.relators:
        raise DiagramError("presentation has no relators")
    blocks = []
    for r in presentation.relators:
        blocks.append([_twisted_element(rep, fox_derivative(r, g))
                       for g in presentation.generators])
    return RingMatrix.from_blocks(blocks)


def drop_relator(presentation, index=-1):
    """The presentation with one relator removed (the last, by default)."""
    relators = list(presentation.relators)
    if not relators:
        raise DiagramError("no relator to drop")
    del relators[index]
    return Presentation(presentation.generators, tuple(relators))


@dataclass(frozen=True)
class TwistedPolynomial:
    """A twisted Alexander polynomial as a reduced fraction over F_q[t, 1/t].

    Both parts are defined only up to units (+-t^s and field scalars); the
    canonical forms in to_json pin one choice.
    """

    fraction: PolyFraction
    column: int
    field: int
    dim: int

    def to_json(self):
        return {
            "numerator": canonicalize(self.fraction.numerator).to_json(),
            "denominator": canonicalize(self.fraction.denominator).to_json(),
            "column": self.column,
            "field": self.field,
            "dim": self.dim,
        }

    def __str__(self):
        return f"({self.fraction.numerator}) / ({self.fraction.denominator})"


def _denominator_matrix(rep, gen):
    return twisted_image(rep, ((gen, 1),)) - RingMatrix.identity(rep.dim, rep.field)


def twisted_alexander_polynomial(diagram, rep, column=None, drop=-1):
    """Determinant quotient of the reduced twisted Jacobian.

    Drop one relator, delete the block column of an arc k whose denominator
    det(t rho(x_k) - I) is nonzero, and divide the two determinants.  The
    result is independent of the choices up to units; column selection takes
    the first admissible k unless one is forced.
    """
    pres = wirtinger_presentation(diagram)
    check = verify_representation(pres, rep)
    if not check.passed:
        raise DiagramError(f"images do not satisfy the crossing relations: {check.detail}")
    reduced = drop_relator(pres, drop) if pres.relators else pres
    full = twisted_alexander_matrix(reduced, rep) if reduced.relators else None
    m = rep.dim
    candidates = (column,) if column is not None else pres.generators
    for k in candidates:
        den = det(_denominator_matrix(rep, k))
        if den.is_zero():
            if column is not None:
                raise DiagramError(f"denominator for column {k} vanishes")
            continue
        if full is None:
            num = LaurentPoly.one(rep.field)
        else:
            pos = pres.generators.index(k)
            kept = full.delete(cols=tuple(range(pos * m, (pos + 1) * m)))
            num = det(kept)
        return TwistedPolynomial(divide_exact(num, den), k, rep.field, m)
    raise DiagramError("every column denominator vanishes")


# -- block weight matrix and its consistency checks ---------------------------


def _word(*letters):
    return tuple(letters)


def _crossing_blocks(rep, crossing):
    """The two outgoing blocks of the under-in arc at one crossing.

    Keyed so that I - B reproduces the twisted Fox row of the crossing's
    relator; the under edge carries the full conjugate image, the jump edge
    the difference that a Fox derivative of the over generator produces.
    """
    i, j, k = crossing.under_in, crossing.over, crossing.under_out
    if crossing.sign > 0:
        under = twisted_image(rep, _word((i, 1), (j, 1), (k, -1)))
        jump = twisted_image(rep, _word((i, 1), (j, 1), (k, -1), (j, -1))) \
            - twisted_image(rep, _word((i, 1)))
    else:
        under = twisted_image(rep, _word((i, 1), (j, -1), (k, -1)))
        jump = twisted_image(rep, _word((i, 1), (j, -1))) \
            - twisted_image(rep, _word((i, 1), (j, -1), (k, -1)))
    return under, jump


def twisted_weight_graph(diagram, rep):
    """The block weight matrix B on the diagram's arc graph.

    Block row a holds the two blocks of the crossing under which arc a ends,
    at the block columns of the under-out and over arcs.  Arcs of crossing-free
    components contribute zero rows.  Setting t = 1 and the representation
    trivial recovers the plain walk matrix.
    """
    build_arc_graph(diagram)
    n = diagram.n_arcs
    m = rep.dim
    zero = RingMatrix.zeros(m, m, rep.field)
    grid = [[zero] * n for _ in range(n)]
    for c in diagram.crossings:
        under, jump = _crossing_blocks(rep, c)
        row = c.under_in - 1
        grid[row][c.under_out - 1] = grid[row][c.under_out - 1] + under
        grid[row][c.over - 1] = grid[row][c.over - 1] + jump
    return RingMatrix.from_blocks(grid)


def twisted_block_identity_check(diagram, rep):
    """I - B agrees block row by block row with the twisted Fox Jacobian.

    Compared on the shared rows: each crossing's relator row against the
    block row of its under-in arc.  This ties the graph-side and group-side
    constructions together exactly.
    """
    m = rep.dim
    mismatches = []
    if diagram.crossings:
        pres = wirtinger_presentation(diagram)
        jac = twisted_alexander_matrix(pres, rep)
        b = twisted_weight_graph(diagram, rep)
        i_minus_b = RingMatrix.identity(b.rows, rep.field) - b
        for ridx, c in enumerate(diagram.crossings):
            arow = c.under_in - 1
            for gpos in range(diagram.n_arcs):
                left = jac.block(ridx, gpos, m)
                right = i_minus_b.block(arow, gpos, m)
                if left != right:
                    mismatches.append({"relator": ridx, "generator": gpos + 1,
                                       "jacobian": repr(left), "graph": repr(right)})
    return Verdict("twisted_block_identity", not mismatches,
                   {"mismatches": mismatches})


def twisted_row_identity_check(diagram, rep):
    """The fundamental Fox identity, twisted: rows annihilate the column
    vector of images minus identities.

    For each relator r: sum over generators k of (dr/dx_k under the twist)
    times (twisted_image(x_k) - I) equals twisted_image(r) - I = 0 exactly.
    """
    pres = wirtinger_presentation(diagram)
    if not pres.relators:
        return Verdict("twisted_row_identity", True, {"relators": 0})
    check = verify_representation(pres, rep)
    if not check.passed:
        raise DiagramError(f"images do not satisfy the crossing relations: {check.detail}")
    m = rep.dim
    jac = twisted_alexander_matrix(pres, rep)
    cols = [_denominator_matrix(rep, g) for g in pres.generators]
    failures = []
    zero = RingMatrix.zeros(m, m, rep.field)
    for ridx in range(len(pres.relators)):
        acc = zero
        for gpos, colmat in enumerate(cols):
            acc = acc + jac.block(ridx, gpos, m) @ colmat
        if acc != zero:
            failures.append({"relator": ridx, "value": repr(acc)})
    return Verdict("twisted_row_identity", not failures,
                   {"relators": len(pres.relators), "failures": failures})


def twisted_trace_check(diagram, rep, max_power=6):
    """tr(B^m) equals the sum over based closed walks of block product traces.

    The blocks do not commute, so the product follows the walk in order; the
    scalar trace identity is the dim = 1 shadow of this one.
    """
    g = build_arc_graph(diagram)
    b = twisted_weight_graph(diagram, rep)
    m = rep.dim
    failures = []
    power = b
    for length in range(1, max_power + 1):
        walk_sum = LaurentPoly.zero(rep.field)
        for walk in closed_walks(g, length):
            prod = RingMatrix.identity(m, rep.field)
            for e in walk:
                prod = prod @ b.block(int(e.src) - 1, int(e.dst) - 1, m)
            walk_sum = walk_sum + prod.trace()
        tr = power.trace()
        if tr != walk_sum:
            failures.append({"m": length, "trace": str(tr), "walks": str(walk_sum)})
        if length < max_power:
            power = power @ b
    return Verdict("twisted_trace", not failures,
                   {"max_power": max_power, "failures": failures})


# -- cross-checks against the untwisted theory --------------------------------


def trivial_reduction_check(diagram, field=101):
    """Twisting by the trivial representation divides the Alexander
    polynomial by t - 1, as reduced fractions over F_field.

    Compared by cross-multiplying canonical forms, which removes the unit
    ambiguity on both sides.
    """
    rep = trivial_representation(tuple(diagram.arcs), field)
    tw = twisted_alexander_polynomial(diagram, rep)
    plain = alexander_minor(diagram, modulus=field)
    t_minus_1 = LaurentPoly({1: 1, 0: -1}, field)
    lhs = canonicalize(tw.fraction.numerator * t_minus_1).poly
    rhs = canonicalize(plain * tw.fraction.denominator).poly
    return Verdict("trivial_reduction", lhs == rhs,
                   {"twisted": str(tw), "plain": str(plain),
                    "cross_lhs": str(lhs), "cross_rhs": str(rhs)})


def column_independence_check(diagram, rep):
    """The determinant quotient is the same rational function for every
    admissible column choice, up to units.

    Checked by cross-multiplying numerators and denominators pairwise and
    comparing canonical forms.
    """
    pres = wirtinger_presentation(diagram)
    results = []
    for k in pres.generators:
        den = det(_denominator_matrix(rep, k))
        if den.is_zero():
            continue
        tw = twisted_alexander_polynomial(diagram, rep, column=k)
        results.append((k, tw.fraction))
    failures = []
    for (k1, f1), (k2, f2) in itertools.combinations(results, 2):
        left = canonicalize(f1.numerator * f2.denominator).poly
        right = canonicalize(f2.numerator * f1.denominator).poly
        if left != right:
            failures.append({"columns": [k1, k2], "left": str(left), "right": str(right)})
    return Verdict("column_independence", bool(results) and not failures,
                   {"columns": [k for k, _ in results], "failures": failures})
