"""The weighted directed graph on the arcs of a diagram or tangle.

Every crossing contributes two edges out of its incoming under arc: a
go-under edge to the outgoing under arc and a jump-up edge to the over arc.
Edge labels T1/T2 (go-under at a positive/negative crossing) and S1/S2
(jump-up) stay symbolic until a weight specialization is applied, after
which weight matrices and Laplacians live over exact Laurent polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .knot_model import DiagramError, KnotDiagram, Tangle
from .laurent import LaurentPoly, RingMatrix

LABELS = ("T1", "T2", "S1", "S2")


@dataclass(frozen=True)
class GraphEdge:
    """A directed edge src -> dst with its symbolic label and source crossing."""

    src: int | str
    dst: int | str
    label: str
    crossing: int

    def to_json(self):
        return {"from": self.src, "to": self.dst, "label": self.label,
                "crossing": self.crossing}


@dataclass(frozen=True)
class ArcGraph:
    """Arc diagram of a tangle: one vertex per arc, two out-edges per underpass.

    `boundary` carries the (initial, terminal) cut pairs when the graph came
    from a tangle; it is empty for a closed diagram.  `crossings` keeps the
    source crossing list so edge indices stay meaningful.
    """

    vertices: tuple
    edges: tuple[GraphEdge, ...]
    boundary: tuple[tuple, ...]
    crossings: tuple

    @cached_property
    def _index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_map(self):
        return {(e.src, e.dst): e for e in self.edges}

    @cached_property
    def out_map(self):
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
        return {v: tuple(es) for v, es in out.items()}

    def vertex_index(self, v):
        try:
            return self._index[v]
        except KeyError:
            raise DiagramError(f"unknown vertex {v!r}") from None

    @property
    def endpoints(self):
        seen = []
        for p, q in self.boundary:
            for v in (p, q):
                if v not in seen:
                    seen.append(v)
        return tuple(seen)

    @property
    def internal_vertices(self):
        ends = set(self.endpoints)
        return tuple(v for v in self.vertices if v not in ends)

    def to_json(self):
        return {"vertices": list(self.vertices),
                "edges": [e.to_json() for e in self.edges]}

    def to_dot(self):
        lines = ["digraph arcs {"]
        for v in self.vertices:
            shape = "doublecircle" if v in set(self.endpoints) else "circle"
            lines.append(f'  "{v}" [shape={shape}];')
        for e in self.edges:
            lines.append(f'  "{e.src}" -> "{e.dst}" [label="{e.label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_arc_graph(source):
    """Arc graph of a KnotDiagram or Tangle.

    Per crossing (sign e, over j, under_in i, under_out k): edge i->k labeled
    T1 (e=+) or T2, and edge i->j labeled S1 or S2.  Terminal cut arcs are
    never an under_in, so they emit nothing.  A repeated ordered pair (which
    a kink with over == under_out would produce) is rejected: the cycle
    combinatorics downstream assume at most one edge per pair.
    """
    if isinstance(source, KnotDiagram):
        vertices = tuple(source.arcs)
        boundary = ()
    elif isinstance(source, Tangle):
        vertices = tuple(source.arcs)
        boundary = tuple(source.cut_pairs)
    else:
        raise TypeError(f"expected KnotDiagram or Tangle, got {type(source).__name__}")
    edges = []
    seen = set()
    for idx, c in enumerate(source.crossings):
        t_label = "T1" if c.sign > 0 else "T2"
        s_label = "S1" if c.sign > 0 else "S2"
        for dst, label in ((c.under_out, t_label), (c.over, s_label)):
            pair = (c.under_in, dst)
            if pair in seen:
                raise DiagramError(
                    f"two edges on ordered pair {pair}: diagram too degenerate "
                    "for the one-edge-per-pair convention")
            seen.add(pair)
            edges.append(GraphEdge(c.under_in, dst, label, idx))
    return ArcGraph(vertices, tuple(edges), boundary, tuple(source.crossings))


@dataclass(frozen=True)
class WeightSpec:
    """Assignment of the four edge labels to Laurent polynomial weights."""

    t1: LaurentPoly
    t2: LaurentPoly
    s1: LaurentPoly
    s2: LaurentPoly

    def __getitem__(self, label):
        try:
            return getattr(self, label.lower())
        except AttributeError:
            raise KeyError(f"unknown weight label {label!r}") from None

    @property
    def modulus(self):
        return self.t1.modulus


def alexander_spec(modulus=None):
    """The specialization t1=t, t2=1/t, s1=1-t, s2=1-1/t.

    This is the unique assignment with row sum t^e + (1-t^e) = 1 at every
    crossing, and it makes I - W coincide with the abelianized Fox matrix.
    """
    t = LaurentPoly.t_power(1, modulus)
    t_inv = LaurentPoly.t_power(-1, modulus)
    one = LaurentPoly.one(modulus)
    return WeightSpec(t, t_inv, one - t, one - t_inv)


def constant_spec(value=1, modulus=None):
    """All four labels mapped to one constant; weight 1 counts walks."""
    c = LaurentPoly.constant(value, modulus)
    return WeightSpec(c, c, c, c)


def weighted_edges(g, spec):
    """The graph's edges as (src, dst, weight) triples under a specialization."""
    return tuple((e.src, e.dst, spec[e.label]) for e in g.edges)


def weight_matrix(g, spec, vertices=None):
    """Adjacency-style matrix W with W[u][v] = weight of the edge u -> v."""
    if vertices is None:
        vertices = g.vertices
    index = {v: i for i, v in enumerate(vertices)}
    modulus = spec.modulus
    zero = LaurentPoly.zero(modulus)
    n = len(vertices)
    rows = [[zero] * n for _ in range(n)]
    for e in g.edges:
        if e.src in index and e.dst in index:
            i, j = index[e.src], index[e.dst]
            assert rows[i][j].is_zero(), "duplicate edge survived construction"
            rows[i][j] = spec[e.label]
    return RingMatrix(rows, modulus, cols=n)


def laplacian(g, spec, roots=()):
    """Out-degree Laplacian with the root rows and columns deleted.

    L[v][v] is the total weight leaving v and L[u][v] the negated edge
    weight, so every row sums to zero before any deletion.
    """
    roots = list(roots)
    for r in roots:
        g.vertex_index(r)
    modulus = spec.modulus
    w = weight_matrix(g, spec)
    n = len(g.vertices)
    zero = LaurentPoly.zero(modulus)
    rows = []
    for i, v in enumerate(g.vertices):
        out_total = zero
        for e in g.out_map[v]:
            out_total = out_total + spec[e.label]
        row = [out_total - w.entries[i][j] if i == j else -w.entries[i][j]
               for j in range(n)]
        rows.append(row)
    full = RingMatrix(rows, modulus, cols=n)
    drop = [g.vertex_index(r) for r in roots]
    return full.delete(rows=drop, cols=drop)


def tangle_matrix(g, spec, vertices=None):
    """I - W over the chosen vertices (defaults to all of them)."""
    if vertices is None:
        vertices = g.vertices
    w = weight_matrix(g, spec, vertices)
    return RingMatrix.identity(len(vertices), spec.modulus) - w


def tangle_determinant(g, spec):
    """det(I - W) over the full vertex set.

    For a one-strand tangle the initial vertex has no in-edges and the
    terminal vertex no out-edges, so this equals the determinant over the
    internal vertices alone; for an uncut diagram it is identically zero.
    """
    from .laurent import det

    return det(tangle_matrix(g, spec))
