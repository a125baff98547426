"""Oriented knot and link diagrams, open tangles, and diagram surgery.

A diagram is combinatorial: arcs are numbered 1..n consecutively along the
orientation of each component, and every crossing records its sign, the over
arc, and the under arc before and after the crossing.  Arcs break only at
underpasses, so an arc may pass over any number of crossings, and a closed
component with no underpass is a single circle arc.

Tangles are diagrams with some arcs cut open; their arcs carry string labels
and each open strand is recorded as an (initial, terminal) pair.  Cutting,
composing along strands, cabling, and closing back up are all provided here,
as is the Wirtinger presentation of a diagram's group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property


class DiagramError(ValueError):
    """Raised for structurally invalid diagrams, tangles, or diagram text."""


@dataclass(frozen=True)
class Crossing:
    """One crossing of a diagram.

    `under_out` continues the under strand after the crossing, so in a closed
    diagram it is the orientation successor of `under_in`.  A reduced kink can
    legitimately repeat one arc in all three roles.
    """

    sign: int
    over: int | str
    under_in: int | str
    under_out: int | str

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DiagramError(f"crossing sign must be +1 or -1, got {self.sign!r}")

    def relabel(self, mapping):
        return Crossing(self.sign, mapping[self.over], mapping[self.under_in],
                        mapping[self.under_out])

    def to_json(self):
        return {"sign": self.sign, "over": self.over,
                "under_in": self.under_in, "under_out": self.under_out}


@dataclass(frozen=True)
class KnotDiagram:
    """A closed oriented diagram with arcs 1..n_arcs.

    Crossings are kept sorted by `under_in`, which is unique per crossing, so
    equal diagrams compare equal regardless of input order.  `components`
    lists the arc ranges (start, end) of the link components.
    """

    n_arcs: int
    crossings: tuple[Crossing, ...]
    components: tuple[tuple[int, int], ...] = field(init=False)

    def __post_init__(self):
        if not isinstance(self.n_arcs, int) or self.n_arcs < 1:
            raise DiagramError("a diagram needs at least one arc")
        crossings = tuple(sorted(self.crossings, key=lambda c: c.under_in))
        object.__setattr__(self, "crossings", crossings)
        seen_in, seen_out = set(), set()
        for c in crossings:
            for a in (c.over, c.under_in, c.under_out):
                if not isinstance(a, int) or not 1 <= a <= self.n_arcs:
                    raise DiagramError(f"arc reference {a!r} outside 1..{self.n_arcs}")
            if c.under_in in seen_in:
                raise DiagramError(f"arc {c.under_in} ends at two crossings")
            if c.under_out in seen_out:
                raise DiagramError(f"arc {c.under_out} starts at two crossings")
            seen_in.add(c.under_in)
            seen_out.add(c.under_out)
        if seen_in != seen_out:
            stray = seen_in.symmetric_difference(seen_out)
            raise DiagramError(f"under strand does not close up at arcs {sorted(stray)}")
        object.__setattr__(self, "components", self._component_blocks())

    def _component_blocks(self):
        # successor along the orientation; circle arcs are fixed points
        succ = {c.under_in: c.under_out for c in self.crossings}
        blocks = []
        visited = set()
        for a in range(1, self.n_arcs + 1):
            if a in visited:
                continue
            cur = a
            while True:
                visited.add(cur)
                nxt = succ.get(cur, cur)
                if nxt == a:
                    break
                if nxt != cur + 1:
                    raise DiagramError(
                        f"arcs are not numbered consecutively: {cur} is followed by {nxt}")
                cur = nxt
            blocks.append((a, cur))
        return tuple(blocks)

    @property
    def arcs(self):
        return range(1, self.n_arcs + 1)

    @property
    def writhe(self):
        return sum(c.sign for c in self.crossings)

    def is_knot(self):
        return len(self.components) == 1

    @cached_property
    def _under_in_map(self):
        return {c.under_in: c for c in self.crossings}

    def crossing_at(self, under_in):
        """The crossing where the given arc ends, or None for a circle arc."""
        return self._under_in_map.get(under_in)

    def successor(self, a):
        c = self.crossing_at(a)
        return a if c is None else c.under_out

    def to_json(self):
        return {"arcs": self.n_arcs, "crossings": [c.to_json() for c in self.crossings]}

    @classmethod
    def from_json(cls, obj):
        try:
            n = obj["arcs"]
            crossings = tuple(
                Crossing(c["sign"], c["over"], c["under_in"], c["under_out"])
                for c in obj["crossings"])
        except (KeyError, TypeError) as exc:
            raise DiagramError(f"malformed diagram object: {exc}") from exc
        return cls(n, crossings)


# -- text format -------------------------------------------------------------
#
#   arcs 3
#   X+ 3 1 2        # sign, over, under_in, under_out
#   X+ 1 2 3 / X+ 2 3 1
#
# '#' starts a comment, '/' separates crossings on one line.  The arcs
# directive is optional when every arc meets an underpass, and required to
# express circle components.


def parse_diagram(text):
    """Parse diagram text into a KnotDiagram."""
    declared = None
    crossings = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for chunk in line.split("/"):
            fields = chunk.split()
            if not fields:
                raise DiagramError(f"line {lineno}: empty crossing between separators")
            if fields[0] == "arcs":
                if declared is not None:
                    raise DiagramError(f"line {lineno}: repeated arcs directive")
                if len(fields) != 2 or not fields[1].isdigit():
                    raise DiagramError(f"line {lineno}: expected 'arcs <count>'")
                declared = int(fields[1])
                continue
            if fields[0] not in ("X+", "X-"):
                raise DiagramError(f"line {lineno}: expected 'X+' or 'X-', got {fields[0]!r}")
            if len(fields) != 4:
                raise DiagramError(f"line {lineno}: a crossing takes three arc numbers")
            try:
                over, under_in, under_out = (int(f) for f in fields[1:])
            except ValueError:
                raise DiagramError(f"line {lineno}: arc numbers must be integers") from None
            sign = 1 if fields[0] == "X+" else -1
            crossings.append(Crossing(sign, over, under_in, under_out))
    if declared is None:
        if not crossings:
            raise DiagramError("no crossings and no arcs directive")
        declared = max(max(c.over, c.under_in, c.under_out) for c in crossings)
    return KnotDiagram(declared, tuple(crossings))


def render_diagram(diagram):
    """Canonical text for a diagram: arcs line, then crossings by under_in."""
    lines = [f"arcs {diagram.n_arcs}"]
    for c in diagram.crossings:
        mark = "X+" if c.sign > 0 else "X-"
        lines.append(f"{mark} {c.over} {c.under_in} {c.under_out}")
    return "\n".join(lines) + "\n"


# -- Wirtinger presentation ---------------------------------------------------

# A group word is a tuple of (generator, exponent) letters with exponent +-1.
GroupWord = tuple


@dataclass(frozen=True)
class Presentation:
    """Finitely presented group: one generator per arc, one relator per crossing."""

    generators: tuple
    relators: tuple[GroupWord, ...]


def wirtinger_presentation(diagram):
    """Arc generators with the crossing relations of the diagram group.

    Each crossing with over arc j, incoming under arc i, outgoing under arc k
    and sign e contributes the relator  x_i x_j^e x_k^-1 x_j^-e,  stating that
    conjugation by the over generator carries the under strand across.
    Relators follow the crossing order (sorted by under_in).
    """
    relators = []
    for c in diagram.crossings:
        e = c.sign
        relators.append((
            (c.under_in, 1),
            (c.over, e),
            (c.under_out, -1),
            (c.over, -e),
        ))
    return Presentation(tuple(diagram.arcs), tuple(relators))


# -- tangles ------------------------------------------------------------------


@dataclass(frozen=True)
class Tangle:
    """A diagram cut open along some arcs.

    Arc labels are strings.  Each cut produces an (initial, terminal) pair of
    half-arcs: the initial half keeps the cut arc's underpass exit (its
    under_in role) and the terminal half keeps its entrance (under_out role)
    together with every overpass of the cut arc.  A cut circle arc collapses
    to a single half with initial == terminal.
    """

    arcs: tuple[str, ...]
    crossings: tuple[Crossing, ...]
    cut_pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        arcset = set(self.arcs)
        if len(arcset) != len(self.arcs):
            raise DiagramError("duplicate arc labels in tangle")
        if not self.cut_pairs:
            raise DiagramError("a tangle needs at least one cut pair")
        under_in, under_out = {}, set()
        for c in self.crossings:
            for a in (c.over, c.under_in, c.under_out):
                if a not in arcset:
                    raise DiagramError(f"crossing references unknown arc {a!r}")
            if c.under_in in under_in:
                raise DiagramError(f"arc {c.under_in!r} ends at two crossings")
            if c.under_out in under_out:
                raise DiagramError(f"arc {c.under_out!r} starts at two crossings")
            under_in[c.under_in] = c.under_out
            under_out.add(c.under_out)
        on_strand = set()
        inits = [p for p, _ in self.cut_pairs]
        terms = [q for _, q in self.cut_pairs]
        if len(set(inits)) != len(inits) or len(set(terms)) != len(terms):
            raise DiagramError("cut pairs reuse an endpoint")
        for p, q in self.cut_pairs:
            if p not in arcset or q not in arcset:
                raise DiagramError(f"cut pair ({p!r}, {q!r}) references unknown arcs")
            if p in under_out:
                raise DiagramError(f"initial arc {p!r} exits a crossing")
            if q in under_in:
                raise DiagramError(f"terminal arc {q!r} enters a crossing")
            cur = p
            walk = [cur]
            while cur in under_in:
                cur = under_in[cur]
                walk.append(cur)
                if len(walk) > len(self.arcs):
                    raise DiagramError("under strand does not terminate")
            if cur != q:
                raise DiagramError(f"strand from {p!r} ends at {cur!r}, not {q!r}")
            on_strand.update(walk)
        for a in arcset - on_strand:
            if (a in under_in) != (a in under_out):
                raise DiagramError(f"arc {a!r} is neither on a strand nor on a closed loop")

    @property
    def n_strands(self):
        return len(self.cut_pairs)

    def strand_pair(self):
        if len(self.cut_pairs) != 1:
            raise DiagramError("tangle has more than one open strand")
        return self.cut_pairs[0]

    def to_json(self):
        return {
            "arcs": list(self.arcs),
            "crossings": [c.to_json() for c in self.crossings],
            "cut_pairs": [list(p) for p in self.cut_pairs],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            arcs = tuple(obj["arcs"])
            crossings = tuple(
                Crossing(c["sign"], c["over"], c["under_in"], c["under_out"])
                for c in obj["crossings"])
            pairs = tuple((p[0], p[1]) for p in obj["cut_pairs"])
        except (KeyError, TypeError, IndexError) as exc:
            raise DiagramError(f"malformed tangle object: {exc}") from exc
        return cls(arcs, crossings, pairs)


def cut(diagram, cut_arcs):
    """Open the diagram along the given arcs.

    Every cut arc a splits at a point past all of its overpasses: the initial
    half "a'" starts the strand and inherits the underpass that a entered,
    while the terminal half "a''" ends the strand and inherits a's underpass
    exit and every crossing a passed over.  A circle arc yields one half "a'"
    paired with itself.
    """
    chosen = sorted(set(cut_arcs))
    if not chosen:
        raise DiagramError("cut needs at least one arc")
    for a in chosen:
        if a not in diagram.arcs:
            raise DiagramError(f"cannot cut unknown arc {a!r}")
    circle = {a for a in chosen if diagram.crossing_at(a) is None}

    def as_in(a):
        return f"{a}'" if a in chosen else str(a)

    def as_out(a):
        if a in circle:
            return f"{a}'"
        return f"{a}''" if a in chosen else str(a)

    arcs = [str(a) for a in diagram.arcs if a not in chosen]
    pairs = []
    for a in chosen:
        arcs.append(f"{a}'")
        if a in circle:
            pairs.append((f"{a}'", f"{a}'"))
        else:
            arcs.append(f"{a}''")
            pairs.append((f"{a}'", f"{a}''"))
    crossings = tuple(
        Crossing(c.sign, as_out(c.over), as_in(c.under_in), as_out(c.under_out))
        for c in diagram.crossings)
    return Tangle(tuple(sorted(arcs)), crossings, tuple(pairs))


def compose_tangles(t1, t2):
    """Join two one-strand tangles end to start.

    The terminal arc of t1 fuses with the initial arc of t2 into one arc; the
    composite runs from t1's initial arc to t2's terminal arc.  Labels gain
    "L:" and "R:" prefixes so the two sides stay disjoint.
    """
    i1, q1 = t1.strand_pair()
    i2, q2 = t2.strand_pair()
    fused = f"L:{q1}"
    map1 = {a: f"L:{a}" for a in t1.arcs}
    map2 = {a: (fused if a == i2 else f"R:{a}") for a in t2.arcs}
    arcs = tuple(sorted(set(map1.values()) | set(map2.values())))
    crossings = tuple(c.relabel(map1) for c in t1.crossings)
    crossings += tuple(c.relabel(map2) for c in t2.crossings)
    return Tangle(arcs, crossings, ((map1[i1], map2[q2]),))


def split_union(d1, d2):
    """Disjoint union of two diagrams, the second renumbered above the first."""
    shift = d1.n_arcs
    moved = tuple(
        Crossing(c.sign, c.over + shift, c.under_in + shift, c.under_out + shift)
        for c in d2.crossings)
    return KnotDiagram(d1.n_arcs + d2.n_arcs, d1.crossings + moved)


def close_tangle(tangle):
    """Rejoin every open strand of a tangle into a closed diagram.

    Each terminal arc fuses back onto its initial arc; closed components are
    then renumbered consecutively, ordered by their smallest label.
    """
    fuse = {}
    for p, q in tangle.cut_pairs:
        if q != p:
            fuse[q] = p
    mapping = {a: fuse.get(a, a) for a in tangle.arcs}
    crossings = [c.relabel(mapping) for c in tangle.crossings]
    labels = sorted(set(mapping.values()))
    succ = {c.under_in: c.under_out for c in crossings}
    number = {}
    nxt = 1
    for a in labels:
        if a in number:
            continue
        cur = a
        while True:
            number[cur] = nxt
            nxt += 1
            cur = succ.get(cur, cur)
            if cur == a:
                break
    renum = tuple(c.relabel(number) for c in crossings)
    return KnotDiagram(len(labels), renum)


def connected_sum(d1, d2, arc1=None, arc2=None):
    """Connected sum of two diagrams, spliced at the chosen arcs.

    By default each diagram is opened along its highest-numbered arc.
    """
    if arc1 is None:
        arc1 = d1.n_arcs
    if arc2 is None:
        arc2 = d2.n_arcs
    return close_tangle(compose_tangles(cut(d1, [arc1]), cut(d2, [arc2])))


def cable(tangle, n):
    """Replace the single open strand of a tangle by n parallel copies.

    Copy m of arc a is labelled "a|m".  Where the strand passes under a
    crossing, each copy crosses under all n copies of the over arc in turn,
    through fresh segment arcs "a|m.l"; the crossing sign is kept each time.
    """
    if not isinstance(n, int) or n < 1:
        raise DiagramError("cable order must be a positive integer")
    init, term = tangle.strand_pair()
    arcs = [f"{a}|{m}" for a in tangle.arcs for m in range(1, n + 1)]
    arcs += [f"{c.under_in}|{m}.{l}"
             for c in tangle.crossings
             for m in range(1, n + 1) for l in range(1, n)]
    crossings = []
    for c in tangle.crossings:
        i, j, k = c.under_in, c.over, c.under_out
        for m in range(1, n + 1):
            for l in range(1, n + 1):
                src = f"{i}|{m}" if l == 1 else f"{i}|{m}.{l - 1}"
                dst = f"{i}|{m}.{l}" if l < n else f"{k}|{m}"
                crossings.append(Crossing(c.sign, f"{j}|{l}", src, dst))
    pairs = tuple((f"{init}|{m}", f"{term}|{m}") for m in range(1, n + 1))
    return Tangle(tuple(sorted(arcs)), tuple(crossings), pairs)
