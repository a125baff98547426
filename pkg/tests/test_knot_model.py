"""Diagram parsing, validation, presentations, and tangle surgery."""

import pytest

from knotzeta.knot_model import Crossing, DiagramError, KnotDiagram, Tangle, \
    cable, close_tangle, compose_tangles, connected_sum, cut, parse_diagram, \
    render_diagram, split_union, wirtinger_presentation

TREFOIL = "X+ 3 1 2 / X+ 1 2 3 / X+ 2 3 1\n"


def test_parse_trefoil():
    d = parse_diagram(TREFOIL)
    assert d.n_arcs == 3
    assert len(d.crossings) == 3
    assert d.writhe == 3
    assert d.is_knot()


def test_parse_comments_and_blank_lines():
    text = "# a knot\n\nX+ 3 1 2\nX+ 1 2 3  # inline\nX+ 2 3 1\n"
    assert parse_diagram(text) == parse_diagram(TREFOIL)


def test_parse_arcs_directive_for_circles():
    d = parse_diagram("arcs 1\n")
    assert d.n_arcs == 1
    assert d.crossings == ()
    assert d.components == ((1, 1),)


def test_parse_errors():
    for text in ("", "arcs 2\narcs 3\n", "arcs two\n", "X* 1 2 3\n",
                 "X+ 1 2\n", "X+ a b c\n", "X+ 1 2 3 //\n"):
        with pytest.raises(DiagramError):
            parse_diagram(text)


def test_crossing_sign_validated():
    with pytest.raises(DiagramError):
        Crossing(2, 1, 2, 3)


def test_diagram_rejects_out_of_range_arcs():
    with pytest.raises(DiagramError):
        KnotDiagram(2, (Crossing(1, 3, 1, 2), Crossing(1, 1, 2, 1)))


def test_diagram_rejects_duplicate_under_roles():
    # two crossings cannot share an under_in arc
    with pytest.raises(DiagramError):
        parse_diagram("X+ 3 1 2 / X+ 1 1 3 / X+ 2 3 1 / X+ 2 2 1\n")


def test_diagram_rejects_nonconsecutive_numbering():
    with pytest.raises(DiagramError):
        parse_diagram("X+ 3 1 3 / X+ 1 3 1\n")


def test_diagram_rejects_open_under_strand():
    with pytest.raises(DiagramError):
        KnotDiagram(3, (Crossing(1, 3, 1, 2),))


def test_crossings_sorted_by_under_in():
    d = parse_diagram("X+ 2 3 1 / X+ 3 1 2 / X+ 1 2 3\n")
    assert [c.under_in for c in d.crossings] == [1, 2, 3]
    assert d == parse_diagram(TREFOIL)


def test_successor_and_crossing_at(corpus):
    d = corpus["trefoil"]
    assert d.successor(1) == 2
    assert d.successor(3) == 1
    assert d.crossing_at(2).over == 1
    assert corpus["unknot"].crossing_at(1) is None
    assert corpus["unknot"].successor(1) == 1


def test_components_of_split_diagram(corpus):
    both = split_union(corpus["trefoil"], corpus["figure8"])
    assert both.n_arcs == 7
    assert both.components == ((1, 3), (4, 7))
    assert not both.is_knot()


def test_json_roundtrip(corpus):
    for d in corpus.values():
        assert KnotDiagram.from_json(d.to_json()) == d


def test_render_parse_roundtrip(corpus):
    for d in corpus.values():
        assert parse_diagram(render_diagram(d)) == d


def test_wirtinger_relators(corpus):
    for d in corpus.values():
        pres = wirtinger_presentation(d)
        assert pres.generators == tuple(d.arcs)
        assert len(pres.relators) == len(d.crossings)
        for rel in pres.relators:
            assert len(rel) == 4
            # relators die under total abelianization, kinks included
            assert sum(e for _, e in rel) == 0
            assert all(e in (1, -1) for _, e in rel)


def test_cut_splits_one_arc(trefoil):
    t = cut(trefoil, [1])
    assert t.strand_pair() == ("1'", "1''")
    assert set(t.arcs) == {"1'", "1''", "2", "3"}
    # the initial half keeps the under_in role, the terminal half the rest
    unders = {c.under_in for c in t.crossings}
    overs = {c.over for c in t.crossings}
    assert "1'" in unders and "1''" not in unders
    assert "1''" in overs and "1'" not in overs


def test_cut_circle_arc(unknot):
    t = cut(unknot, [1])
    assert t.cut_pairs == (("1'", "1'"),)
    assert t.n_strands == 1


def test_cut_unknown_arc(trefoil):
    with pytest.raises(DiagramError):
        cut(trefoil, [9])


def test_close_undoes_cut(corpus):
    for d in corpus.values():
        for a in d.arcs:
            assert close_tangle(cut(d, [a])) == d


def test_tangle_validation():
    with pytest.raises(DiagramError):
        Tangle(("a",), (), ())
    with pytest.raises(DiagramError):
        Tangle(("a", "b"), (), (("a", "z"),))
    with pytest.raises(DiagramError):
        Tangle(("a", "a"), (), (("a", "a"),))


def test_compose_tangles_prefixes_labels(trefoil):
    t = cut(trefoil, [1])
    both = compose_tangles(t, t)
    assert both.strand_pair() == ("L:1'", "R:1''")
    assert both.n_strands == 1
    assert len(both.crossings) == 6


def test_connected_sum_defaults_to_highest_arcs(trefoil, figure8):
    s = connected_sum(trefoil, figure8)
    # a closed knot diagram has as many arcs as crossings
    assert s.n_arcs == 7
    assert len(s.crossings) == 7
    assert s.is_knot()
    assert s.writhe == trefoil.writhe + figure8.writhe


def test_cable_of_circle_tangle(unknot):
    t = cable(cut(unknot, [1]), 3)
    assert t.n_strands == 3
    closed = close_tangle(t)
    assert closed.n_arcs == 3
    assert closed.crossings == ()


def test_cable_crossing_count(trefoil):
    # each original crossing becomes an n x n grid of crossings
    t = cable(cut(trefoil, [1]), 2)
    assert len(t.crossings) == 4 * 3
    assert t.n_strands == 2


def test_cable_rejects_bad_order(trefoil):
    with pytest.raises(DiagramError):
        cable(cut(trefoil, [1]), 0)
