import json

import pytest

from mobius_flows.diagram import (
    Counts, EdgeKind as E, SeparatrixDiagram, VertexKind as K, check_cell_condition, check_index_formula,
    double_to_closed, find_cap_state, reverse_flow, validate, validate_local_structure,
)
from mobius_flows.equivalence import is_self_reverse, isomorphic
from mobius_flows.errors import StructuralError
from mobius_flows.surface_map import SignedMap, surface_signature, trace_faces

from conftest import morse, sc


def rules(violations):
    return {v.rule for v in violations}


def with_kinds(d, kinds):
    return SeparatrixDiagram(d.map, kinds, d.edge_kind, d.edge_tail)


def test_three_point_diagram_is_valid(d3):
    assert validate(d3) == []
    assert d3.counts() == Counts(0, 2, 1, 0)
    faces = trace_faces(d3.map)
    # V - E + F = 1 on the capped strip: 3 - 6 + F = 1, so F = 4, one being the cap
    assert len(faces) == 4
    assert len(faces) - 1 == 3


def test_cells_of_three_point_diagram_are_source_to_sink(d3):
    assert check_cell_condition(d3) == []
    cap = d3.cap_walk()
    assert {d3.map.vertex_of[dart] for dart, _ in cap} == {0, 1}


def test_adjacent_reds_at_saddle(d3):
    rot = list(d3.map.rotations)
    rot[2] = (5, 9, 6, 10)
    m = SignedMap(rot, d3.map.signs)
    bad = SeparatrixDiagram(m.with_boundary_face(find_cap_state(m, d3.edge_kind)),
                            d3.vertex_kind, d3.edge_kind, d3.edge_tail)
    assert "saddle-alternation" in rules(validate_local_structure(bad))
    assert validate(bad) != []


def test_boundary_saddle_with_two_interior_edges(d3):
    bad = with_kinds(d3, (K.BOUNDARY_SADDLE, K.BOUNDARY_SINK, K.INTERIOR_SADDLE))
    assert "boundary-saddle-separatrix" in rules(validate_local_structure(bad))


def test_two_sources_on_an_arc(d3):
    bad = with_kinds(d3, (K.BOUNDARY_SOURCE, K.BOUNDARY_SOURCE, K.INTERIOR_SADDLE))
    got = rules(validate_local_structure(bad))
    assert {"arc-direction", "no-sink"} <= got
    assert "cell-sinks" in rules(check_cell_condition(bad))


def test_sign_change_breaks_cells_and_surface():
    d = morse(4)[0]
    signs = list(d.map.signs)
    k = next(j for j in range(d.map.num_edges) if d.edge_kind[j] is not E.BOUNDARY
             and find_cap_state(SignedMap(d.map.rotations, [(-s if i == j else s) for i, s in enumerate(signs)]),
                                d.edge_kind) is not None)
    signs[k] = -signs[k]
    m = SignedMap(d.map.rotations, signs)
    bad = SeparatrixDiagram(m.with_boundary_face(find_cap_state(m, d.edge_kind)),
                            d.vertex_kind, d.edge_kind, d.edge_tail)
    assert validate_local_structure(bad) == []
    assert {"surface", "cell-sources", "cell-sinks"} <= rules(validate(bad))


@pytest.mark.parametrize("counts,ok", [
    ((0, 2, 1, 0), True),
    ((1, 1, 1, 1), True),
    ((0, 3, 0, 1), False),
    ((0, 4, 0, 2), False),
    ((0, 2, 0, 2), True),
])
def test_index_formula(counts, ok):
    assert check_index_formula(Counts(*counts)) is ok


def test_index_formula_holds_on_census():
    for n in (3, 4, 5, 6):
        assert all(check_index_formula(d) for d in morse(n))


def test_even_boundary_count_required(d3):
    m = SignedMap([()], [])
    lone = SeparatrixDiagram(m, (K.BOUNDARY_SOURCE,), (), ())
    assert "boundary-count" in rules(validate_local_structure(lone))
    for n in (3, 4, 5, 6):
        assert all(len(d.boundary_vertices()) % 2 == 0 for d in morse(n))


def test_colour_direction_contract():
    for n in (3, 4, 5, 6):
        for d in morse(n) + (sc(n) if n > 3 else ()):
            for k, kind in enumerate(d.edge_kind):
                a, b = d.vertex_kind[d.tail(k)], d.vertex_kind[d.head(k)]
                if kind is E.STABLE:
                    assert a.is_source and b.is_saddle
                elif kind is E.UNSTABLE:
                    assert a.is_saddle and b.is_sink
                elif kind is E.CONNECTION:
                    assert a.is_saddle and b.is_saddle
                else:
                    assert a.on_boundary and b.on_boundary


def test_reverse_is_an_involution():
    for n in (3, 4, 5):
        for d in morse(n):
            r = reverse_flow(d)
            assert validate(r) == []
            assert reverse_flow(r) == d
            assert r.counts() == d.counts()


def test_four_point_self_reversal():
    flows = morse(4)
    all_boundary = [d for d in flows if all(k.on_boundary for k in d.vertex_kind)]
    assert len(all_boundary) == 1 and is_self_reverse(all_boundary[0])
    mixed = [d for d in flows if d not in all_boundary]
    assert len(mixed) == 2
    assert isomorphic(reverse_flow(mixed[0]), mixed[1])
    assert not isomorphic(mixed[0], mixed[1])


def test_three_point_is_self_reverse(d3):
    assert is_self_reverse(d3)
    assert isomorphic(reverse_flow(d3), d3)


def test_five_point_has_one_self_reverse_flow():
    assert sum(is_self_reverse(d) for d in morse(5)) == 1


def test_doubling_gives_a_klein_bottle():
    for n in (3, 4, 5, 6):
        for d in morse(n):
            dbl = double_to_closed(d)
            assert surface_signature(dbl.map) == (0, False, False)
            c = d.counts()
            interior = c.nodes_interior + c.saddles_interior
            boundary = c.nodes_boundary + c.saddles_boundary
            assert dbl.map.num_vertices == 2 * interior + boundary
            assert dbl.node_count() == dbl.saddle_count()


def test_dict_round_trip(d3):
    data = json.loads(json.dumps(d3.to_dict()))
    assert SeparatrixDiagram.from_dict(data) == d3


def test_tail_must_belong_to_edge(d3):
    with pytest.raises(StructuralError):
        SeparatrixDiagram(d3.map, d3.vertex_kind, d3.edge_kind, (0, 3, 4, 6, 8, 0))
    with pytest.raises(StructuralError):
        SeparatrixDiagram(d3.map, d3.vertex_kind[:2], d3.edge_kind, d3.edge_tail)
