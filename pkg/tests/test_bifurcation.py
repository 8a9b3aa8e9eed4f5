from collections import Counter

import pytest

from mobius_flows.bifurcation import (
    BifurcationType as T, classify_marking, contract_bifurcation, contractible_separatrices,
    enumerate_sn_bifurcations, bifurcation_census, marked_classes,
)
from mobius_flows.diagram import EdgeKind as E, reverse_flow, validate
from mobius_flows.equivalence import canonical_code
from mobius_flows.errors import ArgumentError, UnrealizableError

from conftest import morse, sc

DROP = {T.SN: 2, T.BSN: 2, T.HN: 1, T.HS: 1, T.BDS: 1}


def census(n):
    return bifurcation_census(n, morse=morse(n), sc=sc(n) if n >= 4 else None)


def test_three_point_diagram_has_no_marks(d3):
    # every edge of the three-point diagram has a parallel partner
    assert contractible_separatrices(d3) == []
    assert marked_classes(d3) == []
    assert all(v == 0 for v in census(3).values())


def test_four_point_marks_by_diagram():
    by_shape = {}
    for d in morse(4):
        all_boundary = all(k.on_boundary for k in d.vertex_kind)
        kinds = Counter(b.kind for b in marked_classes(d))
        by_shape.setdefault(all_boundary, []).append(kinds)
    assert by_shape[True] == [Counter({T.BSN: 2, T.BDS: 1})]
    assert by_shape[False] == [Counter({T.HN: 1}), Counter({T.HN: 1})]


def test_four_point_census():
    c = census(4)
    assert {t: v for t, v in c.items() if v} == {T.HN: 2, T.BSN: 2, T.BDS: 1, T.HSC: 2, T.BSC: 1}


def test_five_point_census():
    c = census(5)
    assert (c[T.HN], c[T.HS], c[T.HSC], c[T.BSC]) == (4, 10, 4, 2)
    assert (c[T.SN], c[T.BSN], c[T.BDS]) == (8, 8, 2)


def test_classify_by_end_points():
    d = next(d for d in morse(4) if all(k.on_boundary for k in d.vertex_kind))
    for k in contractible_separatrices(d):
        a, b = d.vertex_kind[d.tail(k)], d.vertex_kind[d.head(k)]
        assert d.edge_kind[k] is E.BOUNDARY
        assert classify_marking(d, k) is (T.BDS if a.is_saddle and b.is_saddle else T.BSN)


def test_classification_covers_every_type():
    seen = {classify_marking(d, k) for n in (4, 5) for d in morse(n) for k in contractible_separatrices(d)}
    assert seen == {T.SN, T.BSN, T.BDS, T.HN, T.HS}


def test_parallel_and_node_node_edges_are_rejected(d3):
    for k in range(d3.map.num_edges):
        with pytest.raises(ArgumentError):
            classify_marking(d3, k)
    d = next(d for d in morse(4) if all(k.on_boundary for k in d.vertex_kind))
    node_arcs = [k for k in range(d.map.num_edges)
                 if not d.vertex_kind[d.tail(k)].is_saddle and not d.vertex_kind[d.head(k)].is_saddle]
    for k in node_arcs:
        with pytest.raises(ArgumentError):
            classify_marking(d, k)


def test_marks_map_under_reversal():
    for n in (4, 5, 6):
        forward = Counter(b.kind for b in enumerate_sn_bifurcations(n, morse(n)))
        backward = Counter(b.kind for d in morse(n) for b in marked_classes(reverse_flow(d)))
        assert backward == forward          # reversal keeps each type
        codes = {b.code for b in enumerate_sn_bifurcations(n, morse(n))}
        rev = {canonical_code(reverse_flow(b.diagram), b.marked_edge)
               for b in enumerate_sn_bifurcations(n, morse(n))}
        assert rev == codes


def test_enumeration_sorted_and_unique():
    bs = enumerate_sn_bifurcations(6, morse(6))
    codes = [b.code for b in bs]
    assert codes == sorted(codes) and len(set(codes)) == len(codes)
    assert all(b.points == 6 for b in bs)


# contraction: the realized flow after the bifurcation


def realized(n):
    out = []
    for d in morse(n):
        for k in contractible_separatrices(d):
            kind = classify_marking(d, k)
            try:
                out.append((kind, contract_bifurcation(d, k), None))
            except UnrealizableError as exc:
                out.append((kind, None, exc))
    return out


@pytest.mark.parametrize("n", [4, 5, 6])
def test_contraction_lands_in_the_census(n):
    for kind, r, exc in realized(n):
        if exc is not None:
            assert kind is T.BSN
            continue
        assert validate(r) == []
        assert r.is_morse
        m = n - DROP[kind]
        assert r.num_points == m
        assert canonical_code(r) in {canonical_code(x) for x in morse(m)}


def test_unrealizable_boundary_marks():
    counts = [sum(exc is not None for _, _, exc in realized(n)) for n in (4, 5, 6)]
    assert counts == [2, 4, 22]


def test_four_point_contractions():
    got = Counter((kind, r.num_points) for kind, r, exc in realized(4) if exc is None)
    assert got == Counter({(T.HN, 3): 2, (T.BDS, 3): 1})
