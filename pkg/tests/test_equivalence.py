import itertools
import random

from hypothesis import given, settings, strategies as st

from mobius_flows.bifurcation import contractible_separatrices
from mobius_flows.diagram import flip_diagram_vertex, relabel_diagram, reverse_flow, validate
from mobius_flows.equivalence import canonical_code, canonical_form, is_self_reverse, isomorphic

from conftest import morse, sc


def scramble(d, rng):
    ne, nv = d.map.num_edges, d.num_points
    perm = list(range(ne))
    rng.shuffle(perm)
    vperm = list(range(nv))
    rng.shuffle(vperm)
    flips = [k for k in range(ne) if rng.random() < 0.5]
    out = relabel_diagram(d, perm, flips, vperm)
    for _ in range(rng.randrange(4)):
        out = flip_diagram_vertex(out, rng.randrange(nv))
    return out, perm


def small_pool():
    return [d for n in (3, 4, 5) for d in morse(n)] + [d for n in (4, 5) for d in sc(n)]


def test_oracle_agrees_with_codes_on_small_levels():
    pool = small_pool()
    for a, b in itertools.combinations_with_replacement(pool, 2):
        same_code = canonical_code(a) == canonical_code(b)
        assert same_code == isomorphic(a, b)


def test_oracle_agrees_on_sampled_six_point_pairs():
    rng = random.Random(6)
    pool = list(morse(6)) + list(sc(6))
    for _ in range(200):
        a = rng.choice(pool)
        b = rng.choice(pool) if rng.random() < 0.5 else scramble(a, rng)[0]
        assert (canonical_code(a) == canonical_code(b)) == isomorphic(a, b)


def test_census_codes_are_distinct():
    for n in (3, 4, 5, 6):
        codes = [canonical_code(d) for d in morse(n)]
        assert len(set(codes)) == len(codes)


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), which=st.integers(0, 55))
def test_code_invariant_under_relabel_and_flips(seed, which):
    pool = [d for n in (4, 5, 6) for d in morse(n)]
    d = pool[which % len(pool)]
    rng = random.Random(seed)
    e, _ = scramble(d, rng)
    assert validate(e) == []
    assert canonical_code(e) == canonical_code(d)
    assert isomorphic(d, e)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), which=st.integers(0, 39))
def test_marked_code_follows_the_mark(seed, which):
    d = morse(6)[which]
    marks = contractible_separatrices(d)
    if not marks:
        return
    rng = random.Random(seed)
    k = rng.choice(marks)
    e, perm = scramble(d, rng)
    assert canonical_code(e, perm[k]) == canonical_code(d, k)
    assert isomorphic(d, e, marks=(k, perm[k]))


def test_representative_is_shared():
    rng = random.Random(1)
    for d in morse(5):
        code, rep, _ = canonical_form(d)
        code2, rep2, _ = canonical_form(scramble(d, rng)[0])
        assert code == code2 and rep == rep2
        assert validate(rep) == []


def test_four_point_classes_are_distinct():
    flows = morse(4)
    for a, b in itertools.combinations(flows, 2):
        assert not isomorphic(a, b)


def test_reversal_is_not_an_equivalence():
    hn = [d for d in morse(4) if not is_self_reverse(d)]
    assert len(hn) == 2
    for d in hn:
        assert not isomorphic(d, reverse_flow(d))
        assert canonical_code(d) != canonical_code(reverse_flow(d))


def test_witness_maps_darts_bijectively():
    rng = random.Random(3)
    d = morse(5)[7]
    e, _ = scramble(d, rng)
    phi, flips = isomorphic(d, e, witness=True)
    assert sorted(phi) == list(range(d.map.num_darts))
    assert sorted(phi.values()) == list(range(e.map.num_darts))
    assert set(flips) <= {1, -1}
    for x, y in phi.items():
        assert phi[x ^ 1] == y ^ 1
        assert d.edge_kind[x >> 1] is e.edge_kind[y >> 1]


def test_witness_none_for_different_classes():
    a, b = morse(4)[0], morse(4)[1]
    assert isomorphic(a, b, witness=True) is None


def test_marks_distinguish_edges():
    d = morse(4)[1]
    marks = contractible_separatrices(d)
    codes = {canonical_code(d, k) for k in marks}
    assert canonical_code(d) not in codes
    for k in marks:
        for j in marks:
            assert (canonical_code(d, k) == canonical_code(d, j)) == isomorphic(d, d, marks=(k, j))
