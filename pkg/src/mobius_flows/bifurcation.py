"""Codimension-one gradient bifurcations.

Saddle-node type bifurcations are encoded by a Morse diagram with one
marked edge, the separatrix or boundary arc that shrinks to a point.
Saddle-connection type bifurcations are the diagrams with one black edge
produced by :func:`enumerate_sc_diagrams`.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .diagram import EdgeKind, SeparatrixDiagram, VertexKind, reverse_flow
from .enumeration import connection_type, enumerate_morse_flows, enumerate_sc_diagrams
from .equivalence import canonical_form
from .errors import ArgumentError, UnrealizableError
from .surface_map import vertex_flip
from .surgery import DiagramEdit


class BifurcationType(str, Enum):
    SN = "SN"
    SC = "SC"
    BSN = "BSN"
    BDS = "BDS"
    HN = "HN"
    HS = "HS"
    HSC = "HSC"
    BSC = "BSC"


SADDLE_NODE_TYPES = (BifurcationType.SN, BifurcationType.BSN, BifurcationType.BDS,
                     BifurcationType.HN, BifurcationType.HS)

# (saddle on boundary, node on boundary) -> type, for a separatrix joining a saddle and a node
SEPARATRIX_TYPE = {
    (False, False): BifurcationType.SN,
    (True, False): BifurcationType.HN,
    (False, True): BifurcationType.HS,
}


@dataclass(frozen=True)
class MarkedBifurcation:
    diagram: SeparatrixDiagram
    marked_edge: int
    kind: BifurcationType
    code: bytes

    @property
    def points(self) -> int:
        return self.diagram.num_points


def _parallel(d: SeparatrixDiagram, k: int) -> bool:
    ends = frozenset(d.map.endpoints(k))
    return any(j != k and frozenset(d.map.endpoints(j)) == ends for j in range(d.map.num_edges))


def _markable(d: SeparatrixDiagram, k: int) -> BifurcationType | None:
    kind = d.edge_kind[k]
    a, b = d.vertex_kind[d.tail(k)], d.vertex_kind[d.head(k)]
    if kind is EdgeKind.BOUNDARY:
        if a.is_saddle and b.is_saddle:
            return BifurcationType.BDS
        if a.is_saddle or b.is_saddle:
            return BifurcationType.BSN
        return None
    if kind is EdgeKind.CONNECTION:
        return None
    saddle, node = (a, b) if a.is_saddle else (b, a)
    return SEPARATRIX_TYPE.get((saddle.on_boundary, node.on_boundary))


def contractible_separatrices(d: SeparatrixDiagram) -> list[int]:
    """Edges whose shrinking to a point is a saddle-node type bifurcation.

    Candidates are separatrices joining a saddle and a node with at least
    one of them inside the strip, and boundary arcs with a saddle at one end
    at least.  An edge with a parallel edge (same pair of end points) is
    excluded: shrinking it would turn the parallel edge into a loop.
    """
    return [k for k in range(d.map.num_edges)
            if _markable(d, k) is not None and not _parallel(d, k)]


def classify_marking(d: SeparatrixDiagram, edge: int) -> BifurcationType:
    kind = _markable(d, edge)
    if kind is None or _parallel(d, edge):
        raise ArgumentError(f"edge {edge} does not define a saddle-node bifurcation")
    return kind


def marked_classes(d: SeparatrixDiagram) -> list[MarkedBifurcation]:
    """Marks on ``d`` up to automorphisms of ``d``."""
    seen = {}
    for k in contractible_separatrices(d):
        code, rep, mark = canonical_form(d, k)
        if code not in seen:
            seen[code] = MarkedBifurcation(rep, mark, classify_marking(d, k), code)
    return [seen[c] for c in sorted(seen)]


# ---------------------------------------------------------------------------
# the flow after the bifurcation


def _cap_gauge(d: SeparatrixDiagram) -> SeparatrixDiagram:
    """Flip boundary vertices so the cap walk uses orientation +1 everywhere."""
    m = d.map
    for dart, s in d.cap_walk():
        if s < 0:
            m = vertex_flip(m, m.vertex_of[dart])
    return SeparatrixDiagram(m, d.vertex_kind, d.edge_kind, d.edge_tail)


def _other(ed: DiagramEdit, v: int, k: int, kinds, outgoing: bool) -> list[int]:
    """Edges at ``v`` other than ``k`` with a kind in ``kinds`` and the given direction."""
    out = []
    for x in ed.rot[v]:
        j = x >> 1
        if j != k and ed.ekind[j] in kinds and (ed.tail[j] == x) == outgoing and j not in out:
            out.append(j)
    return out


def _cap_corner_dart(d: SeparatrixDiagram, v: int) -> int:
    """The dart at ``v`` the cap walk leaves along (gauge of :func:`_cap_gauge`)."""
    for dart, _ in d.cap_walk():
        if d.map.vertex_of[dart] == v:
            return dart
    raise ArgumentError(f"vertex {v} is not on the boundary")


def _sink_case(d: SeparatrixDiagram, k: int, kind: BifurcationType) -> SeparatrixDiagram:
    K, E = VertexKind, EdgeKind
    ed = DiagramEdit(d)
    if kind is BifurcationType.SN:
        t, z = d.tail(k), d.head(k)
        (g2,) = _other(ed, t, k, (E.UNSTABLE,), True)
        reds = _other(ed, t, k, (E.STABLE,), False)
        ed.contract_edge(k, t)
        for r in reds:
            ed.delete_edge(r)
        ed.contract_edge(g2, d.head(g2))
    elif kind is BifurcationType.HN:
        ed.contract_edge(k, d.tail(k), K.BOUNDARY_SINK)
    elif kind is BifurcationType.HS:
        t, q = d.tail(k), d.head(k)
        (g2,) = _other(ed, t, k, (E.UNSTABLE,), True)
        reds = _other(ed, t, k, (E.STABLE,), False)
        arcs = [x for x in ed.rot[q] if ed.ekind[x >> 1] is E.BOUNDARY]
        ed.contract_edge(k, q)
        for r in reds:
            ed.delete_edge(r)
        ed.vkind[q] = K.BOUNDARY_SADDLE
        ed.slide(q, g2, arcs)
    elif kind is BifurcationType.BSN:
        sigma, q = d.tail(k), d.head(k)
        (a2,) = _other(ed, sigma, k, (E.BOUNDARY,), True)
        (rho,) = _other(ed, sigma, k, (E.STABLE,), False)
        q2 = d.head(a2)
        ed.contract_edge(k, sigma)
        ed.delete_edge(rho)
        ed.contract_edge(a2, q2)
        if d.vertex_kind[q2].is_saddle:
            (gamma,) = _other(ed, q2, -1, (E.UNSTABLE,), True)
            if d.head(gamma) == q:
                raise UnrealizableError(
                    f"edge {k}: the separatrix of the neighbouring boundary saddle ends at the vanishing node")
            arcs = [x for x in ed.rot[q2] if ed.ekind[x >> 1] is E.BOUNDARY]
            ed.slide(q2, gamma, arcs)
    else:
        raise ArgumentError(f"{kind} has no sink form")
    return ed.build()


def _double_saddle(d: SeparatrixDiagram, k: int) -> SeparatrixDiagram:
    K, E = VertexKind, EdgeKind
    ed = DiagramEdit(d)
    s1, s2 = d.tail(k), d.head(k)
    (a1,) = _other(ed, s1, k, (E.BOUNDARY,), True)
    (a2,) = _other(ed, s2, k, (E.BOUNDARY,), False)
    x, y = d.head(a1), d.tail(a2)
    at_x, at_y = _cap_corner_dart(d, x), _cap_corner_dart(d, y)
    ed.contract_edge(k, s1, K.INTERIOR_SADDLE)
    ed.ekind[a1] = E.UNSTABLE
    ed.ekind[a2] = E.STABLE
    arc = ed.new_edge(E.BOUNDARY, 1)
    # the new arc y -> x takes the cap corners vacated by a1 and a2
    ed.insert_before(at_y, 2 * arc)
    ed.insert_before(at_x, 2 * arc + 1)
    if d.vertex_kind[y].is_saddle:
        (rho,) = _other(ed, y, -1, (E.STABLE,), False)
        ed.slide(y, rho, [x_ for x_ in ed.rot[y] if ed.ekind[x_ >> 1] is E.BOUNDARY])
    if d.vertex_kind[x].is_saddle:
        (gamma,) = _other(ed, x, -1, (E.UNSTABLE,), True)
        ed.slide(x, gamma, [x_ for x_ in ed.rot[x] if ed.ekind[x_ >> 1] is E.BOUNDARY])
    return ed.build()


def contract_bifurcation(d: SeparatrixDiagram, edge: int) -> SeparatrixDiagram:
    """The Morse diagram after shrinking the marked edge to a point.

    SN and BSN remove the saddle and the node; HN leaves a boundary node,
    HS a boundary saddle and BDS an interior saddle in their place.  Marks
    at a source are handled on the reversed flow.
    """
    kind = classify_marking(d, edge)
    d = _cap_gauge(d)
    if kind is BifurcationType.BDS:
        return _double_saddle(d, edge)
    ends = (d.vertex_kind[d.tail(edge)], d.vertex_kind[d.head(edge)])
    if any(v.is_source for v in ends):
        return reverse_flow(_sink_case(reverse_flow(d), edge, kind))
    return _sink_case(d, edge, kind)


def enumerate_sn_bifurcations(n: int, morse=None) -> list[MarkedBifurcation]:
    """All marked Morse diagrams with ``n`` points, sorted by code."""
    flows = enumerate_morse_flows(n) if morse is None else morse
    out = []
    for d in flows:
        out.extend(marked_classes(d))
    return sorted(out, key=lambda b: b.code)


def bifurcation_census(n: int, morse=None, sc=None) -> dict[BifurcationType, int]:
    counts = Counter(b.kind for b in enumerate_sn_bifurcations(n, morse))
    if n >= 4:
        diagrams = enumerate_sc_diagrams(n) if sc is None else sc
        counts.update(BifurcationType(connection_type(d)) for d in diagrams)
    return {t: counts.get(t, 0) for t in BifurcationType}
