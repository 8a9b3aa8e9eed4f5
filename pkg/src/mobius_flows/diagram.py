"""Separatrix diagrams of gradient flows on the Möbius strip.

A diagram decorates a capped :class:`SignedMap` with the kind of every
singular point and every edge.  Edges are directed by their *tail* dart,
the dart at the vertex the flow leaves:

* stable separatrices (red) run from a source to a saddle,
* unstable separatrices (green) run from a saddle to a sink,
* boundary arcs follow the flow along the boundary circle,
* a saddle connection (black) runs from one saddle to another.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .errors import StructuralError
from .surface_map import (
    SignedMap,
    State,
    face_containing,
    is_mobius,
    reverse_state,
    trace_faces,
    vertex_flip,
)


class VertexKind(str, Enum):
    INTERIOR_SOURCE = "interior-source"
    INTERIOR_SINK = "interior-sink"
    INTERIOR_SADDLE = "interior-saddle"
    BOUNDARY_SOURCE = "boundary-source"
    BOUNDARY_SINK = "boundary-sink"
    BOUNDARY_SADDLE = "boundary-saddle"

    @property
    def on_boundary(self) -> bool:
        return self.value.startswith("boundary")

    @property
    def is_source(self) -> bool:
        return self.value.endswith("source")

    @property
    def is_sink(self) -> bool:
        return self.value.endswith("sink")

    @property
    def is_node(self) -> bool:
        return not self.is_saddle

    @property
    def is_saddle(self) -> bool:
        return self.value.endswith("saddle")

    def reversed(self) -> "VertexKind":
        if self.is_saddle:
            return self
        return _REVERSED_KIND[self]


_REVERSED_KIND = {
    VertexKind.INTERIOR_SOURCE: VertexKind.INTERIOR_SINK,
    VertexKind.INTERIOR_SINK: VertexKind.INTERIOR_SOURCE,
    VertexKind.BOUNDARY_SOURCE: VertexKind.BOUNDARY_SINK,
    VertexKind.BOUNDARY_SINK: VertexKind.BOUNDARY_SOURCE,
}


class EdgeKind(str, Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    BOUNDARY = "boundary-arc"
    CONNECTION = "saddle-connection"

    def reversed(self) -> "EdgeKind":
        if self is EdgeKind.STABLE:
            return EdgeKind.UNSTABLE
        if self is EdgeKind.UNSTABLE:
            return EdgeKind.STABLE
        return self


EDGE_COLOR = {
    EdgeKind.STABLE: "red",
    EdgeKind.UNSTABLE: "green",
    EdgeKind.BOUNDARY: "boundary",
    EdgeKind.CONNECTION: "black",
}


class Counts(NamedTuple):
    """Singular point census in the index formula: nodes and saddles, interior and boundary."""
    nodes_interior: int
    nodes_boundary: int
    saddles_interior: int
    saddles_boundary: int


class Violation(NamedTuple):
    rule: str
    where: str
    detail: str = ""


@dataclass(frozen=True)
class SeparatrixDiagram:
    map: SignedMap
    vertex_kind: tuple[VertexKind, ...]
    edge_kind: tuple[EdgeKind, ...]
    edge_tail: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertex_kind", tuple(VertexKind(k) for k in self.vertex_kind))
        object.__setattr__(self, "edge_kind", tuple(EdgeKind(k) for k in self.edge_kind))
        object.__setattr__(self, "edge_tail", tuple(self.edge_tail))
        if len(self.vertex_kind) != self.map.num_vertices:
            raise StructuralError("one vertex kind per vertex required")
        if len(self.edge_kind) != self.map.num_edges or len(self.edge_tail) != self.map.num_edges:
            raise StructuralError("one edge kind and tail per edge required")
        for k, t in enumerate(self.edge_tail):
            if t >> 1 != k:
                raise StructuralError(f"tail dart {t} does not belong to edge {k}")

    # -- incidence helpers -------------------------------------------------

    @property
    def num_points(self) -> int:
        return self.map.num_vertices

    def tail(self, edge: int) -> int:
        return self.map.vertex_of[self.edge_tail[edge]]

    def head(self, edge: int) -> int:
        return self.map.vertex_of[self.edge_tail[edge] ^ 1]

    def is_outgoing(self, dart: int) -> bool:
        return self.edge_tail[dart >> 1] == dart

    def counts(self) -> Counts:
        c = Counter((k.is_saddle, k.on_boundary) for k in self.vertex_kind)
        return Counts(c[False, False], c[False, True], c[True, False], c[True, True])

    def kind_counts(self) -> Counter:
        return Counter(self.vertex_kind)

    @property
    def connections(self) -> tuple[int, ...]:
        return tuple(k for k, e in enumerate(self.edge_kind) if e is EdgeKind.CONNECTION)

    @property
    def is_morse(self) -> bool:
        return not self.connections

    def boundary_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, k in enumerate(self.vertex_kind) if k.on_boundary)

    def cap_walk(self) -> tuple[State, ...]:
        if self.map.boundary_face is None:
            raise StructuralError("diagram has no boundary face")
        faces = trace_faces(self.map)
        return faces[face_containing(self.map, self.map.boundary_face, faces)]

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        out = self.map.to_dict()
        out["vertex_kind"] = [k.value for k in self.vertex_kind]
        out["edge_kind"] = [k.value for k in self.edge_kind]
        out["edge_direction"] = list(self.edge_tail)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "SeparatrixDiagram":
        return cls(SignedMap.from_dict(data), tuple(data["vertex_kind"]),
                   tuple(data["edge_kind"]), tuple(data["edge_direction"]))


def find_cap_state(m: SignedMap, edge_kind) -> State | None:
    """A state on the face bounded only by boundary arcs, normalized to its smallest dart.

    Returns ``None`` when no face is made purely of boundary arcs.
    """
    for walk in trace_faces(m):
        if walk and all(edge_kind[d >> 1] is EdgeKind.BOUNDARY for d, _ in walk):
            arcs = sum(1 for k in edge_kind if k is EdgeKind.BOUNDARY)
            if len(walk) == arcs:
                candidates = list(walk) + [reverse_state(st, m.sign_of_dart(st[0])) for st in walk]
                return min(candidates)
    return None


# ---------------------------------------------------------------------------
# local structure


def _edge_contract(d: SeparatrixDiagram, k: int) -> list[Violation]:
    out = []
    kind = d.edge_kind[k]
    a, b = d.vertex_kind[d.tail(k)], d.vertex_kind[d.head(k)]
    where = f"edge {k}"
    if d.tail(k) == d.head(k):
        out.append(Violation("edge-loop", where, "separatrices and arcs join distinct points"))
    if kind is EdgeKind.STABLE and not (a.is_source and b.is_saddle):
        out.append(Violation("stable-direction", where, f"{a.value} -> {b.value}"))
    elif kind is EdgeKind.UNSTABLE and not (a.is_saddle and b.is_sink):
        out.append(Violation("unstable-direction", where, f"{a.value} -> {b.value}"))
    elif kind is EdgeKind.CONNECTION and not (a.is_saddle and b.is_saddle):
        out.append(Violation("connection-direction", where, f"{a.value} -> {b.value}"))
    elif kind is EdgeKind.BOUNDARY and not (a.on_boundary and b.on_boundary):
        out.append(Violation("arc-endpoints", where, f"{a.value} -> {b.value}"))
    if kind is EdgeKind.BOUNDARY and (a.is_source and b.is_source or a.is_sink and b.is_sink):
        out.append(Violation("arc-direction", where, f"{a.value} -> {b.value}"))
    return out


def _vertex_rules(d: SeparatrixDiagram, v: int) -> list[Violation]:
    kind = d.vertex_kind[v]
    rot = d.map.rotations[v]
    where = f"vertex {v}"
    arcs = [x for x in rot if d.edge_kind[x >> 1] is EdgeKind.BOUNDARY]
    inner = [x for x in rot if d.edge_kind[x >> 1] is not EdgeKind.BOUNDARY]
    out_inner = [x for x in inner if d.is_outgoing(x)]
    in_inner = [x for x in inner if not d.is_outgoing(x)]
    arcs_out = [x for x in arcs if d.is_outgoing(x)]
    out = []

    if not kind.on_boundary and arcs:
        out.append(Violation("interior-on-arc", where))
    if kind is VertexKind.INTERIOR_SADDLE:
        if len(rot) != 4:
            out.append(Violation("saddle-degree", where, f"degree {len(rot)}"))
        else:
            pattern = [d.is_outgoing(x) for x in rot]
            if not all(pattern[i] != pattern[(i + 1) % 4] for i in range(4)):
                out.append(Violation("saddle-alternation", where))
        conn = sum(1 for x in rot if d.edge_kind[x >> 1] is EdgeKind.CONNECTION)
        if conn > 1:
            out.append(Violation("saddle-connections", where, f"{conn} saddle connections"))
    elif kind is VertexKind.BOUNDARY_SADDLE:
        if len(arcs) != 2:
            out.append(Violation("boundary-saddle-arcs", where, f"{len(arcs)} arcs"))
        if len(inner) != 1:
            out.append(Violation("boundary-saddle-separatrix", where, f"{len(inner)} interior edges"))
        if len(arcs) == 2 and len(arcs_out) not in (0, 2):
            out.append(Violation("boundary-saddle-arc-direction", where))
        if len(arcs) == 2 and len(inner) == 1 and len(arcs_out) == 2 and out_inner:
            out.append(Violation("boundary-saddle-separatrix-direction", where))
        if len(arcs) == 2 and len(inner) == 1 and not arcs_out and in_inner:
            out.append(Violation("boundary-saddle-separatrix-direction", where))
    elif kind.on_boundary:
        if len(arcs) != 2:
            out.append(Violation("boundary-node-arcs", where, f"{len(arcs)} arcs"))
        outward = kind.is_source
        if any(d.is_outgoing(x) != outward for x in rot):
            out.append(Violation("node-direction", where))
    else:
        if not rot:
            out.append(Violation("isolated-node", where))
        outward = kind.is_source
        if any(d.is_outgoing(x) != outward for x in rot):
            out.append(Violation("node-direction", where))
    return out


def validate_local_structure(d: SeparatrixDiagram) -> list[Violation]:
    """Every local rule a diagram breaks; an empty list means the diagram is locally sound."""
    out: list[Violation] = []
    for k in range(d.map.num_edges):
        out.extend(_edge_contract(d, k))
    for v in range(d.num_points):
        out.extend(_vertex_rules(d, v))
    if len(d.connections) > 1:
        out.append(Violation("connections", "diagram", f"{len(d.connections)} saddle connections"))

    kinds = d.vertex_kind
    if not any(k.is_source for k in kinds):
        out.append(Violation("no-source", "diagram"))
    if not any(k.is_sink for k in kinds):
        out.append(Violation("no-sink", "diagram"))
    nb = len(d.boundary_vertices())
    if nb % 2 or nb < 2:
        out.append(Violation("boundary-count", "diagram", f"{nb} boundary points"))

    m = d.map
    if m.boundary_face is None:
        out.append(Violation("no-boundary-face", "diagram"))
    elif not out:
        try:
            walk = d.cap_walk()
        except StructuralError as exc:
            out.append(Violation("boundary-face", "diagram", str(exc)))
        else:
            arcs = {k for k, e in enumerate(d.edge_kind) if e is EdgeKind.BOUNDARY}
            edges = [st[0] >> 1 for st in walk]
            verts = [m.vertex_of[st[0]] for st in walk]
            if sorted(edges) != sorted(arcs) or sorted(verts) != sorted(d.boundary_vertices()):
                out.append(Violation("boundary-face", "diagram",
                                     "cap walk must run once around the boundary arcs"))
    return out


# ---------------------------------------------------------------------------
# global conditions


def check_index_formula(x) -> bool:
    """``2 N_i + N_b == 2 S_i + S_b`` for a diagram or a :class:`Counts`."""
    c = x.counts() if isinstance(x, SeparatrixDiagram) else Counts(*x)
    return 2 * c.nodes_interior + c.nodes_boundary == 2 * c.saddles_interior + c.saddles_boundary


def check_cell_condition(d: SeparatrixDiagram) -> list[Violation]:
    """Each face other than the cap must be a source-to-sink cell.

    A cell has exactly one corner at a source and one at a sink, and its two
    sides are directed paths from the source corner to the sink corner.
    """
    m = d.map
    faces = trace_faces(m)
    cap = face_containing(m, m.boundary_face, faces) if m.boundary_face is not None else None
    out = []
    for i, walk in enumerate(faces):
        if i == cap:
            continue
        where = f"face {i}"
        if not walk:
            out.append(Violation("empty-face", where))
            continue
        kinds = [d.vertex_kind[m.vertex_of[dart]] for dart, _ in walk]
        nsrc = sum(k.is_source for k in kinds)
        nsnk = sum(k.is_sink for k in kinds)
        if nsrc != 1:
            out.append(Violation("cell-sources", where, f"{nsrc} source corners"))
        if nsnk != 1:
            out.append(Violation("cell-sinks", where, f"{nsnk} sink corners"))
        forward = [d.is_outgoing(dart) for dart, _ in walk]
        for j, kind in enumerate(kinds):
            before, after = forward[j - 1], forward[j]
            if kind.is_source:
                ok = not before and after
            elif kind.is_sink:
                ok = before and not after
            else:
                ok = before == after
            if not ok:
                out.append(Violation("cell-sides", where, f"corner {j} breaks a directed side"))
                break
    return out


def validate(d: SeparatrixDiagram) -> list[Violation]:
    """All checks a census diagram must pass, local and global."""
    out = validate_local_structure(d)
    if out:
        return out
    if not check_index_formula(d):
        out.append(Violation("index-formula", "diagram", str(d.counts())))
    if not is_mobius(d.map):
        out.append(Violation("surface", "diagram", "capped surface is not a projective plane"))
    out.extend(check_cell_condition(d))
    return out


def reverse_flow(d: SeparatrixDiagram) -> SeparatrixDiagram:
    """Same embedded graph with time reversed."""
    return SeparatrixDiagram(
        d.map,
        tuple(k.reversed() for k in d.vertex_kind),
        tuple(k.reversed() for k in d.edge_kind),
        tuple(t ^ 1 for t in d.edge_tail),
    )


def relabel_diagram(d: SeparatrixDiagram, edge_perm, flip_edges=(), vertex_perm=None) -> SeparatrixDiagram:
    """Rename edges and vertices; ``flip_edges`` swap the two dart ids of an edge."""
    flips = set(flip_edges)
    m = d.map.relabel(edge_perm, flips, vertex_perm)
    kinds = list(d.vertex_kind)
    if vertex_perm is not None:
        for v, k in enumerate(d.vertex_kind):
            kinds[vertex_perm[v]] = k
    ekinds = [None] * len(edge_perm)
    tails = [0] * len(edge_perm)
    for k, t in enumerate(d.edge_tail):
        ekinds[edge_perm[k]] = d.edge_kind[k]
        tails[edge_perm[k]] = 2 * edge_perm[k] + ((t & 1) ^ (k in flips))
    return SeparatrixDiagram(m, tuple(kinds), tuple(ekinds), tuple(tails))


def flip_diagram_vertex(d: SeparatrixDiagram, v: int) -> SeparatrixDiagram:
    return SeparatrixDiagram(vertex_flip(d.map, v), d.vertex_kind, d.edge_kind, d.edge_tail)


# ---------------------------------------------------------------------------
# doubling


@dataclass(frozen=True)
class Double:
    """Closed surface obtained by gluing a diagram to its mirror along the boundary."""
    map: SignedMap
    vertex_kind: tuple[VertexKind, ...]

    def node_count(self) -> int:
        return sum(k.is_node for k in self.vertex_kind)

    def saddle_count(self) -> int:
        return sum(k.is_saddle for k in self.vertex_kind)


def double_to_closed(d: SeparatrixDiagram) -> Double:
    """Glue ``d`` and its mirror image along the boundary circle.

    Interior points and edges are duplicated, boundary points and arcs are
    shared.  The mirror copy reverses every rotation and keeps every sign;
    at a shared point its darts fill the cap corner in reverse order.
    """
    m = d.map
    walk = d.cap_walk()
    on_bd = [k.on_boundary for k in d.vertex_kind]
    arc = [k is EdgeKind.BOUNDARY for k in d.edge_kind]

    # copy 2 edge ids for interior edges
    inner_edges = [k for k in range(m.num_edges) if not arc[k]]
    copy_edge = {k: m.num_edges + i for i, k in enumerate(inner_edges)}

    def dart2(x):
        return 2 * copy_edge[x >> 1] + (x & 1)

    # orientation in which each boundary vertex sees the cap corner
    cap_orient = {}
    cap_in = {}
    for j, (dart, s) in enumerate(walk):
        prev_dart, _ = walk[j - 1]
        v = m.vertex_of[dart]
        cap_orient[v] = s
        cap_in[v] = prev_dart ^ 1         # arrival dart at v

    vertex_kind = list(d.vertex_kind)
    rotations: list[tuple[int, ...]] = []
    for v, rot in enumerate(m.rotations):
        if not on_bd[v]:
            rotations.append(rot)
            continue
        s = cap_orient[v]
        out_arc = m.turn(cap_in[v], s)
        # read the rotation in the cap orientation starting at the outgoing arc
        seq = [out_arc]
        x = m.turn(out_arc, s)
        while x != out_arc:
            seq.append(x)
            x = m.turn(x, s)
        # seq = [out_arc, interior..., in_arc]
        inner = seq[1:-1]
        full = seq + [dart2(x) for x in reversed(inner)]
        if s < 0:
            full = [full[0]] + full[:0:-1]
        rotations.append(tuple(full))
    for v, rot in enumerate(m.rotations):
        if on_bd[v]:
            continue
        rotations.append(tuple(dart2(x) for x in reversed(rot)))
        vertex_kind.append(d.vertex_kind[v])

    signs = list(m.signs) + [m.signs[k] for k in inner_edges]
    return Double(SignedMap(rotations, signs), tuple(vertex_kind))
