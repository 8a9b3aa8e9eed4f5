"""Topological equivalence of separatrix diagrams.

Two diagrams are equivalent when a homeomorphism of the strip, orientation
preserving or not, carries one to the other with all point and edge kinds
and directions.  Flow reversal is *not* an equivalence.

:func:`canonical_form` relabels a diagram by a traversal rooted on the
boundary face and keeps the lexicographically smallest serialization.
:func:`isomorphic` is an independent exhaustive search used to audit it.
"""
from __future__ import annotations

from collections import deque

from .diagram import EdgeKind, SeparatrixDiagram, VertexKind, reverse_flow
from .surface_map import SignedMap, State, face_containing, reverse_state, trace_faces

_VK = {k: i for i, k in enumerate(VertexKind)}
_EK = {k: i for i, k in enumerate(EdgeKind)}


def _root_states(d: SeparatrixDiagram) -> list[State]:
    m = d.map
    walk = d.cap_walk()
    return list(walk) + [reverse_state(st, m.sign_of_dart(st[0])) for st in walk]


def _relabel_from(d: SeparatrixDiagram, root: State, marked: int | None):
    m = d.map
    d0, s0 = root
    v0 = m.vertex_of[d0]
    orient = {v0: s0}
    start = {v0: d0}
    order = []
    queue = deque([v0])
    new_id: dict[int, int] = {}
    edges = 0
    rotations = []
    while queue:
        v = queue.popleft()
        order.append(v)
        s = orient[v]
        first = start[v]
        seq = [first]
        x = m.turn(first, s)
        while x != first:
            seq.append(x)
            x = m.turn(x, s)
        for x in seq:
            if x not in new_id:
                new_id[x] = 2 * edges
                new_id[x ^ 1] = 2 * edges + 1
                edges += 1
            w = m.vertex_of[x ^ 1]
            if w not in orient:
                orient[w] = s * m.sign_of_dart(x)
                start[w] = x ^ 1
                queue.append(w)
        rotations.append(tuple(new_id[x] for x in seq))
    if len(order) != m.num_vertices:
        raise ValueError("diagram is not connected")

    signs = [0] * edges
    kinds = [None] * edges
    tails = [0] * edges
    new_mark = None
    for k in range(m.num_edges):
        nk = new_id[2 * k] >> 1
        u, w = m.endpoints(k)
        signs[nk] = m.signs[k] * orient[u] * orient[w]
        kinds[nk] = d.edge_kind[k]
        tails[nk] = new_id[d.edge_tail[k]]
        if k == marked:
            new_mark = nk
    vkinds = tuple(d.vertex_kind[v] for v in order)
    new = SeparatrixDiagram(SignedMap(rotations, signs, (0, 1)), vkinds, tuple(kinds), tuple(tails))

    code = bytearray([len(order), edges, 255 if new_mark is None else new_mark])
    for v, rot in zip(order, rotations):
        code.append(_VK[d.vertex_kind[v]])
        code.append(len(rot))
        code.extend(rot)
    for nk in range(edges):
        code.append(0 if signs[nk] > 0 else 1)
        code.append(_EK[kinds[nk]])
        code.append(tails[nk] & 1)
    return bytes(code), new, new_mark


def canonical_form(d: SeparatrixDiagram, marked_edge: int | None = None):
    """``(code, representative, marked edge in representative)``.

    The representative is ``d`` renumbered by the traversal achieving the
    minimal code, so equivalent inputs give identical representatives.
    """
    best = None
    for root in _root_states(d):
        cand = _relabel_from(d, root, marked_edge)
        if best is None or cand[0] < best[0]:
            best = cand
    return best


def canonical_code(d: SeparatrixDiagram, marked_edge: int | None = None) -> bytes:
    return canonical_form(d, marked_edge)[0]


def is_self_reverse(d: SeparatrixDiagram) -> bool:
    return canonical_code(d) == canonical_code(reverse_flow(d))


# ---------------------------------------------------------------------------
# exhaustive oracle


def _invariants(d: SeparatrixDiagram):
    m = d.map
    return (
        sorted((d.vertex_kind[v].value, m.degree(v)) for v in range(m.num_vertices)),
        sorted(k.value for k in d.edge_kind),
    )


def isomorphic(d1: SeparatrixDiagram, d2: SeparatrixDiagram, witness: bool = False,
               marks: tuple[int | None, int | None] = (None, None)):
    """Backtracking search for a kind-, direction- and cap-preserving dart bijection.

    Vertices of ``d1`` are matched in index order.  For each candidate image
    the search tries both local orientations and every rotation offset, then
    checks every edge whose two ends are already placed: partner darts must
    correspond, signs must agree after the chosen vertex flips, and kinds
    and directions must match.  A complete match must send the cap face to
    the cap face.  With ``witness=True`` returns ``(dart map, flips)`` or ``None``.
    """
    m1, m2 = d1.map, d2.map
    if (m1.num_vertices, m1.num_edges) != (m2.num_vertices, m2.num_edges):
        return None if witness else False
    if _invariants(d1) != _invariants(d2):
        return None if witness else False
    mark1, mark2 = marks

    n = m1.num_vertices
    phi: dict[int, int] = {}
    flip = [0] * n
    image = [-1] * n
    used = [False] * n
    cap2 = None

    def edge_ok(x: int) -> bool:
        # both darts of x's edge are placed
        y = phi[x]
        if phi[x ^ 1] != y ^ 1:
            return False
        k1, k2 = x >> 1, y >> 1
        if d1.edge_kind[k1] is not d2.edge_kind[k2]:
            return False
        if (d1.edge_tail[k1] == x) != (d2.edge_tail[k2] == y):
            return False
        if (k1 == mark1) != (k2 == mark2):
            return False
        u, w = m1.vertex_of[x], m1.vertex_of[x ^ 1]
        return m2.signs[k2] == m1.signs[k1] * flip[u] * flip[w]

    def finish() -> bool:
        nonlocal cap2
        if cap2 is None:
            faces = trace_faces(m2)
            cap2 = set(faces[face_containing(m2, m2.boundary_face, faces)])
            cap2 |= {reverse_state(st, m2.sign_of_dart(st[0])) for st in list(cap2)}
        dd, s = m1.boundary_face
        st = (phi[dd], s * flip[m1.vertex_of[dd]])
        return st in cap2

    def place(v: int) -> bool:
        if v == n:
            return finish()
        rot1 = m1.rotations[v]
        for w in range(n):
            if used[w] or d2.vertex_kind[w] is not d1.vertex_kind[v]:
                continue
            rot2 = m2.rotations[w]
            if len(rot2) != len(rot1):
                continue
            deg = len(rot1)
            for eps in (1, -1):
                for offset in range(max(deg, 1)):
                    placed = []
                    for j, x in enumerate(rot1):
                        phi[x] = rot2[(offset + eps * j) % deg]
                        placed.append(x)
                    flip[v] = eps
                    image[v] = w
                    used[w] = True
                    ok = all(edge_ok(x) for x in rot1 if (x ^ 1) in phi)
                    if ok and place(v + 1):
                        return True
                    used[w] = False
                    image[v] = -1
                    for x in placed:
                        del phi[x]
                    if deg == 0:
                        break
        return False

    found = place(0)
    if witness:
        return (dict(phi), tuple(flip)) if found else None
    return found
