"""Local edits of separatrix diagrams: delete, contract, split, reroute.

:class:`DiagramEdit` holds a mutable copy of a diagram whose darts keep
their original numbers while edits happen.  :meth:`DiagramEdit.build`
renumbers edges densely, keeping the relative order of survivors, and
re-locates the cap face.
"""
from __future__ import annotations

from .diagram import EdgeKind, SeparatrixDiagram, VertexKind, find_cap_state
from .errors import ArgumentError
from .surface_map import SignedMap


def cyclic_run(rot, members: set) -> list[int]:
    """The elements of ``members`` as one contiguous cyclic run of ``rot``, in order."""
    n = len(rot)
    inside = [x in members for x in rot]
    if len(members) != sum(inside) or not members:
        raise ArgumentError("block darts are not all present")
    if all(inside):
        return list(rot)
    starts = [i for i in range(n) if inside[i] and not inside[i - 1]]
    if len(starts) != 1:
        raise ArgumentError("block is not a contiguous run of the rotation")
    i = starts[0]
    return [rot[(i + j) % n] for j in range(len(members))]


class DiagramEdit:
    def __init__(self, d: SeparatrixDiagram):
        m = d.map
        self.rot: dict[int, list[int]] = {v: list(r) for v, r in enumerate(m.rotations)}
        self.vkind: dict[int, VertexKind] = dict(enumerate(d.vertex_kind))
        self.sign: dict[int, int] = dict(enumerate(m.signs))
        self.ekind: dict[int, EdgeKind] = dict(enumerate(d.edge_kind))
        self.tail: dict[int, int] = dict(enumerate(d.edge_tail))
        self._next_vertex = m.num_vertices
        self._next_edge = m.num_edges

    # -- queries
    def vertex_of(self, dart: int) -> int:
        for v, r in self.rot.items():
            if dart in r:
                return v
        raise ArgumentError(f"dart {dart} is not attached")

    def ends(self, k: int) -> tuple[int, int]:
        return self.vertex_of(2 * k), self.vertex_of(2 * k + 1)

    def head_of(self, k: int) -> int:
        return self.vertex_of(self.tail[k] ^ 1)

    def tail_of(self, k: int) -> int:
        return self.vertex_of(self.tail[k])

    # -- elementary moves
    def flip(self, v: int):
        """Reverse the local orientation at ``v``."""
        r = self.rot[v]
        self.rot[v] = r[:1] + r[:0:-1]
        for x in r:
            k = x >> 1
            if self.vertex_of(x ^ 1) != v:
                self.sign[k] = -self.sign[k]

    def delete_edge(self, k: int):
        for x in (2 * k, 2 * k + 1):
            self.rot[self.vertex_of(x)].remove(x)
        for table in (self.sign, self.ekind, self.tail):
            del table[k]

    def delete_vertex(self, v: int):
        if self.rot[v]:
            raise ArgumentError(f"vertex {v} still has darts")
        del self.rot[v]
        del self.vkind[v]

    def contract_edge(self, k: int, into: int, kind: VertexKind | None = None) -> int:
        """Merge the far end of edge ``k`` into its end ``into``."""
        a, b = self.ends(k)
        if a == b:
            raise ArgumentError(f"edge {k} is a loop")
        if into not in (a, b):
            raise ArgumentError(f"vertex {into} is not an end of edge {k}")
        w = b if into == a else a
        xu = 2 * k if into == a else 2 * k + 1
        xw = xu ^ 1
        if self.sign[k] < 0:
            self.flip(w)
        ru, rw = self.rot[into], self.rot[w]
        iu, iw = ru.index(xu), rw.index(xw)
        self.rot[into] = ru[iu + 1:] + ru[:iu] + rw[iw + 1:] + rw[:iw]
        self.rot[w] = []
        for table in (self.sign, self.ekind, self.tail):
            del table[k]
        self.delete_vertex(w)
        if kind is not None:
            self.vkind[into] = kind
        return into

    def new_edge(self, kind: EdgeKind, sign: int) -> int:
        k = self._next_edge
        self._next_edge += 1
        self.sign[k] = sign
        self.ekind[k] = kind
        self.tail[k] = 2 * k
        return k

    def split(self, v: int, block, kind: VertexKind, edge_kind: EdgeKind,
              new_is_tail: bool) -> tuple[int, int]:
        """Move the darts ``block`` (a cyclic run of ``v``'s rotation) to a new vertex.

        The two vertices are joined by a new edge of sign ``+1`` sitting where
        the block was.  Returns ``(new vertex, new edge)``.
        """
        r = self.rot[v]
        run = cyclic_run(r, set(block))
        rest = [x for x in r[r.index(run[-1]) + 1:] + r[:r.index(run[-1]) + 1] if x not in run]
        k = self.new_edge(edge_kind, 1)
        x_new, x_old = 2 * k, 2 * k + 1
        self.tail[k] = x_new if new_is_tail else x_old
        w = self._next_vertex
        self._next_vertex += 1
        self.rot[v] = [x_old] + rest
        self.rot[w] = [x_new] + run
        self.vkind[w] = kind
        return w, k

    def slide(self, v: int, k: int, keep) -> int:
        """Push every dart of ``v`` except ``keep`` along edge ``k`` to its far end.

        ``v`` is rebuilt from ``keep`` as a new vertex of the same kind, joined
        to the far end by a new edge replacing ``k``.  Returns the new vertex.
        """
        kind = self.vkind[v]
        ekind = self.ekind[k]
        outgoing = self.tail_of(k) == v
        a, b = self.ends(k)
        z = b if a == v else a
        self.contract_edge(k, z)
        w, _ = self.split(z, keep, kind, ekind, new_is_tail=outgoing)
        return w

    def insert_before(self, anchor: int, dart: int):
        r = self.rot[self.vertex_of(anchor)]
        r.insert(r.index(anchor), dart)

    def replace_dart(self, old: int, new: int):
        v = self.vertex_of(old)
        r = self.rot[v]
        r[r.index(old)] = new

    # -- output
    def build(self) -> SeparatrixDiagram:
        vertices = sorted(self.rot)
        edges = sorted(self.sign)
        enew = {k: i for i, k in enumerate(edges)}

        def dart(x):
            return 2 * enew[x >> 1] + (x & 1)

        rotations = [tuple(dart(x) for x in self.rot[v]) for v in vertices]
        signs = [self.sign[k] for k in edges]
        ekinds = tuple(self.ekind[k] for k in edges)
        tails = tuple(dart(self.tail[k]) for k in edges)
        m = SignedMap(rotations, signs, None)
        cap = find_cap_state(m, ekinds)
        return SeparatrixDiagram(m.with_boundary_face(cap), tuple(self.vkind[v] for v in vertices),
                                 ekinds, tails)
