"""Exhaustive generation of Morse and saddle-connection diagrams.

Generation proceeds in layers:

1. singular point configurations satisfying the index formula;
2. cyclic orders of the boundary points up to rotation and reflection;
3. attachment of every saddle separatrix to a node (and, for
   codimension-one diagrams, one saddle connection);
4. cyclic orders of the darts at every node;
5. edge signs, chosen lazily while face walks are traced, with a walk
   abandoned as soon as it collects a second source or sink corner.

Completed diagrams are deduplicated by canonical code.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import astuple, dataclass
from typing import Iterator

from .diagram import (
    EdgeKind,
    SeparatrixDiagram,
    VertexKind,
    check_index_formula,
    validate,
)
from .equivalence import canonical_form
from .errors import ArgumentError, StructuralError
from .surface_map import SignedMap

log = logging.getLogger(__name__)

MIN_POINTS, MAX_POINTS = 3, 6

# boundary labels; even positions of the boundary cycle hold flow-repelling
# points, odd positions flow-attracting ones
SRC, SAD_OUT, SNK, SAD_IN = 0, 1, 2, 3
_REPELLING = (SRC, SAD_OUT)


@dataclass(frozen=True, order=True)
class PointConfiguration:
    n_src_i: int
    n_snk_i: int
    s_i: int
    n_src_b: int
    n_snk_b: int
    s_b: int

    @property
    def total(self) -> int:
        return sum(astuple(self))

    @property
    def boundary_total(self) -> int:
        return self.n_src_b + self.n_snk_b + self.s_b

    def counts(self) -> tuple[int, int, int, int]:
        return (self.n_src_i + self.n_snk_i, self.n_src_b + self.n_snk_b, self.s_i, self.s_b)

    def reversed(self) -> "PointConfiguration":
        return PointConfiguration(self.n_snk_i, self.n_src_i, self.s_i,
                                  self.n_snk_b, self.n_src_b, self.s_b)

    @classmethod
    def of(cls, d: SeparatrixDiagram) -> "PointConfiguration":
        c = d.kind_counts()
        K = VertexKind
        return cls(c[K.INTERIOR_SOURCE], c[K.INTERIOR_SINK], c[K.INTERIOR_SADDLE],
                   c[K.BOUNDARY_SOURCE], c[K.BOUNDARY_SINK], c[K.BOUNDARY_SADDLE])


def point_configurations(n: int) -> list[PointConfiguration]:
    """Point counts with ``n`` points obeying the index formula.

    The boundary carries an even, nonzero number of points (a boundary
    without singular points would be a closed orbit) and the flow has at
    least one source and one sink.
    """
    if not MIN_POINTS <= n <= MAX_POINTS:
        raise ArgumentError(f"number of points must be in [{MIN_POINTS}, {MAX_POINTS}], got {n}")
    out = []
    for t in itertools.product(range(n + 1), repeat=6):
        if sum(t) != n:
            continue
        cfg = PointConfiguration(*t)
        if cfg.boundary_total % 2 or cfg.boundary_total == 0:
            continue
        if cfg.n_src_i + cfg.n_src_b == 0 or cfg.n_snk_i + cfg.n_snk_b == 0:
            continue
        if check_index_formula(cfg.counts()):
            out.append(cfg)
    return sorted(out)


def boundary_orders(cfg: PointConfiguration) -> list[tuple[int, ...]]:
    """Cyclic label sequences of the boundary points, one per dihedral class.

    Along the boundary the flow alternates: repelling points (sources and
    saddles whose boundary arcs flow out) sit between attracting ones.
    """
    half = cfg.boundary_total // 2
    sad_out = half - cfg.n_src_b
    sad_in = half - cfg.n_snk_b
    if sad_out < 0 or sad_in < 0:
        return []
    reps = [SRC] * cfg.n_src_b + [SAD_OUT] * sad_out
    atts = [SNK] * cfg.n_snk_b + [SAD_IN] * sad_in
    size = 2 * half
    seen = set()
    for r in sorted(set(itertools.permutations(reps))):
        for a in sorted(set(itertools.permutations(atts))):
            seq = [0] * size
            seq[0::2] = r
            seq[1::2] = a
            seen.add(_dihedral_min(tuple(seq)))
    return sorted(seen)


def _dihedral_min(seq: tuple[int, ...]) -> tuple[int, ...]:
    n = len(seq)
    images = []
    for base in (seq, seq[::-1]):
        for k in range(n):
            img = base[k:] + base[:k]
            if img[0] in _REPELLING:
                images.append(img)
    return min(images)


# ---------------------------------------------------------------------------
# skeleton: vertices, slots and edges before node orders and signs


@dataclass
class _Skeleton:
    vertex_kind: list[VertexKind]
    boundary_labels: tuple[int, ...]
    sources: list[int]          # vertices that may receive stable separatrices
    sinks: list[int]
    interior_sources: list[int]
    interior_sinks: list[int]
    in_slots: list[tuple[int, int]]    # (saddle, position) of incoming separatrix slots
    out_slots: list[tuple[int, int]]


def _skeleton(cfg: PointConfiguration, labels: tuple[int, ...]) -> _Skeleton:
    K = VertexKind
    kinds = []
    for lab in labels:
        kinds.append(K.BOUNDARY_SOURCE if lab == SRC else K.BOUNDARY_SINK if lab == SNK
                     else K.BOUNDARY_SADDLE)
    isrc = list(range(len(kinds), len(kinds) + cfg.n_src_i))
    kinds += [K.INTERIOR_SOURCE] * cfg.n_src_i
    isnk = list(range(len(kinds), len(kinds) + cfg.n_snk_i))
    kinds += [K.INTERIOR_SINK] * cfg.n_snk_i
    isad = list(range(len(kinds), len(kinds) + cfg.s_i))
    kinds += [K.INTERIOR_SADDLE] * cfg.s_i

    in_slots, out_slots = [], []
    for v, lab in enumerate(labels):
        if lab == SAD_OUT:
            in_slots.append((v, 0))
        elif lab == SAD_IN:
            out_slots.append((v, 0))
    for v in isad:
        # rotation at an interior saddle: in, out, in, out
        in_slots += [(v, 0), (v, 2)]
        out_slots += [(v, 1), (v, 3)]
    bsrc = [v for v, lab in enumerate(labels) if lab == SRC]
    bsnk = [v for v, lab in enumerate(labels) if lab == SNK]
    return _Skeleton(kinds, labels, bsrc + isrc, bsnk + isnk, isrc, isnk, in_slots, out_slots)


def _assignments(slots, targets, interior) -> Iterator[tuple[int, ...]]:
    """Maps from slots to targets covering every interior target.

    Interior targets of one kind are interchangeable, so they are
    introduced in increasing order (first use of ``interior[j]`` only after
    ``interior[j - 1]``).
    """
    interior_pos = {v: j for j, v in enumerate(interior)}
    boundary = [t for t in targets if t not in interior_pos]
    n = len(slots)
    choice = [0] * n

    def rec(i, used):
        if n - i < len(interior) - used:
            return
        if i == n:
            if used == len(interior):
                yield tuple(choice)
            return
        for t in boundary:
            choice[i] = t
            yield from rec(i + 1, used)
        for j in range(min(used + 1, len(interior))):
            choice[i] = interior[j]
            yield from rec(i + 1, max(used, j + 1))

    yield from rec(0, 0)


def _cyclic_orders(items: list[int]) -> Iterator[tuple[int, ...]]:
    """Cyclic orders up to reversal."""
    if len(items) <= 2:
        yield tuple(items)
        return
    first, rest = items[0], items[1:]
    for p in itertools.permutations(rest):
        if p[0] < p[-1]:
            yield (first,) + p


class _Builder:
    """Rotation system under construction plus the lazy sign search."""

    def __init__(self, sk: _Skeleton, connection):
        self.sk = sk
        B = len(sk.boundary_labels)
        self.B = B
        n_edges = B
        self.edge_kind: list[EdgeKind] = [EdgeKind.BOUNDARY] * B
        self.tail: list[int] = []
        for i, lab in enumerate(sk.boundary_labels):
            self.tail.append(2 * i if lab in _REPELLING else 2 * i + 1)
        # slot -> dart at the saddle
        self.slot_dart = {}
        self.node_dart_in: list[tuple[int, int]] = []   # (slot, dart at node) for stable
        self.node_dart_out: list[tuple[int, int]] = []
        conn_out, conn_in = connection if connection else (None, None)
        for slot in sk.in_slots:
            if slot == conn_in:
                continue
            self.slot_dart[slot] = 2 * n_edges
            self.edge_kind.append(EdgeKind.STABLE)
            self.tail.append(2 * n_edges + 1)
            self.node_dart_in.append((slot, 2 * n_edges + 1))
            n_edges += 1
        for slot in sk.out_slots:
            if slot == conn_out:
                continue
            self.slot_dart[slot] = 2 * n_edges
            self.edge_kind.append(EdgeKind.UNSTABLE)
            self.tail.append(2 * n_edges)
            self.node_dart_out.append((slot, 2 * n_edges + 1))
            n_edges += 1
        if connection:
            self.slot_dart[conn_out] = 2 * n_edges
            self.slot_dart[conn_in] = 2 * n_edges + 1
            self.edge_kind.append(EdgeKind.CONNECTION)
            self.tail.append(2 * n_edges)
            n_edges += 1
        self.n_edges = n_edges
        self.n_vertices = len(sk.vertex_kind)

    def saddle_rotations(self) -> dict[int, tuple[int, ...]]:
        rots = {}
        per = {}
        for slot, dart in self.slot_dart.items():
            per.setdefault(slot[0], []).append((slot[1], dart))
        for v, items in per.items():
            rots[v] = tuple(d for _, d in sorted(items))
        return rots

    def rotation_systems(self, in_targets, out_targets) -> Iterator[list[tuple[int, ...]]]:
        sk = self.sk
        B = self.B
        node_darts: dict[int, list[int]] = {}
        for (slot, dart), t in zip(self.node_dart_in, in_targets):
            node_darts.setdefault(t, []).append(dart)
        for (slot, dart), t in zip(self.node_dart_out, out_targets):
            node_darts.setdefault(t, []).append(dart)
        sad = self.saddle_rotations()

        per_vertex_options = []
        for v in range(self.n_vertices):
            darts = node_darts.get(v, [])
            if v < B:
                nxt, prv = 2 * v, 2 * ((v - 1) % B) + 1
                if v in sad:
                    per_vertex_options.append([(nxt,) + sad[v] + (prv,)])
                else:
                    per_vertex_options.append(
                        [(nxt,) + p + (prv,) for p in itertools.permutations(darts)])
            elif v in sad:
                per_vertex_options.append([sad[v]])
            else:
                per_vertex_options.append(list(_cyclic_orders(darts)))
        for combo in itertools.product(*per_vertex_options):
            yield list(combo)

    def sign_solutions(self, rotations) -> Iterator[list[int]]:
        n_darts = 2 * self.n_edges
        nxt = [0] * n_darts
        prv = [0] * n_darts
        vert = [0] * n_darts
        for v, rot in enumerate(rotations):
            L = len(rot)
            for i, d in enumerate(rot):
                nxt[d] = rot[(i + 1) % L]
                prv[d] = rot[i - 1]
                vert[d] = v
        node = [1 if k.is_source else -1 if k.is_sink else 0 for k in self.sk.vertex_kind]
        sign = [0] * self.n_edges
        for i in range(self.B):
            sign[i] = 1
        visited = [False] * (2 * n_darts)   # index 2*d + (s < 0)

        # the cap: boundary arcs, all signs known
        d, s = 0, 1
        while True:
            visited[2 * d + (s < 0)] = True
            r, rs = d ^ 1, -s * sign[d >> 1]
            visited[2 * r + (rs < 0)] = True
            t = d ^ 1
            s = s * sign[d >> 1]
            d = nxt[t] if s > 0 else prv[t]
            if (d, s) == (0, 1):
                break

        def next_start():
            for idx in range(2 * n_darts):
                if not visited[idx]:
                    return idx >> 1, (1 if idx & 1 == 0 else -1)
            return None

        def walk(d, s, start, nsrc, nsnk):
            e = d >> 1
            if sign[e] == 0:
                for sg in (1, -1):
                    sign[e] = sg
                    yield from walk(d, s, start, nsrc, nsnk)
                sign[e] = 0
                return
            sg = sign[e]
            i1 = 2 * d + (s < 0)
            r, rs = d ^ 1, -s * sg
            i2 = 2 * r + (rs < 0)
            if visited[i1] or visited[i2]:
                return
            visited[i1] = visited[i2] = True
            t = d ^ 1
            s2 = s * sg
            d2 = nxt[t] if s2 > 0 else prv[t]
            kind = node[vert[t]]
            if kind > 0:
                nsrc += 1
            elif kind < 0:
                nsnk += 1
            if nsrc <= 1 and nsnk <= 1:
                if (d2, s2) == start:
                    if nsrc == 1 and nsnk == 1:
                        yield from face()
                else:
                    yield from walk(d2, s2, start, nsrc, nsnk)
            visited[i1] = visited[i2] = False

        def face():
            st = next_start()
            if st is None:
                yield list(sign)
                return
            yield from walk(st[0], st[1], st, 0, 0)

        yield from face()

    def diagram(self, rotations, signs) -> SeparatrixDiagram:
        m = SignedMap(rotations, signs, (0, 1))
        return SeparatrixDiagram(m, tuple(self.sk.vertex_kind), tuple(self.edge_kind), tuple(self.tail))


def _connections(sk: _Skeleton):
    for out_slot in sk.out_slots:
        for in_slot in sk.in_slots:
            if out_slot[0] != in_slot[0]:
                yield out_slot, in_slot


def _generate(cfg: PointConfiguration, codim: int) -> Iterator[SeparatrixDiagram]:
    for labels in boundary_orders(cfg):
        sk = _skeleton(cfg, labels)
        conns = [None] if codim == 0 else list(_connections(sk))
        for conn in conns:
            b = _Builder(sk, conn)
            in_slots = [slot for slot, _ in b.node_dart_in]
            out_slots = [slot for slot, _ in b.node_dart_out]
            for ins in _assignments(in_slots, sk.sources, sk.interior_sources):
                for outs in _assignments(out_slots, sk.sinks, sk.interior_sinks):
                    for rots in b.rotation_systems(ins, outs):
                        for signs in b.sign_solutions(rots):
                            yield b.diagram(rots, signs)


def _census(n: int, codim: int) -> list[SeparatrixDiagram]:
    if not MIN_POINTS <= n <= MAX_POINTS:
        raise ArgumentError(f"number of points must be in [{MIN_POINTS}, {MAX_POINTS}], got {n}")
    found: dict[bytes, SeparatrixDiagram] = {}
    raw = 0
    for cfg in point_configurations(n):
        for d in _generate(cfg, codim):
            raw += 1
            problems = validate(d)
            if problems:
                raise StructuralError(f"generated an invalid diagram {d.to_dict()}: {problems}")
            code, rep, _ = canonical_form(d)
            found.setdefault(code, rep)
    log.info("n=%d codim=%d: %d raw diagrams, %d classes", n, codim, raw, len(found))
    return [found[c] for c in sorted(found)]


def enumerate_morse_flows(n: int) -> list[SeparatrixDiagram]:
    """Canonical representatives of all Morse diagrams with ``n`` points, sorted by code."""
    return _census(n, 0)


def enumerate_sc_diagrams(n: int) -> list[SeparatrixDiagram]:
    """Canonical representatives of diagrams with exactly one saddle connection."""
    if n < 4:
        raise ArgumentError("a saddle connection needs at least four points")
    return _census(n, 1)


def connection_type(d: SeparatrixDiagram) -> str:
    """``SC``, ``HSC`` or ``BSC`` by how many ends of the connection lie on the boundary."""
    if len(d.connections) != 1:
        raise ArgumentError(f"expected one saddle connection, found {len(d.connections)}")
    (k,) = d.connections
    ends = d.vertex_kind[d.tail(k)].on_boundary + d.vertex_kind[d.head(k)].on_boundary
    return ("SC", "HSC", "BSC")[ends]
