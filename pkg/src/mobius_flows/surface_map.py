"""Signed rotation systems: graphs embedded in closed surfaces.

Darts are dense integers.  Edge ``k`` owns darts ``2k`` and ``2k + 1`` so the
edge involution is ``d ^ 1``.  Each vertex carries the cyclic order of its
darts in a local orientation; each edge carries a sign, ``-1`` when crossing
the edge reverses the local orientation.

A surface with one boundary circle is encoded by its capped closed surface
together with a distinguished face (the cap).  The Möbius strip is the
projective plane with a cap.

Face walks are computed on *states* ``(dart, orientation)``: leaving the
vertex of ``dart`` along ``dart`` while the walker uses ``orientation``
relative to that vertex's rotation.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ArgumentError, StructuralError

State = tuple[int, int]


def reverse_state(state: State, sign: int) -> State:
    """The state that walks the same edge side in the opposite direction."""
    d, s = state
    return (d ^ 1, -s * sign)


@dataclass(frozen=True)
class SignedMap:
    rotations: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]
    boundary_face: State | None = None
    _checked: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rotations", tuple(tuple(r) for r in self.rotations))
        object.__setattr__(self, "signs", tuple(self.signs))
        if self.boundary_face is not None:
            object.__setattr__(self, "boundary_face", tuple(self.boundary_face))
        if self._checked:
            self._check()

    def _check(self):
        n = 2 * len(self.signs)
        seen = [False] * n
        for rot in self.rotations:
            for d in rot:
                if not (0 <= d < n) or seen[d]:
                    raise StructuralError(f"dart {d} repeated or out of range in rotations")
                seen[d] = True
        if not all(seen):
            missing = [d for d in range(n) if not seen[d]]
            raise StructuralError(f"darts {missing} belong to no vertex")
        if any(s not in (1, -1) for s in self.signs):
            raise StructuralError("edge signs must be +1 or -1")
        if self.boundary_face is not None:
            d, s = self.boundary_face
            if not (0 <= d < n) or s not in (1, -1):
                raise StructuralError(f"bad boundary face state {self.boundary_face}")

    @property
    def num_darts(self) -> int:
        return 2 * len(self.signs)

    @property
    def num_edges(self) -> int:
        return len(self.signs)

    @property
    def num_vertices(self) -> int:
        return len(self.rotations)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        out = [0] * self.num_darts
        for v, rot in enumerate(self.rotations):
            for d in rot:
                out[d] = v
        return tuple(out)

    @cached_property
    def _next(self) -> tuple[int, ...]:
        out = [0] * self.num_darts
        for rot in self.rotations:
            for i, d in enumerate(rot):
                out[d] = rot[(i + 1) % len(rot)]
        return tuple(out)

    @cached_property
    def _prev(self) -> tuple[int, ...]:
        out = [0] * self.num_darts
        for rot in self.rotations:
            for i, d in enumerate(rot):
                out[d] = rot[i - 1]
        return tuple(out)

    def turn(self, dart: int, orientation: int) -> int:
        """Next dart around the vertex of ``dart`` in the given orientation."""
        return self._next[dart] if orientation > 0 else self._prev[dart]

    def sign_of_dart(self, dart: int) -> int:
        return self.signs[dart >> 1]

    def endpoints(self, edge: int) -> tuple[int, int]:
        return self.vertex_of[2 * edge], self.vertex_of[2 * edge + 1]

    def is_loop(self, edge: int) -> bool:
        u, v = self.endpoints(edge)
        return u == v

    def step(self, state: State) -> State:
        """Cross the edge of the state's dart and turn at the far vertex."""
        d, s = state
        t = d ^ 1
        s2 = s * self.signs[d >> 1]
        return (self.turn(t, s2), s2)

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def with_boundary_face(self, state: State | None) -> "SignedMap":
        return SignedMap(self.rotations, self.signs, state)

    def relabel(self, edge_perm: Sequence[int], flip_edges: Iterable[int] = (),
                vertex_perm: Sequence[int] | None = None) -> "SignedMap":
        """Rename darts: edge ``k`` becomes ``edge_perm[k]``, optionally swapping its two darts."""
        flips = set(flip_edges)

        def image(d):
            k, side = d >> 1, d & 1
            return 2 * edge_perm[k] + (side ^ (k in flips))

        rots = [tuple(image(d) for d in rot) for rot in self.rotations]
        if vertex_perm is not None:
            new = [None] * len(rots)
            for v, rot in enumerate(rots):
                new[vertex_perm[v]] = rot
            rots = new
        signs = [0] * self.num_edges
        for k, s in enumerate(self.signs):
            signs[edge_perm[k]] = s
        bf = None
        if self.boundary_face is not None:
            bf = (image(self.boundary_face[0]), self.boundary_face[1])
        return SignedMap(rots, signs, bf)

    def to_dict(self) -> dict:
        return {
            "darts": self.num_darts,
            "pairing": [d ^ 1 for d in range(self.num_darts)],
            "rotations": [list(r) for r in self.rotations],
            "signs": list(self.signs),
            "boundary_face": None if self.boundary_face is None else list(self.boundary_face),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SignedMap":
        n = data["darts"]
        pairing = data.get("pairing")
        if pairing is not None:
            if len(pairing) != n or any(pairing[d] != d ^ 1 for d in range(n)):
                raise StructuralError("pairing must be the dense involution d <-> d ^ 1")
        if n != 2 * len(data["signs"]):
            raise StructuralError("dart count does not match edge count")
        bf = data.get("boundary_face")
        return cls(tuple(tuple(r) for r in data["rotations"]), tuple(data["signs"]),
                   None if bf is None else (bf[0], bf[1]))


def trace_faces(m: SignedMap) -> list[tuple[State, ...]]:
    """All face walks, each as the tuple of states it leaves from.

    Each face is reported once; its reverse walk is marked as used.  Start
    states are scanned in increasing dart order, orientation ``+1`` first.
    An isolated vertex contributes one empty walk.
    """
    visited: set[State] = set()
    faces: list[tuple[State, ...]] = []
    for d in range(m.num_darts):
        for s in (1, -1):
            start = (d, s)
            if start in visited:
                continue
            walk = []
            state = start
            while True:
                if state in visited:
                    raise StructuralError(f"face walk from {start} re-entered state {state}")
                walk.append(state)
                visited.add(state)
                visited.add(reverse_state(state, m.sign_of_dart(state[0])))
                state = m.step(state)
                if state == start:
                    break
            faces.append(tuple(walk))
    faces.extend(() for rot in m.rotations if not rot)
    return faces


def face_containing(m: SignedMap, state: State, faces=None) -> int:
    """Index into ``trace_faces(m)`` of the face walking through ``state`` (either direction)."""
    faces = trace_faces(m) if faces is None else faces
    rev = reverse_state(state, m.sign_of_dart(state[0]))
    for i, walk in enumerate(faces):
        if state in walk or rev in walk:
            return i
    raise StructuralError(f"state {state} lies on no face")


def euler_characteristic(m: SignedMap) -> int:
    return m.num_vertices - m.num_edges + len(trace_faces(m))


def is_connected(m: SignedMap) -> bool:
    if m.num_vertices == 0:
        return False
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for d in m.rotations[v]:
            w = m.vertex_of[d ^ 1]
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == m.num_vertices


def orientability(m: SignedMap) -> bool:
    """True iff vertex flips can make every edge sign +1."""
    if not is_connected(m):
        raise StructuralError("orientability requires a connected map")
    orient = [0] * m.num_vertices
    orient[0] = 1
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for d in m.rotations[v]:
            w = m.vertex_of[d ^ 1]
            want = orient[v] * m.sign_of_dart(d)
            if orient[w] == 0:
                orient[w] = want
                queue.append(w)
            elif orient[w] != want:
                return False
    return True


def surface_signature(m: SignedMap) -> tuple[int, bool, bool]:
    """``(euler characteristic, orientable, has boundary face)``."""
    return euler_characteristic(m), orientability(m), m.boundary_face is not None


def is_mobius(m: SignedMap) -> bool:
    chi, orientable, boundary = surface_signature(m)
    return chi == 1 and not orientable and boundary


def vertex_flip(m: SignedMap, v: int) -> SignedMap:
    """Reverse the rotation at ``v`` and toggle the signs of its non-loop edges."""
    if not 0 <= v < m.num_vertices:
        raise ArgumentError(f"unknown vertex {v}")
    rots = list(m.rotations)
    rot = rots[v]
    rots[v] = (rot[0],) + tuple(reversed(rot[1:])) if rot else rot
    signs = list(m.signs)
    for k in range(m.num_edges):
        a, b = m.endpoints(k)
        if (a == v) != (b == v):
            signs[k] = -signs[k]
    bf = m.boundary_face
    if bf is not None and m.vertex_of[bf[0]] == v:
        bf = (bf[0], -bf[1])
    return SignedMap(rots, signs, bf)
