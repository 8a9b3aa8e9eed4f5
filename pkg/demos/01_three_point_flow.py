"""The smallest Morse flow on the Möbius strip, taken apart piece by piece.

One source and one sink sit on the boundary circle and a single saddle sits
inside.  We build the diagram by hand from darts, then look at it the way
the rest of the library does.
"""
from mobius_flows import double_to_closed, surface_signature, trace_faces, validate
from mobius_flows.diagram import EdgeKind as E, SeparatrixDiagram, VertexKind as K, find_cap_state
from mobius_flows.surface_map import SignedMap

# Edge k owns darts 2k and 2k+1.  Rotations list darts around each point.
rotations = [(0, 4, 8, 3), (2, 11, 7, 1), (5, 6, 9, 10)]
signs = (1, 1, 1, 1, -1, -1)            # the two unstable separatrices cross the cross-cap
kinds = (E.BOUNDARY, E.BOUNDARY, E.STABLE, E.UNSTABLE, E.STABLE, E.UNSTABLE)
tails = (0, 3, 4, 6, 8, 10)

m = SignedMap(rotations, signs)
d = SeparatrixDiagram(m.with_boundary_face(find_cap_state(m, kinds)),
                      (K.BOUNDARY_SOURCE, K.BOUNDARY_SINK, K.INTERIOR_SADDLE), kinds, tails)

print("violations:", validate(d) or "none")
chi, orientable, _ = surface_signature(d.map)
print(f"capped surface: chi={chi}, orientable={orientable}  (a projective plane)")

faces = trace_faces(d.map)
print(f"{len(faces)} faces: the cap plus {len(faces) - 1} cells")
for i, walk in enumerate(faces):
    corners = [d.vertex_kind[d.map.vertex_of[dart]].value for dart, _ in walk]
    print(f"  face {i}: {' -> '.join(corners)}")

# Glue the strip to its mirror image along the boundary: a Klein bottle.
dbl = double_to_closed(d)
print("double:", surface_signature(dbl.map)[:2], f"nodes={dbl.node_count()} saddles={dbl.saddle_count()}")
