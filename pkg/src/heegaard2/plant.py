"""Controlled diagram surgeries for building test corpora.

These helpers grow a valid diagram while preserving the traced surface:

* :func:`plant_bigon` pushes a v-arc across a u-arc bounding the same face
  (a finger move landing back on the same arc), creating one bigon.
* :func:`plant_finger` pushes a v-arc across a cycle of faces glued along
  u-edges, adding one crossing per traversed u-edge.  With the two edges on
  the same u-curve this plants a wave whose wave move undoes the finger.

Both return diagrams that still trace to a genus-2 surface; callers decide
what further properties (tightness, wave-freeness) to require.
"""

from __future__ import annotations

from .complexes import Arc
from .diagram import HeegaardDiagram
from .errors import HeegaardError


def _insert_crossings(
    d: HeegaardDiagram,
    v_arc: Arc,
    u_hits: list[tuple[Arc, int]],
) -> HeegaardDiagram | None:
    """Reroute the v-arc through the given u-arcs with the given signs.

    New crossings are appended with fresh ids.  Returns None when the
    rerouted diagram fails validation (wrong side choices).
    """
    fam, vj, k = v_arc
    assert fam == "v"
    n = d.vertex_count
    new_ids = list(range(n + 1, n + 1 + len(u_hits)))

    vcurves = [list(d.v1), list(d.v2)]
    vc = vcurves[vj]
    at = vc.index(d.complex.curve("v", vj)[k])
    for offset, nid in enumerate(new_ids, start=1):
        vc.insert(at + offset, nid)

    ucurves = [list(d.u1), list(d.u2)]
    # group insertions per u-arc, preserving finger order within an arc
    per_arc: dict[Arc, list[int]] = {}
    for (arc, _sign), nid in zip(u_hits, new_ids):
        per_arc.setdefault(arc, []).append(nid)
    for arc, ids in sorted(per_arc.items(), key=lambda it: -it[0][2]):
        _, ci, m = arc
        for nid in reversed(ids):
            ucurves[ci].insert(m + 1, nid)

    signs = dict(d.signs)
    for (_arc, sign), nid in zip(u_hits, new_ids):
        signs[nid] = sign
    try:
        return HeegaardDiagram(
            n + len(u_hits), ucurves[0], ucurves[1], vcurves[0], vcurves[1], signs
        )
    except HeegaardError:
        return None


def _v_arcs_of_face(d: HeegaardDiagram, face_id: int) -> list[Arc]:
    face = d.complex.faces()[face_id]
    return [dart[:3] for dart in face.darts if dart[0] == "v"]


def _u_edges_of_face(d: HeegaardDiagram, face_id: int) -> list[Arc]:
    face = d.complex.faces()[face_id]
    return [dart[:3] for dart in face.darts if dart[0] == "u"]


def plant_bigon(d: HeegaardDiagram) -> HeegaardDiagram | None:
    """Insert one bigon by pushing a v-arc across a u-arc of a shared face."""
    for face in d.complex.faces():
        v_arcs = _v_arcs_of_face(d, face.id)
        u_arcs = _u_edges_of_face(d, face.id)
        for v_arc in v_arcs:
            for u_arc in u_arcs:
                for s in (1, -1):
                    out = _insert_crossings(d, v_arc, [(u_arc, s), (u_arc, -s)])
                    if out is not None and len(out.find_bigons()) >= 1:
                        return out
    return None


def plant_finger(
    d: HeegaardDiagram, same_curve: bool, max_len: int = 6
) -> HeegaardDiagram | None:
    """Push a v-arc across a cycle of faces glued along u-edges.

    The finger leaves its face through a u-edge, wanders through distinct
    faces crossing one distinct u-edge each, and returns, adding one
    crossing per edge.  The crossing sign is the travel direction against
    the edge's positive normal.  ``same_curve`` asks for a two-edge finger
    whose edges lie on one u-curve (wave planting); otherwise any cycle of
    length at least two whose two end edges differ works (growth).  Returns
    the first tight result, or None.
    """
    cx = d.complex
    for face in cx.faces():
        v_arcs = _v_arcs_of_face(d, face.id)
        if not v_arcs:
            continue
        for path in _u_dual_cycles(d, face.id, max_len):
            edges = [e for e, _dir in path]
            if len(set(edges)) != len(edges):
                continue
            if same_curve:
                if len(edges) != 2 or edges[0][1] != edges[1][1]:
                    continue
            else:
                if len(edges) == 2 and edges[0][1] == edges[1][1]:
                    continue
            hits = [(e, 1 if forward else -1) for e, forward in path]
            rev = [(e, -s) for e, s in reversed(hits)]
            for v_arc in v_arcs:
                for attempt in (hits, rev):
                    out = _insert_crossings(d, v_arc, attempt)
                    if out is not None and out.is_tight():
                        return out
    return None


def _u_dual_cycles(d: HeegaardDiagram, face_id: int, max_len: int):
    """Cycles from a face back to itself through u-edges (BFS, shortest first).

    Yields paths as lists of (u_arc, forward) where forward means the step
    crosses the arc from its minus face into its plus face.
    """
    cx = d.complex
    from collections import deque

    queue = deque([(face_id, [])])
    results = 0
    seen_paths = set()
    while queue and results < 64:
        fid, path = queue.popleft()
        if len(path) >= max_len:
            continue
        for arc in sorted(cx.arcs()):
            if arc[0] != "u":
                continue
            plus, minus = cx.face_adjacency(arc)
            if fid == minus:
                nxt, forward = plus, True
            elif fid == plus:
                nxt, forward = minus, False
            else:
                continue
            if any(arc == e for e, _dir in path):
                continue
            new_path = path + [(arc, forward)]
            if nxt == face_id and len(new_path) >= 2:
                key = tuple(e for e, _dir in new_path)
                if key not in seen_paths:
                    seen_paths.add(key)
                    results += 1
                    yield new_path
            elif len(new_path) < max_len:
                queue.append((nxt, new_path))
