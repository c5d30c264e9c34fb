"""Systems of transverse curves on an oriented surface, as rotation systems.

A :class:`CurveComplex` holds two families of disjointly embedded closed
curves (the u-family and the v-family) that intersect each other
transversally.  Each curve is a cyclic sequence of crossing ids; every
crossing lies on exactly one u-curve and one v-curve and carries a sign:

* sign +1: the v-curve crosses in the direction of the u-curve's positive
  normal (the positive normal of an oriented curve is the left-hand side of
  its direction of travel, the surface being oriented);
* sign -1: the opposite direction.

The sign determines the counterclockwise order of the four dart directions
at the crossing, which is all that is needed to trace faces and compute the
Euler characteristic of the surface the system fills.

Darts are tuples ``(family, curve_index, arc_index, direction)`` where arc
``k`` of a curve runs from its ``k``-th crossing to its ``k+1``-st (cyclic)
and direction +1 follows the curve's orientation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Dart = tuple[str, int, int, int]
Arc = tuple[str, int, int]


class CurveComplex:
    def __init__(
        self,
        u_curves: Sequence[Sequence[int]],
        v_curves: Sequence[Sequence[int]],
        signs: dict[int, int],
    ):
        self.u_curves = tuple(tuple(c) for c in u_curves)
        self.v_curves = tuple(tuple(c) for c in v_curves)
        self.signs = dict(signs)
        self.u_at: dict[int, tuple[int, int]] = {}
        self.v_at: dict[int, tuple[int, int]] = {}
        for ci, curve in enumerate(self.u_curves):
            for k, x in enumerate(curve):
                if x in self.u_at:
                    raise ValueError(f"crossing {x} appears twice in the u-family")
                self.u_at[x] = (ci, k)
        for cj, curve in enumerate(self.v_curves):
            for k, x in enumerate(curve):
                if x in self.v_at:
                    raise ValueError(f"crossing {x} appears twice in the v-family")
                self.v_at[x] = (cj, k)
        if set(self.u_at) != set(self.v_at):
            raise ValueError("u-family and v-family cover different crossing sets")
        for x in self.u_at:
            if self.signs.get(x) not in (1, -1):
                raise ValueError(f"crossing {x} has no sign")
        self._faces: list[Face] | None = None
        self._face_of_dart: dict[Dart, int] | None = None

    # -- basic counts ------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.u_at)

    @property
    def edge_count(self) -> int:
        return sum(len(c) for c in self.u_curves) + sum(len(c) for c in self.v_curves)

    def curve(self, fam: str, ci: int) -> tuple[int, ...]:
        return self.u_curves[ci] if fam == "u" else self.v_curves[ci]

    def arcs(self) -> Iterable[Arc]:
        for ci, c in enumerate(self.u_curves):
            for k in range(len(c)):
                yield ("u", ci, k)
        for cj, c in enumerate(self.v_curves):
            for k in range(len(c)):
                yield ("v", cj, k)

    def arc_ends(self, arc: Arc) -> tuple[int, int]:
        fam, ci, k = arc
        c = self.curve(fam, ci)
        return c[k], c[(k + 1) % len(c)]

    # -- darts and rotation ------------------------------------------------

    def dart_start(self, d: Dart) -> int:
        fam, ci, k, direction = d
        c = self.curve(fam, ci)
        return c[k] if direction == 1 else c[(k + 1) % len(c)]

    def dart_end(self, d: Dart) -> int:
        return self.dart_start(reverse(d))

    def rotation(self, x: int) -> list[Dart]:
        """Departing darts at crossing x in counterclockwise order."""
        ui, up = self.u_at[x]
        vj, vp = self.v_at[x]
        nu = len(self.u_curves[ui])
        nv = len(self.v_curves[vj])
        u_out: Dart = ("u", ui, up, 1)
        u_back: Dart = ("u", ui, (up - 1) % nu, -1)
        v_out: Dart = ("v", vj, vp, 1)
        v_back: Dart = ("v", vj, (vp - 1) % nv, -1)
        if self.signs[x] == 1:
            return [u_out, v_out, u_back, v_back]
        return [u_out, v_back, u_back, v_out]

    def next_in_face(self, d: Dart) -> Dart:
        """Successor of dart d around the face lying on its left."""
        r = reverse(d)
        rot = self.rotation(self.dart_start(r))
        i = rot.index(r)
        return rot[(i - 1) % 4]

    # -- faces ---------------------------------------------------------------

    def faces(self) -> list["Face"]:
        if self._faces is None:
            self._trace()
        return self._faces

    def face_of(self, d: Dart) -> int:
        if self._face_of_dart is None:
            self._trace()
        return self._face_of_dart[d]

    def _trace(self) -> None:
        all_darts: list[Dart] = []
        for arc in self.arcs():
            all_darts.append(arc + (1,))
            all_darts.append(arc + (-1,))
        seen: dict[Dart, int] = {}
        faces: list[Face] = []
        for d0 in all_darts:
            if d0 in seen:
                continue
            cycle = []
            d = d0
            while True:
                seen[d] = len(faces)
                cycle.append(d)
                d = self.next_in_face(d)
                if d == d0:
                    break
            faces.append(Face(len(faces), tuple(cycle)))
        self._faces = faces
        self._face_of_dart = seen

    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + len(self.faces())

    def is_connected(self) -> bool:
        if not self.u_at:
            return False
        root = next(iter(self.u_at))
        seen = {root}
        stack = [root]
        while stack:
            x = stack.pop()
            for d in self.rotation(x):
                y = self.dart_end(d)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.vertex_count

    # -- cutting -------------------------------------------------------------

    def face_adjacency(self, arc: Arc) -> tuple[int, int]:
        """Face ids on the two sides of an arc (plus-side first)."""
        return self.face_of(arc + (1,)), self.face_of(arc + (-1,))

    def cut_components(self, cut_arcs: Iterable[Arc]) -> list[set[int]]:
        """Components of the surface cut along the given arcs.

        Faces are glued across every arc not in ``cut_arcs``.  Valid only
        when every face of the complex is a disk (Euler characteristic of
        the traced system equals that of the filled surface).
        """
        cut = set(cut_arcs)
        parent = list(range(len(self.faces())))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for arc in self.arcs():
            if arc in cut:
                continue
            a, b = self.face_adjacency(arc)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups: dict[int, set[int]] = {}
        for i in range(len(parent)):
            groups.setdefault(find(i), set()).add(i)
        return sorted(groups.values(), key=min)

    def piece_euler(self, face_ids: set[int]) -> int:
        """Euler characteristic of the closed-up union of the given faces."""
        verts: set[int] = set()
        edges: set[Arc] = set()
        for f in self.faces():
            if f.id not in face_ids:
                continue
            for d in f.darts:
                edges.add(d[:3])
                verts.add(self.dart_start(d))
        return len(verts) - len(edges) + len(face_ids)


def reverse(d: Dart) -> Dart:
    fam, ci, k, direction = d
    return (fam, ci, k, -direction)


@dataclass(frozen=True)
class Face:
    """A traced face; ``darts`` go around it with the face on the left."""

    id: int
    darts: tuple[Dart, ...]

    @property
    def size(self) -> int:
        return len(self.darts)
