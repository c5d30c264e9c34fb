"""Genus-2 Heegaard diagrams: parsing, validation, face tracing, bigons.

File format (line oriented, ``#`` starts a comment)::

    vertices N
    u1: 1 2 3
    u2: 4 5
    v1: 1+ 4- 2+
    v2: 3- 5+

Ids are 1..N; every id appears exactly once across u1 u2 and exactly once
across v1 v2.  The sign on a v-token is the crossing sign (+ means the
v-curve crosses in the u-curve's positive normal direction).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .complexes import Arc, CurveComplex, Dart, Face
from .errors import (
    DiagramSyntaxError,
    DuplicateVertexError,
    GenusMismatchError,
    MissingVertexError,
    NotTightError,
)

CURVE_NAMES = ("u1", "u2", "v1", "v2")


@dataclass(frozen=True)
class RegionEdge:
    """One step of a region's boundary cycle.

    ``side`` is the side of the curve the region lies on (plus = the curve's
    positive normal points into the region at this edge) and ``direction``
    is +1 when the boundary traversal follows the curve's orientation.  With
    the face-on-left tracing convention the two coincide in sign.
    """

    curve: str
    arc_index: int
    side: str
    direction: int


@dataclass(frozen=True)
class Region:
    id: int
    edge_cycle: tuple[RegionEdge, ...]

    @property
    def size(self) -> int:
        return len(self.edge_cycle)


class HeegaardDiagram:
    """Immutable genus-2 diagram; all operations return new diagrams."""

    def __init__(self, vertex_count, u1, u2, v1, v2, signs, validate=True):
        self.vertex_count = int(vertex_count)
        self.u1 = tuple(u1)
        self.u2 = tuple(u2)
        self.v1 = tuple(v1)
        self.v2 = tuple(v2)
        self.signs = dict(signs)
        self._complex: CurveComplex | None = None
        if validate:
            self.validate()

    # -- construction --------------------------------------------------------

    @classmethod
    def parse(cls, text: str, validate: bool = True) -> "HeegaardDiagram":
        return parse_diagram(text, validate=validate)

    def replace(self, **kw) -> "HeegaardDiagram":
        args = dict(
            vertex_count=self.vertex_count,
            u1=self.u1,
            u2=self.u2,
            v1=self.v1,
            v2=self.v2,
            signs=self.signs,
        )
        args.update(kw)
        return HeegaardDiagram(**args)

    # -- plumbing -------------------------------------------------------------

    @property
    def complex(self) -> CurveComplex:
        if self._complex is None:
            self._complex = CurveComplex(
                [self.u1, self.u2], [self.v1, self.v2], self.signs
            )
        return self._complex

    def curve_by_name(self, name: str) -> tuple[int, ...]:
        return {"u1": self.u1, "u2": self.u2, "v1": self.v1, "v2": self.v2}[name]

    def curve_name(self, fam: str, ci: int) -> str:
        return f"{fam}{ci + 1}"

    def u_curve_of(self, x: int) -> int:
        return self.complex.u_at[x][0]

    def v_curve_of(self, x: int) -> int:
        return self.complex.v_at[x][0]

    def crossing_matrix(self) -> list[list[int]]:
        """m[j][i] = |v_{j+1} n u_{i+1}| (geometric crossing counts)."""
        m = [[0, 0], [0, 0]]
        for x in self.v1:
            m[0][self.u_curve_of(x)] += 1
        for x in self.v2:
            m[1][self.u_curve_of(x)] += 1
        return m

    def total_crossings(self) -> int:
        return self.vertex_count

    # -- validation -----------------------------------------------------------

    def validate(self) -> None:
        n = self.vertex_count
        if n <= 0:
            raise MissingVertexError("diagram has no crossings")
        for name, curve in zip(CURVE_NAMES, (self.u1, self.u2, self.v1, self.v2)):
            if not curve:
                raise MissingVertexError(f"curve {name} has no crossings")
        ids = set(range(1, n + 1))
        for fam, curves in (("u", (self.u1, self.u2)), ("v", (self.v1, self.v2))):
            seen: set[int] = set()
            for curve in curves:
                for x in curve:
                    if x in seen:
                        raise DuplicateVertexError(
                            f"vertex {x} appears twice in the {fam}-family"
                        )
                    seen.add(x)
            missing = ids - seen
            if missing:
                raise MissingVertexError(
                    f"vertex {min(missing)} never appears in the {fam}-family"
                )
            extra = seen - ids
            if extra:
                raise MissingVertexError(
                    f"vertex {min(extra)} is out of range 1..{n}"
                )
        for x in ids:
            if self.signs.get(x) not in (1, -1):
                raise MissingVertexError(f"vertex {x} has no crossing sign")
        cx = self.complex
        if not cx.is_connected():
            raise GenusMismatchError("diagram graph is disconnected")
        chi = cx.euler_characteristic()
        if chi != -2:
            raise GenusMismatchError(
                f"face tracing gives Euler characteristic {chi}, expected -2"
            )

    # -- faces ------------------------------------------------------------------

    def regions(self) -> list[Region]:
        return [self._region_from_face(f) for f in self.complex.faces()]

    def _region_from_face(self, face: Face) -> Region:
        edges = []
        for d in face.darts:
            fam, ci, k, direction = d
            edges.append(
                RegionEdge(
                    curve=self.curve_name(fam, ci),
                    arc_index=k,
                    side="plus" if direction == 1 else "minus",
                    direction=direction,
                )
            )
        return Region(face.id, tuple(edges))

    def find_bigons(self) -> list[Region]:
        return [r for r in self.regions() if r.size == 2]

    def is_tight(self) -> bool:
        return not self.find_bigons()

    def require_tight(self) -> None:
        if not self.is_tight():
            raise NotTightError("diagram has bigon faces")

    # -- serialization ------------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"vertices {self.vertex_count}"]
        lines.append("u1: " + " ".join(str(x) for x in self.u1))
        lines.append("u2: " + " ".join(str(x) for x in self.u2))
        for name, curve in (("v1", self.v1), ("v2", self.v2)):
            toks = [f"{x}{'+' if self.signs[x] > 0 else '-'}" for x in curve]
            lines.append(f"{name}: " + " ".join(toks))
        return "\n".join(lines) + "\n"

    def canonical_key(self):
        return (self.vertex_count, self.u1, self.u2, self.v1, self.v2,
                tuple(sorted(self.signs.items())))

    def __eq__(self, other):
        return isinstance(other, HeegaardDiagram) and self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def __repr__(self):
        return f"<HeegaardDiagram n={self.vertex_count}>"


def reorient(d: HeegaardDiagram, flips: tuple[bool, bool, bool, bool]) -> HeegaardDiagram:
    """Reverse the orientation of selected curves (u1, u2, v1, v2).

    Reversing a curve reverses its cyclic sequence and flips the signs of
    its crossings (the positive normal is tied to the travel direction).
    This realizes the freedom of replacing a dual generator by its inverse.
    """
    fu1, fu2, fv1, fv2 = flips
    u1 = tuple(reversed(d.u1)) if fu1 else d.u1
    u2 = tuple(reversed(d.u2)) if fu2 else d.u2
    v1 = tuple(reversed(d.v1)) if fv1 else d.v1
    v2 = tuple(reversed(d.v2)) if fv2 else d.v2
    signs = dict(d.signs)
    flipped: set[int] = set()
    if fu1:
        flipped.symmetric_difference_update(d.u1)
    if fu2:
        flipped.symmetric_difference_update(d.u2)
    if fv1:
        flipped.symmetric_difference_update(d.v1)
    if fv2:
        flipped.symmetric_difference_update(d.v2)
    for x in flipped:
        signs[x] = -signs[x]
    return HeegaardDiagram(d.vertex_count, u1, u2, v1, v2, signs)


def orientation_variants(d: HeegaardDiagram):
    """All sixteen curve-orientation choices, identity first."""
    for mask in range(16):
        flips = tuple(bool(mask & (1 << i)) for i in range(4))
        yield flips, reorient(d, flips)


def parse_diagram(text: str, validate: bool = True) -> HeegaardDiagram:
    """Parse the diagram file format; raises structured errors."""
    rows: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise DiagramSyntaxError("empty diagram file")
    lineno, head = rows[0]
    m = re.fullmatch(r"vertices\s+(\d+)", head)
    if not m:
        raise DiagramSyntaxError("expected 'vertices N'", line=lineno)
    n = int(m.group(1))
    if len(rows) != 5:
        raise DiagramSyntaxError(
            f"expected 4 curve lines after the header, found {len(rows) - 1}",
            line=rows[-1][0],
        )
    curves: dict[str, tuple[int, ...]] = {}
    signs: dict[int, int] = {}
    for expected, (lineno, line) in zip(CURVE_NAMES, rows[1:]):
        m = re.fullmatch(rf"{expected}:\s*(.*)", line)
        if not m:
            raise DiagramSyntaxError(f"expected '{expected}: ...'", line=lineno)
        body = m.group(1).strip()
        toks = body.split() if body else []
        seq = []
        for tok in toks:
            if expected.startswith("u"):
                if not tok.isdigit():
                    raise DiagramSyntaxError(
                        f"bad vertex id {tok!r} on {expected}", line=lineno
                    )
                seq.append(int(tok))
            else:
                mv = re.fullmatch(r"(\d+)([+-])", tok)
                if not mv:
                    raise DiagramSyntaxError(
                        f"bad signed vertex token {tok!r} on {expected}", line=lineno
                    )
                x = int(mv.group(1))
                s = 1 if mv.group(2) == "+" else -1
                if x in signs:
                    raise DuplicateVertexError(
                        f"vertex {x} appears twice in the v-family"
                    )
                signs[x] = s
                seq.append(x)
        curves[expected] = tuple(seq)
    return HeegaardDiagram(
        n, curves["u1"], curves["u2"], curves["v1"], curves["v2"], signs,
        validate=validate,
    )


def trace_faces(d: HeegaardDiagram) -> list[Region]:
    """All complementary regions of the diagram (each a disk by tracing)."""
    return d.regions()


def find_bigons(d: HeegaardDiagram) -> list[Region]:
    return d.find_bigons()


def _drop_crossings(d: HeegaardDiagram, dead: set[int]) -> HeegaardDiagram:
    """Remove crossings and renumber ids to 1..N' preserving order."""
    keep = sorted(x for x in range(1, d.vertex_count + 1) if x not in dead)
    newid = {x: i + 1 for i, x in enumerate(keep)}

    def strip(curve):
        return tuple(newid[x] for x in curve if x not in dead)

    signs = {newid[x]: s for x, s in d.signs.items() if x not in dead}
    return HeegaardDiagram(
        len(keep), strip(d.u1), strip(d.u2), strip(d.v1), strip(d.v2), signs
    )


def remove_bigon(d: HeegaardDiagram, region: Region) -> HeegaardDiagram:
    """Cancel the two crossings of a bigon face (inverse of a finger move)."""
    if region.size != 2:
        raise NotTightError("region is not a bigon")
    face = d.complex.faces()[region.id]
    xs = {d.complex.dart_start(dart) for dart in face.darts}
    return _drop_crossings(d, xs)


def tighten(d: HeegaardDiagram) -> HeegaardDiagram:
    """Remove bigon faces until none remain (deterministic, lowest id first)."""
    while True:
        bigons = d.find_bigons()
        if not bigons:
            return d
        d = remove_bigon(d, bigons[0])
