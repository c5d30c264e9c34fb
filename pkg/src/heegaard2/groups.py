"""Region labelling, group presentation extraction, and the word oracle.

Labelling rules (fixed orientation conventions, see :mod:`complexes`):

* across an arc of u_i whose positive normal points from region p into
  region q, the labels satisfy ``label(q) = label(p) * g_i``;
* across an arc of v_j whose positive normal points from p into q,
  ``label(q) = h_j * label(p)``.

With the face-on-left tracing convention, the plus side of an arc is the
face containing its forward dart.  The two rules commute around every
crossing, so labels propagated along a spanning tree of the region
adjacency graph are well defined; every non-tree arc contributes a closure
defect, and the defect words are exactly the relators of a presentation of
the ambient group on the four generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import HeegaardDiagram
from .errors import BudgetExceededError
from .words import (
    EMPTY,
    Word,
    abelianization,
    cyclic_reduce,
    format_word,
    inv,
    mul,
    reduce_word,
)


@dataclass(frozen=True)
class GroupPresentation:
    relators: tuple[Word, ...]
    generators: tuple[str, ...] = ("g1", "g2", "h1", "h2")

    def describe(self) -> dict:
        return {
            "generators": list(self.generators),
            "relators": [format_word(r) for r in self.relators],
        }


@dataclass
class RegionLabeling:
    base: int
    labels: dict[int, Word]
    defects: tuple[tuple[object, Word], ...] = ()

    def word(self, region_id: int) -> Word:
        return self.labels[region_id]


def _rule_words(d: HeegaardDiagram, arc) -> tuple[int, int, Word, str]:
    """(minus_face, plus_face, generator word, rule kind) for an arc."""
    fam, ci, _k = arc
    plus = d.complex.face_of(arc + (1,))
    minus = d.complex.face_of(arc + (-1,))
    gen: Word = (ci + 1,) if fam == "u" else (ci + 3,)
    return minus, plus, gen, fam


def _propagate(d: HeegaardDiagram, label_of: dict[int, Word], arc) -> tuple[int, Word] | None:
    """If exactly one side of the arc is labelled, return the other side's label."""
    minus, plus, gen, fam = _rule_words(d, arc)
    if plus in label_of and minus not in label_of:
        if fam == "u":
            return minus, mul(label_of[plus], inv(gen))
        return minus, mul(inv(gen), label_of[plus])
    if minus in label_of and plus not in label_of:
        if fam == "u":
            return plus, mul(label_of[minus], gen)
        return plus, mul(gen, label_of[minus])
    return None


def arc_defect(d: HeegaardDiagram, label_of: dict[int, Word], arc) -> Word:
    """Closure defect of a fully labelled arc: trivial iff the rule holds."""
    minus, plus, gen, fam = _rule_words(d, arc)
    expected = mul(label_of[minus], gen) if fam == "u" else mul(gen, label_of[minus])
    return mul(inv(expected), label_of[plus])


def region_words(d: HeegaardDiagram, base: int = 0) -> RegionLabeling:
    """Label every region by breadth-first propagation from ``base``.

    Tree arcs satisfy the rules exactly; the defect of every non-tree arc is
    recorded (these are relators, so a nonzero defect is not an error).
    """
    d.require_tight()
    faces = d.complex.faces()
    if not 0 <= base < len(faces):
        raise ValueError(f"no region {base}")
    label_of: dict[int, Word] = {base: EMPTY}
    arcs = sorted(d.complex.arcs())
    frontier = True
    while frontier:
        frontier = False
        for arc in arcs:
            step = _propagate(d, label_of, arc)
            if step is not None:
                rid, w = step
                label_of[rid] = w
                frontier = True
    defects = []
    for arc in arcs:
        delta = arc_defect(d, label_of, arc)
        if delta:
            defects.append((arc, delta))
    return RegionLabeling(base, label_of, tuple(defects))


def rebase(lab: RegionLabeling, new_base: int) -> RegionLabeling:
    """Left-translate all labels so the new base region gets the empty word."""
    if new_base not in lab.labels:
        raise ValueError(f"no region {new_base}")
    delta = inv(lab.labels[new_base])
    labels = {rid: mul(delta, w) for rid, w in lab.labels.items()}
    return RegionLabeling(new_base, labels, lab.defects)


def presentation(d: HeegaardDiagram, base: int = 0) -> GroupPresentation:
    """Four-generator presentation from the labelling closure defects."""
    lab = region_words(d, base)
    relators = []
    seen = set()
    for _arc, delta in lab.defects:
        r = cyclic_reduce(reduce_word(delta))
        if not r:
            continue
        key = min(min(r[i:] + r[:i] for i in range(len(r))),
                  min((w := inv(r))[i:] + w[:i] for i in range(len(r))))
        if key not in seen:
            seen.add(key)
            relators.append(r)
    return GroupPresentation(tuple(relators))


# ---------------------------------------------------------------------------
# integer linear algebra for homology


def smith_normal_form(rows: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix."""
    m = [list(r) for r in rows]
    if not m:
        return []
    nrows, ncols = len(m), len(m[0])
    diag = []
    r = c = 0
    while r < nrows and c < ncols:
        # find a pivot with the smallest nonzero absolute value
        pivot = None
        for i in range(r, nrows):
            for j in range(c, ncols):
                if m[i][j] != 0 and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        m[r], m[pi] = m[pi], m[r]
        for row in m:
            row[c], row[pj] = row[pj], row[c]
        again = True
        while again:
            again = False
            for i in range(r + 1, nrows):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    for j in range(c, ncols):
                        m[i][j] -= q * m[r][j]
                    if m[i][c]:
                        m[r], m[i] = m[i], m[r]
                        again = True
            for j in range(c + 1, ncols):
                col_nonzero = m[r][j]
                if col_nonzero:
                    q = m[r][j] // m[r][c]
                    for i in range(r, nrows):
                        m[i][j] -= q * m[i][c]
                    if m[r][j]:
                        for i in range(nrows):
                            m[i][c], m[i][j] = m[i][j], m[i][c]
                        again = True
        diag.append(abs(m[r][c]))
        r += 1
        c += 1
    # enforce divisibility d1 | d2 | ...
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            if a == 0:
                diag[i], diag[j] = b, a
                continue
            import math

            g = math.gcd(a, b)
            l = a * b // g if g else 0
            diag[i], diag[j] = g, l
    return diag


def homology_invariants(p: GroupPresentation) -> list[int]:
    """Elementary divisors (> 1) and zero ranks of the abelianization."""
    rows = [list(abelianization(r)) for r in p.relators]
    diag = smith_normal_form(rows)
    diag = [x for x in diag if x != 1]
    free_rank = 4 - len(smith_normal_form([list(abelianization(r)) for r in p.relators]))
    return diag + [0] * free_rank


def homology_order(p: GroupPresentation) -> int | None:
    """|H1| when finite, else None."""
    inv_factors = homology_invariants(p)
    if any(x == 0 for x in inv_factors):
        return None
    order = 1
    for x in inv_factors:
        order *= x
    return order


# ---------------------------------------------------------------------------
# tri-valued word oracle


@dataclass(frozen=True)
class TriValue:
    value: str  # "Trivial" | "Nontrivial" | "Unknown"
    certificate: object = None

    @property
    def is_trivial(self) -> bool:
        return self.value == "Trivial"

    @property
    def is_nontrivial(self) -> bool:
        return self.value == "Nontrivial"

    @property
    def is_unknown(self) -> bool:
        return self.value == "Unknown"


TRIVIAL = "Trivial"
NONTRIVIAL = "Nontrivial"
UNKNOWN = "Unknown"


@dataclass
class Budget:
    max_coset_rows: int = 20000
    max_ball_radius: int = 8
    max_conjugates: int = 4
    max_conjugator_len: int = 2
    max_conjugate_nodes: int = 20000
    max_dehn_steps: int = 10000


@dataclass
class WordOracle:
    """Layered triviality decision for words in a fixed presentation.

    Layers: free reduction; abelianization; Dehn's algorithm under the
    metric small-cancellation condition; bounded coset enumeration (reused
    across queries when it completes); bounded search over products of
    conjugates of relators.  ``Unknown`` is the honest fallback.
    """

    pres: GroupPresentation
    budget: Budget = field(default_factory=Budget)

    def __post_init__(self):
        self._snf_rows = [list(abelianization(r)) for r in self.pres.relators]
        self._symmetrized = _symmetrize(self.pres.relators)
        self._is_c16 = _check_c_sixth(self._symmetrized)
        self._coset_table = None
        self._coset_done = False
        self._cache: dict[Word, TriValue] = {}
        self._quick_only = False

    # -- public -------------------------------------------------------------

    def is_trivial_word(self, w: Word) -> TriValue:
        w = reduce_word(w)
        hit = self._cache.get(w)
        if hit is not None and not (hit.is_unknown and not self._quick_only):
            return hit
        res = self._decide(w, quick=False)
        self._cache[w] = res
        return res

    def quick_is_trivial(self, w: Word) -> TriValue:
        """Cheap layers only (no bounded conjugate-product search)."""
        w = reduce_word(w)
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        res = self._decide(w, quick=True)
        if not res.is_unknown:
            self._cache[w] = res
        return res

    def group_order_if_finite(self) -> int | None:
        self._ensure_cosets()
        if self._coset_done:
            return len(self._coset_table.live())
        return None

    # -- layers ---------------------------------------------------------------

    def _decide(self, w: Word, quick: bool) -> TriValue:
        if not w:
            return TriValue(TRIVIAL, ("free", ()))
        vec = _abelian_residue(self._snf_rows, abelianization(w))
        if vec is not None and any(vec):
            return TriValue(NONTRIVIAL, ("abelianization", tuple(vec)))
        if self._is_c16:
            reduced, steps = _dehn_reduce(w, self._symmetrized, self.budget.max_dehn_steps)
            if reduced is not None:
                if not reduced:
                    return TriValue(TRIVIAL, ("dehn", steps))
                return TriValue(NONTRIVIAL, ("dehn", format_word(reduced)))
        self._ensure_cosets()
        if self._coset_done:
            table = self._coset_table
            if table.trace(0, w) == 0 and all(
                table.trace(i, w) == i for i in table.live()
            ):
                return TriValue(TRIVIAL, ("coset", len(table.live())))
            return TriValue(NONTRIVIAL, ("coset", len(table.live())))
        if quick:
            return TriValue(UNKNOWN, None)
        sched = _conjugate_search(
            w,
            self._symmetrized,
            self.budget.max_conjugates,
            self.budget.max_conjugator_len,
            self.budget.max_conjugate_nodes,
        )
        if sched is not None:
            check = EMPTY
            for x, r in sched:
                check = mul(check, x, r, inv(x))
            if check != w:
                raise AssertionError("conjugate-product certificate failed to verify")
            return TriValue(TRIVIAL, ("schedule", tuple((format_word(x), format_word(r)) for x, r in sched)))
        return TriValue(UNKNOWN, None)

    def _ensure_cosets(self):
        if self._coset_table is None:
            self._coset_table = CosetTable(self.pres.relators, self.budget.max_coset_rows)
            self._coset_done = self._coset_table.run()


def _abelian_residue(rows: list[list[int]], vec) -> list[int] | None:
    """Residue of vec modulo the row lattice; None when undecided.

    Implemented by checking solvability of x * rows = vec over the integers
    via the Smith form of the stacked system; a cheap sufficient test:
    append vec to the rows and compare Smith invariant products.
    """
    base = smith_normal_form([list(r) for r in rows]) if rows else []
    ext = smith_normal_form([list(r) for r in rows] + [list(vec)])
    if base == ext:
        return None  # vec is in the lattice: abelianization cannot distinguish
    return list(vec)


def _symmetrize(relators) -> list[Word]:
    out = set()
    for r in relators:
        r = cyclic_reduce(reduce_word(r))
        if not r:
            continue
        for w in (r, inv(r)):
            for i in range(len(w)):
                out.add(w[i:] + w[:i])
    return sorted(out)


def _check_c_sixth(symmetrized: list[Word]) -> bool:
    """Metric small cancellation C'(1/6) for the symmetrized relator set."""
    if not symmetrized:
        return False
    prefixes: dict[Word, int] = {}
    for r in symmetrized:
        for ln in range(1, len(r)):
            p = r[:ln]
            prefixes[p] = prefixes.get(p, 0) + 1
    for r in symmetrized:
        for ln in range(1, len(r)):
            p = r[:ln]
            # p is a piece when it prefixes two distinct symmetrized words
            count = prefixes.get(p, 0)
            if count > 1 and 6 * ln >= len(r):
                return False
    return True


def _dehn_reduce(w: Word, symmetrized: list[Word], max_steps: int) -> tuple[Word | None, int]:
    """Dehn's algorithm: replace long relator subwords by shorter complements."""
    steps = 0
    by_prefix: dict[Word, list[Word]] = {}
    for r in symmetrized:
        by_prefix.setdefault(r[:1], []).append(r)
    w = reduce_word(w)
    changed = True
    while changed:
        if steps > max_steps:
            return None, steps
        changed = False
        cw = cyclic_reduce(w)
        for shift in range(max(1, len(cw))):
            word = cw[shift:] + cw[:shift]
            for i in range(len(word)):
                for r in by_prefix.get(word[i : i + 1], ()):
                    half = len(r) // 2 + 1
                    seg = word[i : i + half]
                    if len(seg) < half:
                        continue
                    if r[:half] == seg:
                        # replace seg by inverse of the relator remainder
                        rest = inv(r[half:])
                        word = reduce_word(word[:i] + rest + word[i + half:])
                        w = word
                        steps += 1
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
        if not changed:
            w = cw
    return w, steps


def _conjugate_search(
    w: Word, symmetrized: list[Word], max_factors: int, max_conj: int, max_nodes: int
):
    """Node-capped search for w as a product of conjugates of relators."""
    if not symmetrized:
        return None
    conjugators: list[Word] = [EMPTY]
    letters = [1, -1, 2, -2, 3, -3, 4, -4]
    frontier = [EMPTY]
    for _ in range(max_conj):
        nxt = []
        for x in frontier:
            for a in letters:
                y = mul(x, (a,))
                if len(y) == len(x) + 1:
                    nxt.append(y)
        conjugators.extend(nxt)
        frontier = nxt

    limit = len(w) + 2 * max_conj + max(len(r) for r in symmetrized)
    nodes = 0
    seen: set[tuple[Word, int]] = set()

    def dfs(current: Word, factors: int, schedule):
        nonlocal nodes
        if current == w:
            return schedule
        if factors == max_factors or nodes >= max_nodes:
            return None
        key = (current, factors)
        if key in seen:
            return None
        seen.add(key)
        children = []
        for x in conjugators:
            for r in symmetrized:
                nodes += 1
                if nodes >= max_nodes:
                    return None
                cand = mul(current, x, r, inv(x))
                if cand == w:
                    return schedule + [(x, r)]
                if len(cand) <= limit:
                    children.append((cand, x, r))
        for cand, x, r in children:
            found = dfs(cand, factors + 1, schedule + [(x, r)])
            if found is not None:
                return found
        return None

    return dfs(EMPTY, 0, [])


# ---------------------------------------------------------------------------
# bounded Todd-Coxeter coset enumeration


class CosetTable:
    """HLT-style coset enumeration over the trivial subgroup, row-capped."""

    def __init__(self, relators, max_rows: int, subgroup: tuple[Word, ...] = ()):
        self.relators = [cyclic_reduce(reduce_word(r)) for r in relators if r]
        self.max_rows = max_rows
        self.subgroup = subgroup
        # columns: g1 g1^-1 g2 g2^-1 h1 h1^-1 h2 h2^-1
        self.table: list[list[int | None]] = [[None] * 8]
        self.parent = [0]

    @staticmethod
    def _col(a: int) -> int:
        return 2 * (abs(a) - 1) + (0 if a > 0 else 1)

    def _find(self, c: int) -> int:
        while self.parent[c] != c:
            self.parent[c] = self.parent[self.parent[c]]
            c = self.parent[c]
        return c

    def live(self) -> list[int]:
        return [c for c in range(len(self.table)) if self._find(c) == c]

    def _define(self, c: int, col: int) -> int | None:
        if len(self.table) >= self.max_rows:
            return None
        d = len(self.table)
        self.table.append([None] * 8)
        self.parent.append(d)
        self.table[c][col] = d
        self.table[d][col ^ 1] = c
        return d

    def _merge(self, a: int, b: int):
        queue = [(a, b)]
        while queue:
            x, y = queue.pop()
            x, y = self._find(x), self._find(y)
            if x == y:
                continue
            if x > y:
                x, y = y, x
            self.parent[y] = x
            for col in range(8):
                t = self.table[y][col]
                if t is None:
                    continue
                s = self.table[x][col]
                if s is None:
                    self.table[x][col] = t
                    self.table[self._find(t)][col ^ 1] = x
                else:
                    queue.append((s, t))

    def _scan_fill(self, c: int, word: Word) -> bool:
        """Scan word at coset c, defining cosets until the cycle closes.

        Standard HLT behaviour; False when the row budget is exhausted.
        """
        n = len(word)
        f, fi = self._find(c), 0
        b, bi = self._find(c), n
        while fi < bi:
            col = self._col(word[fi])
            nxt = self.table[f][col]
            if nxt is not None:
                f = self._find(nxt)
                fi += 1
                continue
            col_b = self._col(-word[bi - 1])
            nxt_b = self.table[b][col_b]
            if nxt_b is not None:
                b = self._find(nxt_b)
                bi -= 1
                continue
            if bi == fi + 1:
                self.table[f][col] = b
                self.table[b][col ^ 1] = f
                f = b
                fi += 1
                continue
            d = self._define(f, col)
            if d is None:
                return False
            f = self._find(d)
            fi += 1
            b = self._find(b)
        self._merge(f, b)
        return True

    def run(self) -> bool:
        """Enumerate; True when the table closed within the row budget."""
        used_cols = set()
        for r in self.relators:
            for a in r:
                used_cols.add(self._col(a))
                used_cols.add(self._col(-a))
        for w in self.subgroup:
            if not self._scan_fill(0, w):
                return False
        i = 0
        while True:
            while i < len(self.table):
                if self._find(i) != i:
                    i += 1
                    continue
                for r in self.relators:
                    if not self._scan_fill(i, r):
                        return False
                    if self._find(i) != i:
                        break
                i += 1
            # fill a hole on a relator-constrained column; the new coset is
            # appended past the scan pointer, so the pass resumes there.  A
            # hole on an unconstrained column means a free factor (infinite).
            hole = None
            for c in self.live():
                for col in range(8):
                    if self.table[c][col] is None:
                        if col not in used_cols:
                            return False
                        hole = (c, col)
                        break
                if hole:
                    break
            if hole is None:
                return True
            if self._define(*hole) is None:
                return False

    def trace(self, c: int, w: Word) -> int | None:
        cur = self._find(c)
        for a in w:
            nxt = self.table[cur][self._col(a)]
            if nxt is None:
                return None
            cur = self._find(nxt)
        return cur
