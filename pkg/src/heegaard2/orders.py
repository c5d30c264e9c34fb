"""Truncated left orders: positive cones on a ball in the presented group.

A :class:`PartialLeftOrder` assigns a sign to every element of the radius-L
ball of the free group, after identifying elements that certified relator
rewriting proves equal.  The axioms enforced inside the ball:

* sign(x^-1) is the opposite of sign(x);
* if x and y are positive and the reduced product xy lies in the ball,
  then xy is positive (the positive cone is a subsemigroup);
* elements certified trivial get sign Trivial, all others get a strict sign.

A consistent assignment restricts any genuine left order satisfying the
constraints, so exhaustion of the search space is a finite obstruction
certificate (relative to the imposed constraints and certified equalities).

Signs of words beyond the ball are decided when the word (or its inverse)
factors into contiguous positive chunks: a product of positives is
positive in any left order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    BudgetExceededError,
    ObstructionError,
    UndecidedComparisonError,
)
from .groups import GroupPresentation, TriValue, WordOracle
from .words import EMPTY, Word, inv, mul, reduce_word, shortlex_key

POSITIVE = "Positive"
NEGATIVE = "Negative"
TRIVIAL = "Trivial"
UNKNOWN = "Unknown"

DEFAULT_CONSTRAINTS: tuple[tuple[Word, str], ...] = (
    ((1,), POSITIVE),
    ((2,), POSITIVE),
    ((3,), POSITIVE),
    ((4,), POSITIVE),
)


def ball(radius: int) -> list[Word]:
    """Freely reduced words of length <= radius, in shortlex order."""
    out: list[Word] = [EMPTY]
    frontier: list[Word] = [EMPTY]
    letters = [1, -1, 2, -2, 3, -3, 4, -4]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for a in letters:
                y = w + (a,)
                if not w or w[-1] != -a:
                    nxt.append(y)
        out.extend(nxt)
        frontier = nxt
    return sorted(out, key=shortlex_key)


class BallClasses:
    """Ball elements modulo certified relator equalities.

    Rewriting rules come from splitting each symmetrized relator r = s t^-1
    with s the longer half; then s = t in the group, and applying the rule
    inside ball words yields certified equal pairs.  Certified-trivial
    elements are merged with the identity class.
    """

    def __init__(self, pres: GroupPresentation, radius: int, oracle: WordOracle | None):
        self.radius = radius
        self.elements = ball(radius)
        self.index = {w: i for i, w in enumerate(self.elements)}
        self.parent = list(range(len(self.elements)))
        self.oracle = oracle
        rules = _rewrite_rules(pres)
        for w in self.elements:
            for lhs, rhs in rules:
                n = len(lhs)
                for i in range(len(w) - n + 1):
                    if w[i : i + n] == lhs:
                        y = reduce_word(w[:i] + rhs + w[i + n:])
                        if len(y) <= radius:
                            self._union(w, y)
        if oracle is not None:
            for w in self.elements:
                if w and self.find(w) != self.find(EMPTY):
                    if oracle.quick_is_trivial(w).is_trivial:
                        self._union(w, EMPTY)

    def _union(self, a: Word, b: Word):
        ra, rb = self._find_i(self.index[a]), self._find_i(self.index[b])
        if ra != rb:
            # keep the shortlex-smaller representative
            if ra > rb:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def _find_i(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def find(self, w: Word) -> int:
        return self._find_i(self.index[w])

    def rep(self, w: Word) -> Word:
        return self.elements[self.find(w)]

    def contains(self, w: Word) -> bool:
        return w in self.index

    def class_ids(self) -> list[int]:
        return sorted({self._find_i(i) for i in range(len(self.elements))})


def _rewrite_rules(pres: GroupPresentation) -> list[tuple[Word, Word]]:
    rules = []
    seen = set()
    syms = set()
    for r in pres.relators:
        for w in (r, inv(r)):
            for i in range(len(w)):
                syms.add(w[i:] + w[:i])
    for r in sorted(syms):
        half = (len(r) + 1) // 2
        lhs, rhs = r[:half], inv(r[half:])
        if lhs and (lhs, rhs) not in seen:
            seen.add((lhs, rhs))
            rules.append((lhs, rhs))
    return rules


@dataclass
class PartialLeftOrder:
    depth: int
    presentation: GroupPresentation
    classes: BallClasses
    sign_of_class: dict[int, str]
    constraints: tuple[tuple[Word, str], ...]
    oracle: WordOracle | None = None
    _sign_cache: dict[Word, str] = field(default_factory=dict)

    @property
    def positives(self) -> list[Word]:
        out = [
            self.classes.elements[c]
            for c, s in self.sign_of_class.items()
            if s == POSITIVE
        ]
        return sorted(out, key=shortlex_key)

    # -- queries ------------------------------------------------------------

    def sign(self, w: Word) -> str:
        w = reduce_word(w)
        hit = self._sign_cache.get(w)
        if hit is None:
            hit = self._sign(w)
            self._sign_cache[w] = hit
        return hit

    def _sign(self, w: Word) -> str:
        if not w:
            return TRIVIAL
        if self.oracle is not None and len(w) <= 2 * self.depth:
            if self.oracle.quick_is_trivial(w).is_trivial:
                return TRIVIAL
        direct = self._ball_sign(w)
        if direct != UNKNOWN:
            return direct
        if self._factors_positive(w):
            return POSITIVE
        if self._factors_positive(inv(w)):
            return NEGATIVE
        return UNKNOWN

    def _ball_sign(self, w: Word) -> str:
        if self.classes.contains(w):
            c = self.classes.find(w)
            s = self.sign_of_class.get(c)
            if s is not None:
                return s
        return UNKNOWN

    def _factors_positive(self, w: Word) -> bool:
        """Greedy dynamic program: w as a concatenation of positive chunks."""
        n = len(w)
        ok = [False] * (n + 1)
        ok[0] = True
        for i in range(1, n + 1):
            for j in range(max(0, i - self.depth), i):
                if ok[j] and self._ball_sign(w[j:i]) == POSITIVE:
                    ok[i] = True
                    break
        return ok[n]

    def describe(self) -> dict:
        from .words import format_word

        return {
            "depth": self.depth,
            "constraints": [(format_word(w), s) for w, s in self.constraints],
            "positives": [format_word(w) for w in self.positives],
        }


def search_positive_cone(
    pres: GroupPresentation,
    depth: int,
    constraints: tuple[tuple[Word, str], ...] = DEFAULT_CONSTRAINTS,
    oracle: WordOracle | None = None,
    node_budget: int = 2_000_000,
) -> PartialLeftOrder:
    """Deterministic-first consistent sign assignment on the ball.

    Assigns classes in shortlex order of their representatives, trying
    Positive before Negative, with full propagation of the semigroup and
    inverse axioms.  Raises ObstructionError when the space is exhausted
    and BudgetExceededError when the node budget is hit first.
    """
    classes = BallClasses(pres, depth, oracle)
    n_elems = len(classes.elements)
    id_class = classes.find(EMPTY)

    # precompute per-class: inverse class, and all in-ball products
    class_ids = classes.class_ids()
    inv_of: dict[int, int] = {}
    for c in class_ids:
        w = classes.elements[c]
        wi = inv(w)
        if classes.contains(wi):
            inv_of[c] = classes.find(wi)
    products: list[tuple[int, int, int]] = []
    by_pair: dict[tuple[int, int], int] = {}
    for w in classes.elements:
        cw = classes.find(w)
        for y in classes.elements:
            if not w or not y:
                continue
            z = mul(w, y)
            if len(z) <= depth:
                key = (cw, classes.find(y))
                if key not in by_pair:
                    by_pair[key] = classes.find(z)
                    products.append((key[0], key[1], by_pair[key]))

    trivial_classes = {id_class}
    sign_of: dict[int, str] = {id_class: TRIVIAL}

    def propagate(trail: list[tuple[int, str]]) -> bool:
        """Close the current assignment under the axioms; False on clash."""
        changed = True
        while changed:
            changed = False
            for c, ci in inv_of.items():
                sc, sci = sign_of.get(c), sign_of.get(ci)
                want = None
                if sc == POSITIVE:
                    want = NEGATIVE
                elif sc == NEGATIVE:
                    want = POSITIVE
                elif sc == TRIVIAL:
                    want = TRIVIAL
                if want is not None:
                    if sci is None:
                        sign_of[ci] = want
                        trail.append((ci, want))
                        changed = True
                    elif sci != want:
                        return False
            for a, b, c in products:
                sa, sb = sign_of.get(a), sign_of.get(b)
                if sa == POSITIVE and sb == POSITIVE:
                    sc = sign_of.get(c)
                    if sc is None:
                        sign_of[c] = POSITIVE
                        trail.append((c, POSITIVE))
                        changed = True
                    elif sc != POSITIVE:
                        return False
                if sa == TRIVIAL and sb is not None:
                    sc = sign_of.get(c)
                    if sc is None:
                        sign_of[c] = sb
                        trail.append((c, sb))
                        changed = True
                    elif sc != sb:
                        return False
                if sb == TRIVIAL and sa is not None:
                    sc = sign_of.get(c)
                    if sc is None:
                        sign_of[c] = sa
                        trail.append((c, sa))
                        changed = True
                    elif sc != sa:
                        return False
        return True

    # seed constraints
    trail0: list[tuple[int, str]] = []
    for w, s in constraints:
        w = reduce_word(w)
        if not classes.contains(w):
            raise ValueError(
                f"constraint word of length {len(w)} exceeds cone depth {depth}"
            )
        c = classes.find(w)
        cur = sign_of.get(c)
        if cur is not None and cur != s:
            raise ObstructionError(
                "constraints are contradictory on the ball", witness=(w, cur, s)
            )
        if cur is None:
            sign_of[c] = s
            trail0.append((c, s))
    if not propagate(trail0):
        raise ObstructionError("constraint propagation is inconsistent")

    order_todo = [c for c in class_ids if c not in sign_of]
    nodes = 0

    def assign(i: int) -> bool:
        nonlocal nodes
        while i < len(order_todo) and order_todo[i] in sign_of:
            i += 1
        if i == len(order_todo):
            return True
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError(
                f"cone search exceeded {node_budget} nodes at depth {depth}"
            )
        c = order_todo[i]
        for s in (POSITIVE, NEGATIVE):
            trail: list[tuple[int, str]] = [(c, s)]
            sign_of[c] = s
            if propagate(trail) and assign(i + 1):
                return True
            for cc, _ in trail:
                sign_of.pop(cc, None)
        return False

    if not assign(0):
        raise ObstructionError(
            f"no positive cone at depth {depth} under the given constraints"
        )
    return PartialLeftOrder(
        depth=depth,
        presentation=pres,
        classes=classes,
        sign_of_class=dict(sign_of),
        constraints=tuple(constraints),
        oracle=oracle,
    )


def minimal_region(labeling, order: PartialLeftOrder) -> int:
    """Region whose label is order-minimal; smallest id breaks ties.

    Every pairwise comparison must be decided, else the caller should deepen
    the cone (UndecidedComparisonError).
    """
    ids = sorted(labeling.labels)
    best = ids[0]
    for rid in ids[1:]:
        w = mul(inv(labeling.labels[best]), labeling.labels[rid])
        s = order.sign(w)
        if s == UNKNOWN:
            raise UndecidedComparisonError(
                f"comparison of regions {best} and {rid} undecided at depth "
                f"{order.depth}"
            )
        if s == NEGATIVE:
            best = rid
    # verify minimality against all regions (catches non-total quirks)
    for rid in ids:
        if rid == best:
            continue
        s = order.sign(mul(inv(labeling.labels[best]), labeling.labels[rid]))
        if s == UNKNOWN:
            raise UndecidedComparisonError(
                f"comparison of regions {best} and {rid} undecided at depth "
                f"{order.depth}"
            )
        if s == NEGATIVE:
            raise ObstructionError(
                "sign queries are not consistent with a total order on labels"
            )
    return best
