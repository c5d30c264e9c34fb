"""Freely reduced words over the fixed four-generator alphabet.

A word is a tuple of nonzero ints: +1,+2,+3,+4 stand for g1,g2,h1,h2 and a
negative value is the inverse letter.  All public helpers return freely
reduced tuples, so equality of tuples is equality in the free group.
"""

from __future__ import annotations

from .errors import DiagramSyntaxError

Word = tuple[int, ...]

GENERATOR_NAMES = ("g1", "g2", "h1", "h2")
G1, G2, H1, H2 = 1, 2, 3, 4
EMPTY: Word = ()

# shortlex letter ranking: g1 < g1^-1 < g2 < g2^-1 < h1 < h1^-1 < h2 < h2^-1
_LETTER_RANK = {1: 0, -1: 1, 2: 2, -2: 3, 3: 4, -3: 5, 4: 6, -4: 7}


def reduce_word(letters) -> Word:
    """Freely reduce a letter sequence (cancel adjacent x, x^-1)."""
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def mul(*words: Word) -> Word:
    out: list[int] = []
    for w in words:
        for a in w:
            if out and out[-1] == -a:
                out.pop()
            else:
                out.append(a)
    return tuple(out)


def inv(w: Word) -> Word:
    return tuple(-a for a in reversed(w))


def conjugate(w: Word, x: Word) -> Word:
    """x * w * x^-1."""
    return mul(x, w, inv(x))


def cyclic_reduce(w: Word) -> Word:
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def cyclic_perms(w: Word):
    for i in range(len(w)):
        yield w[i:] + w[:i]


def is_reduced(letters) -> bool:
    return all(letters[i] != -letters[i + 1] for i in range(len(letters) - 1))


def shortlex_key(w: Word):
    return (len(w), tuple(_LETTER_RANK[a] for a in w))


def shortlex_rep(w: Word) -> Word:
    """The shortlex-smaller of w and w^-1 (class representative for signs)."""
    wi = inv(w)
    return w if shortlex_key(w) <= shortlex_key(wi) else wi


def letter_name(a: int) -> str:
    name = GENERATOR_NAMES[abs(a) - 1]
    return name if a > 0 else name + "^-1"


def format_word(w: Word) -> str:
    if not w:
        return "1"
    return " ".join(letter_name(a) for a in w)


def parse_word(text: str) -> Word:
    """Parse the CLI word syntax, e.g. ``g1 g2^-1 h1`` (powers only +-1)."""
    text = text.strip()
    if text in ("", "1"):
        return EMPTY
    letters = []
    for tok in text.split():
        base, power = tok, 1
        if "^" in tok:
            base, ptext = tok.split("^", 1)
            if ptext == "-1":
                power = -1
            elif ptext == "1":
                power = 1
            else:
                raise DiagramSyntaxError(f"word power must be 1 or -1, got {tok!r}")
        if base not in GENERATOR_NAMES:
            raise DiagramSyntaxError(f"unknown generator {base!r}")
        letters.append(power * (GENERATOR_NAMES.index(base) + 1))
    return reduce_word(letters)


def generator(index: int, sign: int = 1) -> Word:
    """Single-letter word; index 1..4, sign +-1."""
    return (sign * index,)


def abelianization(w: Word) -> tuple[int, int, int, int]:
    vec = [0, 0, 0, 0]
    for a in w:
        vec[abs(a) - 1] += 1 if a > 0 else -1
    return tuple(vec)
