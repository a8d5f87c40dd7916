"""Compositions, binary words and the combinatorics around them.

A composition is a tuple of positive integers ``(a_1, ..., a_r)``.  A binary
word is a string over ``'0'``/``'1'``; the word of a composition is
``0^{a_1-1} 1 ... 0^{a_r-1} 1``.  Both representations are immutable, so
everything here is a pure function.
"""
from __future__ import annotations

import itertools
import re
from typing import Iterable, NamedTuple, Sequence

Composition = tuple[int, ...]

EMPTY = ""
ATOMS = frozenset({"0", "1", EMPTY})


def check_word(w: str) -> str:
    if not isinstance(w, str) or any(ch not in "01" for ch in w):
        raise ValueError(f"not a binary word: {w!r}")
    return w


def weight(w: str) -> int:
    return len(w)


def depth(w: str) -> int:
    return w.count("1")


def is_admissible_word(w: str) -> bool:
    """Empty, or starts with 0 and ends with 1."""
    return w == EMPTY or (w[0] == "0" and w[-1] == "1")


def is_admissible(c: Sequence[int]) -> bool:
    return len(c) == 0 or c[0] >= 2


def word_of_composition(c: Sequence[int]) -> str:
    if any(int(a) < 1 for a in c):
        raise ValueError(f"composition parts must be positive: {tuple(c)}")
    return "".join("0" * (a - 1) + "1" for a in c)


def composition_of_word(w: str) -> Composition:
    """Inverse of :func:`word_of_composition`; ``w`` must be empty or end in 1."""
    check_word(w)
    if w and w[-1] != "1":
        raise ValueError(f"word {w!r} ends in 0 and has no composition")
    return tuple(len(block) + 1 for block in w.split("1")[:-1])


def dual(w: str) -> str:
    """Reverse the word and swap 0 <-> 1."""
    return w[::-1].translate(str.maketrans("01", "10"))


def dual_composition(c: Sequence[int]) -> Composition:
    return composition_of_word(dual(word_of_composition(c)))


class Decomposition(NamedTuple):
    """Unique split ``w = 0 1^{b-1} v 0^{a-1} 1`` of an admissible word."""

    v: str
    a: int
    b: int

    @property
    def init(self) -> str:
        return "0" + "1" * (self.b - 1) + self.v

    @property
    def fin(self) -> str:
        return self.v + "0" * (self.a - 1) + "1"

    @property
    def mid(self) -> str:
        return self.v

    def word(self) -> str:
        return "0" + "1" * (self.b - 1) + self.v + "0" * (self.a - 1) + "1"


def decompose(w: str) -> Decomposition:
    check_word(w)
    if not w or not is_admissible_word(w):
        raise ValueError(f"decompose needs a non-empty admissible word, got {w!r}")
    inner = w[1:-1]
    ones = len(inner) - len(inner.lstrip("1"))
    inner = inner[ones:]
    zeros = len(inner) - len(inner.rstrip("0"))
    v = inner[: len(inner) - zeros]
    return Decomposition(v=v, a=zeros + 1, b=ones + 1)


def admissible_words(k: int) -> list[str]:
    """Non-empty admissible words of weight exactly ``k``, lexicographic."""
    if k < 2:
        return []
    return ["0" + "".join(mid) + "1" for mid in itertools.product("01", repeat=k - 2)]


def enumerate_admissible(max_weight: int) -> list[str]:
    """All non-empty admissible words of weight <= max_weight, weight-major."""
    out: list[str] = []
    for k in range(2, max_weight + 1):
        out.extend(admissible_words(k))
    return out


def admissible_subwords(w: str) -> set[str]:
    """Contiguous subwords ``w[i..j]`` with ``w[i] = 0`` and ``w[j] = 1``."""
    zeros = [i for i, ch in enumerate(w) if ch == "0"]
    ones = [j for j, ch in enumerate(w) if ch == "1"]
    return {w[i : j + 1] for i in zeros for j in ones if j > i}


def closure(words: Iterable[str]) -> list[str]:
    """Smallest set containing ``words`` and stable under init/fin/mid parts.

    Atoms ``0``, ``1`` and the empty word are left out.  The result is sorted
    weight-major then lexicographically.
    """
    seen: set[str] = set()
    stack = [check_word(w) for w in words]
    while stack:
        w = stack.pop()
        if w in seen or w in ATOMS:
            continue
        seen.add(w)
        d = decompose(w)
        stack.extend((d.init, d.fin, d.mid))
    return sorted(seen, key=lambda u: (len(u), u))


def canonical_rep(w: str) -> str:
    """Lexicographically smaller of ``w`` and its dual."""
    return min(w, dual(w))


def representatives(k: int) -> list[str]:
    """Duality representatives among the admissible words of weight ``k``."""
    return [w for w in admissible_words(k) if canonical_rep(w) == w]


_COMP_RE = re.compile(r"^\(\s*(\d+(\s*,\s*\d+)*)?\s*,?\s*\)$")


def parse_composition(text: str) -> Composition:
    """Parse ``"(3,1)"`` / ``"3,1"`` / ``"()"`` or a binary word like ``"0011"``."""
    s = text.strip()
    if s and set(s) <= {"0", "1"} and len(s) > 1 or s in ("0", "1"):
        return composition_of_word(s)
    if not s.startswith("("):
        s = f"({s})"
    if not _COMP_RE.match(s):
        raise ValueError(f"cannot parse composition {text!r}")
    body = s[1:-1].strip().rstrip(",")
    parts = tuple(int(p) for p in body.split(",")) if body else ()
    if any(p < 1 for p in parts):
        raise ValueError(f"composition parts must be positive: {text!r}")
    return parts


def format_composition(c: Sequence[int]) -> str:
    return "(" + ",".join(str(a) for a in c) + ")"
