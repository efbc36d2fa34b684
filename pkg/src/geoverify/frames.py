"""Free-group rope words for hanging a frame on n nails.

A rope path is a word in the free group on one generator per nail, stored
freely reduced.  The frame hangs iff the word is nontrivial, and filling
nail i (deleting its generator, then reducing) must kill the word; nested
commutators achieve this for any n.
"""

from __future__ import annotations

from string import ascii_uppercase

Letter = tuple[int, int]  # (generator index >= 1, sign +1/-1)
Word = tuple[Letter, ...]

EMPTY: Word = ()


def reduce(word) -> Word:
    """Freely reduce: cancel adjacent inverse pairs until none remain."""
    stack: list[Letter] = []
    for gen, sign in word:
        if sign not in (1, -1) or gen < 1:
            raise ValueError(f"bad letter {(gen, sign)!r}")
        if stack and stack[-1][0] == gen and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((gen, sign))
    return tuple(stack)


def invert(word) -> Word:
    return tuple((gen, -sign) for gen, sign in reversed(word))


def concat(*words) -> Word:
    out: list[Letter] = []
    for w in words:
        out.extend(w)
    return reduce(out)


def commutator(u, v) -> Word:
    return concat(u, v, invert(u), invert(v))


def generator(i: int) -> Word:
    if i < 1:
        raise ValueError("generators are numbered from 1")
    return ((i, 1),)


def nail_word(n: int, scheme: str = "left-nested") -> Word:
    """Rope word for n nails.

    "left-nested" folds generators in one by one; "balanced" pairs them as
    a binary tree.  Either way the word is nontrivial but dies when any
    single generator is deleted.
    """
    if n < 1:
        raise ValueError("need at least one nail")
    gens = [generator(i) for i in range(1, n + 1)]
    if scheme == "left-nested":
        word = gens[0]
        for g in gens[1:]:
            word = commutator(word, g)
        return word
    if scheme == "balanced":

        def build(block: list[Word]) -> Word:
            if len(block) == 1:
                return block[0]
            mid = (len(block) + 1) // 2
            return commutator(build(block[:mid]), build(block[mid:]))

        return build(gens)
    raise ValueError(f"unknown scheme {scheme!r}")


def drop_nail(word, i: int) -> Word:
    """Delete every occurrence of generator i, then reduce (fill nail i)."""
    if i < 1:
        raise ValueError("generators are numbered from 1")
    return reduce(tuple(l for l in word if l[0] != i))


def format_word(word) -> str:
    """Render like "A B A' B'"; trailing apostrophe marks an inverse."""
    parts = []
    for gen, sign in word:
        if gen > len(ascii_uppercase):
            raise ValueError("printing supports at most 26 generators")
        parts.append(ascii_uppercase[gen - 1] + ("" if sign == 1 else "'"))
    return " ".join(parts)


def parse_word(text: str) -> Word:
    """Parse the format_word grammar; whitespace between letters optional."""
    letters: list[Letter] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch not in ascii_uppercase:
            raise ValueError(f"unexpected character {ch!r} at position {i}")
        gen = ascii_uppercase.index(ch) + 1
        sign = 1
        if i + 1 < len(text) and text[i + 1] == "'":
            sign = -1
            i += 1
        letters.append((gen, sign))
        i += 1
    return reduce(letters)
