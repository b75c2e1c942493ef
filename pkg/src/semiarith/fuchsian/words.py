# src/semiarith/fuchsian/words.py
"""Words in the generators of a finitely generated group.

A word is a freely reduced tuple of syllables (generator index, exponent),
adjacent syllables never share an index. Length counts letters, so
``a^3 b^-1`` has length 4.
"""

from __future__ import annotations

import random
import re
from collections.abc import Iterable, Iterator, Sequence

from ..core.errors import DocumentError

Syllable = tuple[int, int]


class Word:
    """A freely reduced word."""

    __slots__ = ("syllables",)

    def __init__(self, syllables: Iterable[Syllable] = ()) -> None:
        reduced: list[list[int]] = []
        for index, exponent in syllables:
            if index < 0:
                raise ValueError(f"generator index must be non-negative, got {index}")
            if exponent == 0:
                continue
            if reduced and reduced[-1][0] == index:
                reduced[-1][1] += exponent
                if reduced[-1][1] == 0:
                    reduced.pop()
            else:
                reduced.append([index, exponent])
        self.syllables: tuple[Syllable, ...] = tuple((i, e) for i, e in reduced)

    @classmethod
    def generator(cls, index: int, exponent: int = 1) -> Word:
        return cls([(index, exponent)])

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> Word:
        """From signed letters: +(i+1) for g_i, -(i+1) for g_i⁻¹."""
        return cls((abs(x) - 1, 1 if x > 0 else -1) for x in letters)

    def letters(self) -> list[int]:
        out = []
        for index, exponent in self.syllables:
            sign = 1 if exponent > 0 else -1
            out.extend([sign * (index + 1)] * abs(exponent))
        return out

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __iter__(self) -> Iterator[Syllable]:
        return iter(self.syllables)

    def __mul__(self, other: Word) -> Word:
        return Word(self.syllables + other.syllables)

    def inverse(self) -> Word:
        return Word((i, -e) for i, e in reversed(self.syllables))

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else self.inverse()
        return Word(base.syllables * abs(n))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.syllables == other.syllables

    def __hash__(self) -> int:
        return hash(self.syllables)

    def __repr__(self) -> str:
        return f"Word({self.format()})"

    @property
    def max_index(self) -> int:
        return max((i for i, _ in self.syllables), default=-1)

    def mod2_vector(self, n_generators: int) -> tuple[int, ...]:
        """Image in (Z/2)^n under the abelianization."""
        v = [0] * n_generators
        for i, e in self.syllables:
            v[i] = (v[i] + e) % 2
        return tuple(v)

    def format(self, labels: Sequence[str] | None = None) -> str:
        if not self.syllables:
            return "1"
        parts = []
        for i, e in self.syllables:
            name = labels[i] if labels is not None else f"g{i}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(\^\s*-?\d+)|(\*)|([^\W\d][\w']*)|(1\b))")


def parse_word(text: str, labels: Sequence[str]) -> Word:
    """Parse ``a b^-1 (a b)^2`` style words; ``1`` or the empty string is the identity.

    Raises:
        DocumentError: unknown label or malformed syntax, with the column
    """
    index = {label: i for i, label in enumerate(labels)}
    stack: list[list[Syllable]] = [[]]
    last: list[Syllable] | None = None
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise DocumentError(f"unexpected character {text[pos]!r} in word {text!r}", 1, pos + 1)
        lpar, rpar, power, _star, name, one = m.groups()
        column = m.start() + 1
        if lpar:
            stack.append([])
            last = None
        elif rpar:
            if len(stack) == 1:
                raise DocumentError(f"unbalanced ')' in word {text!r}", 1, column)
            group = stack.pop()
            stack[-1].extend(group)
            last = group
        elif power:
            if last is None:
                raise DocumentError(f"exponent without a base in word {text!r}", 1, column)
            n = int(power[1:].strip())
            base = Word(last)
            del stack[-1][len(stack[-1]) - len(last):]
            stack[-1].extend((base**n).syllables)
            last = None
        elif name:
            if name not in index:
                raise DocumentError(f"unknown generator {name!r} in word {text!r}", 1, column)
            syllable = [(index[name], 1)]
            stack[-1].extend(syllable)
            last = syllable
        elif one:
            last = None
        pos = m.end()
    if len(stack) != 1:
        raise DocumentError(f"unbalanced '(' in word {text!r}", 1, len(text))
    return Word(stack[0])


def enumerate_words(n_generators: int, max_length: int, min_length: int = 0) -> Iterator[Word]:
    """All freely reduced words of length in [min_length, max_length], shortlex.

    Letters are ordered g0, g0⁻¹, g1, g1⁻¹, ...
    """
    alphabet = [s * (i + 1) for i in range(n_generators) for s in (1, -1)]

    def extend(prefix: list[int], remaining: int) -> Iterator[list[int]]:
        if remaining == 0:
            yield prefix
            return
        for x in alphabet:
            if prefix and prefix[-1] == -x:
                continue
            yield from extend(prefix + [x], remaining - 1)

    for length in range(min_length, max_length + 1):
        for letters in extend([], length):
            yield Word.from_letters(letters)


def random_word(n_generators: int, max_length: int, rng: random.Random) -> Word:
    """A random reduced word of length 1..max_length."""
    length = rng.randint(1, max_length)
    letters: list[int] = []
    while len(letters) < length:
        x = rng.choice([1, -1]) * rng.randint(1, n_generators)
        if letters and letters[-1] == -x:
            continue
        letters.append(x)
    return Word.from_letters(letters)


def commutator(x: Word, y: Word) -> Word:
    """x y x⁻¹ y⁻¹."""
    return x * y * x.inverse() * y.inverse()
