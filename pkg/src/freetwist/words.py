"""Freely reduced words over a finite generating set.

A word is stored as a tuple of nonzero signed integers: ``+(i+1)`` is the
i-th generator, ``-(i+1)`` its inverse.  Words reduce eagerly at
construction, so unreduced words are unrepresentable and every operation
can assume its inputs are reduced.  All values here are immutable and all
operations are pure, so they can be shared freely across threads and
processes.

Text form: lowercase letters are generators, uppercase their inverses
("Babab" is b^-1 a b a b), ``x^k`` with an integer exponent is accepted,
whitespace between terms is ignored, and "1" denotes the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

_LOWER = "abcdefghijklmnopqrstuvwxyz"


class ParseError(ValueError):
    """Malformed word or homomorphism text; carries a 0-based offset."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (position {position})"
        super().__init__(message)
        self.position = position


class AlphabetMismatchError(ValueError):
    """Operands live over different generating sets."""


class PreconditionError(ValueError):
    """Inputs violate an operation's stated contract."""


@dataclass(frozen=True)
class Alphabet:
    """An ordered tuple of distinct generator names for a free group.

    >>> Alphabet.default(2).names
    ('a', 'b')
    >>> Alphabet.default(2).rank
    2
    """

    names: tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ValueError("an alphabet needs at least one generator")
        seen = set()
        for name in names:
            if not name or any(c.isspace() for c in name) or name[0].isdigit():
                raise ValueError(f"bad generator name {name!r}")
            if "^" in name or name == "1":
                raise ValueError(f"bad generator name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate generator name {name!r}")
            seen.add(name)
        object.__setattr__(self, "names", names)

    @property
    def rank(self) -> int:
        return len(self.names)

    @classmethod
    def default(cls, rank: int) -> "Alphabet":
        """a, b, c, ... for rank up to 26, else g1 ... gn."""
        if rank < 1:
            raise ValueError("rank must be at least 1")
        if rank <= 26:
            return cls(_LOWER[:rank])
        return cls(tuple(f"g{i + 1}" for i in range(rank)))

    def extended(self, base: str = "z") -> "Alphabet":
        """Append one fresh generator, named `base` if unused (else base2, base3, ...)."""
        name = base
        k = 2
        while name in self.names:
            name = f"{base}{k}"
            k += 1
        return Alphabet(self.names + (name,))

    @property
    def is_case_coded(self) -> bool:
        """True when every name is a single lowercase letter, enabling the
        compact uppercase-means-inverse spelling."""
        return all(len(n) == 1 and n.islower() and n.isalpha() for n in self.names)

    def __repr__(self) -> str:
        return f"Alphabet({', '.join(self.names)})"


class Letter(NamedTuple):
    """One signed generator symbol: ``index`` in [0, rank), ``sign`` is +1 or -1."""

    index: int
    sign: int


class Word:
    """A freely reduced word; the identity is the empty word.

    ``signed`` holds the letters as nonzero ints (see module docstring).

    >>> ab = Alphabet.default(2)
    >>> str(Word(ab, (1, 2, -1)))
    'abA'
    >>> str(Word(ab, (1, -1)))
    '1'
    """

    __slots__ = ("alphabet", "signed")

    def __init__(self, alphabet: Alphabet, letters: Iterable[int] = ()):
        letters = tuple(letters)
        rank = alphabet.rank
        for x in letters:
            if not isinstance(x, int) or x == 0 or abs(x) > rank:
                raise ValueError(f"letter {x!r} is not a signed index into {alphabet!r}")
        self.alphabet = alphabet
        self.signed = _reduce(letters)

    @classmethod
    def _raw(cls, alphabet: Alphabet, signed: tuple[int, ...]) -> "Word":
        # Internal fast path: `signed` must already be reduced and in range.
        w = cls.__new__(cls)
        w.alphabet = alphabet
        w.signed = signed
        return w

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter(abs(x) - 1, 1 if x > 0 else -1) for x in self.signed)

    @property
    def is_identity(self) -> bool:
        return not self.signed

    def __len__(self) -> int:
        return len(self.signed)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.signed == other.signed and self.alphabet == other.alphabet

    def __hash__(self) -> int:
        return hash((self.alphabet, self.signed))

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return invert(self) ** (-n)
        out = Word._raw(self.alphabet, ())
        for _ in range(n):
            out = multiply(out, self)
        return out

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def _reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _check_compatible(w1: Word, w2: Word) -> None:
    if w1.alphabet != w2.alphabet:
        raise AlphabetMismatchError(
            f"words over {w1.alphabet!r} and {w2.alphabet!r} cannot be combined"
        )


def multiply(w1: Word, w2: Word) -> Word:
    """Freely reduced product.  Cancellation between two reduced words only
    happens at the junction, so only the junction is scanned.

    >>> ab = Alphabet.default(2)
    >>> str(multiply(parse_word("aba", ab), parse_word("AB", ab)))
    'a'
    """
    _check_compatible(w1, w2)
    a, b = w1.signed, w2.signed
    k = _junction(a, b)
    if k == 0:
        return Word._raw(w1.alphabet, a + b)
    return Word._raw(w1.alphabet, a[: len(a) - k] + b[k:])


def invert(w: Word) -> Word:
    """Reverse the word and flip every sign; an involution."""
    return Word._raw(w.alphabet, tuple(-x for x in reversed(w.signed)))


def cancellation_length(w1: Word, w2: Word) -> int:
    """Number of letter pairs annihilated at the junction of ``w1 * w2``.

    Always at most min(len(w1), len(w2)); zero iff the last letter of w1 is
    not the inverse of the first letter of w2 (or either word is empty).
    """
    _check_compatible(w1, w2)
    return _junction(w1.signed, w2.signed)


def _junction(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    k = 0
    n = min(len(a), len(b))
    while k < n and a[-1 - k] == -b[k]:
        k += 1
    return k


def embed_word(w: Word, alphabet: Alphabet) -> Word:
    """Reinterpret ``w`` over a larger alphabet that extends its own.

    The target must list the source generators first, in the same order;
    this is what alphabet extensions produce.
    """
    if w.alphabet == alphabet:
        return w
    if alphabet.names[: w.alphabet.rank] != w.alphabet.names:
        raise AlphabetMismatchError(
            f"{alphabet!r} does not extend {w.alphabet!r}"
        )
    return Word._raw(alphabet, w.signed)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse a word and return its free reduction.

    Accepts the compact case-coded form, ``name^k`` terms with integer
    (possibly negative) exponents, and whitespace between terms.  "1" is
    the identity and must stand alone.

    >>> ab = Alphabet.default(2)
    >>> parse_word("b^-2ab", ab).signed
    (-2, -2, 1, 2)
    >>> parse_word("aA", ab).is_identity
    True
    """
    table = _name_table(alphabet)
    names_by_len = sorted(table, key=len, reverse=True)
    letters: list[int] = []
    i = 0
    n = len(text)
    saw_identity = False
    saw_term = False
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        if text[i] == "1":
            if saw_term or saw_identity:
                raise ParseError("the identity '1' must stand alone", i)
            saw_identity = True
            i += 1
            continue
        if saw_identity:
            raise ParseError("the identity '1' must stand alone", i)
        for name in names_by_len:
            if text.startswith(name, i):
                break
        else:
            raise ParseError(f"unknown generator {text[i]!r}", i)
        base = table[name]
        i += len(name)
        exponent = 1
        if i < n and text[i] == "^":
            i += 1
            sign = 1
            if i < n and text[i] == "-":
                sign = -1
                i += 1
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i == start:
                raise ParseError("malformed exponent", start)
            exponent = sign * int(text[start:i])
        saw_term = True
        if exponent >= 0:
            letters.extend([base] * exponent)
        else:
            letters.extend([-base] * -exponent)
    if not saw_term and not saw_identity:
        raise ParseError("empty word text (write '1' for the identity)", 0)
    return Word(alphabet, tuple(letters))


def _name_table(alphabet: Alphabet) -> dict[str, int]:
    table: dict[str, int] = {}
    for i, name in enumerate(alphabet.names):
        table[name] = i + 1
    for i, name in enumerate(alphabet.names):
        if len(name) == 1 and name.islower() and name.isalpha():
            upper = name.upper()
            if upper not in table:
                table[upper] = -(i + 1)
    return table


def format_word(w: Word) -> str:
    """Canonical spelling; inverse of :func:`parse_word` up to spelling.

    Case-coded alphabets print compactly ("Babab"); alphabets with longer
    names print space-separated terms with run-length exponents.
    """
    if not w.signed:
        return "1"
    names = w.alphabet.names
    if w.alphabet.is_case_coded:
        return "".join(
            names[x - 1] if x > 0 else names[-x - 1].upper() for x in w.signed
        )
    terms = []
    for x, run in _runs(w.signed):
        name = names[abs(x) - 1]
        exponent = run if x > 0 else -run
        terms.append(name if exponent == 1 else f"{name}^{exponent}")
    return " ".join(terms)


def _runs(signed: tuple[int, ...]) -> Iterator[tuple[int, int]]:
    run = 0
    prev = 0
    for x in signed:
        if x == prev:
            run += 1
        else:
            if run:
                yield prev, run
            prev, run = x, 1
    if run:
        yield prev, run
