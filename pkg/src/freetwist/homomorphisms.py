"""Homomorphisms between free groups as generator-image tables.

A homomorphism is determined by the ordered list of images of the domain
generators.  The constructions here are the ones the distinguisher
composes: evaluation, free products (second-factor names get a trailing
prime), conjugation of a homomorphism by a word, stable-letter extensions,
and adjoining a single word as the image of a fresh generator.

Everything is immutable; constructions return new values.
"""

from __future__ import annotations

import json
from typing import Iterable

from .words import (
    Alphabet,
    AlphabetMismatchError,
    ParseError,
    PreconditionError,
    Word,
    embed_word,
    format_word,
    invert,
    multiply,
    parse_word,
)


class Homomorphism:
    """A map between free groups, stored as one image word per generator.

    >>> ab = Alphabet.default(2)
    >>> phi = Homomorphism(ab, ab, [parse_word("aba", ab), parse_word("Ba", ab)])
    >>> str(phi(parse_word("ab", ab)))
    'abaBa'
    """

    __slots__ = ("domain", "codomain", "images", "_inv_images")

    def __init__(self, domain: Alphabet, codomain: Alphabet, images: Iterable[Word]):
        images = tuple(images)
        if len(images) != domain.rank:
            raise ValueError(
                f"need {domain.rank} images for {domain!r}, got {len(images)}"
            )
        for img in images:
            if img.alphabet != codomain:
                raise AlphabetMismatchError(
                    f"image {img!r} is not a word over {codomain!r}"
                )
        self.domain = domain
        self.codomain = codomain
        self.images = images
        self._inv_images = None

    def image_of(self, index: int, sign: int = 1) -> Word:
        img = self.images[index]
        return img if sign > 0 else invert(img)

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, self.images))

    def __repr__(self) -> str:
        table = ", ".join(
            f"{name}->{format_word(img)}"
            for name, img in zip(self.domain.names, self.images)
        )
        return f"Homomorphism({table})"


def apply(h: Homomorphism, w: Word) -> Word:
    """Evaluate ``h`` on a word: substitute every letter by its image and
    reduce.  Multiplicative: apply(h, x*y) == apply(h, x) * apply(h, y)."""
    if w.alphabet != h.domain:
        raise AlphabetMismatchError(f"{w!r} is not a word over {h.domain!r}")
    if h._inv_images is None:
        h._inv_images = tuple(
            tuple(-x for x in reversed(img.signed)) for img in h.images
        )
    out: list[int] = []
    images = h.images
    inv_images = h._inv_images
    for x in w.signed:
        chunk = images[x - 1].signed if x > 0 else inv_images[-x - 1]
        for y in chunk:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return Word._raw(h.codomain, tuple(out))


def identity_hom(alphabet: Alphabet) -> Homomorphism:
    return Homomorphism(
        alphabet,
        alphabet,
        tuple(Word._raw(alphabet, (i + 1,)) for i in range(alphabet.rank)),
    )


def _primed(names: tuple[str, ...], taken: set[str]) -> tuple[str, ...]:
    out = []
    for name in names:
        candidate = name + "'"
        while candidate in taken:
            candidate += "'"
        taken.add(candidate)
        out.append(candidate)
    return tuple(out)


def free_product(h1: Homomorphism, h2: Homomorphism) -> Homomorphism:
    """Join two homomorphisms with a shared codomain into one map on the
    free product of their domains.  Second-factor generators are displayed
    with a trailing prime (a')."""
    if h1.codomain != h2.codomain:
        raise AlphabetMismatchError(
            f"codomains differ: {h1.codomain!r} vs {h2.codomain!r}"
        )
    taken = set(h1.domain.names)
    domain = Alphabet(h1.domain.names + _primed(h2.domain.names, taken))
    return Homomorphism(domain, h1.codomain, h1.images + h2.images)


def conjugate_hom(h: Homomorphism, v: Word) -> Homomorphism:
    """Replace every image w by the reduced form of v^-1 w v."""
    if v.alphabet != h.codomain:
        raise AlphabetMismatchError(f"{v!r} is not a word over {h.codomain!r}")
    vi = invert(v)
    return Homomorphism(
        h.domain,
        h.codomain,
        tuple(multiply(multiply(vi, img), v) for img in h.images),
    )


def twisted_extension(h: Homomorphism, u: Word) -> Homomorphism:
    """Extend ``h`` by a stable letter z on both sides, sending z to the
    reduced form of u z u^-1."""
    if u.alphabet != h.codomain:
        raise AlphabetMismatchError(f"{u!r} is not a word over {h.codomain!r}")
    domain = h.domain.extended("z")
    codomain = h.codomain.extended("z")
    z = Word._raw(codomain, (codomain.rank,))
    u2 = embed_word(u, codomain)
    images = tuple(embed_word(img, codomain) for img in h.images)
    return Homomorphism(domain, codomain, images + (multiply(multiply(u2, z), invert(u2)),))


def trivial_extension(h: Homomorphism) -> Homomorphism:
    """Extend ``h`` by a stable letter z fixed by the map (z goes to z)."""
    domain = h.domain.extended("z")
    codomain = h.codomain.extended("z")
    z = Word._raw(codomain, (codomain.rank,))
    images = tuple(embed_word(img, codomain) for img in h.images)
    return Homomorphism(domain, codomain, images + (z,))


def adjoin_word(h: Homomorphism, w: Word) -> Homomorphism:
    """Add one fresh domain generator whose image is ``w``."""
    if w.alphabet != h.codomain:
        raise AlphabetMismatchError(f"{w!r} is not a word over {h.codomain!r}")
    domain = h.domain.extended("x")
    return Homomorphism(domain, h.codomain, h.images + (w,))


def build_eta(phi: Homomorphism, psi: Homomorphism, u: Word, v: Word) -> Homomorphism:
    """Certificate homomorphism for a pair of target words.

    Rank 2n+2 on generators g_1..g_n, z, g_1'..g_n', z' into the codomain
    extended by z, with g_i -> v^-1 phi(g_i) v, z -> v^-1 u z u^-1 v,
    g_i' -> psi(g_i), and z' -> z.  If this map has remnant then u and v
    lie in distinct doubly-twisted conjugacy classes for (phi, psi); this
    is the "eta" table reported by the check output.
    """
    if phi.domain.rank != psi.domain.rank:
        raise PreconditionError(
            f"domain ranks differ: {phi.domain.rank} vs {psi.domain.rank}"
        )
    if phi.codomain != psi.codomain:
        raise AlphabetMismatchError(
            f"codomains differ: {phi.codomain!r} vs {psi.codomain!r}"
        )
    extended = twisted_extension(phi, u)
    left = conjugate_hom(extended, embed_word(v, extended.codomain))
    return free_product(left, trivial_extension(psi))


def parse_hom(text: str, codomain: Alphabet | None = None) -> Homomorphism:
    """Parse a homomorphism from assignment text or its JSON form.

    Assignment text looks like ``"a=aba, b=Ba"``; the left-hand names fix
    the domain, in order, and the codomain defaults to that same alphabet
    (endomorphism).  Text starting with ``{`` is parsed as the JSON form
    instead (see :func:`hom_from_json`), which supports distinct domain and
    codomain alphabets.
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty homomorphism text", 0)
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad homomorphism JSON: {exc}") from None
        return hom_from_json(obj)
    names: list[str] = []
    image_texts: list[str] = []
    for part in stripped.split(","):
        if "=" not in part:
            raise ParseError(f"expected name=word, got {part.strip()!r}")
        left, right = part.split("=", 1)
        names.append(left.strip())
        image_texts.append(right)
    domain = Alphabet(tuple(names))
    if codomain is None:
        codomain = domain
    images = tuple(parse_word(t, codomain) for t in image_texts)
    return Homomorphism(domain, codomain, images)


def hom_from_json(obj: dict) -> Homomorphism:
    """Build a homomorphism from
    ``{"domain": [...], "codomain": [...], "images": {name: word}}``."""
    try:
        domain = Alphabet(tuple(obj["domain"]))
        codomain = Alphabet(tuple(obj["codomain"]))
        image_map = dict(obj["images"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad homomorphism JSON: {exc}") from None
    unknown = set(image_map) - set(domain.names)
    if unknown:
        raise ParseError(f"images given for unknown generators {sorted(unknown)}")
    images = []
    for name in domain.names:
        if name not in image_map:
            raise ParseError(f"missing image for generator {name!r}")
        images.append(parse_word(image_map[name], codomain))
    return Homomorphism(domain, codomain, tuple(images))


def hom_to_json(h: Homomorphism) -> dict:
    return {
        "domain": list(h.domain.names),
        "codomain": list(h.codomain.names),
        "images": {
            name: format_word(img) for name, img in zip(h.domain.names, h.images)
        },
    }
