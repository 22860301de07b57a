"""Remnant computation for homomorphisms of free groups.

For each generator g_i with image w_i, consider every product
``w_j^e * w_i`` and ``w_i * w_j^e`` with e in {+1, -1}, skipping only the
two self-annihilating products with j == i and e == -1 (``w_i^-1 w_i`` and
``w_i w_i^-1``).  The remnant of g_i is the part of w_i that no such
product can cancel: drop the largest junction cancellation seen from the
left and from the right.  The homomorphism *has remnant* when every
generator keeps a nonempty remnant.

Remnant length is the minimum remnant size over the generators; remnant
ratio is the minimum of |remnant| / |image|, kept as an exact fraction.
Both are relative to the fixed generating sets of the domain and codomain;
changing basis changes remnants.

Two reduced words only cancel at their junction, and a fully absorbed
factor stops the cancellation (products are pairwise, so nothing cascades
into a third word).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .words import Word, format_word, _junction
from .homomorphisms import Homomorphism


@dataclass(frozen=True)
class GeneratorRemnant:
    """What survives of one generator's image.

    ``left_cancel`` / ``right_cancel`` are the deepest junction
    cancellations over all admissible products attacking the image from
    that side; ``remnant`` is the image with those prefixes and suffixes
    removed (empty when they meet or cross).
    """

    generator_index: int
    name: str
    image: Word
    left_cancel: int
    right_cancel: int
    remnant: Word

    @property
    def image_length(self) -> int:
        return len(self.image)

    @property
    def remnant_length(self) -> int:
        return len(self.remnant)


@dataclass(frozen=True)
class RemnantReport:
    per_generator: tuple[GeneratorRemnant, ...]
    has_remnant: bool
    min_remnant_length: int
    min_remnant_ratio: Fraction

    def to_json(self) -> dict:
        return {
            "has_remnant": self.has_remnant,
            "min_length": self.min_remnant_length,
            "min_ratio": str(self.min_remnant_ratio),
            "generators": [
                {
                    "name": g.name,
                    "image": format_word(g.image),
                    "left": g.left_cancel,
                    "right": g.right_cancel,
                    "remnant": format_word(g.remnant),
                }
                for g in self.per_generator
            ],
        }


def compute_remnant(h: Homomorphism) -> RemnantReport:
    """Scan all admissible pairwise products and report every remnant.

    Deterministic and pure; an image of length 0 yields an empty remnant
    (and therefore ``has_remnant`` is False).
    """
    images = [img.signed for img in h.images]
    inverses = [tuple(-x for x in reversed(img)) for img in images]
    rank = len(images)
    per = []
    for i, w in enumerate(images):
        length = len(w)
        left = 0
        right = 0
        if length:
            for j in range(rank):
                for factor, inverse in ((images[j], False), (inverses[j], True)):
                    if j == i and inverse:
                        continue  # the two trivially cancelling products
                    left = max(left, _junction(factor, w))
                    right = max(right, _junction(w, factor))
        if left + right < length:
            remnant = Word._raw(h.codomain, w[left : length - right])
        else:
            remnant = Word._raw(h.codomain, ())
        per.append(
            GeneratorRemnant(
                generator_index=i,
                name=h.domain.names[i],
                image=h.images[i],
                left_cancel=left,
                right_cancel=right,
                remnant=remnant,
            )
        )
    min_length = min(g.remnant_length for g in per)
    if any(g.image_length == 0 for g in per):
        min_ratio = Fraction(0)
    else:
        min_ratio = min(Fraction(g.remnant_length, g.image_length) for g in per)
    return RemnantReport(
        per_generator=tuple(per),
        has_remnant=all(g.remnant_length > 0 for g in per),
        min_remnant_length=min_length,
        min_remnant_ratio=min_ratio,
    )


def has_remnant(h: Homomorphism) -> bool:
    return compute_remnant(h).has_remnant


def remnant_length(h: Homomorphism) -> int:
    """Largest l such that every generator's remnant has length >= l."""
    return compute_remnant(h).min_remnant_length


def remnant_ratio(h: Homomorphism) -> Fraction:
    """Largest exact r such that |remnant| >= r * |image| for every
    generator; 0 when some image is empty."""
    return compute_remnant(h).min_remnant_ratio
