"""Doubly-twisted conjugacy certificates in finitely generated free groups.

The package decides, one-sidedly, whether two words lie in different
doubly-twisted conjugacy classes for a pair of free-group homomorphisms,
using remnant (non-cancellation) certificates, and estimates how common
the certified situation is under random sampling.
"""

from .words import (
    Alphabet,
    AlphabetMismatchError,
    Letter,
    ParseError,
    PreconditionError,
    Word,
    cancellation_length,
    embed_word,
    format_word,
    invert,
    multiply,
    parse_word,
)
from .homomorphisms import (
    Homomorphism,
    adjoin_word,
    apply,
    build_eta,
    conjugate_hom,
    free_product,
    hom_from_json,
    hom_to_json,
    identity_hom,
    parse_hom,
    trivial_extension,
    twisted_extension,
)
from .remnant import (
    GeneratorRemnant,
    RemnantReport,
    compute_remnant,
    has_remnant,
    remnant_length,
    remnant_ratio,
)
from .conjugacy import (
    DistinguishResult,
    conjugacy_witness,
    direct_check,
    distinguish,
    equalizer_trivial_by_remnant,
    eta_has_remnant,
    quick_distinguish,
)
from .genericity import (
    DensityConfig,
    DensityReport,
    DensityRow,
    RandomModel,
    ball_size,
    run_density,
    sample_hom,
    sample_trial,
    sample_word,
    sphere_size,
    wilson_interval,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AlphabetMismatchError",
    "DensityConfig",
    "DensityReport",
    "DensityRow",
    "DistinguishResult",
    "GeneratorRemnant",
    "Homomorphism",
    "Letter",
    "ParseError",
    "PreconditionError",
    "RandomModel",
    "RemnantReport",
    "Word",
    "adjoin_word",
    "apply",
    "ball_size",
    "build_eta",
    "cancellation_length",
    "compute_remnant",
    "conjugacy_witness",
    "conjugate_hom",
    "direct_check",
    "distinguish",
    "embed_word",
    "equalizer_trivial_by_remnant",
    "eta_has_remnant",
    "format_word",
    "free_product",
    "has_remnant",
    "hom_from_json",
    "hom_to_json",
    "identity_hom",
    "invert",
    "multiply",
    "parse_hom",
    "parse_word",
    "quick_distinguish",
    "remnant_length",
    "remnant_ratio",
    "run_density",
    "sample_hom",
    "sample_trial",
    "sample_word",
    "sphere_size",
    "trivial_extension",
    "twisted_extension",
    "wilson_interval",
]
