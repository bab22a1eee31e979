"""Enumeration, canonical forms, the ring corpus and the structural verifiers."""
from .canonical import (
    canonical_form,
    canonical_key,
    dimension_classes,
    find_isomorphism,
    metric_isomorphism,
    modular_isomorphism,
    relabel,
    rings_isomorphic,
)
from .corpus import CorpusEntry, builtin_corpus, corpus_entry, enumerated_corpus, full_corpus
from .enumerate import MAX_RANK, enumerate_rings
from .q3 import (
    SUPPORTED_Q,
    CandidateProfile,
    TypeCandidate,
    classify_modular_q3,
    enumerate_types_q3,
    metric_classes,
    semion_ising_products,
    type_candidates_q3,
)
from .theorems import (
    TheoremReport,
    Verdict,
    pointed_extensions,
    verify_braided_extension_structure,
    verify_gty_criterion,
    verify_pointed_extension,
)
