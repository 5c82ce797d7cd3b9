"""Exact symbolic toolkit for endomorphisms of projective bundles on
elliptic curves in Legendre form.

Modules:

* field    -- exact base fields (Q and prime fields of char >= 5)
* curve    -- Legendre curves, Laurent functions, valuations, chart splitting
* poly     -- homogeneous forms, transition matrices, coefficient extraction
* bundles  -- bundle descriptors and tensor / symmetric-power decomposition
* endo     -- endomorphism candidates and compatibility verification
* cascade  -- vanishing cascades, certificates, and nonexistence verdicts
* dyn      -- spectral radii, dynamical degrees, and Picard lattices
* cli      -- the ``pbundle`` command-line front end
"""

from .bundles import BundleDescriptor, Decomposition, atiyah_tensor, sym_decompose
from .cascade import (
    CertificateError,
    CommonZeroProof,
    DEFAULT_LAMBDA,
    NonexistenceVerdict,
    VanishingCertificate,
    conclude_common_zero,
    nonexistence_verdict,
    parse_certificate,
    parse_proof,
    replay_certificate,
    replay_proof,
    run_cascade,
)
from .curve import (
    LaurentFunction,
    chart_split,
    make_curve,
    omega,
    val_at_O,
    val_at_point,
)
from .dyn import (
    Annihilator,
    Interval,
    PicLattice,
    annihilator_from_indices,
    check_degree_bound,
    dyn_report,
    fibre_degree,
    product_formula,
    spectral_radius,
)
from .endo import (
    EndoCandidate,
    check_compatibility,
    check_no_common_zero,
    char_p_atiyah_endo,
    identity_endo,
    torsion_power_endo,
)
from .field import PrimeField, Rationals
from .poly import HomogPoly, TransitionMatrix, expansion_terms, sym_action, whichcoeffs

__version__ = "0.1.0"

__all__ = [
    "Annihilator",
    "BundleDescriptor",
    "CertificateError",
    "CommonZeroProof",
    "DEFAULT_LAMBDA",
    "Decomposition",
    "EndoCandidate",
    "HomogPoly",
    "Interval",
    "LaurentFunction",
    "NonexistenceVerdict",
    "PicLattice",
    "PrimeField",
    "Rationals",
    "TransitionMatrix",
    "VanishingCertificate",
    "annihilator_from_indices",
    "atiyah_tensor",
    "char_p_atiyah_endo",
    "chart_split",
    "check_compatibility",
    "check_degree_bound",
    "check_no_common_zero",
    "conclude_common_zero",
    "dyn_report",
    "expansion_terms",
    "fibre_degree",
    "identity_endo",
    "make_curve",
    "nonexistence_verdict",
    "omega",
    "parse_certificate",
    "parse_proof",
    "product_formula",
    "replay_certificate",
    "replay_proof",
    "run_cascade",
    "spectral_radius",
    "sym_action",
    "sym_decompose",
    "torsion_power_endo",
    "val_at_O",
    "val_at_point",
    "whichcoeffs",
]
