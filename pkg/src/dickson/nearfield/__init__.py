"""Dickson nearfield construction, arithmetic and verification."""

from .core import (
    CommutatorWitness,
    DicksonNearfield,
    construct,
    coset_exponent,
    default_field,
    n9_oracle,
    nf_inv,
    nf_mul,
    noncommutativity_witness,
)
from .variants import VariantClasses, class_exponents, enumerate_variants, is_isomorphic_restricted
from .verify import (
    DEFAULT_SAMPLES,
    EXHAUSTIVE_LIMIT,
    QUADRATIC_LIMIT,
    CheckResult,
    VerificationReport,
    coupling_property_check,
    left_distributivity_witness,
    metacyclic_check,
    verify_axioms,
)
