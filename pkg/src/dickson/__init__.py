"""Finite Dickson nearfields DN(q, n) built from GF(q^n) with a twisted product."""

from .dickson_pairs import (
    DicksonPair,
    ResidueSystem,
    as_prime_power,
    class_count,
    euler_phi,
    is_dickson_pair,
    mult_order,
    residue_indices,
)
from .errors import (
    DescriptorParseError,
    DicksonError,
    DomainError,
    InternalContradiction,
    ParameterError,
    ValidationError,
)
from .ff_core import ExtensionField, FieldElement, Polynomial, factorize, find_irreducible, find_primitive
from .nearfield import (
    DicksonNearfield,
    VerificationReport,
    construct,
    coset_exponent,
    coupling_property_check,
    enumerate_variants,
    left_distributivity_witness,
    metacyclic_check,
    n9_oracle,
    nf_inv,
    nf_mul,
    noncommutativity_witness,
    verify_axioms,
)

__version__ = "0.1.0"
