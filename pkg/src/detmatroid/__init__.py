"""Combinatorics of coordinate projections of bounded-rank matrices.

Decide whether a support pattern is independent or a base in the algebraic
matroid of m x n matrices of rank at most r, certify positive answers with
partition certificates, cross-check with a randomized Jacobian rank oracle,
and uniquely complete observed entries in the certified regime.
"""

from .census import (CensusReport, CensusRow, CrosscheckReport, canonical_form,
                     classify_pattern, contains_full_bipartite,
                     enumerate_patterns, is_spanning_tree,
                     known_facts_crosscheck, sample_patterns, verify_conjecture)
from .errors import (CapacityError, ContractError, DetmatroidError,
                     GenericityError, ParseError)
from .fields import DEFAULT_PRIME, PrimeField, Rationals, prev_prime
from .grassmann import (PluckerVector, SparsePerp, complete_matrix, dual_sign,
                        p_phi, plucker_from_basis, section_form, sparse_perp)
from .oracle import (NecessityReport, OracleVerdict, PrimeFieldMatrix,
                     check_necessity, is_base, jacobian_rank, random_rank_r)
from .partition import (PackingWitness, PartitionCertificate,
                        TruncationMatroid, certificate_from_groups,
                        dilworth_rank, pack_bases, parse_certificate,
                        partition_r_eq_m_minus_1, partition_r_eq_m_minus_2,
                        partition_search, truncation_independent,
                        validate_certificate)
from .patterns import (Slmf, SupportPattern, degrees, drop_column, drop_row,
                       emit_pattern, parse_pattern, reduce_pattern,
                       replay_reduction, transpose)
from .seeding import derive_seed
from .slmf import (RelaxedParams, ViolationWitness, induce_slmf,
                   is_relaxed_slmf, is_slmf, is_slmf_via_matching)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CensusReport",
    "CensusRow",
    "ContractError",
    "CrosscheckReport",
    "DEFAULT_PRIME",
    "DetmatroidError",
    "GenericityError",
    "NecessityReport",
    "OracleVerdict",
    "PackingWitness",
    "ParseError",
    "PartitionCertificate",
    "PluckerVector",
    "PrimeField",
    "PrimeFieldMatrix",
    "Rationals",
    "RelaxedParams",
    "Slmf",
    "SparsePerp",
    "SupportPattern",
    "TruncationMatroid",
    "ViolationWitness",
    "canonical_form",
    "certificate_from_groups",
    "check_necessity",
    "classify_pattern",
    "complete_matrix",
    "contains_full_bipartite",
    "degrees",
    "derive_seed",
    "dilworth_rank",
    "drop_column",
    "drop_row",
    "dual_sign",
    "emit_pattern",
    "enumerate_patterns",
    "induce_slmf",
    "is_base",
    "is_relaxed_slmf",
    "is_slmf",
    "is_slmf_via_matching",
    "is_spanning_tree",
    "jacobian_rank",
    "known_facts_crosscheck",
    "p_phi",
    "pack_bases",
    "parse_certificate",
    "parse_pattern",
    "partition_r_eq_m_minus_1",
    "partition_r_eq_m_minus_2",
    "partition_search",
    "plucker_from_basis",
    "prev_prime",
    "random_rank_r",
    "reduce_pattern",
    "replay_reduction",
    "sample_patterns",
    "section_form",
    "sparse_perp",
    "transpose",
    "truncation_independent",
    "validate_certificate",
    "verify_conjecture",
]
