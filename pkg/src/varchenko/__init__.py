"""Exact toolkit for weighted hyperplane arrangements: chambers, relevant
edges, the chamber-pairing matrix of separating-set weight products, its
brute-force determinant over prime fields, closed-form factorizations for the
Coxeter families, and a randomized verification harness that adjudicates the
closed forms against ground truth."""

from .closedform import formula_A, formula_B, formula_D, formula_I2, zagier
from .exactalg import (DEFAULT_PRIME, FactoredProduct, Monomial, PrimeField,
                       factored_canonicalize, factored_eval,
                       factored_specialize_all, mono_mul)
from .families import (FamilyEdgeDescriptor, FamilyKind, SignedSubset,
                       build_family, chambers_combinatorial,
                       descriptor_hyperplanes, descriptor_weight_monomial,
                       multiplicity_combinatorial,
                       relevant_edges_combinatorial, signed_pair_weight,
                       signed_subsets)
from .feasibility import feasible_strict
from .geometry import (Arrangement, Chamber, Edge, Face, Hyperplane,
                       canonical_edge, enumerate_chambers, face_of,
                       factored_determinant_general, multiplicity,
                       relevant_edges)
from .harness import (DetSource, FactoredDiff, VerificationReport,
                      bruteforce_source, compare_factored, factored_source,
                      parse_arrangement_file, verify_identity)
from .matrix import (EvaluatedMatrix, SeparatingSet, degree_bound,
                     det_bruteforce, det_mod, separating_set,
                     varchenko_matrix_eval)

__version__ = "0.1.0"
