"""Rank-metric codes over finite extension fields: rank supports, trace
codes, Galois closures, generalized rank weights under several
equivalent definitions, weight enumerators, and degeneracy diagnostics,
all by exact exhaustive enumeration at desk scale."""

from .analysis import (AnalysisReport, DegeneracyWitness, dimension_bound_check,
                       duality_check, equivalence_report, is_degenerate)
from .code import (Isometry, RankCode, code_support, expand, extend,
                   rank_support, rank_weight, subcode_support, subcode_weight,
                   vector_frobenius, vector_trace)
from .codefile import (example_code, load, parse, serialize_json,
                       serialize_text)
from .errors import (DimensionMismatch, EmptyCode, Infeasible, NotIrreducible,
                     NotPrime, ParseError, RankOutOfRange, RankWeightsError,
                     SingularMatrix)
from .gf import (DEFAULT_POLYS, ExtensionField, FieldSpec, LBasis,
                 extension_field, field_make)
from .kspace import (Matrix, Subspace, enumerate_subspaces, gaussian_binomial)
from .sweep import Lcg, check_code, exhaustive_codes, run_sweep
from .weights import (DEFAULT_CUTOFF, DEFINITIONS, WeightProfile, enumerator,
                      grw, grw_closure, grw_ducoat, grw_jp, grw_kmu, grw_os,
                      profile)

__version__ = "0.1.0"
