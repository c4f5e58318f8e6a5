"""Fischer-type determinant bounds for accretive-dissipative matrices.

An accretive-dissipative matrix ``A = B + iC`` has Hermitian positive definite
parts ``B`` and ``C``. For a 2x2 block split with diagonal orders ``k`` and
``l`` and ``m = min(k, l)`` the package evaluates the ratio
``|det A| / (|det A11| |det A22|)`` against the constants ``3^m``, the
piecewise ``2^(3m/2)`` / ``2^(n/2)`` bound and the conjectured ``2^m``; it
replays both proof chains step by step and searches for large ratios.
"""

__version__ = "0.1.0"

from .ad_matrix import (CartesianPair, InverseSplit, PartitionedAD,
                        cartesian_decompose, inverse_split,
                        is_accretive_dissipative, lemma3_margin, p1_check,
                        partition, schur_complement)
from .generation import (ExampleParams, GenSpec, ad_corpus, example_family,
                         example_family_block, example_ratio, sample_ad,
                         sample_hpd)
from .inequalities import (BoundSet, ChainReport, bounds_for,
                           check_all_bounds, fischer_ratio, lemma4_verify,
                           schur_parts, theorem3_chain, theorem4_chain)
from .linalg_core import (cholesky_pd, det, hermitian_eigenvalues, hpd_sqrt,
                          inverse, loewner_geq)
from .search import SearchConfig, SearchResult, conjecture_scan, maximize_ratio
