"""Exact symbolic engine and verifier for a t-deformed rank-one lattice
vertex algebra realized on Hall-Littlewood symmetric functions.

All arithmetic is exact: rational coefficients, polynomial truncation in
the deformation parameter t, and explicit exponent windows for Laurent
expansions.  No floating point anywhere.
"""

__version__ = "0.1.0"

from .engine import (evaluate, jing_Q, s_gamma, s_tau, shift_substitute,
                     x2_closed, x2_closed_form, x3_closed, x3_closed_form,
                     x120_closed_form, y_apply, y_product)
from .errors import (DegreeCapExceeded, EmptyComparison, NonExpandableFactor,
                     NotClosedForm, OutsideWindow, QVertexError,
                     TooFewVariables, TruncationMismatch, UnsupportedCharge,
                     WindowUnderflow, ZeroConstantTerm)
from .fock import FockVector, apply_D, exp_D, exp_D_chunk
from .laurent import (FactorProduct, LaurentChunk, Monomial, RegionOrder,
                      Window, coefficient, expand, laurent_mul, lform, region)
from .scalars import TScalar, ts_invert
from .symfunc import (Partition, SymFuncP, hl_q_oracle, p_to_x,
                      partitions_up_to, schur_bialternant)
from .verifier import (CHECK_IDS, CheckReport, check_braided_commutativity,
                       check_braided_jacobi, check_classical_limit,
                       check_expansion_consistency, check_hl_against_oracle,
                       check_translation_covariance, check_vacuum, run_check)
