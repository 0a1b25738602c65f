"""Apolarity calculus and powersum decompositions of forms.

Forms live in divided-power-free coordinates ``x_0..x_n``; the dual ring acts
by differentiation.  The decomposition constructions take a complete
intersection curve ``X`` and a codimension 2 linear space ``L`` missing it,
and write the cubic ``f_L`` apolar to ``X cap L`` as a sum of cubes.
"""
from .apolarity import (GradedIdealPieces, PowersumDecomposition, SpecialnessReport,
                        apolar_ideal, apolar_ideal_piece, catalecticant_matrix,
                        dual_socle_generator, evaluation_matrix, generic_rank, hilbert_function,
                        is_apolar, residual_norm, solve_powersum, specialness_report,
                        terracini_generic_rank, terracini_rank)
from .cone import (SlicePoint, TangentDatum, TangentPencil, check_tangent_datum,
                   cone_decomposition, linear_slice_points, tangent_decomposition,
                   tangent_pencil)
from .errors import (ApolarError, ConditionViolated, DegenerateInputError, FieldMismatchError,
                     InconsistentSystem, NotGorensteinError, PrecisionExhausted)
from .fields import CC, GF, QQ, convert, field_from_tag
from .linalg import determinant, kernel_basis, rank, rref, solve_linear
from .poly import DualPoint, MultiPoly, apolar_apply, monomials, num_monomials, power_of_linear
from .sections import (CompleteIntersection, LinearSubspace, apolar_hypersurface,
                       ideal_pieces_after_reduction, load_fixture, random_complete_intersection,
                       random_linear_subspace, reduction_hilbert_function, sample_section)
from .zerodim import solve_projective

__version__ = "0.1.0"
