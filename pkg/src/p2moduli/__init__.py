"""Matrix normal forms for moduli of sheaves on P^2 via Beilinson quiver representations."""

from .beilinson import (
    BeilinsonRep,
    end_dim,
    ext_dims,
    hom_dim,
    is_left_general,
    load_rep,
    make_rep,
    projective_rep,
    rep_is_sheaf,
    sample_left_general,
    sample_rep,
    save_rep,
    simple_rep,
)
from .chern import ChernData, TwistNorm, alpha_to_chern, chi_twist, depth_alpha, depth_chern, normalize_twist
from .errors import *  # noqa: F401,F403
from .exactlin import ExactMat, FieldSpec, mat_nullspace, mat_rank, mat_solve
from .kronecker import KronDecomp, Verdict, kron_decompose, kron_end_dim, kron_sample, mnf_family_q2
from .oracle import VerifyConfig, VerifyReport, verify_suite
from .quivercore import DimVec2, DimVec3, euler_beilinson, euler_kronecker, tits_form
from .reduction import ClassificationReport, Rationality, classify, matrix_count, rationality_class, reduce

__version__ = "0.1.0"
