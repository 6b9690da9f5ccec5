"""Quaternion matrices: right and left eigenvalues, Rayleigh quotients, checks."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .quaternion import (  # noqa: F401
    I, J, K, ONE, Quaternion, commuting_pure_units, complex_representative, conjugate_by,
    format_quaternion, is_similar, parse_quaternion, qconj, qinv, qmul, qnorm2,
)
from .qmatrix import (  # noqa: F401
    QMatrix, QVector, Subspace, complex_adjoint, complex_to_qvector, direct_sum,
    from_complex_adjoint, gram_schmidt, hermitian_product, is_hermitian, is_symplectic,
    null_space, qvector_to_complex,
)
from .formats import load_matrix, parse_matrix, parse_vector, save_matrix  # noqa: F401
from .ceig import (  # noqa: F401
    HermitianEigen, SimilarityClass, general_complex_eigenvalues, hermitian_complex_eigen,
    hermitian_right_eigen, right_eigen_classes,
)
from .rayleigh import (  # noqa: F401
    critical_index, critical_report, gradient, hessian_apply, hessian_eigenvalues,
    minmax_verify, moments, rayleigh_quotient, sphere_coordinate_moments,
)
from .lefteig import (  # noqa: F401
    LeftFamily, LeftSpectrum, hermitian_2x2_classify, hermitian_bound_check,
    hermitian_part_classes, left_eigs_2x2, left_membership, multiplicity_corollary_check,
    quaternion_quadratic_roots, symplectic_2x2_detect, symplectic_2x2_spectra,
    symplectic_bound_check, symplectic_rotation,
)
