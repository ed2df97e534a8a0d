"""Quaternion linear algebra and low-rank quaternion matrix completion.

Color images are encoded as pure quaternion matrices (one quaternion per
pixel) and missing pixels are recovered by minimizing a logarithmic
rank surrogate, either on the factors of a bilinear factorization (QLNF,
accelerated proximal gradient) or directly with a truncated surrogate
(TQLNA, two-step ADMM).
"""

from .core import (conj_transpose, frobenius_norm, hadamard_mask, matmul,
                   qconj, qeye, qmod, qmul, quat, qzeros)
from .imaging import (MetricReport, compare_images, gen_mask,
                      image_to_quaternion, load_image, load_mask, psnr,
                      quaternion_to_image, save_image, save_mask, ssim,
                      synthetic_test_image)
from .linalg import (QsvdResult, from_complex_adjoint, log_norm, nuclear_norm,
                     qrank, qsvd, quat_norm, to_complex_adjoint,
                     truncated_log_norm)
from .problem import CompletionProblem, SolveResult
from .qlnf import (QlnfConfig, QlnfState, fista_momentum, init_factors,
                   solve_qlnf, update_factor_u, update_factor_v)
from .shrinkage import lsvt, lsvt_scalar, qlsvt
from .tqlna import (AdmmResult, TqlnaConfig, TruncationPair, admm_inner,
                    resolve_lambda, solve_tqlna, truncation_pair)

__version__ = "0.1.0"

__all__ = [
    "AdmmResult", "CompletionProblem", "MetricReport", "QlnfConfig",
    "QlnfState", "QsvdResult", "SolveResult", "TqlnaConfig", "TruncationPair",
    "admm_inner", "compare_images", "conj_transpose", "fista_momentum",
    "frobenius_norm", "from_complex_adjoint", "gen_mask", "hadamard_mask",
    "image_to_quaternion", "init_factors", "load_image", "load_mask",
    "log_norm", "lsvt", "lsvt_scalar", "matmul", "nuclear_norm", "psnr",
    "qconj", "qeye", "qlsvt", "qmod", "qmul", "qrank", "qsvd", "quat",
    "quat_norm", "quaternion_to_image", "qzeros", "resolve_lambda",
    "save_image", "save_mask",
    "solve_qlnf", "solve_tqlna", "ssim", "synthetic_test_image",
    "to_complex_adjoint", "truncated_log_norm", "truncation_pair",
    "update_factor_u", "update_factor_v",
]
