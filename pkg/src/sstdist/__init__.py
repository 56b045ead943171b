"""Branch-level statistics of main-decoder inputs in SST Viterbi decoding.

Exact enumeration of the joint code-symbol distribution seen by the main
decoder of a rate-1/2 convolutional code, the Gaussian entropy bounds built
on it, and seeded Monte Carlo validators.
"""

from sstdist.channel import ChannelPoint, ebn0_to_point, q_function
from sstdist.code import CodeSpec, TapSet, default_code, load_code, taps_general, taps_qli
from sstdist.dist import (
    BranchDist,
    EpsPolynomial,
    joint_dist,
    joint_poly,
    lemma1_residuals,
    marginal_poly,
    marginal_prob,
)
from sstdist.entropy import (
    Cov2,
    EntropyRow,
    Mixture2,
    branch_gap,
    branch_mixture,
    build_table,
    correction_term,
    cov_branch,
    cov_z,
    gauss_bound_2d,
    inequality_check,
    mixture_entropy_1d,
    mixture_entropy_2d,
    per_symbol_gap,
    z_mixture,
)
from sstdist.gf2 import Gf2Poly, TransferMatrix, matrix_mul, poly_add, poly_mul, verify_inverse

__version__ = "0.1.0"
