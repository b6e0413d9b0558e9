"""Discrete orthogonal polynomial ensembles and their correlation kernels.

The package has three layers.  Exact combinatorics: partitions, the RSK
correspondence, and the ensemble laws (Plancherel, Meixner, Charlier,
Krawtchouk, Hahn) with rational arithmetic at desk scale.  Numerics:
correlation kernels (discrete Bessel, Charlier, Meixner, Hermite, Airy,
sine), Fredholm determinants on the lattice and the continuum, and the
Tracy-Widom distribution with joint-row extensions.  Models: random words,
Bernoulli last-passage percolation, Aztec-diamond zig-zag paths, and hexagon
lozenge slices, each reducible to an ensemble and checkable by enumeration.
"""

__version__ = "0.1.0"

from .specfun import ConvergenceError
from .partitions import (
    Partition,
    conjugate,
    enumerate_partitions,
    frobenius_dimension,
    from_particles,
    particles,
)
from .rsk import (
    bernoulli_path_max,
    longest_weakly_increasing,
    matrix_rsk_shape,
    rsk_shape,
)
from .ensembles import (
    Charlier,
    Hahn,
    Krawtchouk,
    Meixner,
    MultiplicativeFunctional,
    Plancherel,
    PoissonizedPlancherel,
    configurations,
    expectation,
    normalization,
    pmf,
    pmf_exact,
    pmf_particles,
    word_shape_pmf,
)
from .kernels import (
    AiryKernel,
    Bessel,
    CharlierKernel,
    DiscreteSineKernel,
    HermiteKernel,
    MeixnerKernel,
    SineKernel,
    bessel_diag_tail,
    bessel_series,
    bulk_scaled,
    eval_kernel,
    round_half_up,
    scaled_edge,
)
from .fredholm import (
    FredholmResult,
    IntervalSystem,
    charlier_expectation_det,
    det_continuum,
    det_discrete,
    joint_rows,
    tracy_widom,
)
from .models import (
    AztecZigzag,
    PercolationConstants,
    PercolationSpec,
    aztec_tiling_count,
    aztec_zigzag_pmf,
    aztec_zigzag_turns,
    enumerate_aztec_tilings,
    enumerate_plane_partitions,
    hexagon_slice_pmf,
    passage_time,
    percolation_constants,
    percolation_gap,
    plane_partition_slice,
    word_gap,
)
from .sampler import (
    ChiSquareResult,
    EmpiricalDistribution,
    chi_squared,
    empirical_law,
    exhaustive_permutation_law,
    exhaustive_word_law,
    ks_distance,
    make_rng,
    sample_bernoulli_matrix,
    sample_geometric_matrix,
    sample_permutation,
    sample_poisson,
    sample_word,
)

__all__ = [
    "__version__",
    "ConvergenceError",
    "Partition",
    "conjugate",
    "enumerate_partitions",
    "frobenius_dimension",
    "from_particles",
    "particles",
    "bernoulli_path_max",
    "longest_weakly_increasing",
    "matrix_rsk_shape",
    "rsk_shape",
    "Charlier",
    "Hahn",
    "Krawtchouk",
    "Meixner",
    "MultiplicativeFunctional",
    "Plancherel",
    "PoissonizedPlancherel",
    "configurations",
    "expectation",
    "normalization",
    "pmf",
    "pmf_exact",
    "pmf_particles",
    "word_shape_pmf",
    "AiryKernel",
    "Bessel",
    "CharlierKernel",
    "DiscreteSineKernel",
    "HermiteKernel",
    "MeixnerKernel",
    "SineKernel",
    "bessel_diag_tail",
    "bessel_series",
    "bulk_scaled",
    "eval_kernel",
    "round_half_up",
    "scaled_edge",
    "FredholmResult",
    "IntervalSystem",
    "charlier_expectation_det",
    "det_continuum",
    "det_discrete",
    "joint_rows",
    "tracy_widom",
    "AztecZigzag",
    "PercolationConstants",
    "PercolationSpec",
    "aztec_tiling_count",
    "aztec_zigzag_pmf",
    "aztec_zigzag_turns",
    "enumerate_aztec_tilings",
    "enumerate_plane_partitions",
    "hexagon_slice_pmf",
    "passage_time",
    "percolation_constants",
    "percolation_gap",
    "plane_partition_slice",
    "word_gap",
    "ChiSquareResult",
    "EmpiricalDistribution",
    "chi_squared",
    "empirical_law",
    "exhaustive_permutation_law",
    "exhaustive_word_law",
    "ks_distance",
    "make_rng",
    "sample_bernoulli_matrix",
    "sample_geometric_matrix",
    "sample_permutation",
    "sample_poisson",
    "sample_word",
]
