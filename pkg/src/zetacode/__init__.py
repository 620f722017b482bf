"""Zeta functions of graphs, cycle-code pseudo-codewords and random-graph ensembles."""
__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CodeError,
    ConvergenceError,
    EnsembleError,
    GraphError,
    InputFormatError,
    IntegralityError,
    ZetacodeError,
)
from .graph import (  # noqa: E402
    CoverGraph,
    TannerGraph,
    UndirectedMultigraph,
    build_graph,
    collapse_normal_graph,
    complete_graph,
    cycle_graph,
    hashimoto_matrix,
    is_cycle_code,
    lifted_parity_check,
    m_cover,
    random_cover,
    spectral_radius,
    tanner_from_parity,
)
from .series import TruncatedSeries, UnivariatePolynomial  # noqa: E402
from .zeta import (  # noqa: E402
    PrimeCycleClass,
    edge_zeta,
    edge_zeta_inverse_det,
    ihara_zeta_inverse_bass,
    prime_cycle_counts,
    prime_cycles,
    zeta_inverse_from_primes,
)
from .pseudo import (  # noqa: E402
    codewords_bruteforce,
    cover_pseudocodewords,
    mod2_projection,
    pseudo_from_cover,
    pseudocodewords_from_zeta,
)
from .ensemble import EnsembleSpec, ZetaEstimate, averaged_zeta, sample_graph  # noqa: E402
from .gaussian import four_cycle_term_census, gaussian_det_estimator, wick_coefficient  # noqa: E402
from .cycles import count_4cycles, count_triangles, rate_scaling_probe, tail_probability  # noqa: E402
from .ldp import gartner_ellis_lambda, legendre_rate  # noqa: E402
