"""Spectral data and functional inequalities of central heat semigroups
on quantum automorphism groups, at desk scale.

Layers, bottom to top: exact Chebyshev/character polynomial calculus
(polycalc), Gauss-Legendre quadrature and measures (quadrature), the
C*-model of the underlying algebra (cstar_model), generator spectra
(spectrum), the central character algebra with its norms (central_algebra),
the heat flow and inequality verifiers (semigroup), embedding-sharpness
machinery (sobolev), and a reporting CLI (cli, plots).
"""

__version__ = "0.1.0"

from .central_algebra import (
    CentralElement,
    adjoint,
    character,
    haar,
    is_positive_reduced,
    l2_norm,
    lp_norm,
    multiply,
    so3_character,
    sup_norm_reduced,
    sup_norm_universal,
    unit,
)
from .cstar_model import AlgebraShape, BlockElement, delta_form_defect, dim_b, plancherel_trace
from .polycalc import (
    IntPolynomial,
    cheb_s,
    derivative,
    difference_quotient,
    eval_poly,
    fusion_range,
    pi_poly,
)
from .quadrature import (
    MeasureSpec,
    QuadratureError,
    QuadratureResult,
    integrate_adaptive,
    integrate_measure,
    weyl_integral,
)
from .semigroup import (
    InequalityReport,
    SemigroupSpec,
    UltraParams,
    apply_heat,
    bessel_potential,
    d_constant,
    dirichlet_energy,
    hyper_margin,
    log_sobolev_defect,
    lsi_c_from_hyper,
    spectral_gap_defect,
    tau_p,
    tau_root,
    two_to_p_time,
    ultra_bound,
    ultra_margin,
)
from .sobolev import (
    SharpnessScanConfig,
    g_criterion,
    g_criterion_limit,
    heat_tail_element,
    hls_lhs,
    hy_lhs,
    poly_decay_element,
    sharpness_scan,
    summability_threshold,
)
from .spectrum import (
    GeneratingFunctional,
    SpectrumTable,
    decay_ladder,
    dimension,
    eigenvalue,
    eigenvalue_exact,
    eigenvalue_general,
    multiplicity,
    so3_eigenvalue,
    spectrum_table,
)
