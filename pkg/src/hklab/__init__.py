"""hklab: exact fiberwise hyperkahler operator algebra and flux-torus spectra."""

from .exterior import ExteriorAlgebra
from .fiber import (FiberForm, FiberOperator, HyperkahlerFiber,
                    bidegree_projector, bidegree_projectors, complex_structure,
                    contraction_operator, holomorphic_symplectic, kahler_form,
                    standard_fiber, wedge_operator, zero_one_star_projector)
from .gengeo import (GCStructure, GeneralizedTangentSpace, GHCFamily,
                     LinearBraneDatum, brane_condition, fiber_families,
                     gc_from_complex, gc_from_symplectic, generalized_metric,
                     ghc_from_holsymplectic, ghc_from_hypercomplex,
                     hyperbrane_condition)
from .quaternions import (TwistorPoint, UnitQuaternion, adjoint_action,
                          axis_points, fibonacci_sphere, hopf_section,
                          sample_zetas)
from .report import CheckResult
from .reptheory import (LefschetzTriple, antiholomorphic_triple,
                        irrep_operators, irrep_sp1_eval, lefschetz_triple,
                        phi_isomorphism, primitive_decompose)
from .symmetry import (OperatorAlgebra, check_ids, chi, chi_k, clifford,
                       clifford_2form, hodge_star_twisted, rho_j_sp1, rho_sp1,
                       ten_operators, verify_identity)
from .torus import (IndexResult, LatticeGaugeField, LatticeOperator,
                    LatticeSpec, SpectralReport, build_gauge_field,
                    covariant_laplacian, dirac_index, dirac_vs_lichnerowicz,
                    dolbeault_pair, lattice_dirac, lichnerowicz_laplacian,
                    spectrum, verify_corollary_1_2, verify_theorem_1_1,
                    verify_theorem_3_1, verify_theorem_3_10)

__version__ = "0.1.0"
