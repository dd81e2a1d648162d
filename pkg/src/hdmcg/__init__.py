"""Exact-arithmetic invariants of mapping class groups of g-fold connected
sums of S^n x S^n for odd n >= 3."""

from .abgroups import (FinAbGroup, GroupElement, direct_sum, element_order,
                       from_relations, quotient_by, subgroup_iso)
from .cocycles import (AffineSurfaceClass, BarTwoCycle, SurfaceClass,
                       chi2_of_class, divided_eval, meyer_tau,
                       signature_of_class, surface_two_cycle)
from .cohomology import (GModule, Presentation, abelianization, coinvariants,
                         fox_derivative, h1, invariants)
from .linalg import IntMatrix, SNFResult, exact_signature, kernel_basis, snf
from .mcg import (MCGParams, MCGReport, coinvariants_closed,
                  extension_descriptor, full_report, h1_Gg, h1_mcg,
                  h1_torelli, haut_report, reproduce_table3, s_pi_n_so,
                  splitting_decisions)
from .spheres import (AlmostClosedInvariants, SphereData, bernoulli,
                      boundary_of_plumbing, bp_order, coker_j,
                      minimal_signature, omega_tau, theta_data)
from .symplectic import (GroupFamily, WallForm, is_member, j_matrix, q_eval,
                         standard_generators, theta_index)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
