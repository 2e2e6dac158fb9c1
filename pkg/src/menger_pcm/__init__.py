"""Menger probabilistic cone metric spaces: kernels, topology, convexity, fixed points."""
from .cone import ConeSpec, Order, check_cone_axioms, common_lower_interior, normal_constant_estimate
from .convexity import (ConvexStructure, check_g1, check_g3, check_strict_convexity,
                        closed_ball_convexity_check, closed_convex_shell, is_convex_set, s_point)
from .errors import (ConfigError, ConstructionError, DimensionError, DomainError,
                     FixedPointNotFoundError, InputError, PCMError, PreconditionError,
                     UnsupportedError, WitnessNotFoundError)
from .fixedpoint import (FixedPointResult, SelfMap, check_nonexpansive, check_pair_condition,
                         find_common_fixed_point, verify_fixed_point)
from .pcm_space import (ConeMetric, FinitePoints, Interval, Kernel, Naturals, PcmSpace,
                        check_cone_metric_axioms, check_pcm_axioms, exp_ratio_space,
                        fraction_space, from_cone_metric, heaviside_space, rational_pair_space)
from .report import AxiomReport, Check, Report, emit_report
from .tnorm import TNorm, check_tnorm_axioms, find_companion, find_idempotent_bound
from .topology import (DiameterProfile, HausdorffWitness, Neighborhood, NonDiametral, Verdict,
                       ball_members, balls_disjoint, converges,
                       diameter_profile, find_nondiametral, hausdorff_witness, is_cauchy,
                       is_fc_bounded, member, neighborhood_monotone_check, prob_diameter,
                       totally_bounded_cover)

__version__ = "0.1.0"
