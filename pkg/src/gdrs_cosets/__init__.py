"""Coset weight distributions of normalized GDRS codes via subset-sum counts."""

from .errors import (
    BudgetExceeded,
    DistanceTooSmall,
    GdrsError,
    LogOfZero,
    MassMismatch,
    MuOutOfRange,
    NonIntegralCount,
    NonIntegralResult,
    NoModulusAvailable,
    NotPrimePower,
    NotUniformCase,
    RouteMismatch,
)
from .fields import FieldSpec, make_field, product_peculiarity_bruteforce, product_peculiarity_table
from .gdrs import (
    CosetLeader2,
    GdrsCode,
    WeightDistribution,
    bd2_total,
    bonneau_extend,
    check_2_regular,
    coset_wd_weight1,
    coset_wd_weight2,
    coset_wd_weight2_uniform,
    make_code,
    mds_code_wd,
    necessary_condition,
    oracle_bd2,
    oracle_full_coset_wd,
    symmetry_residual,
    weight2_classes,
)
from .peculiarity import (
    PeculiarityTable,
    bruteforce_table,
    closed_form_table,
    compute_table,
    profile_table,
    reconcile,
    sum_peculiarity_bruteforce,
    sum_peculiarity_closed_form,
    sum_peculiarity_profile,
    verify_conjectures,
)
from .ring_orbits import RingContext, enumerate_profiles, n_sigma, orbit_partition

__version__ = "0.1.0"
