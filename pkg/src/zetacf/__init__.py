"""Continued fractions for zeta values, polygamma values and related periods."""
from .bauer_muir import accelerated_family, bm_check_relation, bm_iterate, bm_solve_r, bm_step
from .cf_engine import (
    GCF,
    clear_denominators,
    convergence_rate,
    convergents,
    equivalence_transform,
    euler_transform,
    eval_cf_numeric,
    parse_cf,
    print_cf,
)
from .exact_arith import PolyQ, RatFunc
from .fixed import FixedFloat
from .hp_numeric import hurwitz_zeta, period_value, psi_cf, psi_table
from .period_algebra import catalog, decompose_period, divisibility_check, family, multiplier, multiplier_cf
from .periods import RationalPeriod

__all__ = [
    "GCF",
    "FixedFloat",
    "PolyQ",
    "RatFunc",
    "RationalPeriod",
    "accelerated_family",
    "bm_check_relation",
    "bm_iterate",
    "bm_solve_r",
    "bm_step",
    "catalog",
    "clear_denominators",
    "convergence_rate",
    "convergents",
    "decompose_period",
    "divisibility_check",
    "equivalence_transform",
    "euler_transform",
    "eval_cf_numeric",
    "family",
    "hurwitz_zeta",
    "multiplier",
    "multiplier_cf",
    "parse_cf",
    "period_value",
    "print_cf",
    "psi_cf",
    "psi_table",
]
