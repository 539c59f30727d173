"""Distributionally robust posted pricing from conversion-rate experiments."""

try:
    from ._robustpricing import (  # noqa: F401
        DemandModel,
        DistributionClass,
        InformationSet,
        certify_r_star,
        constant_virtual_value,
        gamma,
        gamma_inv,
        is_feasible,
        lower_envelope_value,
        maximin_lower_bound,
        meta_dynamic_pricing,
        regular_slopes,
        revenue_at,
        ternary_search,
        upper_envelope_value,
        upper_left_limit,
        worst_case_ratio,
    )
except ImportError:  # running against a plain CMake build tree
    from _robustpricing import (  # noqa: F401
        DemandModel,
        DistributionClass,
        InformationSet,
        certify_r_star,
        constant_virtual_value,
        gamma,
        gamma_inv,
        is_feasible,
        lower_envelope_value,
        maximin_lower_bound,
        meta_dynamic_pricing,
        regular_slopes,
        revenue_at,
        ternary_search,
        upper_envelope_value,
        upper_left_limit,
        worst_case_ratio,
    )

__all__ = [
    "DemandModel",
    "DistributionClass",
    "InformationSet",
    "certify_r_star",
    "constant_virtual_value",
    "gamma",
    "gamma_inv",
    "is_feasible",
    "lower_envelope_value",
    "maximin_lower_bound",
    "meta_dynamic_pricing",
    "regular_slopes",
    "revenue_at",
    "ternary_search",
    "upper_envelope_value",
    "upper_left_limit",
    "worst_case_ratio",
]
