"""Exact-arithmetic regular subgroups of the affine group.

Thin wrapper over the C++ core: construction of regular subgroups of
AGL_n(F) with prescribed translation intersection, full verification,
exhaustive small-case search, and the existence report.
"""

from ._regaff import (
    RegularSubgroup,
    VerifyReport,
    close_group,
    construct,
    direct_product,
    existence_report,
    hegedus_agl32,
    load_group,
    save_group,
    search,
    verify_elements,
)

__all__ = [
    "RegularSubgroup",
    "VerifyReport",
    "close_group",
    "construct",
    "direct_product",
    "existence_report",
    "hegedus_agl32",
    "load_group",
    "save_group",
    "search",
    "verify_elements",
]
