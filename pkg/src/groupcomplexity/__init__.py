"""Presentation complexity and triangular invariants of finitely presented
groups: builders, bounds, continued-fraction machinery, and exhaustive search
for minimal presentations of small cyclic groups."""

from .abelian import (
    AbelianInvariants,
    BoundsReport,
    abelian_invariants,
    bounds_report,
    largest_root,
    smith_normal_form,
)
from .contfrac import (
    CFExpansion,
    cf_expand,
    cf_reconstruct,
    fibonacci_pair,
    is_weak_zaremba,
    is_zaremba,
    lens_bounds,
    seifert_manifold_bounds,
    zaremba_partner_scan,
)
from .coset import enumerate_cosets, verify_cyclic
from .families import (
    MilnorSpec,
    abelian_presentation,
    cyclic_presentation,
    ell,
    ell_table,
    milnor_bounds,
    milnor_closed_form_length,
    milnor_presentation,
)
from .presentation import (
    ParseError,
    Presentation,
    format_presentation,
    length,
    make_presentation,
    parse_presentation,
    simplify,
    t_cost,
    triangularize,
)
from .search import (
    SearchResult,
    canonical_form,
    enumerate_presentations,
    exact_cyclic_complexity,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianInvariants",
    "BoundsReport",
    "CFExpansion",
    "MilnorSpec",
    "ParseError",
    "Presentation",
    "SearchResult",
    "abelian_invariants",
    "abelian_presentation",
    "bounds_report",
    "canonical_form",
    "cf_expand",
    "cf_reconstruct",
    "cyclic_presentation",
    "ell",
    "ell_table",
    "enumerate_cosets",
    "enumerate_presentations",
    "exact_cyclic_complexity",
    "fibonacci_pair",
    "format_presentation",
    "is_weak_zaremba",
    "is_zaremba",
    "largest_root",
    "length",
    "lens_bounds",
    "make_presentation",
    "milnor_bounds",
    "milnor_closed_form_length",
    "milnor_presentation",
    "parse_presentation",
    "seifert_manifold_bounds",
    "simplify",
    "smith_normal_form",
    "t_cost",
    "triangularize",
    "verify_cyclic",
    "zaremba_partner_scan",
]
