"""t-(v,k) trade toolkit: construction, algebra, and exhaustive volume-gap search."""

from ._core import (
    SearchStatus,
    Trade,
    are_isomorphic,
    derived_trade,
    forbidden_volumes,
    foundation_bounds,
    minimal_trade,
    search,
    trade_difference,
    trade_sum,
    validate_ttf,
    verify_gaps,
)

__all__ = [
    "SearchStatus",
    "Trade",
    "are_isomorphic",
    "derived_trade",
    "forbidden_volumes",
    "foundation_bounds",
    "minimal_trade",
    "search",
    "trade_difference",
    "trade_sum",
    "validate_ttf",
    "verify_gaps",
]
