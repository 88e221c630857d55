"""Hurwitz continued fractions, binary quadratic forms and small-value counts.

Exact inputs are passed as literals: ``surd(p,q,d,r)`` for (p + q sqrt d)/r,
``rat(p,q)``, plain rationals such as ``"1/2"`` or ``"0.7071"``, and
``form(a=..., b=..., c=..., d=...)``.
"""

from ._hurwitz_forms import (
    BudgetExhausted,
    __version__,
    birkhoff_log_digit,
    component_count,
    constants,
    count,
    expand,
    gauss_generic,
    h_reduce,
    is_h_reduced,
    periodic_value,
    trace,
    verify,
)

__all__ = [
    "BudgetExhausted",
    "__version__",
    "birkhoff_log_digit",
    "component_count",
    "constants",
    "count",
    "expand",
    "gauss_generic",
    "h_reduce",
    "is_h_reduced",
    "periodic_value",
    "trace",
    "verify",
]
