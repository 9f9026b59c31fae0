"""Higher arithmetic intersection pairings over Q(i), at dimension zero.

The package computes cubical boundary calculus for parametrized higher
Chow pre-cycles over Spec F, the Goncharov regulator in the Thom-Whitney
Deligne model (closed forms plus a numerical-integration oracle), the
Steinberg decomposition engine in Lambda^2(F^x tensor Q) behind K_2, and
the intersection pairings ( , )_{p,q} reduced modulo the regulator image.
"""

from .field import Fe, FieldElement, FieldSpec, QI, embed, factor, is_log_kernel, parse_element
from .cubical import (
    INF,
    BoxPoint,
    Const,
    FormalCycle,
    Precycle,
    Rat,
    boundary,
    commutativity_homotopy,
    face,
    h_pullback,
    is_degenerate,
    is_normalized,
    is_refined_normalized,
    product,
    totaro_curve,
    z_generator,
)

__version__ = "0.1.0"
