"""Deformed Cayley-Klein Hopf algebras: construction and exact verification."""
from .scalar import ModeError, Scalar
from .ncalg import Element, TensorElement, truncate
from .presentation import (
    Presentation,
    PresentationError,
    build_presentation,
    change_basis,
    hat_j,
    omega_prod,
    sector_of,
)
from .rewrite import active_kernel, check_confluence, normal_form
from .hopf import antipode, coproduct, counit

__version__ = "0.1.0"
