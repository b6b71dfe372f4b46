"""satlab: saturation of finite group and Hopf actions on finite-dimensional C*-algebras."""

__version__ = "0.1.0"

from .algebra_core import AlgebraElement, StarAlgebra  # noqa: E402
from .errors import (  # noqa: E402
    CapacityError,
    ConsistencyError,
    ConstructionError,
    IndexFiniteTypeError,
    PreconditionError,
    ProblemFileError,
    SatlabError,
    StructuralError,
)
from .group_action import FiniteGroup, GroupAction  # noqa: E402

__all__ = [
    "AlgebraElement",
    "StarAlgebra",
    "FiniteGroup",
    "GroupAction",
    "SatlabError",
    "StructuralError",
    "PreconditionError",
    "ConstructionError",
    "CapacityError",
    "ConsistencyError",
    "IndexFiniteTypeError",
    "ProblemFileError",
]
