"""qtmlab: exact quantum Turing machine simulation, gate compilation,
and hybrid-device experiments."""

__version__ = "0.1.0"

from .exactnum import ExactAmplitude, exact_mul
from .linalg import DenseUnitary, operator_norm
from .distributions import OutputDistribution, tvd

__all__ = [
    "ExactAmplitude",
    "exact_mul",
    "DenseUnitary",
    "operator_norm",
    "OutputDistribution",
    "tvd",
    "__version__",
]
