"""Linear-time 0-dimensional persistence for sampled functions on a line or a circle."""

from ._backend import BACKEND, COMPILED
from .circle import circle_diagram
from .core import (
    Diagram,
    FunctionPair,
    FunctionSample,
    InputError,
    InvariantError,
    OrderedValue,
    Ordering,
    PersistencePair,
    Topology,
    compare,
    diagram_equal,
)
from .image import image_diagram
from .line import line_diagram, line_diagram_stream
from .oracle import oracle_circle, oracle_image, oracle_line, oracle_line_fast
from .parallel import parallel_line_diagram

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "COMPILED",
    "Diagram",
    "FunctionPair",
    "FunctionSample",
    "InputError",
    "InvariantError",
    "OrderedValue",
    "Ordering",
    "PersistencePair",
    "Topology",
    "circle_diagram",
    "compare",
    "diagram_equal",
    "image_diagram",
    "line_diagram",
    "line_diagram_stream",
    "oracle_circle",
    "oracle_image",
    "oracle_line",
    "oracle_line_fast",
    "parallel_line_diagram",
]
