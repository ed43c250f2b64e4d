"""Exact constructions of the Boroczky B12 and B15 line arrangements."""

__version__ = "0.1.0"

from .errors import BoroczkyError  # noqa: E402
from .projgeom import Configuration, ProjLine, ProjPoint, census, join, meet  # noqa: E402
from .scalar import QQ, FieldElement, PrimeField, QuadExt, parse_field  # noqa: E402

__all__ = [
    "BoroczkyError",
    "Configuration",
    "FieldElement",
    "PrimeField",
    "ProjLine",
    "ProjPoint",
    "QQ",
    "QuadExt",
    "census",
    "join",
    "meet",
    "parse_field",
    "__version__",
]
