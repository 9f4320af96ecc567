from pathlib import Path
from typing import Optional, Tuple

from ..models.scalar import Scalar
from ..services.parser import parse_input_array


def read_input_file(path: Path, terminator: Optional[Scalar] = None) -> Tuple[Scalar, ...]:
    """Read a whitespace separated array; append ``terminator`` if the file lacks it."""
    values = parse_input_array(Path(path).read_text(encoding="utf-8"))
    if terminator is not None and (not values or values[-1] != terminator):
        values = values + (terminator,)
    return values

