"""Reading and writing instance files (UTF-8 JSON, complex numbers as [re, im])"""

import logging
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

import numpy as np
from pydantic import ValidationError

from core.errors import InputError, InstanceValidationError, ParseError
from models.entropy import ConjugatePair
from models.instance import InstanceFile, LoadedInstance, StateSpec
from models.quantum import DensityMatrix, Ket, Povm
from services.quantum import validate_povm

logger = logging.getLogger(__name__)


def encode_vector(v) -> list[tuple[float, float]]:
    return [(float(z.real), float(z.imag)) for z in np.asarray(v, dtype=np.complex128)]


def encode_matrix(a) -> list[list[tuple[float, float]]]:
    return [encode_vector(row) for row in np.asarray(a, dtype=np.complex128)]


def decode(values) -> np.ndarray:
    """Nested [re, im] pairs to a complex array"""
    pairs = np.asarray(values, dtype=np.float64)
    return pairs[..., 0] + 1j * pairs[..., 1]


def _first_message(e: ValidationError) -> str:
    err = e.errors()[0]
    where = ".".join(str(p) for p in err["loc"])
    return f"{where}: {err['msg']}" if where else err["msg"]


def parse_instance(text: Union[str, bytes]) -> InstanceFile:
    """
    Raises:
        ParseError: not valid JSON
        InstanceValidationError: JSON does not describe a consistent instance
    """
    try:
        return InstanceFile.model_validate_json(text)
    except ValidationError as e:
        if any(err["type"] == "json_invalid" for err in e.errors()):
            raise ParseError(f"invalid JSON: {_first_message(e)}") from e
        raise InstanceValidationError(_first_message(e)) from e


def load_instance(path: Union[str, Path]) -> InstanceFile:
    try:
        text = Path(path).read_bytes()
    except OSError as e:
        logger.error(f"Cannot read instance file {path}: {e}")
        raise ParseError(f"cannot read {path}: {e}") from e
    return parse_instance(text)


def build_instance(instance: InstanceFile, tolerance: Optional[float] = None) -> LoadedInstance:
    """
    Decode and validate every object of the instance.

    POVM failures surface as the named errors of validate_povm (Incomplete,
    NotPositive, NotHermitian); state and order failures as
    InstanceValidationError.
    """
    povms = {
        name: validate_povm([decode(e) for e in elements], tolerance)
        for name, elements in instance.povms.items()
    }
    try:
        if instance.state.ket is not None:
            state = Ket(amplitudes=decode(instance.state.ket))
        else:
            state = DensityMatrix(matrix=decode(instance.state.rho))
        pair = None
        if instance.pair is not None:
            pair = ConjugatePair(alpha=instance.pair[0], beta=instance.pair[1])
    except ValidationError as e:
        raise InstanceValidationError(_first_message(e)) from e
    except InputError as e:
        raise InstanceValidationError(str(e)) from e

    return LoadedInstance(
        state=state, povms=povms, orders=list(instance.orders or []), pair=pair
    )


def instance_from_objects(
    state: Union[Ket, DensityMatrix],
    povms: Mapping[str, Povm],
    orders: Sequence[float] = (),
    pair: Optional[ConjugatePair] = None,
) -> InstanceFile:
    if isinstance(state, Ket):
        spec = StateSpec(ket=encode_vector(state.amplitudes))
    else:
        spec = StateSpec(rho=encode_matrix(state.matrix))
    return InstanceFile(
        dim=state.dim,
        state=spec,
        povms={name: [encode_matrix(e) for e in p.elements] for name, p in povms.items()},
        orders=list(orders) or None,
        pair=(pair.alpha.value, pair.beta.value) if pair else None,
    )


def serialize_instance(instance: InstanceFile) -> str:
    return instance.model_dump_json(indent=2, exclude_none=True)


def dump_instance(path: Union[str, Path], instance: InstanceFile) -> None:
    Path(path).write_text(serialize_instance(instance), encoding="utf-8")
    logger.info(f"Instance written to {path}")
