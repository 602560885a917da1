"""Reading and writing complexes, Morse functions and matchings as JSON."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .complex import SymmetricDeltaComplex
from .errors import ComplexFormatError, UnknownOrbitError
from .matching import Matching
from .morse import DiscreteMorseFunction, parse_value

PathLike = Union[str, Path]

COMPLEX_FIELDS = {"max_dim", "simplices", "transpositions", "faces"}


def dumps(obj: Any) -> str:
    """Canonical text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _read(path: PathLike) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ComplexFormatError(f"{path}: cannot read file ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexFormatError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _write(path: PathLike, obj: Any) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


# -- complexes -------------------------------------------------------------------


def complex_from_dict(data: Any, where: str = "complex") -> SymmetricDeltaComplex:
    if not isinstance(data, dict):
        raise ComplexFormatError(f"{where}: top level must be an object")
    unknown = set(data) - COMPLEX_FIELDS
    if unknown:
        raise ComplexFormatError(f"{where}: unknown fields {sorted(unknown)}")
    missing = COMPLEX_FIELDS - set(data)
    if missing:
        raise ComplexFormatError(f"{where}: missing fields {sorted(missing)}")
    simplices, acts, fcs = data["simplices"], data["transpositions"], data["faces"]
    if not isinstance(data["max_dim"], int) or isinstance(data["max_dim"], bool):
        raise ComplexFormatError(f"{where}: max_dim must be an integer")
    if not isinstance(simplices, list) or not all(isinstance(xs, list) for xs in simplices):
        raise ComplexFormatError(f"{where}: simplices must be an array of arrays")
    if data["max_dim"] != len(simplices) - 1:
        raise ComplexFormatError(
            f"{where}: max_dim is {data['max_dim']} but {len(simplices)} dimensions are listed"
        )
    for name, blocks in (("transpositions", acts), ("faces", fcs)):
        if not isinstance(blocks, list) or not all(
            isinstance(b, list) and all(isinstance(m, dict) for m in b) for b in blocks
        ):
            raise ComplexFormatError(f"{where}: {name} must be an array of arrays of objects")
    try:
        return SymmetricDeltaComplex(simplices, acts, fcs)
    except ComplexFormatError as exc:
        raise ComplexFormatError(f"{where}: {exc}") from exc


def load_complex(path: PathLike) -> SymmetricDeltaComplex:
    return complex_from_dict(_read(path), str(path))


def dump_complex(X: SymmetricDeltaComplex, path: PathLike) -> None:
    _write(path, X.to_dict())


# -- Morse functions -------------------------------------------------------------


def dmf_to_json(f: DiscreteMorseFunction) -> dict[str, Union[int, str]]:
    return {rep: _number(Fraction(v)) for rep, v in f.to_dict().items()}


def _number(v: Fraction) -> Union[int, str]:
    return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def dmf_from_dict(X: SymmetricDeltaComplex, data: Any, where: str = "dmf") -> DiscreteMorseFunction:
    if not isinstance(data, dict):
        raise ComplexFormatError(f"{where}: expected an object mapping orbit representatives to values")
    for key, v in data.items():
        if isinstance(v, (bool, float)) or not isinstance(v, (int, str)):
            raise ComplexFormatError(f"{where}: value for {key!r} must be an integer or a string 'n/d'")
        try:
            parse_value(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise ComplexFormatError(f"{where}: bad value {v!r} for {key!r}") from exc
    return DiscreteMorseFunction.from_simplices(X, data)


def load_dmf(X: SymmetricDeltaComplex, path: PathLike) -> DiscreteMorseFunction:
    return dmf_from_dict(X, _read(path), str(path))


def dump_dmf(f: DiscreteMorseFunction, path: PathLike) -> None:
    _write(path, dmf_to_json(f))


# -- matchings -------------------------------------------------------------------


def matching_from_list(X: SymmetricDeltaComplex, data: Any, where: str = "matching") -> Matching:
    if not isinstance(data, list):
        raise ComplexFormatError(f"{where}: expected an array of [lower, upper] pairs")
    pairs = []
    for k, item in enumerate(data):
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(s, str) for s in item)):
            raise ComplexFormatError(f"{where}: entry {k} is not a pair of identifiers")
        for s in item:
            if s not in X:
                raise UnknownOrbitError(f"{where}: entry {k} names unknown simplex {s!r}")
        pairs.append((X.orbit(item[0]), X.orbit(item[1])))
    return Matching.of(pairs)


def load_matching(X: SymmetricDeltaComplex, path: PathLike) -> Matching:
    return matching_from_list(X, _read(path), str(path))


def dump_matching(M: Matching, path: PathLike) -> None:
    _write(path, M.to_list())
