"""JSON encodings for channels, states and verification reports.

Complex numbers are two-element arrays ``[re, im]``; matrices are row-major
lists of rows.  Every document carries ``"schema": 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .linalg import check_dim, superop_dim

__all__ = [
    "SCHEMA",
    "SchemaError",
    "encode_complex_array",
    "decode_complex_array",
    "ChannelSpec",
    "load_channel",
    "save_channel",
    "StateSpec",
    "load_state",
    "save_state",
    "Check",
    "Report",
]

SCHEMA = 1


class SchemaError(ValueError):
    """A JSON document does not match the expected layout."""


def encode_complex_array(a) -> list:
    a = np.asarray(a, dtype=complex)
    pairs = np.stack([a.real, a.imag], axis=-1)
    return pairs.tolist()


def decode_complex_array(obj, ndim: int) -> np.ndarray:
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"malformed complex array: {exc}") from None
    if arr.ndim != ndim + 1 or arr.shape[-1] != 2:
        raise SchemaError(f"expected a {ndim}-d array of [re, im] pairs, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise SchemaError("complex array has non-finite entries")
    return arr[..., 0] + 1j * arr[..., 1]


def _check_schema(doc):
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise SchemaError(f"unsupported schema {doc.get('schema')!r}; expected {SCHEMA}")
    try:
        return check_dim(doc["dim"])
    except KeyError:
        raise SchemaError("missing field 'dim'") from None
    except (TypeError, ValueError) as exc:
        raise SchemaError(str(exc)) from None


_CHANNEL_KINDS = ("kraus", "superop", "unitary")


@dataclass(frozen=True)
class ChannelSpec:
    """A channel given by exactly one of a Kraus list, a superoperator or a unitary."""

    dim: int
    kind: str
    data: object  # list of operators for kraus, a matrix otherwise

    def superop(self) -> np.ndarray:
        from .evolutions import kraus_superop, unitary_superop

        if self.kind == "kraus":
            return kraus_superop(self.data)
        if self.kind == "unitary":
            return unitary_superop(self.data)
        return np.array(self.data, dtype=complex)

    def to_dict(self) -> dict:
        if self.kind == "kraus":
            payload = [encode_complex_array(K) for K in self.data]
        else:
            payload = encode_complex_array(self.data)
        return {"schema": SCHEMA, "dim": self.dim, self.kind: payload}

    @classmethod
    def from_dict(cls, doc) -> "ChannelSpec":
        d = _check_schema(doc)
        present = [k for k in _CHANNEL_KINDS if k in doc]
        if len(present) != 1:
            raise SchemaError(f"channel needs exactly one of {_CHANNEL_KINDS}, found {present}")
        kind = present[0]
        if kind == "kraus":
            if not isinstance(doc["kraus"], list) or not doc["kraus"]:
                raise SchemaError("'kraus' must be a nonempty list")
            data = tuple(decode_complex_array(K, 2) for K in doc["kraus"])
            if any(K.shape != (d, d) for K in data):
                raise SchemaError(f"Kraus operators must be {d}x{d}")
        else:
            data = decode_complex_array(doc[kind], 2)
            n = d * d if kind == "superop" else d
            if data.shape != (n, n):
                raise SchemaError(f"'{kind}' must be {n}x{n}, got {data.shape}")
            if kind == "superop":
                superop_dim(data)
        return cls(d, kind, data)

    def __eq__(self, other):
        if not isinstance(other, ChannelSpec):
            return NotImplemented
        if (self.dim, self.kind) != (other.dim, other.kind):
            return False
        a = self.data if self.kind == "kraus" else (self.data,)
        b = other.data if other.kind == "kraus" else (other.data,)
        return len(a) == len(b) and all(np.array_equal(x, y) for x, y in zip(a, b))

    __hash__ = None


def load_channel(path) -> ChannelSpec:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
    return ChannelSpec.from_dict(doc)


def save_channel(spec: ChannelSpec, path) -> None:
    with open(path, "w") as fh:
        json.dump(spec.to_dict(), fh)


@dataclass(frozen=True)
class StateSpec:
    """A state vector or density matrix."""

    dim: int
    kind: str  # "vector" or "density"
    data: np.ndarray

    def density(self) -> np.ndarray:
        if self.kind == "vector":
            return np.outer(self.data, self.data.conj())
        return self.data

    def to_dict(self) -> dict:
        return {"schema": SCHEMA, "dim": self.dim, self.kind: encode_complex_array(self.data)}

    @classmethod
    def from_dict(cls, doc) -> "StateSpec":
        d = _check_schema(doc)
        present = [k for k in ("vector", "density") if k in doc]
        if len(present) != 1:
            raise SchemaError(f"state needs exactly one of 'vector', 'density', found {present}")
        kind = present[0]
        data = decode_complex_array(doc[kind], 1 if kind == "vector" else 2)
        expected = (d,) if kind == "vector" else (d, d)
        if data.shape != expected:
            raise SchemaError(f"'{kind}' must have shape {expected}, got {data.shape}")
        return cls(d, kind, data)

    def __eq__(self, other):
        if not isinstance(other, StateSpec):
            return NotImplemented
        return (self.dim, self.kind) == (other.dim, other.kind) and np.array_equal(self.data, other.data)

    __hash__ = None


def load_state(path) -> StateSpec:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
    return StateSpec.from_dict(doc)


def save_state(spec: StateSpec, path) -> None:
    with open(path, "w") as fh:
        json.dump(spec.to_dict(), fh)


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float
    passed: bool

    @classmethod
    def make(cls, name: str, residual: float, tolerance: float) -> "Check":
        residual = float(residual)
        return cls(name, residual, float(tolerance), bool(residual <= tolerance))

    def to_dict(self) -> dict:
        return {"name": self.name, "residual": self.residual, "tolerance": self.tolerance, "pass": self.passed}

    @classmethod
    def from_dict(cls, doc) -> "Check":
        return cls(doc["name"], float(doc["residual"]), float(doc["tolerance"]), bool(doc["pass"]))


@dataclass(frozen=True)
class Report:
    """Outcome of a verification suite; ``passed`` holds iff every check passed."""

    suite: str
    dim: int | None
    seed: int | None
    checks: tuple
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "dim": self.dim,
            "seed": self.seed,
            "checks": [c.to_dict() for c in self.checks],
            "wall_time": self.wall_time,
            "passed": self.passed,
            "extra": self.extra,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, doc) -> "Report":
        if doc.get("schema") != SCHEMA:
            raise SchemaError(f"unsupported schema {doc.get('schema')!r}")
        checks = tuple(Check.from_dict(c) for c in doc["checks"])
        return cls(doc["suite"], doc["dim"], doc["seed"], checks, float(doc["wall_time"]), dict(doc.get("extra", {})))
