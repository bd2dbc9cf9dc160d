"""Utilities for serializing Fourier-Taylor functions to the JSON interchange format.

The document shape is::

    {"window": {"sigma": .., "R": .., "n": ..},
     "real": true,
     "modes": [{"k": [..], "a": [re, im], "b": [[re, im], ..]}, ..]}

with modes in lexicographic order of k.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from pydantic import BaseModel, Field

from .series import FourierTaylorFunction
from .window import AnalyticityWindow


class WindowDocument(BaseModel):
    sigma: float = Field(gt=0)
    R: float = Field(gt=1)
    n: int = Field(ge=1)


class ModeDocument(BaseModel):
    k: list[int]
    a: tuple[float, float]
    b: list[tuple[float, float]]


class FunctionDocument(BaseModel):
    """Serialized FourierTaylorFunction."""

    window: WindowDocument
    real: bool = True
    modes: list[ModeDocument] = []


def _pair(z: complex) -> tuple[float, float]:
    return float(z.real), float(z.imag)


def to_document(f: FourierTaylorFunction) -> FunctionDocument:
    window = WindowDocument(sigma=f.window.sigma, R=f.window.R, n=f.window.n)
    modes = [
        ModeDocument(k=list(k), a=_pair(a_k), b=[_pair(complex(x)) for x in b_k])
        for k, a_k, b_k in f.modes()
    ]
    return FunctionDocument(window=window, real=f.real, modes=modes)


def from_document(doc: FunctionDocument) -> FourierTaylorFunction:
    window = AnalyticityWindow(sigma=doc.window.sigma, R=doc.window.R, n=doc.window.n)
    for mode in doc.modes:
        if len(mode.k) != window.n or len(mode.b) != window.n:
            raise ValueError(f"mode {mode.k} does not match window dimension {window.n}")
    if not doc.modes:
        return FourierTaylorFunction.zero(window)
    keys = np.array([mode.k for mode in doc.modes], dtype=np.int64)
    a = np.array([complex(*mode.a) for mode in doc.modes])
    b = np.array([[complex(*pair) for pair in mode.b] for mode in doc.modes])
    return FourierTaylorFunction(window, keys, a, b, real=doc.real)


def dumps(f: FourierTaylorFunction) -> str:
    return to_document(f).model_dump_json(indent=2)


def loads(text: str) -> FourierTaylorFunction:
    return from_document(FunctionDocument.model_validate_json(text))


def write_function(f: FourierTaylorFunction, path: Path) -> None:
    path.write_text(dumps(f), encoding="utf-8")


def read_function(path: Path) -> FourierTaylorFunction:
    """Load a function file; accepts either the bare document or one nested under "hamiltonian"."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if "hamiltonian" in data:
        data = data["hamiltonian"]
    return from_document(FunctionDocument.model_validate(data))
