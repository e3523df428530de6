"""Input checks shared by the CLI and the estimator classes."""
from __future__ import annotations

import os
from typing import Iterable, Union

import numpy as np

from .exact_algebra import is_prime
from .simplicial import SimplicialComplex, closure_from_maximal, parse_complex

__all__ = ["check_complex", "check_coefficients", "check_operation", "check_cochain_array",
           "format_coefficients"]


def check_complex(K: Union[SimplicialComplex, str, os.PathLike, Iterable]) -> SimplicialComplex:
    """Accept a complex, a path to a complex file, or an iterable of maximal simplices."""
    if isinstance(K, SimplicialComplex):
        return K
    if isinstance(K, (str, os.PathLike)):
        with open(K, encoding="utf-8") as fh:
            return parse_complex(fh.read())
    try:
        return closure_from_maximal(K)
    except TypeError as exc:
        raise TypeError(f"cannot interpret {type(K).__name__} as a simplicial complex") from exc


def check_coefficients(spec: Union[str, int]) -> int:
    """``'z'`` -> 0, ``'zp:p'`` -> p (p prime). Integers pass through after the same check."""
    if isinstance(spec, int) and not isinstance(spec, bool):
        p = spec
    else:
        s = str(spec).strip().lower()
        if s == "z":
            return 0
        if not s.startswith("zp:") or not s[3:].isdigit():
            raise ValueError(f"coefficients must be 'z' or 'zp:<prime>', got {spec!r}")
        p = int(s[3:])
    if p != 0 and not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


def format_coefficients(p: int) -> str:
    return "Z" if p == 0 else f"Z/{p}"


def check_operation(spec: str) -> tuple[str, int]:
    """``'sq:i'``, ``'p1:p'`` or ``'cup'`` as ``(kind, parameter)``."""
    s = str(spec).strip().lower()
    if s == "cup":
        return "cup", 0
    kind, _, arg = s.partition(":")
    if kind not in ("sq", "p1") or not arg.isdigit():
        raise ValueError(f"operation must be 'sq:<i>', 'p1:<p>' or 'cup', got {spec!r}")
    k = int(arg)
    if kind == "p1" and (k == 2 or not is_prime(k)):
        raise ValueError(f"p1 needs an odd prime, got {k}")
    return kind, k


def check_cochain_array(X, n_features: int, modulus: int) -> np.ndarray:
    """2-D integer array with ``n_features`` columns, reduced mod ``modulus`` when nonzero."""
    arr = np.asarray(X)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D array, got {arr.ndim} dimensions")
    if arr.shape[1] != n_features:
        raise ValueError(f"expected {n_features} columns, got {arr.shape[1]}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValueError("cochain entries must be integers")
    arr = arr.astype(object)
    if modulus:
        arr = arr % modulus
    return arr
