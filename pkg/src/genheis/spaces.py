"""Finite-dimensional normed spaces and their dual pairings.

A :class:`PairingSpace` bundles a coordinate space ``E = R^dim`` with the
weighted ``p``-norm ``(sum |c_i|^p * weight)^(1/p)``, its dual ``F`` carrying the
``q``-norm (``1/p + 1/q = 1``) and the evaluation ``w(x, f) = sum x_i f_i * weight``.

Three models are provided:

* ``ell(p, dim)``: the sequence space l_p^dim, weight 1 (dot-product pairing);
* ``lp_interval(p, dim)``: dyadic step functions on [0, 1], weight ``1/dim``, so
  norms and pairings are exact quadratures of the L_p integrals;
* ``c0(dim)``: a truncation of c_0 under the sup norm, dual l_1.

Vectors are plain numpy arrays. In exact mode they are object arrays of
``gmpy2.mpq``; in float mode they are ``float64`` arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import gmpy2
import numpy as np

from .errors import DimensionError, DomainError, ModeError

SUP = math.inf
EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

# conditioning guard for the float-mode norming functional
FLOAT_P_RANGE = (1.2, 6.0)


def rational(value: Any) -> gmpy2.mpq:
    """Convert ints, Fractions, mpq, decimal/fraction strings or floats exactly."""
    if isinstance(value, type(gmpy2.mpq())):
        return value
    if isinstance(value, Fraction):
        return gmpy2.mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return gmpy2.mpq(Fraction(value.strip()))
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise DomainError(f"cannot convert {value!r} to a rational")
        return gmpy2.mpq(Fraction(float(value)))
    return gmpy2.mpq(int(value))


def is_rational_array(v: np.ndarray) -> bool:
    return v.dtype == object


def _freeze(v: np.ndarray) -> np.ndarray:
    v.flags.writeable = False
    return v


@dataclass(frozen=True)
class PairingSpace:
    """A weighted l_p model of ``(E, F, w)``.

    Parameters
    ----------
    dim : int
        Number of coordinates.
    p : number
        Exponent of the norm on ``E``; ``SUP`` (``math.inf``) selects the sup norm.
    weight : number
        Quadrature weight per coordinate (1 for l_p, ``1/dim`` for step functions).
    mode : {"exact", "float"}
        Scalar field used for every coordinate of this space.
    """

    dim: int
    p: Any = 2
    weight: Any = 1
    mode: str = EXACT
    exact: bool = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise DimensionError(f"dim must be a positive integer, got {self.dim!r}")
        if self.mode not in MODES:
            raise ModeError(f"mode must be one of {MODES}, got {self.mode!r}")
        p = self.p
        if p != SUP:
            if not p >= 1:
                raise DomainError(f"p must be >= 1 or SUP, got {p!r}")
            p = rational(p) if self.mode == EXACT else float(p)
        w = rational(self.weight) if self.mode == EXACT else float(self.weight)
        if not w > 0:
            raise DomainError(f"weight must be positive, got {self.weight!r}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "weight", w)
        object.__setattr__(self, "exact", self.mode == EXACT)

    # -- constructors -----------------------------------------------------

    @classmethod
    def ell(cls, p, dim: int, mode: str = EXACT) -> "PairingSpace":
        return cls(dim=dim, p=p, weight=1, mode=mode)

    @classmethod
    def lp_interval(cls, p, dim: int, mode: str = EXACT) -> "PairingSpace":
        """Step functions on the dyadic partition of [0, 1] into ``dim`` cells."""
        if dim < 1 or dim & (dim - 1):
            raise DimensionError(f"dyadic grid needs a power-of-two dim, got {dim}")
        weight = Fraction(1, dim) if mode == EXACT else 1.0 / dim
        return cls(dim=dim, p=p, weight=weight, mode=mode)

    @classmethod
    def c0(cls, dim: int, mode: str = EXACT) -> "PairingSpace":
        return cls(dim=dim, p=SUP, weight=1, mode=mode)

    # -- basic data -------------------------------------------------------

    @property
    def q(self):
        """Dual exponent: ``1/p + 1/q = 1`` (l_1 and l_inf are swapped)."""
        if self.p == SUP:
            return rational(1) if self.exact else 1.0
        if self.p == 1:
            return SUP
        return self.p / (self.p - 1)

    @property
    def is_dot_product(self) -> bool:
        return self.weight == 1

    def scalar(self, value):
        if self.exact:
            if isinstance(value, (float, np.floating)):
                raise ModeError("float scalar passed to an exact space")
            return rational(value)
        return float(value)

    def vector(self, values: Sequence) -> np.ndarray:
        """Coerce ``values`` to a frozen coordinate array of this space."""
        if isinstance(values, np.ndarray):
            if self.exact and values.dtype.kind == "f":
                raise ModeError("float array passed to an exact space")
            if not self.exact and values.dtype == object:
                values = values.astype(float)
        if self.exact:
            arr = np.empty(len(values), dtype=object)
            arr[:] = [rational(v) for v in values]
        else:
            arr = np.array(values, dtype=float)
        if arr.shape != (self.dim,):
            raise DimensionError(f"expected {self.dim} coordinates, got shape {arr.shape}")
        return _freeze(arr)

    def zeros(self) -> np.ndarray:
        return self.vector([0] * self.dim)

    def basis(self, k: int) -> np.ndarray:
        coords = [0] * self.dim
        coords[k] = 1
        return self.vector(coords)

    def check(self, v: np.ndarray, name: str = "vector") -> None:
        if not isinstance(v, np.ndarray) or v.shape[-1:] != (self.dim,):
            shape = getattr(v, "shape", None)
            raise DimensionError(f"{name} has shape {shape}, space dim is {self.dim}")
        if is_rational_array(v) != self.exact:
            raise ModeError(f"{name} scalar type does not match {self.mode} mode")

    # -- norms ------------------------------------------------------------

    def _norm(self, v: np.ndarray, e):
        if e == SUP:
            return np.abs(v).max(axis=-1)
        if e == 1:
            return np.abs(v).sum(axis=-1) * self.weight
        vf = np.asarray(v, dtype=float)
        ef = float(e)
        return (np.power(np.abs(vf), ef).sum(axis=-1) * float(self.weight)) ** (1.0 / ef)

    def norm(self, v: np.ndarray):
        """Norm of a vector of ``E`` (batched over leading axes).

        Exact (an ``mpq``) for the sup norm and for ``p = 1`` in exact mode,
        otherwise a float.
        """
        self.check(v)
        return self._norm(v, self.p)

    def dual_norm(self, f: np.ndarray):
        """Norm of a covector of ``F`` in the dual exponent ``q``."""
        self.check(f, "covector")
        return self._norm(f, self.q)

    def norm_pow_p(self, v: np.ndarray, exponent=None):
        """``sum |v_i|^e * weight``, exact for integer ``e`` on rational coordinates."""
        self.check(v)
        e = self.p if exponent is None else exponent
        if e == SUP:
            raise DomainError("the sup norm has no p-th power sum")
        if self.exact and int(e) == e:
            e = int(e)
            return sum(abs(c) ** e for c in v) * self.weight
        return self._norm(v, e) ** float(e)

    def pair(self, x: np.ndarray, f: np.ndarray):
        """Canonical evaluation ``w(x, f) = f(x)``; exact in exact mode."""
        self.check(x)
        self.check(f, "covector")
        return (x * f).sum(axis=-1) * self.weight

    def norming_functional(self, x: np.ndarray) -> np.ndarray:
        """Unit covector ``f`` with ``f(x) = ||x||`` (finite-dimensional Hahn-Banach).

        For ``1 < p < inf`` this is ``sign(x)|x|^(p-1) / ||x||^(p-1)``. The l_1 and
        sup cases are exact in exact mode; the others need float mode.
        """
        self.check(x)
        if not any(x):
            raise DomainError("the zero vector has no norming functional")
        if self.p == 1:
            return self.vector([(c > 0) - (c < 0) for c in x])
        if self.p == SUP:
            k = int(np.argmax(np.abs(x)))
            coords = [0] * self.dim
            coords[k] = ((x[k] > 0) - (x[k] < 0)) / self.weight
            return self.vector(coords)
        if self.exact:
            raise ModeError(f"norming functional for p={self.p} is irrational; use float mode")
        lo, hi = FLOAT_P_RANGE
        if not lo <= self.p <= hi:
            raise DomainError(f"float-mode p must lie in [{lo}, {hi}], got {self.p}")
        nx = self.norm(x)
        f = np.sign(x) * (np.abs(x) / nx) ** (self.p - 1)
        return _freeze(f)

    # -- step-function refinement ------------------------------------------

    def refine(self, v: np.ndarray, factor: int = 2):
        """Split each cell into ``factor`` cells; returns ``(finer_space, finer_v)``.

        Norms and pairings are unchanged because the weight shrinks by ``factor``.
        """
        self.check(v)
        finer = PairingSpace(
            dim=self.dim * factor, p=self.p, weight=self.weight / factor, mode=self.mode
        )
        return finer, finer.vector(np.repeat(v, factor))

    # -- sampling and serialization ---------------------------------------

    def random_rationals(self, rng: np.random.Generator, count: int, scale=1, max_den: int = 9) -> list:
        """``count`` rationals in ``[-scale, scale]`` with denominators up to ``max_den``."""
        dens = rng.integers(1, max_den + 1, size=count)
        nums = rng.integers(-scale * dens, scale * dens + 1)
        return [gmpy2.mpq(int(n), int(d)) for n, d in zip(nums, dens)]

    def random_vector(self, rng: np.random.Generator, scale=1, max_den: int = 9) -> np.ndarray:
        """Random coordinates in ``[-scale, scale]``; small-denominator rationals in exact mode."""
        if self.exact:
            arr = np.empty(self.dim, dtype=object)
            arr[:] = self.random_rationals(rng, self.dim, scale, max_den)
            return _freeze(arr)
        return self.vector(rng.uniform(-scale, scale, size=self.dim))

    def to_json(self, v: np.ndarray) -> list:
        """Exact coordinates become rational strings (``"3/4"``); floats stay floats."""
        self.check(v)
        if self.exact:
            return [str(c) for c in v]
        return [float(c) for c in v]

    def from_json(self, data: list) -> np.ndarray:
        return self.vector(data)

    def describe(self) -> dict:
        return {
            "dim": self.dim,
            "p": "sup" if self.p == SUP else str(self.p),
            "weight": str(self.weight),
            "mode": self.mode,
        }
