"""The generalized Heisenberg group ``H(w) = (R x E) ⋊ F``.

Elements are triples ``(a, x, f)`` with ``a`` central, ``x`` in ``E`` and ``f``
in ``F``. The product is::

    (a1, x1, f1) * (a2, x2, f2) = (a1 + a2 + w(x2, f1), x1 + x2, f1 + f2)

where ``w(x, f)`` evaluates the covector ``f`` at the vector ``x`` (vector
argument first). With exact scalars every group law holds with equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DimensionError, ModeError, UnsupportedRepresentationError
from .spaces import PairingSpace, _freeze, rational


@dataclass(frozen=True, eq=False)
class GroupElement:
    """A triple ``(a, x, f)``; ``x`` and ``f`` are frozen coordinate arrays.

    A "batch" element, as produced by :meth:`HeisenbergGroup.product_table`,
    has array-valued ``a`` and leading batch axes on ``x`` and ``f``.
    """

    a: object
    x: np.ndarray
    f: np.ndarray

    def __iter__(self):
        return iter((self.a, self.x, self.f))

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if not isinstance(self.a, np.ndarray) and not isinstance(other.a, np.ndarray):
            return (
                self.a == other.a
                and self.x.shape == other.x.shape
                and self.f.shape == other.f.shape
                and bool((self.x == other.x).all())
                and bool((self.f == other.f).all())
            )
        return (
            bool(np.all(self.a == other.a))
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.f, other.f)
        )

    __hash__ = None

    def __repr__(self):
        if isinstance(self.a, np.ndarray):
            return f"GroupElement(batch of shape {self.a.shape})"
        fmt = ", ".join
        return f"({self.a}, ({fmt(str(c) for c in self.x)}), ({fmt(str(c) for c in self.f)}))"


class HeisenbergGroup:
    """``H(w)`` over a :class:`PairingSpace`.

    ``pairing`` replaces the canonical evaluation by any biadditive map
    ``w(x, f)``; with a custom pairing the center is only probed randomly and
    the matrix model is unavailable.
    """

    def __init__(self, space: PairingSpace, pairing: Optional[Callable] = None):
        self.space = space
        self._custom = pairing is not None
        if pairing is not None:
            self._w = pairing
        elif space.is_dot_product:
            self._w = np.dot
        else:
            weight = space.weight
            self._w = lambda x, f: np.dot(x, f) * weight
        self._shape = (space.dim,)
        self._dtype = np.dtype(object) if space.exact else np.dtype(float)
        zero = space.scalar(0)
        self.identity = GroupElement(zero, space.zeros(), space.zeros())

    def __repr__(self):
        return f"HeisenbergGroup({self.space!r}, custom_pairing={self._custom})"

    @property
    def canonical(self) -> bool:
        return not self._custom

    # -- construction -----------------------------------------------------

    def element(self, a, x: Sequence, f: Sequence) -> GroupElement:
        sp = self.space
        return GroupElement(sp.scalar(a), sp.vector(x), sp.vector(f))

    def random_element(self, rng: np.random.Generator, scale=5) -> GroupElement:
        sp = self.space
        d = sp.dim
        if sp.exact:
            vals = sp.random_rationals(rng, 2 * d + 1, scale)
            x = np.empty(d, dtype=object)
            f = np.empty(d, dtype=object)
            x[:] = vals[1 : d + 1]
            f[:] = vals[d + 1 :]
            return GroupElement(vals[0], _freeze(x), _freeze(f))
        vals = rng.uniform(-scale, scale, size=2 * d + 1)
        return GroupElement(float(vals[0]), _freeze(vals[1 : d + 1].copy()), _freeze(vals[d + 1 :].copy()))

    def _check(self, *elements: GroupElement) -> None:
        shape, dtype = self._shape, self._dtype
        for u in elements:
            if u.x.shape != shape or u.f.shape != shape:
                raise DimensionError(
                    f"element has shapes {u.x.shape}/{u.f.shape}, group dim is {shape[0]}"
                )
            if u.x.dtype != dtype or u.f.dtype != dtype:
                raise ModeError(f"element scalars do not match {self.space.mode} mode")

    def w(self, x: np.ndarray, f: np.ndarray):
        return self._w(x, f)

    # -- group law --------------------------------------------------------

    def multiply(self, u: GroupElement, v: GroupElement) -> GroupElement:
        self._check(u, v)
        return GroupElement(
            u.a + v.a + self._w(v.x, u.f), _freeze(u.x + v.x), _freeze(u.f + v.f)
        )

    def inverse(self, u: GroupElement) -> GroupElement:
        """``(-a + f(x), -x, -f)``."""
        self._check(u)
        return GroupElement(-u.a + self._w(u.x, u.f), _freeze(-u.x), _freeze(-u.f))

    def commutator(self, u: GroupElement, v: GroupElement) -> GroupElement:
        """``u v u^-1 v^-1``, composed from :meth:`multiply` and :meth:`inverse`."""
        uv = self.multiply(u, v)
        return self.multiply(self.multiply(uv, self.inverse(u)), self.inverse(v))

    def commutator_closed_form(self, u: GroupElement, v: GroupElement) -> GroupElement:
        self._check(u, v)
        zero = self.identity.x
        return GroupElement(self._w(v.x, u.f) - self._w(u.x, v.f), zero, zero)

    def power(self, u: GroupElement, n: int) -> GroupElement:
        """``u^n = (n a + n(n-1)/2 f(x), n x, n f)``, valid for every integer ``n``."""
        self._check(u)
        n = int(n)
        half = rational(n * (n - 1)) / 2 if self.space.exact else n * (n - 1) / 2
        return GroupElement(
            n * u.a + half * self._w(u.x, u.f), _freeze(n * u.x), _freeze(n * u.f)
        )

    def conjugate(self, u: GroupElement, v: GroupElement) -> GroupElement:
        return self.multiply(self.multiply(v, u), self.inverse(v))

    def close(self, u: GroupElement, v: GroupElement, tol: float = 0.0) -> bool:
        """Equality in exact mode; max-coordinate distance ``<= tol`` in float mode."""
        if self.space.exact:
            return u == v
        diff = max(
            abs(float(u.a) - float(v.a)),
            float(np.max(np.abs(u.x - v.x), initial=0.0)),
            float(np.max(np.abs(u.f - v.f), initial=0.0)),
        )
        return diff <= tol

    # -- center -----------------------------------------------------------

    def noncentral_witness(self, u: GroupElement) -> Optional[GroupElement]:
        """An element not commuting with ``u``, or ``None`` if ``u`` is central.

        Only defined for the canonical (nondegenerate) pairing.
        """
        if self._custom:
            raise UnsupportedRepresentationError("structural center test needs the canonical pairing")
        self._check(u)
        sp = self.space
        zero = sp.zeros()
        for k, c in enumerate(u.x):
            if c != 0:
                return GroupElement(sp.scalar(0), zero, sp.basis(k))
        for k, c in enumerate(u.f):
            if c != 0:
                return GroupElement(sp.scalar(0), sp.basis(k), zero)
        return None

    def is_central(self, u: GroupElement, trials: int = 16, seed: int = 0, tol: float = 0.0) -> bool:
        """Whether ``u`` commutes with everything.

        The canonical pairing is nondegenerate, so the answer is structural
        (``x = 0`` and ``f = 0``) and the random probes only confirm it. With a
        custom pairing the result rests on ``trials`` random commutators.
        """
        if trials < 1:
            raise ValueError("trials must be >= 1")
        self._check(u)
        if not self._custom and self.noncentral_witness(u) is not None:
            return False
        rng = np.random.default_rng(seed)
        for _ in range(trials):
            v = self.random_element(rng)
            if not self.close(self.commutator(u, v), self.identity, tol):
                return False
        return True

    # -- matrix model -----------------------------------------------------

    def matrix_rep(self, u: GroupElement) -> np.ndarray:
        """Upper unitriangular ``(n+2) x (n+2)`` matrix of ``u``.

        Top row ``(1, f_1..f_n, a)``, identity block with the ``x`` column on
        the right, bottom row ``(0, ..., 0, 1)``. For ``n = 1`` and
        ``u = (c, (b), (a))`` this is ``[[1, a, c], [0, 1, b], [0, 0, 1]]``.
        """
        if self._custom or not self.space.is_dot_product:
            raise UnsupportedRepresentationError(
                "matrix model requires the plain dot-product pairing (weight 1)"
            )
        self._check(u)
        n = self.space.dim
        if self.space.exact:
            m = np.empty((n + 2, n + 2), dtype=object)
            m[:] = rational(0)
            one = rational(1)
        else:
            m = np.zeros((n + 2, n + 2))
            one = 1.0
        for i in range(n + 2):
            m[i, i] = one
        m[0, 1 : n + 1] = u.f
        m[0, n + 1] = u.a
        m[1 : n + 1, n + 1] = u.x
        return m

    def from_matrix(self, m: np.ndarray) -> GroupElement:
        n = self.space.dim
        if m.shape != (n + 2, n + 2):
            raise DimensionError(f"expected a {(n + 2, n + 2)} matrix, got {m.shape}")
        return GroupElement(m[0, n + 1], _freeze(m[1 : n + 1, n + 1].copy()), _freeze(m[0, 1 : n + 1].copy()))

    # -- batches ----------------------------------------------------------

    def product_table(self, us: Sequence[GroupElement], vs: Sequence[GroupElement]) -> GroupElement:
        """All products ``us[n] * vs[m]`` as one batch element.

        ``a`` has shape ``(N, M)``, ``x`` and ``f`` have shape ``(N, M, dim)``.
        Only the canonical pairing is supported.
        """
        if self._custom:
            raise UnsupportedRepresentationError("product tables need the canonical pairing")
        self._check(*us, *vs)
        sp = self.space
        a_u = np.array([u.a for u in us], dtype=object if sp.exact else float)
        a_v = np.array([v.a for v in vs], dtype=object if sp.exact else float)
        xu = np.stack([u.x for u in us])
        fu = np.stack([u.f for u in us])
        xv = np.stack([v.x for v in vs])
        fv = np.stack([v.f for v in vs])
        cross = np.dot(fu, xv.T) * sp.weight
        a = a_u[:, None] + a_v[None, :] + cross
        x = xu[:, None, :] + xv[None, :, :]
        f = fu[:, None, :] + fv[None, :, :]
        return GroupElement(a, x, f)
