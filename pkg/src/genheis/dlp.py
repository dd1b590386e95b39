"""Double limit property (DLP) engine.

A map ``F(a_n, b_m)`` has the DLP when ``lim_m lim_n F = lim_n lim_m F``
whenever both iterated limits exist. Everything here works on a finite
truncation ``a[n, m]``, ``1 <= n <= N``, ``1 <= m <= M``.

Finite-truncation conventions
-----------------------------
*Stabilization.* A sequence ``s_1..s_K`` has stabilized when its tail
``s_k, k > K - L`` with ``L = max(window, K - K//2)`` (the last half, and at
least ``window`` terms) oscillates by at most ``tol / 2``. The estimate is
``s_K``. Half of ``tol`` goes to each of the two limit levels so that, for
monotone ``1/n``-type convergence, the iterated estimate lands within ``tol``.

*Inner index dominates.* For an iterated limit the outer index only runs over
the longest prefix ``1..K_out`` whose inner limits all stabilized. In
``a[n, m] = n / (n + m)`` the inner limit over ``n`` is only visible while
``m << N``, and this rule finds that range automatically.

*Progressive caps.* :func:`iterated_limit` tries square blocks of side
``2 * window, 4 * window, ...`` up to the caps and stops at the first block
where the estimate has stabilized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import BoundViolationError, ExtractionFailedError

ROW_THEN_COL = "row_then_col"  # lim_m lim_n: inner limit over the row index n
COL_THEN_ROW = "col_then_row"  # lim_n lim_m: inner limit over the column index m
ORDERS = (ROW_THEN_COL, COL_THEN_ROW)

PASS, FAIL, INCONCLUSIVE = "PASS", "FAIL", "INCONCLUSIVE"

DEFAULT_TOL = 1e-6
DEFAULT_WINDOW = 5
DEFAULT_CAP = 2000
FAIL_FACTOR = 10.0


class DoubleSequence:
    """A bounded array ``a[n, m]`` evaluated lazily on 1-based indices.

    ``func(n, m)`` must be a pure function. With ``vectorized=True`` it is
    called once per block with broadcastable integer arrays ``n`` (column
    vector) and ``m`` (row vector); otherwise entry by entry.
    """

    def __init__(
        self,
        func: Callable,
        n_max: int,
        m_max: int,
        bound: float,
        *,
        vectorized: bool = False,
        name: str = "",
    ):
        if n_max < 1 or m_max < 1:
            raise ValueError("caps must be positive")
        if not bound >= 0:
            raise ValueError("bound must be a non-negative number")
        self.func = func
        self.n_max = int(n_max)
        self.m_max = int(m_max)
        self.bound = float(bound)
        self.vectorized = vectorized
        self.name = name
        self._cache = np.empty((0, 0))

    @classmethod
    def from_array(cls, values, bound: Optional[float] = None, name: str = "") -> "DoubleSequence":
        arr = np.asarray(values, dtype=float)
        if arr.ndim != 2 or 0 in arr.shape:
            raise ValueError("expected a non-empty 2-d array")
        if bound is None:
            bound = float(np.max(np.abs(arr)))
        seq = cls(lambda n, m: arr[n - 1, m - 1], arr.shape[0], arr.shape[1], bound,
                  vectorized=True, name=name)
        seq._store(arr.copy())
        return seq

    @property
    def caps(self):
        return (self.n_max, self.m_max)

    def _store(self, block: np.ndarray) -> None:
        bad = ~(np.abs(block) <= self.bound * (1 + 1e-12) + 1e-300)
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            raise BoundViolationError(
                f"|a[{i + 1},{j + 1}]| = {abs(block[i, j])!r} exceeds bound {self.bound}"
            )
        block.flags.writeable = False
        self._cache = block

    def _compute(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        if self.vectorized:
            out = self.func(rows[:, None], cols[None, :])
            return np.broadcast_to(np.asarray(out, dtype=float), (len(rows), len(cols)))
        out = np.empty((len(rows), len(cols)))
        for i, n in enumerate(rows):
            for j, m in enumerate(cols):
                out[i, j] = float(self.func(int(n), int(m)))
        return out

    def block(self, n: int, m: int) -> np.ndarray:
        """Read-only array of ``a[1..n, 1..m]``."""
        n, m = min(int(n), self.n_max), min(int(m), self.m_max)
        cn, cm = self._cache.shape
        if n > cn or m > cm:
            nn, mm = max(n, cn), max(m, cm)
            new = np.empty((nn, mm))
            new[:cn, :cm] = self._cache
            if cm < mm:
                new[:cn, cm:] = self._compute(np.arange(1, cn + 1), np.arange(cm + 1, mm + 1))
            if cn < nn:
                new[cn:, :] = self._compute(np.arange(cn + 1, nn + 1), np.arange(1, mm + 1))
            self._store(new)
        return self._cache[:n, :m]

    def values(self) -> np.ndarray:
        return self.block(self.n_max, self.m_max)

    def __getitem__(self, idx):
        n, m = idx
        if not (1 <= n <= self.n_max and 1 <= m <= self.m_max):
            raise IndexError(f"({n}, {m}) outside caps {self.caps}")
        return float(self.block(n, m)[n - 1, m - 1])

    def transpose(self) -> "DoubleSequence":
        return DoubleSequence.from_array(self.values().T, self.bound, self.name)

    def subsequence(self, rows: Sequence[int], cols: Sequence[int]) -> "DoubleSequence":
        """The double subsequence ``a[rows[i], cols[j]]`` (1-based indices)."""
        r = np.asarray(rows, dtype=int) - 1
        c = np.asarray(cols, dtype=int) - 1
        vals = self.block(r.max() + 1, c.max() + 1)
        return DoubleSequence.from_array(vals[np.ix_(r, c)], self.bound, self.name)


@dataclass(frozen=True)
class IteratedLimitEstimate:
    value: float
    converged: bool
    tail_window: int
    tolerance: float
    indices_used: tuple
    order: str
    outer_extent: int = 0

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "converged": self.converged,
            "tail_window": self.tail_window,
            "tolerance": self.tolerance,
            "indices_used": list(self.indices_used),
            "order": self.order,
            "outer_extent": self.outer_extent,
        }


@dataclass(frozen=True)
class ExtractionResult:
    row_indices: tuple
    col_indices: tuple
    limit_row_then_col: IteratedLimitEstimate
    limit_col_then_row: IteratedLimitEstimate
    identity: bool = False

    @property
    def c1(self) -> float:
        return self.limit_row_then_col.value

    @property
    def c2(self) -> float:
        return self.limit_col_then_row.value

    @property
    def converged(self) -> bool:
        return self.limit_row_then_col.converged and self.limit_col_then_row.converged


@dataclass
class DLPVerdict:
    verdict: str
    c1: Optional[float] = None
    c2: Optional[float] = None
    witness: Optional[ExtractionResult] = None
    tried: list = field(default_factory=list)
    tol: float = DEFAULT_TOL
    window: int = DEFAULT_WINDOW
    caps: tuple = (0, 0)
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        w = self.witness
        return {
            "verdict": self.verdict,
            "c1": self.c1,
            "c2": self.c2,
            "tol": self.tol,
            "window": self.window,
            "caps": list(self.caps),
            "row_indices": list(w.row_indices) if w else [],
            "col_indices": list(w.col_indices) if w else [],
            "seed": self.seed,
        }


# -- iterated limits ----------------------------------------------------------


def _tail_length(k: int, window: int) -> int:
    return max(window, k - k // 2)


def _inner_limits(arr: np.ndarray, tol: float, window: int):
    """Inner limits down axis 0. Returns ``(limits, k_out)``.

    ``k_out`` is the length of the leading run of columns whose inner
    sequence stabilized.
    """
    k = arr.shape[0]
    tail_len = _tail_length(k, window)
    if tail_len > k:
        return arr[-1], 0
    tail = arr[k - tail_len :]
    stable = (tail.max(axis=0) - tail.min(axis=0)) <= tol / 2
    k_out = arr.shape[1] if stable.all() else int(np.argmin(stable))
    return arr[-1], k_out


def _estimate(arr: np.ndarray, tol: float, window: int):
    """Iterated limit with the inner index on axis 0.

    Returns ``(value, converged, k_out)``.
    """
    limits, k_out = _inner_limits(arr, tol, window)
    if k_out == 0:
        return float(arr[-1, -1]), False, 0
    outer = limits[:k_out]
    tail_len = _tail_length(k_out, window)
    if tail_len > k_out:
        return float(outer[-1]), False, k_out
    tail = outer[k_out - tail_len :]
    return float(outer[-1]), bool(tail.max() - tail.min() <= tol / 2), k_out


def _estimate_oriented(arr: np.ndarray, order: str, tol: float, window: int):
    if order == ROW_THEN_COL:
        return _estimate(arr, tol, window)
    if order == COL_THEN_ROW:
        return _estimate(arr.T, tol, window)
    raise ValueError(f"order must be one of {ORDERS}, got {order!r}")


def _check_params(tol: float, window: int) -> None:
    if not tol > 0:
        raise ValueError("tol must be positive")
    if window < 2:
        raise ValueError("window must be >= 2")


def iterated_limit(
    seq: DoubleSequence,
    order: str = ROW_THEN_COL,
    tol: float = DEFAULT_TOL,
    window: int = DEFAULT_WINDOW,
    progressive: bool = True,
) -> IteratedLimitEstimate:
    """Estimate ``lim_m lim_n a[n, m]`` (``ROW_THEN_COL``) or ``lim_n lim_m`` (``COL_THEN_ROW``).

    Reports ``converged=False`` instead of guessing when the caps are reached
    without stabilization; ``value`` is then only the last available term.
    """
    _check_params(tol, window)
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}, got {order!r}")
    n_cap, m_cap = seq.caps
    side = 2 * window if progressive else max(n_cap, m_cap)
    while True:
        n, m = min(side, n_cap), min(side, m_cap)
        value, ok, k_out = _estimate_oriented(seq.block(n, m), order, tol, window)
        if ok or (n, m) == (n_cap, m_cap):
            return IteratedLimitEstimate(value, ok, window, tol, (n, m), order, k_out)
        side *= 2


# -- subsequence extraction -------------------------------------------------------

_MAX_CENTERS = 256


def _chebyshev(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    out = np.zeros((len(centers), len(points)))
    for j in range(points.shape[1]):
        np.maximum(out, np.abs(centers[:, j][:, None] - points[:, j][None, :]), out=out)
    return out


def _diagonal_subsequence(points: np.ndarray, radius: float, tol: float) -> np.ndarray:
    """Indices ``i_1 < i_2 < ...`` of rows converging coordinatewise.

    Finite version of the diagonal argument in ``[-r, r]^N``. Stage ``s`` looks
    at the first ``s`` coordinates, halves the ball radius (down to ``tol/4``),
    keeps the most populated ball inside the previous one (pigeonhole) and
    takes its smallest index beyond the last pick. Rows picked from stage
    ``s`` on agree within ``tol/2`` on the first ``s`` coordinates once the
    radius has reached its floor.
    """
    k, width = points.shape
    floor = tol / 4
    eps = max(float(radius), floor)
    alive = np.arange(k)
    center = None
    picks = []
    stage = 0
    while len(alive):
        stage += 1
        prefix = min(width, stage)
        if eps > floor or center is None:
            eps = max(eps / 2, floor)
            cand = alive
            if len(cand) > _MAX_CENTERS:
                cand = alive[np.linspace(0, len(alive) - 1, _MAX_CENTERS).astype(int)]
            dist = _chebyshev(points[alive, :prefix], points[cand, :prefix])
            best = int(np.argmax((dist <= eps).sum(axis=1)))
            center = cand[best]
            alive = alive[dist[best] <= eps]
        elif prefix > min(width, stage - 1):
            col = prefix - 1
            alive = alive[np.abs(points[alive, col] - points[center, col]) <= eps]
        if not len(alive):
            break
        picks.append(alive[0])
        alive = alive[1:]
    return np.asarray(picks, dtype=int)


def _thin(arr: np.ndarray, radius: float, tol: float, window: int):
    """Rows, then columns, then the swapped pass. Returns 0-based ``(rows, cols)``."""
    rows = _diagonal_subsequence(arr, radius, tol)
    if len(rows) < 2 * window:
        return rows, np.arange(0)
    limits, k_out = _inner_limits(arr[rows], tol, window)
    cols = _diagonal_subsequence(limits[:k_out, None], radius, tol)
    if len(cols) < 2 * window:
        return rows, cols
    # swapped roles on the extracted subarray
    sub_t = arr[np.ix_(rows, cols)].T
    keep_c = _diagonal_subsequence(sub_t, radius, tol)
    if len(keep_c) < 2 * window:
        return rows, cols[keep_c]
    limits2, k_out2 = _inner_limits(sub_t[keep_c], tol, window)
    keep_r = _diagonal_subsequence(limits2[:k_out2, None], radius, tol)
    return rows[keep_r], cols[keep_c]


def _result_on(seq_vals: np.ndarray, rows, cols, tol, window, identity=False):
    sub = seq_vals[np.ix_(rows, cols)]
    shape = sub.shape
    est = []
    for order in ORDERS:
        value, ok, k_out = _estimate_oriented(sub, order, tol, window)
        est.append(IteratedLimitEstimate(value, ok, window, tol, shape, order, k_out))
    return ExtractionResult(
        tuple(int(i) + 1 for i in rows), tuple(int(j) + 1 for j in cols), est[0], est[1], identity
    )


def extract_double_subsequence(
    seq: DoubleSequence,
    tol: float = DEFAULT_TOL,
    window: int = DEFAULT_WINDOW,
    *,
    columns_first: bool = False,
) -> ExtractionResult:
    """Find a double subsequence on which both iterated limits exist.

    If both iterated limits already exist on the whole array, the identity
    subsequences are returned. Otherwise rows are thinned so that every column
    converges along them, then columns so that the limit row converges, and
    the same is repeated with the roles of rows and columns exchanged.
    ``columns_first`` starts the thinning from the columns instead.

    Raises :class:`ExtractionFailedError` (carrying the best partial result)
    when the caps run out before both limits stabilize.
    """
    _check_params(tol, window)
    e1 = iterated_limit(seq, ROW_THEN_COL, tol, window)
    e2 = iterated_limit(seq, COL_THEN_ROW, tol, window)
    if e1.converged and e2.converged:
        n = max(e1.indices_used[0], e2.indices_used[0])
        m = max(e1.indices_used[1], e2.indices_used[1])
        return ExtractionResult(tuple(range(1, n + 1)), tuple(range(1, m + 1)), e1, e2, True)

    vals = seq.values()
    radius = max(seq.bound, tol)
    if columns_first:
        c, r = _thin(vals.T, radius, tol, window)
    else:
        r, c = _thin(vals, radius, tol, window)
    if len(r) < 2 * window or len(c) < 2 * window:
        partial = _result_on(vals, r, c, tol, window) if len(r) and len(c) else None
        raise ExtractionFailedError(
            f"extraction left {len(r)} rows x {len(c)} columns; caps {seq.caps} too small "
            f"for tol={tol}", partial
        )
    res = _result_on(vals, r, c, tol, window)
    if not res.converged:
        raise ExtractionFailedError("iterated limits did not stabilize on the extracted subarray", res)
    return res


# -- verdicts --------------------------------------------------------------------


def dlp_check(
    seq: DoubleSequence,
    tol: float = DEFAULT_TOL,
    window: int = DEFAULT_WINDOW,
    seed: Optional[int] = None,
) -> DLPVerdict:
    """PASS / FAIL / INCONCLUSIVE verdict on the double limit property.

    Extraction is tried rows-first and columns-first. FAIL needs a converged
    pair of iterated limits further apart than ``10 * tol`` (the witness is
    that subarray); PASS needs at least one successful extraction and every
    converged pair within ``tol``. Unconverged estimates never produce FAIL.
    """
    _check_params(tol, window)
    tried = []
    seen = set()
    for columns_first in (False, True):
        try:
            res = extract_double_subsequence(seq, tol, window, columns_first=columns_first)
        except ExtractionFailedError:
            continue
        key = (res.row_indices, res.col_indices)
        if key in seen:
            continue
        seen.add(key)
        tried.append(res)
        if abs(res.c1 - res.c2) > FAIL_FACTOR * tol:
            return DLPVerdict(FAIL, res.c1, res.c2, res, _summ(tried), tol, window, seq.caps, seed)
    if not tried:
        return DLPVerdict(INCONCLUSIVE, tried=[], tol=tol, window=window, caps=seq.caps, seed=seed)
    first = tried[0]
    verdict = PASS if all(abs(r.c1 - r.c2) <= tol for r in tried) else INCONCLUSIVE
    return DLPVerdict(verdict, first.c1, first.c2, first, _summ(tried), tol, window, seq.caps, seed)


def _summ(results):
    return [(r.c1, r.c2) for r in results]


# -- concrete sequences ---------------------------------------------------------------


def c0_counterexample(N: int, M: int) -> DoubleSequence:
    """``a[n, m] = ||e_n + e_1 + ... + e_m||_sup``: 2 when ``n <= m``, else 1."""
    if N < 1 or M < 1:
        raise ValueError("N and M must be >= 1")

    def norm_sum(n, m):
        return np.where(n <= m, 2, 1)

    return DoubleSequence(norm_sum, N, M, 2.0, vectorized=True, name="c0")


def pairing_sequence(space, xs: np.ndarray, fs: np.ndarray, bound: Optional[float] = None) -> DoubleSequence:
    """``a[n, m] = f_m(x_n)`` for stacked vectors ``xs`` and covectors ``fs`` (float mode)."""
    vals = np.asarray(xs, dtype=float) @ np.asarray(fs, dtype=float).T * float(space.weight)
    if bound is None:
        bound = float(np.max(space.norm(xs)) * np.max(space.dual_norm(fs)))
    return DoubleSequence.from_array(vals, bound, "pairing")


def norm_sum_sequence(space, xs: np.ndarray, ys: np.ndarray, dual: bool = False,
                      bound: Optional[float] = None) -> DoubleSequence:
    """``a[n, m] = ||x_n + y_m||`` (the dual norm when ``dual``)."""
    total = np.asarray(xs, dtype=float)[:, None, :] + np.asarray(ys, dtype=float)[None, :, :]
    vals = space.dual_norm(total) if dual else space.norm(total)
    if bound is None:
        nrm = space.dual_norm if dual else space.norm
        bound = float(np.max(nrm(xs)) + np.max(nrm(ys)))
    return DoubleSequence.from_array(vals, bound, "norm_sum")


def wap_check(
    group,
    phi: Callable,
    us: Sequence,
    vs: Sequence,
    tol: float = DEFAULT_TOL,
    window: int = DEFAULT_WINDOW,
    bound: float = 1.0,
    seed: Optional[int] = None,
) -> DLPVerdict:
    """DLP of ``F(n, m) = phi(u_n * v_m)``, the operational test for weak almost periodicity.

    ``phi`` is called once on the batch element from
    :meth:`HeisenbergGroup.product_table` and must evaluate elementwise.
    Values beyond ``bound`` raise :class:`BoundViolationError`.
    """
    table = group.product_table(list(us), list(vs))
    vals = np.asarray(phi(table), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise BoundViolationError("phi produced non-finite values")
    seq = DoubleSequence.from_array(vals, bound, "wap")
    return dlp_check(seq, tol, window, seed)


def gap(verdict: DLPVerdict) -> float:
    if verdict.c1 is None or verdict.c2 is None:
        return math.nan
    return abs(verdict.c1 - verdict.c2)
