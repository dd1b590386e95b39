"""Generalized Heisenberg groups over finite-dimensional normed spaces.

Exact and float group arithmetic, a double-limit-property engine, Gram-matrix
positive-definiteness checks and the witness constructions built on them.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BoundViolationError,
    ConfigError,
    DimensionError,
    DomainError,
    ExtractionFailedError,
    GenHeisError,
    ModeError,
    UnsupportedRepresentationError,
)
from .spaces import EXACT, FLOAT, SUP, PairingSpace, rational  # noqa: E402
from .group import GroupElement, HeisenbergGroup  # noqa: E402
from .dlp import (  # noqa: E402
    COL_THEN_ROW,
    FAIL,
    INCONCLUSIVE,
    PASS,
    ROW_THEN_COL,
    DLPVerdict,
    DoubleSequence,
    ExtractionResult,
    IteratedLimitEstimate,
    c0_counterexample,
    dlp_check,
    extract_double_subsequence,
    iterated_limit,
    wap_check,
)
from .kernels import GramReport, gram_matrix, psd_check, schoenberg_sweep, search_counterexample  # noqa: E402
from .witness import center_surjectivity, phi, phi_dlp_experiment, power_blowup  # noqa: E402
from .seeding import rng_for, split  # noqa: E402

__all__ = [name for name in dir() if not name.startswith("_")]
