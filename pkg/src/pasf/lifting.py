"""Index algebra between the fast time axis t and the lifted axes (k, tau).

A sequence sampled at period T is split into ``period`` sub-sequences, one per
phase offset tau in [0, period); sub-sequence tau holds the samples at
t = k*period + tau and is itself sampled at period*T.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError


@dataclass(frozen=True)
class LiftedIndex:
    """Position of a fast-time sample inside the lifted grid.

    Invariants: 0 <= tau < period and k*period + tau == t exactly, for all
    integer t including negatives.
    """

    k: int
    tau: int
    period: int


def split_index(t: int, period: int) -> LiftedIndex:
    """Split a sample index t into (k, tau) with the Euclidean remainder.

    tau is always in [0, period), even for negative t, so the reconstruction
    t = k*period + tau is exact everywhere.
    """
    if period < 1:
        raise InvalidArgumentError(f"period must be >= 1, got {period}")
    tau = t % period  # Python % is Euclidean for positive modulus
    k = (t - tau) // period
    return LiftedIndex(k=int(k), tau=int(tau), period=int(period))


def lift(sequence, period: int) -> list[np.ndarray]:
    """Split a finite sequence (indexed from t = 0) into ``period`` strided sub-sequences."""
    if period < 1:
        raise InvalidArgumentError(f"period must be >= 1, got {period}")
    x = np.asarray(sequence, dtype=float)
    if x.ndim != 1:
        raise InvalidArgumentError("lift expects a 1-D sequence")
    return [x[tau::period] for tau in range(period)]


def unlift(subsequences, period: int) -> np.ndarray:
    """Interleave ``period`` sub-sequences back into a single sequence.

    The lengths must be consistent with a contiguous range starting at t = 0:
    non-increasing with tau and differing by at most one.
    """
    if period < 1:
        raise InvalidArgumentError(f"period must be >= 1, got {period}")
    subs = [np.asarray(s, dtype=float) for s in subsequences]
    if len(subs) != period:
        raise InvalidArgumentError(
            f"expected {period} sub-sequences, got {len(subs)}"
        )
    lengths = [len(s) for s in subs]
    total = sum(lengths)
    expected = [(total - tau + period - 1) // period for tau in range(period)]
    if lengths != expected:
        raise InvalidArgumentError(
            f"sub-sequence lengths {lengths} are not consistent with a "
            f"contiguous range of {total} samples"
        )
    out = np.empty(total, dtype=float)
    for tau, s in enumerate(subs):
        out[tau::period] = s
    return out
