"""Hot kernels for range-scale stopping-time computation.

Two interchangeable backends compute, for every seed in a range, the
stopping time and the orbit peak under T (target 1) or TR (target 0):

  numba  int64 loops compiled with @njit (default when numba imports)
  numpy  vectorized int64 stepping over the still-active seeds

Select explicitly with the environment variable COLLATZKIT_BACKEND set to
"numba" or "numpy".  Both backends guard against int64 overflow: a seed
whose orbit climbs past the guard is handed to the exact big-int path, so
results are always exact.  Sentinels inside the raw arrays: -1 cap
exceeded, -2 overflow (resolved before results are returned).

``benchmarks/bench_backends.py`` compares the two backends.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .trajectories import sigma_T, sigma_TR

BACKEND_ENV = "COLLATZKIT_BACKEND"

# 3n+1 must stay below 2^63; keep extra headroom below the exact bound.
_OVERFLOW_GUARD = (2**62) // 3

SIGMA_CAP_EXCEEDED = -1
_NEEDS_EXACT = -2

try:
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    _HAVE_NUMBA = False


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if _HAVE_NUMBA else ("numpy",)


def selected_backend() -> str:
    """Backend chosen by COLLATZKIT_BACKEND, defaulting to numba when present."""
    choice = os.environ.get(BACKEND_ENV, "").strip().lower()
    if choice in ("numba", "numpy"):
        if choice == "numba" and not _HAVE_NUMBA:
            raise RuntimeError(f"{BACKEND_ENV}=numba but numba is not importable")
        return choice
    if choice:
        raise RuntimeError(f"{BACKEND_ENV}={choice!r} is not one of: numba, numpy")
    return "numba" if _HAVE_NUMBA else "numpy"


# --- numba backend ---------------------------------------------------------

if _HAVE_NUMBA:

    @numba.njit(cache=True, nogil=True)
    def _range_t_numba(lo, hi, cap, guard, sig, peak):  # pragma: no cover - jitted
        for i in range(lo, hi + 1):
            n = i
            p = n
            k = 0
            out = SIGMA_CAP_EXCEEDED
            while True:
                if n == 1:
                    out = k
                    break
                if k >= cap:
                    break
                if n > guard:
                    out = _NEEDS_EXACT
                    break
                if n & 1:
                    n = (3 * n + 1) >> 1
                else:
                    n >>= 1
                if n > p:
                    p = n
                k += 1
            sig[i - lo] = out
            peak[i - lo] = p

    @numba.njit(cache=True, nogil=True)
    def _range_tr_numba(lo, hi, cap, guard, sig, peak):  # pragma: no cover - jitted
        for i in range(lo, hi + 1):
            n = i
            p = n
            k = 0
            out = SIGMA_CAP_EXCEEDED
            while True:
                if n == 0:
                    out = k
                    break
                if k >= cap:
                    break
                if n > guard:
                    out = _NEEDS_EXACT
                    break
                m = n & 3
                if m == 0:
                    n = 3 * (n >> 2)
                elif m == 2:
                    n = (n - 2) >> 2
                else:
                    n = (3 * n + 1) >> 1
                if n > p:
                    p = n
                k += 1
            sig[i - lo] = out
            peak[i - lo] = p


# --- numpy backend ---------------------------------------------------------


def _range_numpy(map_tag, lo, hi, cap, sig, peak):
    """Vectorized stepping over the active seeds, with index compaction."""
    cur = np.arange(lo, hi + 1, dtype=np.int64)
    peak[:] = cur
    target = 1 if map_tag == "t" else 0
    done = cur == target
    sig[done] = 0
    active = np.flatnonzero(~done)
    for k in range(1, cap + 1):
        if active.size == 0:
            return
        vals = cur[active]
        over = vals > _OVERFLOW_GUARD
        if over.any():
            sig[active[over]] = _NEEDS_EXACT
            keep = ~over
            active = active[keep]
            vals = vals[keep]
            if active.size == 0:
                return
        if map_tag == "t":
            odd = (vals & 1) == 1
            nxt = np.where(odd, (3 * vals + 1) >> 1, vals >> 1)
        else:
            m = vals & 3
            nxt = (3 * vals + 1) >> 1
            nxt = np.where(m == 0, 3 * (vals >> 2), nxt)
            nxt = np.where(m == 2, (vals - 2) >> 2, nxt)
        cur[active] = nxt
        peak[active] = np.maximum(peak[active], nxt)
        hit = nxt == target
        if hit.any():
            sig[active[hit]] = k
            active = active[~hit]
    # anything still active has exhausted the cap; sentinel already in place


# --- public wrapper --------------------------------------------------------


@dataclass
class RangeProfile:
    """Exact per-seed results for seeds lo..hi: stopping times (cap
    exceeded encoded as SIGMA_CAP_EXCEEDED) and orbit peaks."""

    map_tag: str
    lo: int
    hi: int
    cap: int
    sigmas: np.ndarray
    peaks: np.ndarray
    backend: str
    exact_fallbacks: int = 0


def _exact_profile(map_tag, n, cap):
    """Arbitrary-precision fallback for one seed: (sigma, peak)."""
    sigma_fn = sigma_T if map_tag == "t" else sigma_TR
    s = sigma_fn(n, cap)
    target = 1 if map_tag == "t" else 0
    peak = n
    cur = n
    steps = 0
    while cur != target and steps < cap:
        if map_tag == "t":
            cur = cur // 2 if cur % 2 == 0 else (3 * cur + 1) // 2
        else:
            m = cur % 4
            cur = 3 * cur // 4 if m == 0 else (cur - 2) // 4 if m == 2 else (3 * cur + 1) // 2
        peak = max(peak, cur)
        steps += 1
    return (SIGMA_CAP_EXCEEDED if s is None else s), peak


def range_profile(map_tag: str, lo: int, hi: int, cap: int, backend: str | None = None) -> RangeProfile:
    """Stopping times and peaks for every seed in [lo, hi] under t or tr."""
    if map_tag not in ("t", "tr"):
        raise ValueError(f"range verification supports maps t and tr, not {map_tag!r}")
    floor = 1 if map_tag == "t" else 0
    if lo < floor:
        raise ValueError(f"map {map_tag} verifies seeds >= {floor}, got lo={lo}")
    if hi < lo:
        raise ValueError(f"empty range: lo={lo} > hi={hi}")
    backend = backend or selected_backend()
    count = hi - lo + 1
    sig = np.full(count, SIGMA_CAP_EXCEEDED, dtype=np.int64)
    peak = np.zeros(count, dtype=np.int64)
    if backend == "numba":
        kernel = _range_t_numba if map_tag == "t" else _range_tr_numba
        kernel(lo, hi, cap, _OVERFLOW_GUARD, sig, peak)
    else:
        _range_numpy(map_tag, lo, hi, cap, sig, peak)
    # Resolve overflow sentinels with exact big-int arithmetic.
    pending = np.flatnonzero(sig == _NEEDS_EXACT)
    for idx in pending:
        s, p = _exact_profile(map_tag, int(lo + idx), cap)
        sig[idx] = s
        # peaks above int64 are clamped; record the guard so the overflow is visible
        peak[idx] = min(p, np.iinfo(np.int64).max)
    return RangeProfile(
        map_tag=map_tag,
        lo=lo,
        hi=hi,
        cap=cap,
        sigmas=sig,
        peaks=peak,
        backend=backend,
        exact_fallbacks=int(pending.size),
    )
