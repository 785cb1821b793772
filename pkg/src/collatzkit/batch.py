"""Checkpointed verification that every seed in a range reaches its target.

The range is split into contiguous chunks.  Chunks may be computed
concurrently, but results are committed strictly in seed order: the
checkpoint only ever records a fully verified prefix, so a resumed run
re-verifies nothing below ``verified_through`` and skips nothing above
it.  Reports are deterministic regardless of worker count.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

from .errors import CheckpointError
from .kernels import SIGMA_CAP_EXCEEDED, range_profile, selected_backend

CHECKPOINT_FORMAT_VERSION = 1
DEFAULT_CHUNK_SIZE = 1 << 16


@dataclass
class Checkpoint:
    """Durable progress record for one batch verification run.

    Seeds in [range_lo, verified_through] are committed; a resume starts
    at verified_through + 1.  The identity of a run is (map, range_lo,
    range_hi, cap): a checkpoint for a different run is rejected.
    """

    map: str
    range_lo: int
    range_hi: int
    cap: int
    verified_through: int
    max_excursion: int = 0
    max_excursion_seed: int = 0
    max_sigma: int = 0
    max_sigma_seed: int = 0
    failed_seeds: list[int] = field(default_factory=list)
    format_version: int = CHECKPOINT_FORMAT_VERSION

    def matches(self, map_tag, lo, hi, cap) -> bool:
        return (
            self.map == map_tag
            and self.range_lo == lo
            and self.range_hi == hi
            and self.cap == cap
        )


def save_checkpoint(cp: Checkpoint, path: str) -> None:
    """Atomic write: temp file in the same directory, then rename."""
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(asdict(cp), fh, indent=1)
        fh.write("\n")
    os.replace(tmp, path)


def load_checkpoint(path: str) -> Checkpoint:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, ValueError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise CheckpointError(f"checkpoint {path} is not a JSON object")
    version = raw.get("format_version")
    if version != CHECKPOINT_FORMAT_VERSION:
        raise CheckpointError(
            f"checkpoint {path} has format_version {version!r}; "
            f"this build reads version {CHECKPOINT_FORMAT_VERSION}"
        )
    try:
        cp = Checkpoint(**raw)
    except TypeError as exc:
        raise CheckpointError(f"checkpoint {path} has wrong fields: {exc}") from exc
    if not cp.range_lo - 1 <= cp.verified_through <= cp.range_hi:
        raise CheckpointError(
            f"checkpoint {path} progress {cp.verified_through} outside "
            f"[{cp.range_lo - 1}, {cp.range_hi}]"
        )
    return cp


@dataclass
class BatchReport:
    """Outcome of verifying one seed range.

    all_reached is True iff every seed hit its target within cap;
    failed_seeds lists (in increasing order) the seeds that did not.
    """

    map: str
    range_lo: int
    range_hi: int
    cap: int
    seeds_verified: int
    all_reached: bool
    failed_seeds: list[int]
    max_excursion: int
    max_excursion_seed: int
    max_sigma: int
    max_sigma_seed: int
    backend: str
    elapsed_seconds: float
    resumed_from: int | None = None


def _merge_profile(cp: Checkpoint, profile) -> None:
    """Fold one chunk's results into the committed state (chunk order only)."""
    sig = profile.sigmas
    peaks = profile.peaks
    failed = (sig == SIGMA_CAP_EXCEEDED).nonzero()[0]
    cp.failed_seeds.extend(int(profile.lo + i) for i in failed)
    pk_idx = int(peaks.argmax())
    if int(peaks[pk_idx]) > cp.max_excursion:
        cp.max_excursion = int(peaks[pk_idx])
        cp.max_excursion_seed = int(profile.lo + pk_idx)
    sg_idx = int(sig.argmax())
    if int(sig[sg_idx]) > cp.max_sigma:
        cp.max_sigma = int(sig[sg_idx])
        cp.max_sigma_seed = int(profile.lo + sg_idx)
    cp.verified_through = profile.hi


def run_batch(
    map_tag: str,
    lo: int,
    hi: int,
    cap: int,
    checkpoint_path: str | None = None,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    force: bool = False,
    backend: str | None = None,
    on_commit=None,
) -> BatchReport:
    """Verify that every seed in [lo, hi] reaches its target within cap.

    With a checkpoint path, progress is committed after each contiguous
    chunk and a rerun resumes where the last run stopped.  A checkpoint
    that is corrupt or belongs to a different run is rejected unless
    ``force`` discards it.  ``on_commit(checkpoint)`` is invoked after
    every commit (test hook; exceptions propagate after the commit).
    """
    if hi < lo:
        raise ValueError(f"empty range: lo={lo} > hi={hi}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be >= 1, got {chunk_size}")
    backend = backend or selected_backend()
    started = time.monotonic()

    cp = None
    resumed_from = None
    if checkpoint_path and os.path.exists(checkpoint_path):
        if force:
            os.remove(checkpoint_path)
        else:
            cp = load_checkpoint(checkpoint_path)
            if not cp.matches(map_tag, lo, hi, cap):
                raise CheckpointError(
                    f"checkpoint {checkpoint_path} belongs to a different run "
                    f"(map={cp.map} range=[{cp.range_lo},{cp.range_hi}] cap={cp.cap}); "
                    "use force to discard it"
                )
            resumed_from = cp.verified_through
    if cp is None:
        cp = Checkpoint(
            map=map_tag, range_lo=lo, range_hi=hi, cap=cap, verified_through=lo - 1
        )

    start = cp.verified_through + 1
    chunks = []
    pos = start
    while pos <= hi:
        end = min(pos + chunk_size - 1, hi)
        chunks.append((pos, end))
        pos = end + 1

    def commit(profile):
        _merge_profile(cp, profile)
        if checkpoint_path:
            save_checkpoint(cp, checkpoint_path)
        if on_commit is not None:
            on_commit(cp)

    if chunks:
        if workers == 1:
            for c_lo, c_hi in chunks:
                commit(range_profile(map_tag, c_lo, c_hi, cap, backend))
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = {
                    i: pool.submit(range_profile, map_tag, c_lo, c_hi, cap, backend)
                    for i, (c_lo, c_hi) in enumerate(chunks)
                }
                # Commit strictly in chunk order so the checkpoint always
                # covers a contiguous prefix.
                for i in range(len(chunks)):
                    commit(futures[i].result())

    cp.failed_seeds.sort()
    return BatchReport(
        map=map_tag,
        range_lo=lo,
        range_hi=hi,
        cap=cap,
        seeds_verified=hi - lo + 1,
        all_reached=not cp.failed_seeds,
        failed_seeds=list(cp.failed_seeds),
        max_excursion=cp.max_excursion,
        max_excursion_seed=cp.max_excursion_seed,
        max_sigma=cp.max_sigma,
        max_sigma_seed=cp.max_sigma_seed,
        backend=backend,
        elapsed_seconds=time.monotonic() - started,
        resumed_from=resumed_from,
    )
