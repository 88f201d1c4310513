"""Discrete Hopfield auto-associative memory with additive Hebbian storage.

Patterns are vectors over {-1, +1}. Each stored pattern contributes the
outer product of the pattern with itself, diagonal zeroed, so contributions
add and subtract exactly in integer arithmetic and a single pattern can be
unlearned later without disturbing the others.

Recall runs under one of three update schedules:

* synchronous: every unit recomputed from the previous sweep's state;
* asynchronous: units updated one at a time, each seeing the newest state;
* hybrid: contiguous groups of units updated together, groups in sequence.

With a symmetric zero-diagonal weight matrix, an asynchronous update never
increases the energy ``E = -1/2 x^T W x - b^T x``, so asynchronous recall
terminates at a state that no single flip can improve. Synchronous recall
may instead enter a two-sweep cycle; that is detected and reported rather
than iterated until the sweep cap.

All arithmetic is integer-exact: weights are 32-bit signed integers and
energies are Python ints.
"""

import math
import struct
from dataclasses import dataclass
from typing import BinaryIO, Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .errors import (
    BadConfigError,
    CapacityExceededError,
    CorruptFileError,
    EmptyNetworkError,
    LengthMismatchError,
)

SYNCHRONOUS = "synchronous"
ASYNCHRONOUS = "asynchronous"
HYBRID = "hybrid"
SCHEDULES = (SYNCHRONOUS, ASYNCHRONOUS, HYBRID)

SEQUENTIAL = "sequential"
RANDOM = "random"
ASYNC_ORDERS = (SEQUENTIAL, RANDOM)

# 32-bit weight entries are only guaranteed overflow-free for networks up
# to this many units (|entry| <= scale * pattern_count <= scale * bits).
MAX_BITS = 1 << 15

SNAPSHOT_MAGIC = b"HPN1"
_SNAPSHOT_HEADER = struct.Struct("<IIi")  # bits, pattern_count, scale

PatternLike = Union[Sequence[int], np.ndarray]
UpdateHook = Callable[[np.ndarray, int], None]


def as_pattern(values: PatternLike, bits: Optional[int] = None) -> np.ndarray:
    """Validate a bipolar pattern and return it as an int8 array.

    Every element must be exactly -1 or +1. When ``bits`` is given, the
    length must match it; a mismatch raises ``LengthMismatchError``.
    """
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ValueError(f"pattern must be one-dimensional, got shape {arr.shape}")
    if arr.size and not np.all((arr == 1) | (arr == -1)):
        raise ValueError("pattern values must be exactly -1 or +1")
    if bits is not None and arr.size != bits:
        raise LengthMismatchError(f"pattern has {arr.size} bits, network has {bits}")
    return arr.astype(np.int8)


@dataclass(frozen=True, eq=False)
class NetworkConfig:
    """Static parameters of one Hopfield network.

    Attributes:
        bits: pattern length (number of units).
        scale: positive integer applied to every stored contribution. Any
            value leaves the sign of each net input, and therefore every
            recall trajectory, unchanged; it defaults to 1 to keep weight
            entries small.
        capacity_factor: fraction of ``bits`` usable as pattern slots.
        bias: per-unit external input added to every net input; defaults
            to all zeros and is never set by the authentication flow.
        max_sweeps: cap on full update sweeps during recall (0 allowed;
            recall then returns the probe unchanged and unconverged).
        schedule: default update schedule for callers that dispatch on it.
        async_order: ``"sequential"`` visits units in index order;
            ``"random"`` uses a fresh permutation per sweep drawn from a
            generator seeded with ``async_seed``. Nothing is unseeded.
        hybrid_group_size: units per synchronously-updated group.
    """

    bits: int
    scale: int = 1
    capacity_factor: float = 0.10
    bias: Optional[np.ndarray] = None
    max_sweeps: int = 100
    schedule: str = SYNCHRONOUS
    async_order: str = SEQUENTIAL
    async_seed: int = 0
    hybrid_group_size: int = 1

    def __post_init__(self):
        if not isinstance(self.bits, (int, np.integer)) or self.bits < 1:
            raise BadConfigError(f"bits must be a positive integer, got {self.bits!r}")
        if self.bits > MAX_BITS:
            raise BadConfigError(f"bits must be <= {MAX_BITS} to keep 32-bit weights exact")
        if not isinstance(self.scale, (int, np.integer)) or self.scale < 1:
            raise BadConfigError(f"scale must be a positive integer, got {self.scale!r}")
        if not 0.0 < self.capacity_factor <= 1.0:
            raise BadConfigError(f"capacity_factor must be in (0, 1], got {self.capacity_factor!r}")
        if self.max_sweeps < 0:
            raise BadConfigError(f"max_sweeps must be >= 0, got {self.max_sweeps!r}")
        if self.schedule not in SCHEDULES:
            raise BadConfigError(f"schedule must be one of {SCHEDULES}, got {self.schedule!r}")
        if self.async_order not in ASYNC_ORDERS:
            raise BadConfigError(f"async_order must be one of {ASYNC_ORDERS}, got {self.async_order!r}")
        if self.hybrid_group_size < 1:
            raise BadConfigError(f"hybrid_group_size must be >= 1, got {self.hybrid_group_size!r}")
        bias = (
            np.zeros(self.bits, dtype=np.int64)
            if self.bias is None
            else np.array(self.bias, dtype=np.int64)
        )
        if bias.shape != (self.bits,):
            raise BadConfigError(f"bias must have length {self.bits}, got shape {bias.shape}")
        bias.flags.writeable = False
        object.__setattr__(self, "bias", bias)


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """Square, symmetric, zero-diagonal integer weight matrix.

    ``pattern_count`` tracks how many patterns were summed into it.
    Instances are immutable; storage operations return new values.
    """

    entries: np.ndarray
    pattern_count: int = 0

    def __post_init__(self):
        arr = np.asarray(self.entries)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"weight matrix must be square, got shape {arr.shape}")
        if arr.size and (arr.max() > np.iinfo(np.int32).max or arr.min() < np.iinfo(np.int32).min):
            raise ValueError("weight entries exceed the 32-bit signed range")
        arr = arr.astype(np.int32, copy=True)
        if not np.array_equal(arr, arr.T):
            raise ValueError("weight matrix must be symmetric")
        if np.any(np.diagonal(arr) != 0):
            raise ValueError("weight matrix diagonal must be zero")
        if self.pattern_count < 0:
            raise ValueError("pattern_count must be >= 0")
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightMatrix):
            return NotImplemented
        return self.pattern_count == other.pattern_count and np.array_equal(
            self.entries, other.entries
        )


@dataclass(frozen=True, eq=False)
class RecallResult:
    """Outcome of one recall run.

    ``converged`` guarantees the final state is invariant under one more
    full sweep. ``cycle_detected`` flags a two-sweep oscillation, which
    only grouped (synchronous-style) updates can produce.
    """

    final: np.ndarray
    converged: bool
    sweeps_used: int
    cycle_detected: bool

    def __post_init__(self):
        final = np.array(self.final, dtype=np.int8)
        final.flags.writeable = False
        object.__setattr__(self, "final", final)


def capacity(config: NetworkConfig) -> int:
    """Number of pattern slots: floor(capacity_factor * bits)."""
    # The epsilon absorbs float artifacts such as 0.29 * 100 == 28.999...996.
    return int(math.floor(config.capacity_factor * config.bits + 1e-9))


def zero_weights(bits: int) -> WeightMatrix:
    """Weight matrix of an empty network."""
    return WeightMatrix(np.zeros((bits, bits), dtype=np.int32), 0)


def _contribution(x: np.ndarray) -> np.ndarray:
    """One pattern's additive term: outer(x, x) with the diagonal zeroed."""
    out = np.outer(x, x).astype(np.int64)
    np.fill_diagonal(out, 0)
    return out


def _check_weights(w: WeightMatrix, config: NetworkConfig) -> None:
    if w.size != config.bits:
        raise LengthMismatchError(f"weight matrix is {w.size}x{w.size}, network has {config.bits} units")


def store_patterns(patterns: Iterable[PatternLike], config: NetworkConfig) -> WeightMatrix:
    """Build a weight matrix holding every given pattern.

    The result is ``scale * sum_k (outer(x_k, x_k) - I)``: symmetric, zero
    diagonal, with ``pattern_count`` equal to the number of patterns.

    Raises:
        LengthMismatchError: some pattern's length differs from config.bits.
        CapacityExceededError: more patterns than ``capacity(config)``.
    """
    pats = [as_pattern(p, config.bits) for p in patterns]
    limit = capacity(config)
    if len(pats) > limit:
        raise CapacityExceededError(f"{len(pats)} patterns exceed the capacity of {limit}")
    acc = np.zeros((config.bits, config.bits), dtype=np.int64)
    for x in pats:
        acc += np.outer(x, x)
    np.fill_diagonal(acc, 0)
    return WeightMatrix(acc * config.scale, len(pats))


def add_pattern(w: WeightMatrix, x: PatternLike, config: NetworkConfig) -> WeightMatrix:
    """Learn one more pattern: returns ``w + scale * (outer(x, x) - I)``."""
    x = as_pattern(x, config.bits)
    _check_weights(w, config)
    if w.pattern_count + 1 > capacity(config):
        raise CapacityExceededError(
            f"network already holds {w.pattern_count} of {capacity(config)} patterns"
        )
    entries = w.entries.astype(np.int64) + config.scale * _contribution(x)
    return WeightMatrix(entries, w.pattern_count + 1)


def remove_pattern(w: WeightMatrix, x: PatternLike, config: NetworkConfig) -> WeightMatrix:
    """Unlearn one pattern: returns ``w - scale * (outer(x, x) - I)``.

    Exact inverse of :func:`add_pattern`. The Hebbian sum keeps no record
    of membership, so passing a pattern that was never stored leaves a
    nonzero residue; callers own that guarantee.
    """
    x = as_pattern(x, config.bits)
    _check_weights(w, config)
    if w.pattern_count == 0:
        raise EmptyNetworkError("cannot remove a pattern from an empty network")
    entries = w.entries.astype(np.int64) - config.scale * _contribution(x)
    return WeightMatrix(entries, w.pattern_count - 1)


def activate(net_input: int, previous: int) -> int:
    """Threshold a net input to a unit state.

    Positive input gives +1, negative gives -1, and an input of exactly
    zero retains the previous state so the zero matrix acts as identity
    and ties cannot oscillate.
    """
    if previous not in (-1, 1):
        raise ValueError(f"previous state must be -1 or +1, got {previous!r}")
    if net_input > 0:
        return 1
    if net_input < 0:
        return -1
    return int(previous)


def _threshold(net: np.ndarray, previous: np.ndarray) -> np.ndarray:
    """Vectorized :func:`activate`."""
    return np.where(net > 0, 1, np.where(net < 0, -1, previous)).astype(np.int8)


def recall_sync(w: WeightMatrix, x0: PatternLike, config: NetworkConfig) -> RecallResult:
    """Recall with all units updated simultaneously each sweep.

    Stops when a sweep leaves the state unchanged (converged), when the
    new state equals the state two sweeps back (a two-cycle, reported via
    ``cycle_detected``), or when ``max_sweeps`` is exhausted.
    """
    x = as_pattern(x0, config.bits)
    _check_weights(w, config)
    prev = x
    two_back = None
    for sweep in range(1, config.max_sweeps + 1):
        nxt = _threshold(w.entries @ prev + config.bias, prev)
        if np.array_equal(nxt, prev):
            return RecallResult(prev, True, sweep, False)
        if two_back is not None and np.array_equal(nxt, two_back):
            return RecallResult(nxt, False, sweep, True)
        two_back, prev = prev, nxt
    return RecallResult(prev, False, config.max_sweeps, False)


def recall_async(
    w: WeightMatrix,
    x0: PatternLike,
    config: NetworkConfig,
    on_update: Optional[UpdateHook] = None,
) -> RecallResult:
    """Recall with units updated one at a time.

    The visiting order is index order, or a fresh seeded permutation per
    sweep when ``config.async_order == "random"``. A sweep with no flip
    means convergence. ``cycle_detected`` is always False: each update
    can only lower or keep the energy, so oscillation is impossible.

    ``on_update(state, unit)`` is invoked after every single-unit update,
    flipped or not, with the live state vector; treat it as read-only.
    """
    x = as_pattern(x0, config.bits).copy()
    _check_weights(w, config)
    rng = np.random.default_rng(config.async_seed) if config.async_order == RANDOM else None
    entries = w.entries
    bias = config.bias
    for sweep in range(1, config.max_sweeps + 1):
        order = rng.permutation(config.bits) if rng is not None else range(config.bits)
        changed = False
        for i in order:
            net = int(entries[i] @ x) + int(bias[i])
            if net > 0:
                new = 1
            elif net < 0:
                new = -1
            else:
                new = int(x[i])
            if new != x[i]:
                x[i] = new
                changed = True
            if on_update is not None:
                on_update(x, int(i))
        if not changed:
            return RecallResult(x, True, sweep, False)
    return RecallResult(x, False, config.max_sweeps, False)


def recall_hybrid(w: WeightMatrix, x0: PatternLike, config: NetworkConfig) -> RecallResult:
    """Recall with contiguous unit groups updated together.

    Groups of ``config.hybrid_group_size`` units are processed in order;
    units inside a group all see the state from before the group update.
    A group size equal to ``bits`` reproduces :func:`recall_sync` exactly,
    and a group size of 1 reproduces sequential :func:`recall_async`.
    Convergence and two-cycle reporting match :func:`recall_sync`.
    """
    x = as_pattern(x0, config.bits).copy()
    _check_weights(w, config)
    size = config.hybrid_group_size
    if size > config.bits:
        raise BadConfigError(f"hybrid_group_size {size} exceeds network size {config.bits}")
    groups = [slice(start, min(start + size, config.bits)) for start in range(0, config.bits, size)]
    entries = w.entries
    bias = config.bias
    prev = x.copy()
    two_back = None
    for sweep in range(1, config.max_sweeps + 1):
        for grp in groups:
            net = entries[grp] @ x + bias[grp]
            x[grp] = _threshold(net, x[grp])
        if np.array_equal(x, prev):
            return RecallResult(x, True, sweep, False)
        if two_back is not None and np.array_equal(x, two_back):
            return RecallResult(x, False, sweep, True)
        two_back, prev = prev, x.copy()
    return RecallResult(x, False, config.max_sweeps, False)


def energy(w: WeightMatrix, x: PatternLike, config: NetworkConfig) -> int:
    """Exact network energy ``-1/2 x^T W x - bias^T x`` as a Python int.

    With a zero diagonal and integer symmetric entries the quadratic form
    is always even, so the halving is exact; this is asserted.
    """
    x = as_pattern(x, config.bits)
    _check_weights(w, config)
    xl = x.astype(np.int64)
    quad = int(xl @ w.entries @ xl)
    assert quad % 2 == 0, "quadratic form must be even with a zero diagonal"
    return -(quad // 2) - int(config.bias @ xl)


def write_snapshot(w: WeightMatrix, scale: int, fp: BinaryIO) -> None:
    """Serialize a network to the binary snapshot layout.

    Layout: magic ``HPN1``; little-endian u32 bits; u32 pattern_count;
    i32 scale; then bits*bits little-endian i32 entries, row-major.
    """
    fp.write(SNAPSHOT_MAGIC)
    fp.write(_SNAPSHOT_HEADER.pack(w.size, w.pattern_count, scale))
    fp.write(np.ascontiguousarray(w.entries, dtype="<i4").tobytes())


def read_snapshot(fp: BinaryIO) -> tuple[WeightMatrix, int]:
    """Read one snapshot from the stream, returning (weights, scale).

    Leaves the stream positioned after the weight block. Rejects bad
    magic, truncation, implausible sizes, and any asymmetry or nonzero
    diagonal with ``CorruptFileError``.
    """
    header = fp.read(4 + _SNAPSHOT_HEADER.size)
    if len(header) < 4 + _SNAPSHOT_HEADER.size:
        raise CorruptFileError("snapshot header is truncated")
    if header[:4] != SNAPSHOT_MAGIC:
        raise CorruptFileError("bad magic bytes, not a network snapshot")
    bits, count, scale = _SNAPSHOT_HEADER.unpack(header[4:])
    if bits < 1 or bits > MAX_BITS:
        raise CorruptFileError(f"implausible network size {bits}")
    payload = fp.read(4 * bits * bits)
    if len(payload) != 4 * bits * bits:
        raise CorruptFileError("weight block is truncated")
    entries = np.frombuffer(payload, dtype="<i4").reshape(bits, bits)
    if not np.array_equal(entries, entries.T):
        raise CorruptFileError("weight matrix in file is not symmetric")
    if np.any(np.diagonal(entries) != 0):
        raise CorruptFileError("weight matrix in file has a nonzero diagonal")
    return WeightMatrix(entries.astype(np.int32), int(count)), int(scale)
