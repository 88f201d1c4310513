"""Authentication lifecycle over a persistent Hopfield network.

Three procedures: registration (learn a merged credential pattern),
log-in authorization (recall the probe and require an exact fixed-point
match), and password change (unlearn the old pattern, learn the new one,
which is exact under the additive storage rule).

A store couples the weight matrix with a username registry; usernames are
kept in the clear. Note the inherent leak: the weight matrix is a sum of
outer products of the stored credential patterns, so it is not a one-way
digest. That is a property of the scheme itself and is documented rather
than patched here; do not treat a store file as safe to publish.

Store values are immutable: every mutating operation returns a new store,
so an operation that raises leaves the caller's store untouched. Reads
(login) may run concurrently; mutations need exclusive access only in the
sense that the caller must decide which returned value wins.
"""

import io
import struct
import time
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Optional, Union

import numpy as np

from . import codec
from .errors import (
    AuthFailedError,
    BadConfigError,
    CapacityExceededError,
    CorruptFileError,
    DuplicateUserError,
    HopfieldAuthError,
    IoFailureError,
)
from .network import (
    ASYNCHRONOUS,
    HYBRID,
    NetworkConfig,
    WeightMatrix,
    add_pattern,
    capacity,
    read_snapshot,
    recall_async,
    recall_hybrid,
    recall_sync,
    remove_pattern,
    write_snapshot,
    zero_weights,
)

TEXTUAL = "textual"
GRAPHICAL = "graphical"
MODES = (TEXTUAL, GRAPHICAL)

# Digest size for graphical secrets, as (rows, cols). Not recorded in the
# store file, so logins must use the registration-time size; 8x8 pixels
# is 1536 bits, which fits a 1600-bit network alongside a short username.
DEFAULT_IMAGE_SIZE = (8, 8)

_MODE_CODES = {TEXTUAL: 0, GRAPHICAL: 1}
_MODE_NAMES = {code: mode for mode, code in _MODE_CODES.items()}

_COUNT = struct.Struct("<I")
_NAME_LEN = struct.Struct("<H")
_MODE_STAMP = struct.Struct("<BQ")

SecretLike = Union[str, Path, np.ndarray]


class DecisionReason(str, Enum):
    """Why a login attempt was accepted or rejected."""

    MATCH = "match"
    PATTERN_MISMATCH = "pattern-mismatch"
    NOT_CONVERGED = "not-converged"
    UNKNOWN_USER = "unknown-user"
    MALFORMED_INPUT = "malformed-input"


@dataclass(frozen=True)
class AuthDecision:
    """Login outcome; accepted is true exactly when the reason is MATCH."""

    accepted: bool
    reason: DecisionReason

    def __post_init__(self):
        if self.accepted != (self.reason is DecisionReason.MATCH):
            raise ValueError("accepted must be true iff reason is MATCH")


@dataclass(frozen=True)
class CredentialRecord:
    """Registry entry for one user; the secret lives only in the weights."""

    username: str
    mode: str
    registered_at: int


@dataclass(frozen=True, eq=False)
class AuthStore:
    """A Hopfield network plus the registry of who is stored in it."""

    config: NetworkConfig
    weights: WeightMatrix
    registry: tuple[CredentialRecord, ...]

    def __post_init__(self):
        object.__setattr__(self, "registry", tuple(self.registry))
        if self.weights.pattern_count != len(self.registry):
            raise ValueError("pattern_count must equal the registry length")
        if self.weights.pattern_count > capacity(self.config):
            raise ValueError("stored patterns exceed the configured capacity")
        names = [r.username for r in self.registry]
        if len(set(names)) != len(names):
            raise ValueError("usernames must be unique")

    def find(self, username: str) -> Optional[CredentialRecord]:
        for record in self.registry:
            if record.username == username:
                return record
        return None


def init_store(config: NetworkConfig) -> AuthStore:
    """Create an empty store for the given network configuration.

    Credential encoding is byte-based, so the pattern length must be a
    positive multiple of 8 and the capacity must admit at least one user.
    """
    if config.bits < 8 or config.bits % 8 != 0:
        raise BadConfigError(f"pattern length must be a multiple of 8, got {config.bits}")
    if capacity(config) < 1:
        raise BadConfigError(
            f"capacity floor({config.capacity_factor} * {config.bits}) admits no users"
        )
    return AuthStore(config, zero_weights(config.bits), ())


def _image_digest(secret: SecretLike, image_size: tuple[int, int]) -> str:
    raster = codec.load_image(secret) if isinstance(secret, (str, Path)) else np.asarray(secret)
    rows, cols = image_size
    return codec.rgb_matrix_to_binary(codec.image_to_rgb_matrix(raster, rows, cols))


def _credential_pattern(
    config: NetworkConfig,
    username: str,
    secret: SecretLike,
    mode: str,
    image_size: tuple[int, int],
) -> np.ndarray:
    if mode == TEXTUAL:
        bits = codec.merge(username, secret, config.bits).merged_bits
    else:
        bits = codec.merge_secret_bits(username, _image_digest(secret, image_size), config.bits)
    return codec.binary_to_bipolar(bits)


def _recall(store: AuthStore, probe: np.ndarray):
    if store.config.schedule == ASYNCHRONOUS:
        return recall_async(store.weights, probe, store.config)
    if store.config.schedule == HYBRID:
        return recall_hybrid(store.weights, probe, store.config)
    return recall_sync(store.weights, probe, store.config)


def register(
    store: AuthStore,
    username: str,
    secret: SecretLike,
    mode: str = TEXTUAL,
    image_size: tuple[int, int] = DEFAULT_IMAGE_SIZE,
    now: Optional[int] = None,
) -> AuthStore:
    """Add a user: learn the merged credential pattern and record the name.

    Raises DuplicateUserError, CapacityExceededError, TooLongError, or
    NonAsciiError; on any error the input store is unchanged.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if store.find(username) is not None:
        raise DuplicateUserError(f"user {username!r} is already registered")
    if len(store.registry) >= capacity(store.config):
        raise CapacityExceededError(
            f"store already holds {len(store.registry)} of {capacity(store.config)} users"
        )
    pattern = _credential_pattern(store.config, username, secret, mode, image_size)
    weights = add_pattern(store.weights, pattern, store.config)
    stamp = int(time.time()) if now is None else int(now)
    record = CredentialRecord(username, mode, stamp)
    return replace(store, weights=weights, registry=store.registry + (record,))


def login(
    store: AuthStore,
    username: str,
    secret: SecretLike,
    image_size: tuple[int, int] = DEFAULT_IMAGE_SIZE,
) -> AuthDecision:
    """Decide a login attempt; never raises on user input.

    The probe is rebuilt exactly as at registration and recalled under the
    store's schedule. Acceptance requires convergence to the probe itself,
    bit for bit: the credential pattern must be a fixed point of the
    network. Anything else is a rejection with a reason.
    """
    record = store.find(username)
    if record is None:
        return AuthDecision(False, DecisionReason.UNKNOWN_USER)
    try:
        probe = _credential_pattern(store.config, username, secret, record.mode, image_size)
    except (HopfieldAuthError, TypeError, ValueError):
        return AuthDecision(False, DecisionReason.MALFORMED_INPUT)
    result = _recall(store, probe)
    if not result.converged:
        return AuthDecision(False, DecisionReason.NOT_CONVERGED)
    if np.array_equal(result.final, probe):
        return AuthDecision(True, DecisionReason.MATCH)
    return AuthDecision(False, DecisionReason.PATTERN_MISMATCH)


def change_password(
    store: AuthStore,
    username: str,
    old_secret: SecretLike,
    new_secret: SecretLike,
    image_size: tuple[int, int] = DEFAULT_IMAGE_SIZE,
    now: Optional[int] = None,
) -> AuthStore:
    """Replace a user's secret: unlearn the old pattern, learn the new one.

    The old credentials must pass login first (AuthFailedError otherwise).
    Unlearn-then-learn is exact for the additive rule, so every other
    user's contribution is preserved bit for bit.
    """
    decision = login(store, username, old_secret, image_size)
    if not decision.accepted:
        raise AuthFailedError(f"current credentials rejected ({decision.reason.value})")
    record = store.find(username)
    old_pattern = _credential_pattern(store.config, username, old_secret, record.mode, image_size)
    new_pattern = _credential_pattern(store.config, username, new_secret, record.mode, image_size)
    weights = remove_pattern(store.weights, old_pattern, store.config)
    weights = add_pattern(weights, new_pattern, store.config)
    stamp = int(time.time()) if now is None else int(now)
    registry = tuple(
        replace(r, registered_at=stamp) if r.username == username else r for r in store.registry
    )
    return replace(store, weights=weights, registry=registry)


def save_store(store: AuthStore, path: Union[str, Path]) -> None:
    """Write the store file: network snapshot, then the registry block.

    The write goes through a temporary file and an atomic rename so a
    crash cannot leave a half-written store behind.
    """
    buf = io.BytesIO()
    write_snapshot(store.weights, store.config.scale, buf)
    buf.write(_COUNT.pack(len(store.registry)))
    for record in store.registry:
        name = record.username.encode("ascii")
        buf.write(_NAME_LEN.pack(len(name)))
        buf.write(name)
        buf.write(_MODE_STAMP.pack(_MODE_CODES[record.mode], record.registered_at))
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    try:
        tmp.write_bytes(buf.getvalue())
        tmp.replace(path)
    except OSError as exc:
        raise IoFailureError(f"cannot write store {path}: {exc}") from exc


def load_store(
    path: Union[str, Path],
    capacity_factor: float = 0.10,
    max_sweeps: int = 100,
    schedule: str = "synchronous",
) -> AuthStore:
    """Read a store file back; load(save(s)) is observationally identical.

    The file format carries only the network size, pattern count, scale,
    weights, and registry. Capacity factor, sweep cap, and schedule are
    caller conventions and must be passed again here; a factor too small
    for the recorded user count raises BadConfigError. Structural damage
    (bad magic, truncation, asymmetry, nonzero diagonal, registry and
    pattern-count disagreement, trailing bytes) raises CorruptFileError.
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise IoFailureError(f"cannot read store {path}: {exc}") from exc
    fp = io.BytesIO(data)
    weights, scale = read_snapshot(fp)
    if weights.size < 8 or weights.size % 8 != 0:
        raise CorruptFileError(f"network size {weights.size} cannot hold byte-aligned credentials")
    if scale < 1:
        raise CorruptFileError(f"non-positive scale {scale} in store file")

    def take(n: int, what: str) -> bytes:
        chunk = fp.read(n)
        if len(chunk) != n:
            raise CorruptFileError(f"truncated registry block ({what})")
        return chunk

    (count,) = _COUNT.unpack(take(_COUNT.size, "record count"))
    records = []
    for _ in range(count):
        (name_len,) = _NAME_LEN.unpack(take(_NAME_LEN.size, "name length"))
        name_bytes = take(name_len, "username")
        try:
            username = name_bytes.decode("ascii")
        except UnicodeDecodeError as exc:
            raise CorruptFileError("username is not ASCII") from exc
        if any(not codec.PRINTABLE_MIN <= b <= codec.PRINTABLE_MAX for b in name_bytes):
            raise CorruptFileError("username contains non-printable bytes")
        mode_code, stamp = _MODE_STAMP.unpack(take(_MODE_STAMP.size, "mode and timestamp"))
        if mode_code not in _MODE_NAMES:
            raise CorruptFileError(f"unknown credential mode {mode_code}")
        records.append(CredentialRecord(username, _MODE_NAMES[mode_code], stamp))
    if fp.read(1):
        raise CorruptFileError("trailing bytes after the registry block")
    if weights.pattern_count != count:
        raise CorruptFileError(
            f"pattern count {weights.pattern_count} disagrees with registry length {count}"
        )
    if len({r.username for r in records}) != len(records):
        raise CorruptFileError("duplicate usernames in registry")
    config = NetworkConfig(
        bits=weights.size,
        scale=scale,
        capacity_factor=capacity_factor,
        max_sweeps=max_sweeps,
        schedule=schedule,
    )
    if count > capacity(config):
        raise BadConfigError(
            f"store holds {count} users but capacity_factor {capacity_factor} admits {capacity(config)}"
        )
    return AuthStore(config, weights, tuple(records))
