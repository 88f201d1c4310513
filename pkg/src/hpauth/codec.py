"""Deterministic conversions between credentials and bipolar patterns.

Text goes character -> 8-bit big-endian ASCII code -> {0,1} -> {-1,+1}.
Images go raster -> fixed-size 24-bit RGB matrix (nearest-neighbor
resample) -> {0,1} -> {-1,+1}. A username and secret are merged into one
fixed-length pattern as

    bits(username) || bits(0x1F) || bits(secret) || zero padding

where 0x1F (the ASCII unit separator) sits outside the printable range
and therefore can never collide with credential bytes; without it,
("ab", "c") and ("a", "bc") would merge to the same pattern. Everything
here is a pure function, safe for unrestricted concurrent use.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image

from .errors import (
    BadDimensionsError,
    DelimiterInInputError,
    EmptyImageError,
    IoFailureError,
    MalformedPatternError,
    NonAsciiError,
    TooLongError,
)

DELIMITER = 0x1F  # ASCII unit separator, below the printable range
PAD = 0x00
PRINTABLE_MIN = 0x20
PRINTABLE_MAX = 0x7E


def char_to_bits(c: str) -> str:
    """Big-endian 8-bit binary expansion of one ASCII character's code."""
    if len(c) != 1:
        raise ValueError(f"expected a single character, got {len(c)}")
    code = ord(c)
    if code > 0x7F:
        raise NonAsciiError(f"code point U+{code:04X} is outside ASCII")
    return format(code, "08b")


def text_to_bits(text: str) -> str:
    """Concatenated 8-bit expansions of every character."""
    return "".join(char_to_bits(c) for c in text)


def binary_to_bipolar(bits: str) -> np.ndarray:
    """Map a {0,1} string elementwise to a {-1,+1} vector (0 -> -1)."""
    if bits and set(bits) - {"0", "1"}:
        raise ValueError("binary string may only contain '0' and '1'")
    arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8).astype(np.int8)
    return (2 * (arr - ord("0")) - 1).astype(np.int8)


def bipolar_to_binary(x) -> str:
    """Inverse of :func:`binary_to_bipolar`; round trips are identities."""
    arr = np.asarray(x)
    if arr.size and not np.all((arr == 1) | (arr == -1)):
        raise ValueError("pattern values must be exactly -1 or +1")
    return "".join("1" if v > 0 else "0" for v in arr)


@dataclass(frozen=True)
class MergedCredential:
    """A username/secret pair fused into one fixed-length bit string."""

    username: str
    password: str
    merged_bits: str


def _check_field(name: str, value: str) -> None:
    if not isinstance(value, str):
        raise NonAsciiError(f"{name} must be a string")
    if chr(DELIMITER) in value:
        # Unreachable for printable input, checked anyway so the reserved
        # byte can never be smuggled into a field.
        raise DelimiterInInputError(f"{name} contains the reserved delimiter byte 0x1F")
    for ch in value:
        if not PRINTABLE_MIN <= ord(ch) <= PRINTABLE_MAX:
            raise NonAsciiError(f"{name} contains a character outside printable ASCII")


def merge_secret_bits(username: str, secret_bits: str, target_bits: int) -> str:
    """Merge a username with an already-encoded secret bit string.

    Used directly for graphical secrets, whose digests are raw bits rather
    than printable text. Pads with zero (NUL) bits to ``target_bits``.
    """
    _check_field("username", username)
    if secret_bits and set(secret_bits) - {"0", "1"}:
        raise ValueError("secret bits may only contain '0' and '1'")
    if target_bits % 8 != 0:
        raise ValueError(f"target bit length must be byte aligned, got {target_bits}")
    body = text_to_bits(username) + format(DELIMITER, "08b") + secret_bits
    if len(body) > target_bits:
        raise TooLongError(
            f"merged credential needs {len(body)} bits but the network has {target_bits}"
        )
    return body + "0" * (target_bits - len(body))


def merge(username: str, password: str, target_bits: int) -> MergedCredential:
    """Merge a textual credential pair into one fixed-length bit string.

    Both fields must be printable ASCII. The result decodes back exactly
    via :func:`unmerge`, and distinct pairs always produce distinct bits.
    """
    _check_field("username", username)
    _check_field("password", password)
    bits = merge_secret_bits(username, text_to_bits(password), target_bits)
    return MergedCredential(username, password, bits)


def unmerge(merged: Union[MergedCredential, str]) -> tuple[str, str]:
    """Split a merged bit string back into (username, password).

    Requires exactly one delimiter byte before the padding, all-NUL
    padding, and printable-ASCII field bytes; anything else raises
    ``MalformedPatternError``. Only textual merges are decodable; image
    digests are arbitrary bits and will not survive this.
    """
    bits = merged.merged_bits if isinstance(merged, MergedCredential) else merged
    if len(bits) % 8 != 0:
        raise MalformedPatternError(f"bit length {len(bits)} is not a whole number of bytes")
    data = bytes(int(bits[i : i + 8], 2) for i in range(0, len(bits), 8))
    content_end = len(data)
    while content_end > 0 and data[content_end - 1] == PAD:
        content_end -= 1
    content = data[:content_end]
    if PAD in content:
        raise MalformedPatternError("NUL byte inside the credential body")
    if content.count(DELIMITER) != 1:
        raise MalformedPatternError(
            f"expected exactly one delimiter, found {content.count(DELIMITER)}"
        )
    user_bytes, pass_bytes = content.split(bytes([DELIMITER]))
    for b in user_bytes + pass_bytes:
        if not PRINTABLE_MIN <= b <= PRINTABLE_MAX:
            raise MalformedPatternError(f"byte 0x{b:02X} is outside printable ASCII")
    return user_bytes.decode("ascii"), pass_bytes.decode("ascii")


@dataclass(frozen=True, eq=False)
class ImageMatrix:
    """Rectangular grid of 24-bit RGB integers."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.array(self.pixels, dtype=np.int64)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError(f"pixel grid must be a non-empty 2-D array, got shape {arr.shape}")
        if arr.min() < 0 or arr.max() > 0xFFFFFF:
            raise ValueError("every pixel must fit in 24 bits")
        arr.flags.writeable = False
        object.__setattr__(self, "pixels", arr)

    @property
    def rows(self) -> int:
        return self.pixels.shape[0]

    @property
    def cols(self) -> int:
        return self.pixels.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ImageMatrix):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)


def load_image(path: Union[str, Path]) -> np.ndarray:
    """Decode an image file (PNG, BMP, ...) to an RGB uint8 raster."""
    try:
        with Image.open(path) as im:
            return np.asarray(im.convert("RGB"), dtype=np.uint8)
    except OSError as exc:
        raise IoFailureError(f"cannot decode image {path}: {exc}") from exc


def _nearest_indices(out_len: int, src_len: int) -> np.ndarray:
    # Sample at output pixel centers; the identity resample falls out of
    # floor((i + 0.5) * src / out) == i when out == src.
    idx = ((np.arange(out_len) + 0.5) * src_len / out_len).astype(np.int64)
    return np.clip(idx, 0, src_len - 1)


def image_to_rgb_matrix(raster: np.ndarray, out_rows: int, out_cols: int) -> ImageMatrix:
    """Resample a raster to out_rows x out_cols of packed 24-bit pixels.

    Nearest-neighbor sampling: deterministic, and no pixel values are
    invented by interpolation. Each cell is ``(R << 16) | (G << 8) | B``.
    """
    arr = np.asarray(raster)
    if arr.ndim == 2:  # grayscale: replicate into three channels
        arr = np.stack([arr, arr, arr], axis=-1)
    if arr.ndim != 3 or arr.shape[2] < 3:
        raise ValueError(f"expected an (rows, cols, 3) raster, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise EmptyImageError("source raster has no pixels")
    if out_rows < 1 or out_cols < 1:
        raise BadDimensionsError(f"output dimensions must be >= 1, got {out_rows}x{out_cols}")
    rows = _nearest_indices(out_rows, arr.shape[0])
    cols = _nearest_indices(out_cols, arr.shape[1])
    sampled = arr[np.ix_(rows, cols)].astype(np.int64)
    packed = (sampled[:, :, 0] << 16) | (sampled[:, :, 1] << 8) | sampled[:, :, 2]
    return ImageMatrix(packed)


def rgb_matrix_to_binary(mat: ImageMatrix) -> str:
    """Row-major concatenation of each pixel's big-endian 24-bit expansion."""
    return "".join(format(int(v), "024b") for v in mat.pixels.flat)


def image_to_bipolar(raster: np.ndarray, out_rows: int, out_cols: int) -> np.ndarray:
    """Full image pipeline: resample, pack to bits, then map to {-1,+1}."""
    return binary_to_bipolar(rgb_matrix_to_binary(image_to_rgb_matrix(raster, out_rows, out_cols)))
