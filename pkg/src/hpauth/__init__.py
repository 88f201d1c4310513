"""Credential authentication on a binary auto-associative memory.

Passwords (or image digests) are merged with the username into one
fixed-width +1/-1 pattern and stored in a Hopfield-style network by
Hebbian outer products. Login recalls the probe pattern and accepts only
an exact fixed-point match; password change unlearns the old pattern and
learns the new one, which is exact under the additive rule.

Layers: ``network`` (weights, recall schedules, energy), ``codec``
(text and image to bipolar patterns), ``authstore`` (lifecycle over a
persistent store file), ``bench``/``plots`` (measurements and figures),
``cli`` (the ``hpauth`` command).
"""

from .authstore import (
    DEFAULT_IMAGE_SIZE,
    GRAPHICAL,
    TEXTUAL,
    AuthDecision,
    AuthStore,
    CredentialRecord,
    DecisionReason,
    change_password,
    init_store,
    load_store,
    login,
    register,
    save_store,
)
from .bench import (
    FalseAcceptReport,
    SweepReport,
    TimingReport,
    capacity_sweep,
    false_accept_sweep,
    timing_bench,
)
from .codec import (
    ImageMatrix,
    MergedCredential,
    binary_to_bipolar,
    bipolar_to_binary,
    char_to_bits,
    image_to_bipolar,
    image_to_rgb_matrix,
    load_image,
    merge,
    rgb_matrix_to_binary,
    text_to_bits,
    unmerge,
)
from .errors import (
    AuthFailedError,
    BadConfigError,
    BadDimensionsError,
    BadParamsError,
    CapacityExceededError,
    CorruptFileError,
    DelimiterInInputError,
    DuplicateUserError,
    EmptyImageError,
    EmptyNetworkError,
    EmptySecretError,
    HopfieldAuthError,
    IoFailureError,
    LengthMismatchError,
    MalformedPatternError,
    NonAsciiError,
    TooLongError,
)
from .network import (
    ASYNCHRONOUS,
    HYBRID,
    RANDOM,
    SEQUENTIAL,
    SYNCHRONOUS,
    NetworkConfig,
    RecallResult,
    WeightMatrix,
    add_pattern,
    as_pattern,
    capacity,
    energy,
    read_snapshot,
    recall_async,
    recall_hybrid,
    recall_sync,
    remove_pattern,
    store_patterns,
    write_snapshot,
    zero_weights,
)

__version__ = "0.1.0"

__all__ = [
    "ASYNCHRONOUS",
    "AuthDecision",
    "AuthFailedError",
    "AuthStore",
    "BadConfigError",
    "BadDimensionsError",
    "BadParamsError",
    "CapacityExceededError",
    "CorruptFileError",
    "CredentialRecord",
    "DEFAULT_IMAGE_SIZE",
    "DecisionReason",
    "DelimiterInInputError",
    "DuplicateUserError",
    "EmptyImageError",
    "EmptyNetworkError",
    "EmptySecretError",
    "FalseAcceptReport",
    "GRAPHICAL",
    "HYBRID",
    "HopfieldAuthError",
    "ImageMatrix",
    "IoFailureError",
    "LengthMismatchError",
    "MalformedPatternError",
    "MergedCredential",
    "NetworkConfig",
    "NonAsciiError",
    "RANDOM",
    "RecallResult",
    "SEQUENTIAL",
    "SYNCHRONOUS",
    "SweepReport",
    "TEXTUAL",
    "TimingReport",
    "TooLongError",
    "WeightMatrix",
    "add_pattern",
    "as_pattern",
    "binary_to_bipolar",
    "bipolar_to_binary",
    "capacity",
    "capacity_sweep",
    "change_password",
    "char_to_bits",
    "energy",
    "false_accept_sweep",
    "image_to_bipolar",
    "image_to_rgb_matrix",
    "init_store",
    "load_image",
    "load_store",
    "login",
    "merge",
    "read_snapshot",
    "recall_async",
    "recall_hybrid",
    "recall_sync",
    "register",
    "remove_pattern",
    "rgb_matrix_to_binary",
    "save_store",
    "store_patterns",
    "text_to_bits",
    "timing_bench",
    "unmerge",
    "write_snapshot",
    "zero_weights",
]
