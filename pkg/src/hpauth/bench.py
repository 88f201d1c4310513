"""Benchmarks for the associative-memory authentication scheme.

Three experiments, all fully seed-driven and bit-reproducible:

* capacity_sweep: recall fidelity of stored patterns as the stored count
  grows. Hebbian storage degrades sharply once the count approaches
  roughly 0.15 times the unit count, and this sweep walks through and
  past that knee on purpose.
* timing_bench: wall-clock registration and login cost per user, with
  published reference timings quoted as labeled appendix rows only (they
  were measured on different hardware and are never compared).
* false_accept_sweep: acceptance rates for correct secrets, uniformly
  random wrong secrets, and one-character perturbations.

Reports render as TSV (header row, one data row per point, run
parameters as '#' comment lines) or as a single JSON document.
"""

import json
import platform
import statistics
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import authstore
from .codec import PRINTABLE_MAX, PRINTABLE_MIN
from .errors import BadParamsError
from .network import NetworkConfig, recall_sync, store_patterns

# Published reference timings, different hardware; quoted for context
# only, never compared against measurements. Rows: users, associative
# network seconds, layered network seconds (None where no figure exists).
REFERENCE_LOGIN_TIMES_S = (
    (25, 0.000435, 91.00),
    (50, 0.000794, 317.0),
    (100, 0.001360, 1876.0),
    (10_000_000, 213.0, None),
)
# Published reference training times (unitless in the source).
REFERENCE_TRAINING_TIMES = {
    "hopfield": (136, 50, 100),
    "layered": (360, 450, 500),
}
REFERENCE_LABEL = "reference (paper-reported, different hardware)"


@dataclass(frozen=True)
class SweepPoint:
    pattern_count: int
    trials: int
    bit_error_rate: float
    exact_recall_rate: float


@dataclass(frozen=True)
class SweepReport:
    """Recall fidelity versus stored-pattern count for one network size."""

    bits: int
    seed: int
    points: tuple[SweepPoint, ...]

    def to_tsv(self) -> str:
        lines = ["patterns\ttrials\tbit_error_rate\texact_recall_rate"]
        for pt in self.points:
            lines.append(
                f"{pt.pattern_count}\t{pt.trials}\t{pt.bit_error_rate:.10g}\t{pt.exact_recall_rate:.10g}"
            )
        lines.append(f"# bits: {self.bits}")
        lines.append(f"# seed: {self.seed}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {"bits": self.bits, "seed": self.seed, "points": [asdict(pt) for pt in self.points]},
            indent=2,
        )


@dataclass(frozen=True)
class TimingRow:
    n_users: int
    mean_register_s: float
    median_register_s: float
    mean_login_s: float
    median_login_s: float


@dataclass(frozen=True)
class TimingReport:
    """Per-user registration and login wall time, seconds."""

    bits: int
    trials: int
    seed: int
    hardware: str
    rows: tuple[TimingRow, ...]

    def to_tsv(self) -> str:
        lines = ["n_users\tmean_register_s\tmedian_register_s\tmean_login_s\tmedian_login_s"]
        for row in self.rows:
            lines.append(
                f"{row.n_users}\t{row.mean_register_s:.6e}\t{row.median_register_s:.6e}"
                f"\t{row.mean_login_s:.6e}\t{row.median_login_s:.6e}"
            )
        lines.append(f"# bits: {self.bits}  trials: {self.trials}  seed: {self.seed}")
        lines.append(f"# hardware: {self.hardware}")
        lines.append(f"# {REFERENCE_LABEL}")
        lines.append("# ref_users\tref_hopfield_s\tref_layered_s")
        for users, hop, layered in REFERENCE_LOGIN_TIMES_S:
            layered_txt = "n/a" if layered is None else f"{layered:g}"
            lines.append(f"# {users}\t{hop:g}\t{layered_txt}")
        hop = "/".join(str(v) for v in REFERENCE_TRAINING_TIMES["hopfield"])
        lay = "/".join(str(v) for v in REFERENCE_TRAINING_TIMES["layered"])
        lines.append(f"# reference training times, unitless: hopfield {hop}, layered {lay}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "bits": self.bits,
                "trials": self.trials,
                "seed": self.seed,
                "hardware": self.hardware,
                "rows": [asdict(row) for row in self.rows],
                "reference": {
                    "label": REFERENCE_LABEL,
                    "login_times_s": [list(row) for row in REFERENCE_LOGIN_TIMES_S],
                    "training_times_unitless": {
                        k: list(v) for k, v in REFERENCE_TRAINING_TIMES.items()
                    },
                },
            },
            indent=2,
        )


@dataclass(frozen=True)
class ProbeClassRow:
    label: str
    attempts: int
    accepted: int
    accept_rate: float


@dataclass(frozen=True)
class FalseAcceptReport:
    """Acceptance rates per probe class against one synthetic store."""

    bits: int
    n_users: int
    attempts: int
    seed: int
    classes: tuple[ProbeClassRow, ...]

    def rate(self, label: str) -> float:
        for row in self.classes:
            if row.label == label:
                return row.accept_rate
        raise KeyError(label)

    def to_tsv(self) -> str:
        lines = ["class\tattempts\taccepted\taccept_rate"]
        for row in self.classes:
            lines.append(f"{row.label}\t{row.attempts}\t{row.accepted}\t{row.accept_rate:.10g}")
        lines.append(f"# bits: {self.bits}  users: {self.n_users}  seed: {self.seed}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "bits": self.bits,
                "n_users": self.n_users,
                "attempts": self.attempts,
                "seed": self.seed,
                "classes": [asdict(row) for row in self.classes],
                "summary": {
                    "false_reject_rate": 1.0 - self.rate("correct"),
                    "false_accept_random": self.rate("random"),
                    "false_accept_perturbed": self.rate("perturbed"),
                },
            },
            indent=2,
        )


def _rng(*key) -> np.random.Generator:
    return np.random.default_rng(list(key))


def random_patterns(rng: np.random.Generator, count: int, bits: int) -> np.ndarray:
    """Uniform random bipolar patterns, shape (count, bits)."""
    return (rng.integers(0, 2, size=(count, bits)) * 2 - 1).astype(np.int8)


def capacity_sweep(bits: int, pattern_counts, trials: int, seed: int) -> SweepReport:
    """Measure recall fidelity at each stored-pattern count.

    Per trial: draw the patterns, store them all, probe every stored
    pattern with synchronous recall, and score the final state against
    the original. Deterministic given the seed; each (count, trial) cell
    derives its own generator, so trials are order-independent.
    """
    counts = sorted(int(p) for p in pattern_counts)
    if bits < 1:
        raise BadParamsError(f"bits must be >= 1, got {bits}")
    if not counts:
        raise BadParamsError("need at least one pattern count")
    if counts[0] < 1 or counts[-1] > bits:
        raise BadParamsError(f"pattern counts must lie in [1, {bits}], got {counts}")
    if trials < 1:
        raise BadParamsError(f"trials must be >= 1, got {trials}")
    config = NetworkConfig(bits=bits, capacity_factor=1.0)
    points = []
    for count in counts:
        wrong_bits = 0
        exact = 0
        for trial in range(trials):
            patterns = random_patterns(_rng(seed, count, trial), count, bits)
            weights = store_patterns(patterns, config)
            for x in patterns:
                final = recall_sync(weights, x, config).final
                diff = int(np.count_nonzero(final != x))
                wrong_bits += diff
                exact += diff == 0
        total_patterns = trials * count
        points.append(
            SweepPoint(
                pattern_count=count,
                trials=trials,
                bit_error_rate=wrong_bits / (total_patterns * bits),
                exact_recall_rate=exact / total_patterns,
            )
        )
    return SweepReport(bits=bits, seed=seed, points=tuple(points))


def _random_text(rng: np.random.Generator, length: int) -> str:
    codes = rng.integers(PRINTABLE_MIN, PRINTABLE_MAX + 1, size=length)
    return "".join(chr(c) for c in codes)


def _synthetic_credentials(rng: np.random.Generator, n_users: int, password_len: int):
    creds = []
    seen = set()
    while len(creds) < n_users:
        username = _random_text(rng, 8)
        if username in seen:
            continue
        seen.add(username)
        creds.append((username, _random_text(rng, password_len)))
    return creds


def _build_store(bits: int, credentials) -> authstore.AuthStore:
    store = authstore.init_store(NetworkConfig(bits=bits))
    for username, password in credentials:
        store = authstore.register(store, username, password, now=0)
    return store


def timing_bench(user_counts, bits: int, trials: int, seed: int) -> TimingReport:
    """Time registration and login per user at each population size.

    Each trial registers the whole population into a fresh store and then
    probes every user once; reported figures are per-operation means and
    medians across trials, after one discarded warm-up trial.
    """
    counts = [int(n) for n in user_counts]
    if not counts or min(counts) < 1:
        raise BadParamsError(f"user counts must be >= 1, got {counts}")
    if trials < 1:
        raise BadParamsError(f"trials must be >= 1, got {trials}")
    config = NetworkConfig(bits=bits)
    limit = authstore.capacity(config)
    if max(counts) > limit:
        raise BadParamsError(f"{max(counts)} users exceed the capacity {limit} of {bits} bits")
    rows = []
    for n in counts:
        register_times = []
        login_times = []
        for trial in range(trials + 1):  # trial 0 is warm-up
            creds = _synthetic_credentials(_rng(seed, n, trial), n, 8)
            store = authstore.init_store(config)
            start = time.perf_counter()
            for username, password in creds:
                store = authstore.register(store, username, password, now=0)
            reg_elapsed = time.perf_counter() - start
            start = time.perf_counter()
            for username, password in creds:
                authstore.login(store, username, password)
            login_elapsed = time.perf_counter() - start
            if trial == 0:
                continue
            register_times.append(reg_elapsed / n)
            login_times.append(login_elapsed / n)
        rows.append(
            TimingRow(
                n_users=n,
                mean_register_s=statistics.fmean(register_times),
                median_register_s=statistics.median(register_times),
                mean_login_s=statistics.fmean(login_times),
                median_login_s=statistics.median(login_times),
            )
        )
    return TimingReport(
        bits=bits,
        trials=trials,
        seed=seed,
        hardware=platform.platform(),
        rows=tuple(rows),
    )


def _perturb(rng: np.random.Generator, password: str) -> str:
    pos = int(rng.integers(0, len(password)))
    while True:
        ch = chr(int(rng.integers(PRINTABLE_MIN, PRINTABLE_MAX + 1)))
        if ch != password[pos]:
            return password[:pos] + ch + password[pos + 1 :]


def false_accept_sweep(
    bits: int, n_users: int, attempts: int, seed: int, password_len: int = 8
) -> FalseAcceptReport:
    """Measure acceptance per probe class against a synthetic store.

    Classes: "correct" (registered secrets, so 1 - rate is the false
    reject rate), "random" (uniform wrong secrets of the same length),
    and "perturbed" (one character changed). With no users every probe
    is an unknown-user rejection.
    """
    if n_users < 0:
        raise BadParamsError(f"n_users must be >= 0, got {n_users}")
    if attempts < 1:
        raise BadParamsError(f"attempts must be >= 1, got {attempts}")
    if password_len < 1:
        raise BadParamsError(f"password_len must be >= 1, got {password_len}")
    config = NetworkConfig(bits=bits)
    limit = authstore.capacity(config)
    if n_users > limit:
        raise BadParamsError(f"{n_users} users exceed the capacity {limit} of {bits} bits")
    creds = _synthetic_credentials(_rng(seed, 0), n_users, password_len)
    store = _build_store(bits, creds)
    rng = _rng(seed, 1)
    classes = []
    for label in ("correct", "random", "perturbed"):
        accepted = 0
        for k in range(attempts):
            if n_users == 0:
                username, password = f"ghost{k:04d}", _random_text(rng, password_len)
            else:
                username, correct = creds[k % n_users]
                if label == "correct":
                    password = correct
                elif label == "random":
                    while True:
                        password = _random_text(rng, password_len)
                        if password != correct:
                            break
                else:
                    password = _perturb(rng, correct)
            accepted += authstore.login(store, username, password).accepted
        classes.append(ProbeClassRow(label, attempts, accepted, accepted / attempts))
    return FalseAcceptReport(
        bits=bits, n_users=n_users, attempts=attempts, seed=seed, classes=tuple(classes)
    )
