"""Acceptance suite: eleven end-to-end guarantees, one test per criterion.

Every test is fully seeded and self-contained; wall-clock budgets are
asserted where the guarantee includes one. A per-criterion PASS/FAIL
summary is printed at the end of the run (see conftest).

Criterion 7 is expected to fail, and the failure is genuine: ASCII
credentials share so much byte structure (a zero top bit in every byte,
long NUL padding) that ten stored patterns in a 512-unit network
correlate far beyond what exact-fixed-point recall tolerates. The
assertion message carries the measured numbers; the false-accept and
unknown-user clauses of the same criterion do hold.
"""

import dataclasses
import statistics
import time

import numpy as np
import pytest
from PIL import Image

from conftest import (
    brute_force_energy,
    distinct_random_texts,
    random_patterns,
    random_text,
    rng_for,
)
from hpauth.authstore import (
    DecisionReason,
    change_password,
    init_store,
    load_store,
    login,
    register,
    save_store,
)
from hpauth.bench import REFERENCE_LABEL, capacity_sweep, timing_bench
from hpauth.codec import (
    binary_to_bipolar,
    bipolar_to_binary,
    image_to_bipolar,
    load_image,
    merge,
    unmerge,
)
from hpauth.errors import CorruptFileError
from hpauth.network import (
    ASYNCHRONOUS,
    HYBRID,
    RANDOM,
    SEQUENTIAL,
    SYNCHRONOUS,
    NetworkConfig,
    energy,
    recall_async,
    recall_hybrid,
    recall_sync,
    store_patterns,
)

RECALL_BY_SCHEDULE = {
    SYNCHRONOUS: recall_sync,
    ASYNCHRONOUS: recall_async,
    HYBRID: recall_hybrid,
}


def test_criterion_01_async_updates_never_raise_energy():
    start = time.perf_counter()
    updates_checked = 0
    for case in range(1000):
        rng = rng_for(101, case)
        config = NetworkConfig(
            bits=64,
            capacity_factor=1.0,
            schedule=ASYNCHRONOUS,
            async_order=RANDOM if case % 2 else SEQUENTIAL,
            async_seed=case,
        )
        weights = store_patterns(random_patterns(rng, 1 + case % 6, 64), config)
        probe = random_patterns(rng, 1, 64)[0]
        energies = [energy(weights, probe, config)]
        recall_async(
            weights,
            probe,
            config,
            on_update=lambda state, unit: energies.append(energy(weights, state, config)),
        )
        trace = np.array(energies)
        assert np.all(np.diff(trace) <= 0), f"case {case}: energy rose along {trace}"
        updates_checked += len(energies) - 1
    elapsed = time.perf_counter() - start
    assert updates_checked >= 64 * 1000  # at least one full sweep per instance
    assert elapsed < 10.0, f"energy audit took {elapsed:.2f}s"


def test_criterion_02_converged_finals_survive_one_more_sweep():
    for case in range(200):
        rng = rng_for(102, case)
        bits = int(rng.integers(8, 48))
        config = NetworkConfig(
            bits=bits,
            capacity_factor=1.0,
            async_seed=case,
            hybrid_group_size=1 + case % 8,
        )
        weights = store_patterns(
            random_patterns(rng, int(rng.integers(1, max(2, bits // 3))), bits), config
        )
        probe = random_patterns(rng, 1, bits)[0]
        for schedule, recall in RECALL_BY_SCHEDULE.items():
            result = recall(weights, probe, dataclasses.replace(config, schedule=schedule))
            if not result.converged:
                continue
            # a claimed fixed point must be inert under every schedule
            for verifier in RECALL_BY_SCHEDULE.values():
                again = verifier(
                    weights, result.final, dataclasses.replace(config, max_sweeps=1)
                )
                assert again.converged
                assert np.array_equal(again.final, result.final), (
                    f"case {case}/{schedule}: converged state moved on resweep"
                )


def test_criterion_03_async_finals_beat_every_single_flip():
    start = time.perf_counter()
    for case in range(500):
        rng = rng_for(103, case)
        bits = int(rng.integers(2, 13))
        config = NetworkConfig(bits=bits, capacity_factor=1.0, async_seed=case)
        weights = store_patterns(
            random_patterns(rng, int(rng.integers(1, bits + 1)), bits), config
        )
        probe = random_patterns(rng, 1, bits)[0]
        final = recall_async(weights, probe, config).final
        base = brute_force_energy(weights.entries, final)
        for i in range(bits):
            flipped = final.copy()
            flipped[i] = -flipped[i]
            assert brute_force_energy(weights.entries, flipped) >= base, (
                f"case {case}: flipping unit {i} lowers the energy"
            )
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"exhaustive flip audit took {elapsed:.2f}s"


def test_criterion_04_stored_patterns_are_recalled_verbatim():
    config = NetworkConfig(bits=128)  # default budget admits 12 patterns
    exact = 0
    for trial in range(100):
        patterns = random_patterns(rng_for(104, trial), 6, 128)
        weights = store_patterns(patterns, config)
        for x in patterns:
            result = recall_sync(weights, x, config)
            exact += result.converged and np.array_equal(result.final, x)
    rate = exact / 600
    assert rate >= 0.99, f"only {exact}/600 stored patterns came back verbatim"


def test_criterion_05_recall_collapses_past_the_capacity_knee():
    start = time.perf_counter()
    report = capacity_sweep(bits=100, pattern_counts=[5, 10, 15, 20, 25], trials=200, seed=1)
    errors = [pt.bit_error_rate for pt in report.points]
    assert all(b >= a for a, b in zip(errors, errors[1:])), f"not monotone: {errors}"
    by_count = {pt.pattern_count: pt for pt in report.points}
    assert by_count[20].bit_error_rate >= 10 * by_count[5].bit_error_rate, (
        f"20 patterns: {by_count[20].bit_error_rate}, 5 patterns: {by_count[5].bit_error_rate}"
    )
    # the sharpest drop in exact recall marks the knee; the storage budget
    # puts it at 0.15 * 100 = 15 patterns, inside the 10..20 segment
    failure = {pt.pattern_count: 1.0 - pt.exact_recall_rate for pt in report.points}
    counts = sorted(failure)
    steepest = max(zip(counts, counts[1:]), key=lambda seg: failure[seg[1]] - failure[seg[0]])
    assert steepest[0] >= 10 and steepest[1] <= 20, (
        f"steepest recall loss on segment {steepest}, failure curve {failure}"
    )
    elapsed = time.perf_counter() - start
    assert elapsed < 300.0, f"sweep took {elapsed:.2f}s"


def test_criterion_06_credential_codec_round_trips():
    rng = rng_for(106)
    for case in range(10_000):
        name_len = int(rng.integers(1, 32))
        secret_len = int(rng.integers(0, 64 - name_len))  # name+secret <= 63 bytes
        username = random_text(rng, name_len)
        password = random_text(rng, secret_len)
        merged = merge(username, password, 512)
        assert len(merged.merged_bits) == 512
        assert unmerge(merged) == (username, password), f"case {case}"
        assert bipolar_to_binary(binary_to_bipolar(merged.merged_bits)) == merged.merged_bits


def test_criterion_07_ten_user_store_authenticates_end_to_end():
    rng = rng_for(107)
    store = init_store(NetworkConfig(bits=512))
    creds = [(name, random_text(rng, 12)) for name in distinct_random_texts(rng, 10, 8)]
    for username, password in creds:
        store = register(store, username, password, now=0)

    correct = sum(login(store, username, password).accepted for username, password in creds)

    false_accepts = 0
    probes = 1000
    for k in range(probes):
        username, right = creds[k % len(creds)]
        while True:
            guess = random_text(rng, 12)
            if guess != right:
                break
        false_accepts += login(store, username, guess).accepted
    false_accept_rate = false_accepts / probes

    ghosts_rejected = all(
        login(store, "ghost-" + random_text(rng, 6), "whatever").reason
        is DecisionReason.UNKNOWN_USER
        for _ in range(50)
    )

    problems = []
    if correct != len(creds):
        problems.append(
            f"only {correct}/{len(creds)} correct logins accepted: ten ASCII credential"
            " patterns in 512 units are correlated (shared zero top bits and NUL"
            " padding) far past what exact-fixed-point recall tolerates"
        )
    if false_accept_rate > 0.01:
        problems.append(f"false-accept rate {false_accept_rate:.4f} exceeds 0.01")
    if not ghosts_rejected:
        problems.append("an unregistered username was not rejected as unknown")
    assert not problems, "; ".join(problems)


def test_criterion_08_password_change_is_exactly_reversible():
    for case in range(100):
        rng = rng_for(108, case)
        store = init_store(NetworkConfig(bits=512))
        users = distinct_random_texts(rng, 1 + case % 2, 8)
        secrets = {name: random_text(rng, 12) for name in users}
        for name in users:
            store = register(store, name, secrets[name], now=0)
        target = users[0]
        original = store.weights
        temporary = random_text(rng, 16)
        changed = change_password(store, target, secrets[target], temporary, now=1)
        assert changed.weights != original  # the change really moved the weights
        restored = change_password(changed, target, temporary, secrets[target], now=2)
        assert restored.weights == original, f"case {case}: weights differ after undo"
        assert restored.find(target).registered_at == 2


def test_criterion_09_saved_stores_load_back_verbatim_and_reject_damage(tmp_path):
    rng = rng_for(109)
    store = init_store(NetworkConfig(bits=512))
    creds = [(name, random_text(rng, 10)) for name in distinct_random_texts(rng, 4, 8)]
    for username, password in creds:
        store = register(store, username, password, now=5)
    path = tmp_path / "users.hpn"
    save_store(store, path)
    loaded = load_store(path)

    probes = []
    for k in range(20):
        probes.append(creds[k % 4])  # correct secret
    for k in range(20):
        username, right = creds[k % 4]
        probes.append((username, right + "!"))  # wrong secret
    for k in range(10):
        probes.append((f"ghost{k:02d}", "whatever"))  # unknown user
    assert len(probes) == 50
    before = [login(store, username, password) for username, password in probes]
    after = [login(loaded, username, password) for username, password in probes]
    assert after == before, "a login decision changed across save/load"

    pristine = path.read_bytes()
    damage = {
        "truncated": pristine[: len(pristine) // 3],
        "asymmetric": None,
        "nonzero-diagonal": None,
    }
    asym = bytearray(pristine)  # entry (0, 1) lives just past the 16-byte header
    value = int.from_bytes(asym[20:24], "little", signed=True)
    asym[20:24] = (value + 1).to_bytes(4, "little", signed=True)
    damage["asymmetric"] = bytes(asym)
    diag = bytearray(pristine)  # entry (0, 0) must stay zero
    diag[16:20] = (2).to_bytes(4, "little", signed=True)
    damage["nonzero-diagonal"] = bytes(diag)
    for label, payload in damage.items():
        bad = tmp_path / f"{label}.hpn"
        bad.write_bytes(payload)
        with pytest.raises(CorruptFileError):
            load_store(bad)


def test_criterion_10_auth_operations_meet_latency_budgets():
    rng = rng_for(110)
    store = init_store(NetworkConfig(bits=512))
    creds = [(name, random_text(rng, 12)) for name in distinct_random_texts(rng, 5, 8)]
    register_times = []
    for username, password in creds:
        t0 = time.perf_counter()
        store = register(store, username, password, now=0)
        register_times.append(time.perf_counter() - t0)
    login(store, *creds[0])  # warm-up
    login_times = []
    for k in range(20):
        username, password = creds[k % len(creds)]
        t0 = time.perf_counter()
        login(store, username, password)
        login_times.append(time.perf_counter() - t0)
    login_ms = 1000 * statistics.median(login_times)
    register_ms = 1000 * statistics.median(register_times)
    assert login_ms < 10.0, f"median login took {login_ms:.2f} ms"
    assert register_ms < 50.0, f"median registration took {register_ms:.2f} ms"

    # published figures may appear in reports only as labeled comment rows
    tsv = timing_bench(user_counts=[2], bits=144, trials=1, seed=1).to_tsv()
    assert REFERENCE_LABEL in tsv
    for line in tsv.splitlines():
        if "0.000435" in line or "\t213" in line or " 213" in line:
            assert line.startswith("#"), f"reference figures leaked into data rows: {line}"


def test_criterion_11_image_secrets_encode_deterministically(tmp_path):
    black_path = tmp_path / "black.png"
    white_path = tmp_path / "white.png"
    Image.new("RGB", (1, 1), (0, 0, 0)).save(black_path)
    Image.new("RGB", (1, 1), (255, 255, 255)).save(white_path)
    black = image_to_bipolar(load_image(black_path), 1, 1)
    white = image_to_bipolar(load_image(white_path), 1, 1)
    assert list(black) == [-1] * 24
    assert list(white) == [1] * 24

    copy_path = tmp_path / "copy.png"
    copy_path.write_bytes(black_path.read_bytes())
    assert np.array_equal(
        image_to_bipolar(load_image(copy_path), 8, 8),
        image_to_bipolar(load_image(black_path), 8, 8),
    )

    raster = rng_for(111).integers(0, 256, size=(16, 16, 3)).astype(np.uint8)
    for rows in range(1, 9):
        for cols in range(1, 9):
            assert len(image_to_bipolar(raster, rows, cols)) == rows * cols * 24
