"""Shared helpers for the test suite: seeded generators and tiny oracles."""

import numpy as np

from hpauth.codec import PRINTABLE_MAX, PRINTABLE_MIN


def rng_for(*key) -> np.random.Generator:
    """Generator derived from an integer key tuple; never unseeded."""
    return np.random.default_rng(list(key))


def random_patterns(rng: np.random.Generator, count: int, bits: int) -> np.ndarray:
    """Uniform random bipolar patterns, shape (count, bits), int8."""
    return (rng.integers(0, 2, size=(count, bits)) * 2 - 1).astype(np.int8)


def random_text(rng: np.random.Generator, length: int) -> str:
    """Uniform random printable-ASCII string."""
    codes = rng.integers(PRINTABLE_MIN, PRINTABLE_MAX + 1, size=length)
    return "".join(chr(c) for c in codes)


def distinct_random_texts(rng: np.random.Generator, count: int, length: int) -> list:
    out, seen = [], set()
    while len(out) < count:
        text = random_text(rng, length)
        if text not in seen:
            seen.add(text)
            out.append(text)
    return out


def brute_force_energy(weights: np.ndarray, x: np.ndarray, bias=None) -> int:
    """Independent energy oracle: explicit double loop, pure Python ints."""
    bits = len(x)
    total = 0
    for i in range(bits):
        for j in range(bits):
            total += int(weights[i][j]) * int(x[i]) * int(x[j])
    energy = -total // 2
    if bias is not None:
        energy -= sum(int(b) * int(v) for b, v in zip(bias, x))
    return energy


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    rows = []
    for outcome, verdict in (("passed", "PASS"), ("failed", "FAIL")):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when == "call" and "test_acceptance.py" in rep.nodeid:
                rows.append((rep.nodeid.split("::")[-1], verdict))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, verdict in sorted(rows):
            terminalreporter.write_line(f"{verdict:>4}  {name}")
