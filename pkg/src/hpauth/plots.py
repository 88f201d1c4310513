"""Figure rendering for benchmark reports.

Each helper takes a finished report object and writes one PNG next to
whatever tabular output the caller produced. Rendering is headless
(Agg backend) and purely cosmetic: figures never replace the TSV/JSON
data, they just make the knees and gaps easier to see.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bench import FalseAcceptReport, SweepReport, TimingReport


def plot_capacity_sweep(report: SweepReport, path) -> None:
    """Exact-recall and bit-error curves with the 0.15 * bits knee marked."""
    counts = [pt.pattern_count for pt in report.points]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(counts, [pt.exact_recall_rate for pt in report.points], "o-", label="exact recall rate")
    ax.plot(counts, [pt.bit_error_rate for pt in report.points], "s--", label="bit error rate")
    knee = 0.15 * report.bits
    if counts[0] <= knee <= counts[-1]:
        ax.axvline(knee, color="gray", linestyle=":", label=f"0.15 x {report.bits} bits")
    ax.set_xlabel("stored patterns")
    ax.set_ylabel("rate")
    ax.set_ylim(-0.05, 1.05)
    ax.set_title(f"Recall fidelity vs. load ({report.bits}-bit network)")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_timing(report: TimingReport, path) -> None:
    """Measured per-user registration and login times."""
    users = [row.n_users for row in report.rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(users, [row.mean_register_s for row in report.rows], "o-", label="register (mean)")
    ax.plot(users, [row.mean_login_s for row in report.rows], "s-", label="login (mean)")
    ax.set_xlabel("registered users")
    ax.set_ylabel("seconds per operation")
    ax.set_yscale("log")
    ax.set_title(f"Per-user cost ({report.bits}-bit network, {report.trials} trials)")
    ax.legend()
    ax.grid(True, alpha=0.3, which="both")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_false_accept(report: FalseAcceptReport, path) -> None:
    """Acceptance rate per probe class as a bar chart."""
    labels = [row.label for row in report.classes]
    rates = [row.accept_rate for row in report.classes]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    bars = ax.bar(labels, rates, color=["tab:green", "tab:red", "tab:orange"])
    ax.bar_label(bars, fmt="%.3f")
    ax.set_ylabel("acceptance rate")
    ax.set_ylim(0, 1.1)
    ax.set_title(f"Acceptance by probe class ({report.n_users} users, {report.bits} bits)")
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
