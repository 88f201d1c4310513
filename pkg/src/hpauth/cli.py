"""Command-line surface for the credential store.

Subcommands cover the whole lifecycle: ``init`` creates a store file,
``register``/``login``/``passwd`` drive authentication, ``convert-image``
exposes the image codec, and ``bench`` runs the benchmark suite.

Conventions, uniform across subcommands:

* Secrets are read from a prompt (no echo) on a terminal, or from one
  stdin line otherwise. They never appear in argv, logs, or reports.
* The last stdout line is always machine-readable: "RESULT: accept",
  "RESULT: reject <reason>", "RESULT: ok", or "RESULT: error <token>".
* Exit codes: 0 success or accepted login, 1 authentication rejection,
  2 usage or input error, 3 store or file error. The mapping is the
  TOKEN_EXIT_CODES table below.
* The store path comes from --store or the HPAUTH_STORE variable.
* Mutating commands take an advisory file lock (<store>.lock) so two
  processes cannot interleave a read-modify-write on the same store.

``run()`` executes one invocation in-process and returns a
CommandOutcome; ``main()`` is the console entry point.
"""

import contextlib
import getpass
import io
import os
import re
import sys
import traceback
from dataclasses import dataclass
from pathlib import Path

import click
import filelock

from . import authstore
from . import bench as benchlib
from . import codec
from .authstore import DEFAULT_IMAGE_SIZE, GRAPHICAL, MODES, TEXTUAL
from .errors import EmptySecretError, HopfieldAuthError, IoFailureError
from .network import ASYNCHRONOUS, HYBRID, SYNCHRONOUS, NetworkConfig

PROG = "hpauth"
STORE_ENV_VAR = "HPAUTH_STORE"

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_USAGE = 2
EXIT_STORE = 3

# Error-token -> exit-code table; exit codes are a total function of the
# taxonomy. Tokens are derived from exception class names by error_token.
TOKEN_EXIT_CODES = {
    "usage": EXIT_USAGE,
    "aborted": EXIT_USAGE,
    "bad-config": EXIT_USAGE,
    "bad-params": EXIT_USAGE,
    "non-ascii": EXIT_USAGE,
    "too-long": EXIT_USAGE,
    "delimiter-in-input": EXIT_USAGE,
    "empty-secret": EXIT_USAGE,
    "empty-image": EXIT_USAGE,
    "bad-dimensions": EXIT_USAGE,
    "malformed-pattern": EXIT_USAGE,
    "length-mismatch": EXIT_USAGE,
    "auth-failed": EXIT_REJECT,
    "capacity-exceeded": EXIT_STORE,
    "duplicate-user": EXIT_STORE,
    "io-failure": EXIT_STORE,
    "corrupt-file": EXIT_STORE,
    "empty-network": EXIT_STORE,
    "internal": EXIT_STORE,
}


@dataclass(frozen=True)
class CommandOutcome:
    """Result of one CLI invocation, exactly as a caller would observe it."""

    exit_code: int
    report: str
    machine_line: str
    diagnostics: str = ""


def error_token(exc: Exception) -> str:
    """Kebab-case token for an exception class: IoFailureError -> io-failure."""
    name = type(exc).__name__.removesuffix("Error")
    return re.sub(r"(?<!^)(?=[A-Z])", "-", name).lower()


def prompt_secret(mode: str = TEXTUAL, stream=None, label: str = None) -> str:
    """Read one secret: hidden prompt on a terminal, one stdin line otherwise.

    Textual mode returns the password itself; graphical mode returns the
    path of the secret image (the image content is the secret, so the
    path may echo). A single trailing newline is stripped from piped
    input. Raises EmptySecretError when nothing usable arrives.
    """
    stream = sys.stdin if stream is None else stream
    if label is None:
        label = "Password" if mode == TEXTUAL else "Image path"
    if getattr(stream, "isatty", lambda: False)():
        if mode == TEXTUAL:
            value = getpass.getpass(f"{label}: ")
        else:
            value = input(f"{label}: ")
    else:
        line = stream.readline()
        if line == "":
            raise EmptySecretError(f"{label.lower()} expected on stdin, got end of input")
        value = line.removesuffix("\n").removesuffix("\r")
    if value == "":
        raise EmptySecretError(f"{label.lower()} must be non-empty")
    return value


def _as_secret(mode: str, value: str):
    return Path(value) if mode == GRAPHICAL else value


def _resolve_store(ctx: click.Context, store_opt) -> Path:
    if store_opt:
        return Path(store_opt)
    env_path = ctx.obj["env"].get(STORE_ENV_VAR, "")
    if env_path:
        return Path(env_path)
    raise click.UsageError(f"no store path: pass --store or set {STORE_ENV_VAR}")


@contextlib.contextmanager
def _store_lock(path: Path):
    lock = filelock.FileLock(f"{path}.lock")
    try:
        with lock.acquire(timeout=10):
            yield
    except filelock.Timeout as exc:
        raise IoFailureError(f"store {path} is locked by another process") from exc


def _parse_size(ctx, param, value) -> tuple[int, int]:
    try:
        rows, cols = (int(part) for part in value.lower().split("x"))
    except ValueError:
        raise click.BadParameter(f"expected ROWSxCOLS, e.g. 8x8, got {value!r}")
    if rows < 1 or cols < 1:
        raise click.BadParameter(f"size must be positive, got {value!r}")
    return rows, cols


def _parse_int_list(ctx, param, value) -> list[int]:
    try:
        return [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}")


def _load_options(fn):
    fn = click.option(
        "--schedule",
        default=SYNCHRONOUS,
        show_default=True,
        type=click.Choice([SYNCHRONOUS, ASYNCHRONOUS, HYBRID]),
        help="recall schedule used for login decisions",
    )(fn)
    fn = click.option("--max-sweeps", default=100, show_default=True, type=int)(fn)
    fn = click.option("--capacity-factor", default=0.10, show_default=True, type=float)(fn)
    fn = click.option(
        "--store",
        "store_opt",
        default=None,
        metavar="PATH",
        help=f"store file (default: ${STORE_ENV_VAR})",
    )(fn)
    return fn


@click.group(name=PROG)
@click.pass_context
def cli(ctx):
    """Associative-memory credential store."""
    ctx.obj = ctx.obj or {"env": os.environ, "stdin": sys.stdin}


@cli.command()
@click.option("--bits", required=True, type=int, help="pattern length; a multiple of 8")
@click.option("--scale", default=1, show_default=True, type=int)
@click.option("--force", is_flag=True, help="overwrite an existing store file")
@_load_options
@click.pass_context
def init(ctx, bits, scale, force, store_opt, capacity_factor, max_sweeps, schedule):
    """Create an empty store file."""
    path = _resolve_store(ctx, store_opt)
    config = NetworkConfig(
        bits=bits,
        scale=scale,
        capacity_factor=capacity_factor,
        max_sweeps=max_sweeps,
        schedule=schedule,
    )
    store = authstore.init_store(config)
    if path.exists() and not force:
        raise IoFailureError(f"store {path} already exists; pass --force to overwrite")
    with _store_lock(path):
        authstore.save_store(store, path)
    click.echo(
        f"initialized {bits}-bit store at {path} (capacity {authstore.capacity(config)} users)"
    )
    return EXIT_OK, "ok"


@cli.command()
@click.argument("username")
@click.option("--mode", default=TEXTUAL, show_default=True, type=click.Choice(list(MODES)))
@click.option(
    "--image-size",
    default="{}x{}".format(*DEFAULT_IMAGE_SIZE),
    show_default=True,
    callback=_parse_size,
    help="digest size for graphical secrets",
)
@_load_options
@click.pass_context
def register(ctx, username, mode, image_size, store_opt, capacity_factor, max_sweeps, schedule):
    """Register USERNAME with a secret read from prompt or stdin."""
    path = _resolve_store(ctx, store_opt)
    secret = prompt_secret(mode, ctx.obj["stdin"])
    with _store_lock(path):
        store = authstore.load_store(path, capacity_factor, max_sweeps, schedule)
        store = authstore.register(store, username, _as_secret(mode, secret), mode, image_size)
        authstore.save_store(store, path)
    click.echo(f"registered {username} ({mode})")
    return EXIT_OK, "ok"


@cli.command()
@click.argument("username")
@click.option(
    "--image-size",
    default="{}x{}".format(*DEFAULT_IMAGE_SIZE),
    show_default=True,
    callback=_parse_size,
)
@_load_options
@click.pass_context
def login(ctx, username, image_size, store_opt, capacity_factor, max_sweeps, schedule):
    """Authenticate USERNAME; the secret is read from prompt or stdin."""
    path = _resolve_store(ctx, store_opt)
    store = authstore.load_store(path, capacity_factor, max_sweeps, schedule)
    record = store.find(username)
    if record is None:
        click.echo(f"login rejected for {username}: unknown-user")
        return EXIT_REJECT, "reject unknown-user"
    secret = prompt_secret(record.mode, ctx.obj["stdin"])
    decision = authstore.login(store, username, _as_secret(record.mode, secret), image_size)
    if decision.accepted:
        click.echo(f"login accepted for {username}")
        return EXIT_OK, "accept"
    click.echo(f"login rejected for {username}: {decision.reason.value}")
    return EXIT_REJECT, f"reject {decision.reason.value}"


@cli.command()
@click.argument("username")
@click.option(
    "--image-size",
    default="{}x{}".format(*DEFAULT_IMAGE_SIZE),
    show_default=True,
    callback=_parse_size,
)
@_load_options
@click.pass_context
def passwd(ctx, username, image_size, store_opt, capacity_factor, max_sweeps, schedule):
    """Change USERNAME's secret; reads the current then the new secret."""
    path = _resolve_store(ctx, store_opt)
    preview = authstore.load_store(path, capacity_factor, max_sweeps, schedule)
    record = preview.find(username)
    if record is None:
        click.echo(f"password change rejected for {username}: unknown-user")
        return EXIT_REJECT, "reject unknown-user"
    stdin = ctx.obj["stdin"]
    old_secret = prompt_secret(record.mode, stdin, label="Current secret")
    new_secret = prompt_secret(record.mode, stdin, label="New secret")
    with _store_lock(path):
        store = authstore.load_store(path, capacity_factor, max_sweeps, schedule)
        decision = authstore.login(store, username, _as_secret(record.mode, old_secret), image_size)
        if not decision.accepted:
            click.echo(f"password change rejected for {username}: {decision.reason.value}")
            return EXIT_REJECT, f"reject {decision.reason.value}"
        store = authstore.change_password(
            store,
            username,
            _as_secret(record.mode, old_secret),
            _as_secret(record.mode, new_secret),
            image_size,
        )
        authstore.save_store(store, path)
    click.echo(f"password changed for {username}")
    return EXIT_OK, "ok"


@cli.command("convert-image")
@click.argument("image_path", type=click.Path())
@click.option("--size", default="8x8", show_default=True, callback=_parse_size)
@click.option(
    "--view",
    default="rgb",
    show_default=True,
    type=click.Choice(["rgb", "binary", "bipolar"]),
    help="packed 24-bit integers, the bit string, or the +1/-1 pattern",
)
def convert_image(image_path, size, view):
    """Print an image's codec form at the given matrix size."""
    raster = codec.load_image(image_path)
    mat = codec.image_to_rgb_matrix(raster, *size)
    if view == "rgb":
        for row in mat.pixels:
            click.echo(" ".join(str(int(v)) for v in row))
    else:
        bits = codec.rgb_matrix_to_binary(mat)
        per_row = mat.cols * 24
        for r in range(mat.rows):
            row_bits = bits[r * per_row : (r + 1) * per_row]
            if view == "binary":
                click.echo(row_bits)
            else:
                values = codec.binary_to_bipolar(row_bits)
                click.echo(" ".join(str(int(v)) for v in values))
    return EXIT_OK, "ok"


@cli.group(name="bench")
def bench_group():
    """Benchmarks; tables go to stdout, figures to files on request."""


def _bench_io(fn):
    fn = click.option(
        "--plot",
        "plot_path",
        default=None,
        metavar="PNG",
        help="render a figure of this report to the given file",
    )(fn)
    fn = click.option(
        "--out",
        "out_path",
        default=None,
        metavar="FILE",
        help="also write the table to this file",
    )(fn)
    fn = click.option("--json", "as_json", is_flag=True, help="emit JSON instead of TSV")(fn)
    return fn


def _emit_report(report, as_json, out_path, plot_path, plot_name):
    payload = report.to_json() if as_json else report.to_tsv()
    click.echo(payload)
    if out_path:
        Path(out_path).write_text(payload + "\n")
    if plot_path:
        from . import plots

        getattr(plots, plot_name)(report, plot_path)
        click.echo(f"figure written to {plot_path}", err=True)
    return EXIT_OK, "ok"


@bench_group.command("capacity")
@click.option("--bits", default=64, show_default=True, type=int)
@click.option("--patterns", default="2,4,6,8,10,12,14,16", show_default=True, callback=_parse_int_list)
@click.option("--trials", default=20, show_default=True, type=int)
@click.option("--seed", default=1, show_default=True, type=int)
@_bench_io
def bench_capacity(bits, patterns, trials, seed, as_json, out_path, plot_path):
    """Recall fidelity as the stored-pattern count grows."""
    report = benchlib.capacity_sweep(bits, patterns, trials, seed)
    return _emit_report(report, as_json, out_path, plot_path, "plot_capacity_sweep")


@bench_group.command("timing")
@click.option("--users", default="10,25,50", show_default=True, callback=_parse_int_list)
@click.option("--bits", default=512, show_default=True, type=int)
@click.option("--trials", default=3, show_default=True, type=int)
@click.option("--seed", default=1, show_default=True, type=int)
@_bench_io
def bench_timing(users, bits, trials, seed, as_json, out_path, plot_path):
    """Per-user registration and login wall time."""
    report = benchlib.timing_bench(users, bits, trials, seed)
    return _emit_report(report, as_json, out_path, plot_path, "plot_timing")


@bench_group.command("false-accept")
@click.option("--bits", default=256, show_default=True, type=int)
@click.option("--users", default=10, show_default=True, type=int)
@click.option("--attempts", default=100, show_default=True, type=int)
@click.option("--seed", default=1, show_default=True, type=int)
@click.option("--password-len", default=8, show_default=True, type=int)
@_bench_io
def bench_false_accept(bits, users, attempts, seed, password_len, as_json, out_path, plot_path):
    """Acceptance rates for correct, random, and perturbed secrets."""
    report = benchlib.false_accept_sweep(bits, users, attempts, seed, password_len)
    return _emit_report(report, as_json, out_path, plot_path, "plot_false_accept")


def run(argv, env=None, stdin=None) -> CommandOutcome:
    """Execute one CLI invocation in-process and return its outcome.

    Never raises on user input: every argument list yields an outcome
    whose machine_line is present, with stdout text in ``report`` and
    stderr text in ``diagnostics``.
    """
    env = os.environ if env is None else env
    stdin = sys.stdin if stdin is None else stdin
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            rv = cli.main(
                args=list(argv),
                prog_name=PROG,
                standalone_mode=False,
                obj={"env": env, "stdin": stdin},
            )
            if isinstance(rv, tuple):
                code, suffix = rv
            else:  # help and other early-exit paths return an int or None
                code = int(rv or 0)
                suffix = "ok" if code == 0 else "error usage"
        except click.ClickException as exc:
            click.echo(f"error: {exc.format_message()}", err=True)
            code, suffix = EXIT_USAGE, "error usage"
        except click.exceptions.Abort:
            code, suffix = TOKEN_EXIT_CODES["aborted"], "error aborted"
        except HopfieldAuthError as exc:
            token = error_token(exc)
            click.echo(f"error: {exc}", err=True)
            code, suffix = TOKEN_EXIT_CODES.get(token, EXIT_STORE), f"error {token}"
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            code, suffix = EXIT_STORE, "error io-failure"
        except Exception:
            traceback.print_exc(file=err)
            code, suffix = TOKEN_EXIT_CODES["internal"], "error internal"
    return CommandOutcome(
        exit_code=code,
        report=out.getvalue(),
        machine_line=f"RESULT: {suffix}",
        diagnostics=err.getvalue(),
    )


def format_report(outcome: CommandOutcome) -> str:
    """Line-oriented rendering of an outcome; the RESULT line comes last."""
    report = outcome.report
    if report and not report.endswith("\n"):
        report += "\n"
    return report + outcome.machine_line + "\n"


def main(argv=None) -> int:
    outcome = run(sys.argv[1:] if argv is None else list(argv))
    sys.stdout.write(format_report(outcome))
    if outcome.diagnostics:
        sys.stderr.write(outcome.diagnostics)
    return outcome.exit_code
