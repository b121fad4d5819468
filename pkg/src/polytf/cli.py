"""``polytf`` command-line front end.

Every subcommand validates its configuration before computing anything,
writes CSV (with a header row) or JSON, and exits with 0 on success, 2 on a
usage or validation error and 3 on a numerical failure.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import weights
from .approx import concentration, reconstruct_on_interval
from .errors import NumericalError, PolytfError
from .localization import FunctionRep, K_SELECTORS, variance_decay_sweep
from .quadrature import gauss_rule
from .spectral import eval_psi_explicit, slepian_basis
from .tridiag import build_jacobi, eigenvalues
from .uncertainty import random_points, region_from_basis, uncertainty_region, witness_target

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class ConfigError(Exception):
    """Invalid option value; ``field`` names the offending flag."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


def fmt(value):
    """Shortest round-trip text for a number."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _json_ready(obj):
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_json_ready(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _table_text(columns, rows, fmt_name):
    if fmt_name == "json":
        data = {c: [row[i] for row in rows] for i, c in enumerate(columns)}
        return json.dumps(_json_ready(data), indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _record_text(record, fmt_name):
    if fmt_name == "json":
        return json.dumps(_json_ready(record), indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["field", "value"])
    for key, value in record.items():
        if isinstance(value, (list, tuple, np.ndarray)):
            value = " ".join(fmt(v) for v in value)
        elif isinstance(value, dict):
            value = json.dumps(_json_ready(value), sort_keys=True)
        elif value is None:
            value = ""
        writer.writerow([key, fmt(value)])
    return buf.getvalue()


# option parsing helpers

def _parse_pair(text, field):
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(field, f"expected 'lo,hi', got {text!r}")
    try:
        lo, hi = (float(p) for p in parts)
    except ValueError:
        raise ConfigError(field, f"expected two numbers, got {text!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise ConfigError(field, f"need finite lo < hi, got {text!r}")
    if lo < -1.0 or hi > 1.0:
        raise ConfigError(field, "interval must lie in [-1, 1]")
    return lo, hi


def _parse_int_list(text, field):
    try:
        values = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(field, f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise ConfigError(field, "no values given")
    return values


def _source(args):
    config = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("--config", str(exc)) from None
        if not isinstance(config, dict):
            raise ConfigError("--config", "must hold a JSON object")
    if args.family is not None:
        config["family"] = args.family
    if args.alpha is not None:
        config["alpha"] = args.alpha
    if args.beta is not None:
        config["beta"] = args.beta
    config.setdefault("family", "chebyshev1")
    if config["family"] == "jacobi":
        for key in ("alpha", "beta"):
            if key not in config:
                raise ConfigError(f"--{key}", "required for the jacobi family")
            if not float(config[key]) > -1.0:
                raise ConfigError(f"--{key}", f"must be > -1, got {config[key]}")
    try:
        return weights.from_config(config)
    except PolytfError as exc:
        raise ConfigError("--family", str(exc)) from None


def _window(args):
    try:
        n = int(args.n)
    except ValueError:
        raise ConfigError("--n", f"expected an integer, got {args.n!r}") from None
    if args.m < 0:
        raise ConfigError("--m", f"must be >= 0, got {args.m}")
    if n < args.m:
        raise ConfigError("--n", f"must be >= m={args.m}, got {n}")
    return args.m, n


def _positive(value, field):
    if value < 1:
        raise ConfigError(field, f"must be >= 1, got {value}")
    return value


# subcommands

def cmd_spectrum(args):
    src = _source(args)
    m, n = _window(args)
    nodes = eigenvalues(build_jacobi(src, m, n))
    return _table_text(["k", "x"], [(k + 1, x) for k, x in enumerate(nodes)], args.format)


def _sample_grid(kind, samples, src):
    if kind == "uniform":
        return np.linspace(-1.0, 1.0, samples)
    if kind == "chebyshev":
        return np.cos(np.pi * (np.arange(samples, 0, -1) - 0.5) / samples)
    return gauss_rule(src, samples).nodes


def cmd_psi(args):
    src = _source(args)
    m, n = _window(args)
    _positive(args.samples, "--samples")
    dim = n - m + 1
    k = dim if args.k is None else args.k
    if not 1 <= k <= dim:
        raise ConfigError("--k", f"must lie in 1..{dim}, got {k}")
    basis = slepian_basis(src, m, n)
    x = _sample_grid(args.grid, args.samples, src)
    psi = eval_psi_explicit(basis, k, x)
    return _table_text(["x", "psi"], list(zip(x, psi)), args.format)


def cmd_variance_sweep(args):
    src = _source(args)
    n_list = _parse_int_list(args.n, "--n")
    if args.m < 0:
        raise ConfigError("--m", f"must be >= 0, got {args.m}")
    if n_list != sorted(set(n_list)):
        raise ConfigError("--n", "values must be strictly ascending")
    if n_list[0] < args.m:
        raise ConfigError("--n", f"every value must be >= m={args.m}")
    rows = variance_decay_sweep(src, args.m, n_list, args.k_select)
    return _table_text(["n", "k", "x", "var"], [(r.n, r.k, r.x, r.var) for r in rows], args.format)


def cmd_quad(args):
    src = _source(args)
    _positive(args.nodes, "--nodes")
    if args.m < 0:
        raise ConfigError("--m", f"must be >= 0, got {args.m}")
    rule = gauss_rule(src, args.nodes, shift=args.m)
    return _table_text(["nodes", "weights"], list(zip(rule.nodes, rule.weights)), args.format)


def _load_coeffs(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError("--input", str(exc)) from None
    if not isinstance(data, dict) or "m0" not in data or "coeffs" not in data:
        raise ConfigError("--input", "expected an object with 'm0' and 'coeffs'")
    m0 = data["m0"]
    if not isinstance(m0, int) or m0 < 0:
        raise ConfigError("--input", f"'m0' must be a non-negative integer, got {m0!r}")
    try:
        coeffs = np.asarray(data["coeffs"], dtype=np.float64)
    except (TypeError, ValueError):
        raise ConfigError("--input", "'coeffs' must be a list of numbers") from None
    if coeffs.ndim != 1 or coeffs.size == 0 or not np.all(np.isfinite(coeffs)):
        raise ConfigError("--input", "'coeffs' must be a non-empty list of finite numbers")
    return m0, coeffs


def cmd_approx(args):
    src = _source(args)
    m, n = _window(args)
    interval = _parse_pair(args.interval, "--interval")
    m0, coeffs = _load_coeffs(args.input)
    f = FunctionRep(src, m0, coeffs)
    if f.norm == 0.0:
        raise ConfigError("--input", "coefficients describe the zero function")
    if args.normalize:
        f = f.normalized()
    elif abs(f.norm - 1.0) > 1e-10:
        raise ConfigError("--input", f"function has norm {f.norm!r}; pass --normalize")
    if m0 < m or f.degree > n:
        raise ConfigError("--input", f"coefficients m0..{f.degree} exceed the window {m}..{n}")
    basis = slepian_basis(src, m, n)
    report = reconstruct_on_interval(f, basis, interval).as_dict()
    conc = concentration(f, interval, m)
    report["concentration"] = conc.value
    report["concentration_approximate"] = conc.approximate
    return _record_text(report, args.format)


def cmd_uncertainty(args):
    src = _source(args)
    m, n = _window(args)
    if args.random is not None:
        _positive(args.random, "--random")
        region = uncertainty_region(src, m, n)
        eps, pi, var = random_points(src, m, n, args.random, seed=args.seed)
        labels = region.classify_many(eps, np.clip(pi, 0.0, 1.0))
        return _table_text(["eps", "pi", "var", "label"],
                           list(zip(eps, pi, var, labels)), args.format)
    G = _positive(args.grid, "--grid")
    region = uncertainty_region(src, m, n)
    # Chebyshev spacing resolves the thin strips beyond the extreme eigenvalues
    eps_axis = -np.cos(np.pi * (np.arange(G) + 0.5) / G)
    pi_axis = np.linspace(0.0, 1.0, G) if G > 1 else np.array([0.5])
    E, P = np.meshgrid(eps_axis, pi_axis, indexing="ij")
    labels = region.classify_many(E.ravel(), P.ravel())
    return _table_text(["eps", "pi", "label"], list(zip(E.ravel(), P.ravel(), labels)), args.format)


def cmd_uncertainty_witness(args):
    src = _source(args)
    m, n = _window(args)
    eps_t, pi_t = args.target_eps, args.target_pi
    if not -1.0 < eps_t < 1.0:
        raise ConfigError("--target-eps", f"must lie in (-1, 1), got {eps_t}")
    if not 0.0 <= pi_t <= 1.0:
        raise ConfigError("--target-pi", f"must lie in [0, 1], got {pi_t}")
    basis = slepian_basis(src, m, n)
    label = region_from_basis(basis).classify(eps_t, pi_t)
    if label != "A":
        raise ConfigError("--target-eps", f"target lies in region {label}, only A is attainable")
    w = witness_target(src, m, n, eps_t, pi_t, inner=basis)
    return _record_text(w.as_dict(), args.format)


COMMANDS = {
    "spectrum": cmd_spectrum,
    "psi": cmd_psi,
    "variance-sweep": cmd_variance_sweep,
    "quad": cmd_quad,
    "approx": cmd_approx,
    "uncertainty": cmd_uncertainty,
    "uncertainty-witness": cmd_uncertainty_witness,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=weights.FAMILIES, default=None,
                        help="weight family (default chebyshev1)")
    common.add_argument("--alpha", type=float, default=None, help="jacobi alpha")
    common.add_argument("--beta", type=float, default=None, help="jacobi beta")
    common.add_argument("--config", default=None, help="JSON family config file")
    common.add_argument("--m", type=int, default=0, help="window start")
    common.add_argument("--n", default="10", help="window end")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--output", default=None, help="output path (default stdout)")

    parser = argparse.ArgumentParser(prog="polytf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("spectrum", parents=[common], help="eigenvalues of the Jacobi matrix")

    p = sub.add_parser("psi", parents=[common], help="sample one eigenfunction")
    p.add_argument("--k", type=int, default=None, help="1-based index (default: largest)")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--grid", choices=("uniform", "chebyshev", "gauss"), default="uniform")

    p = sub.add_parser("variance-sweep", parents=[common], help="eigenfunction variances")
    p.add_argument("--k-select", choices=K_SELECTORS, default="all")

    p = sub.add_parser("quad", parents=[common], help="Gauss rule")
    p.add_argument("--nodes", type=int, default=10)

    p = sub.add_parser("approx", parents=[common], help="reconstruction report")
    p.add_argument("--interval", required=True, help="lo,hi")
    p.add_argument("--input", required=True, help='JSON file {"m0": int, "coeffs": [...]}')
    p.add_argument("--normalize", action="store_true")

    p = sub.add_parser("uncertainty", parents=[common], help="region map or random samples")
    p.add_argument("--grid", type=int, default=40)
    p.add_argument("--random", type=int, default=None, help="sample N random functions")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("uncertainty-witness", parents=[common], help="attain a target point")
    p.add_argument("--target-eps", type=float, required=True)
    p.add_argument("--target-pi", type=float, required=True)
    return parser


VALUE_FLAGS = ("--interval", "--target-eps", "--alpha", "--beta")


def _glue_values(argv):
    """Attach values such as ``-0.2,0.6`` to their flag so argparse keeps them."""
    out = []
    it = iter(list(argv))
    for tok in it:
        if tok in VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


DEFAULT_FORMAT = {"approx": "json", "uncertainty-witness": "json"}


def run(argv=None, stdout=None, stderr=None):
    """Parse ``argv``, execute the subcommand and return the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if args.format is None:
        args.format = DEFAULT_FORMAT.get(args.command, "csv")
    if not 0 <= getattr(args, "seed", 0) < 2 ** 64:
        print("polytf: error: --seed: must be a 64-bit unsigned integer", file=stderr)
        return EXIT_USAGE
    try:
        text = COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"polytf: error: {exc}", file=stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"polytf: numerical failure: {exc}", file=stderr)
        return EXIT_NUMERICAL
    except PolytfError as exc:
        print(f"polytf: error: {exc}", file=stderr)
        return EXIT_USAGE
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
