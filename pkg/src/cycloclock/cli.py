"""``cycloclock`` command-line front end.

Every command prints one table, as JSON (``{"config", "rows", "summary"}``)
or CSV (header, rows, then ``# key=value`` summary lines).

Exit codes: 0 success, 1 a comparison failed, 2 invalid usage or config.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

import numpy as np

from . import clock, linalg
from .clock import ClockModel, Convention, EvolutionSpec
from .exactcyc import root_of_unity, to_complex
from .numtheory import ramanujan_sum, ramanujan_sum_direct, weighted_coprime_sum

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class ConfigError(ValueError):
    pass


class Table:
    def __init__(self, columns: Sequence[str]):
        self.columns = list(columns)
        self.rows: list[dict[str, Any]] = []
        self.summary: dict[str, Any] = {}

    def add(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError("row width does not match header")
        self.rows.append({c: _clean(v) for c, v in zip(self.columns, values)})


def _clean(x: Any) -> Any:
    # plain Python scalars only; -0.0 is printed as 0
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (float, np.floating)):
        return float(x) + 0.0
    if isinstance(x, np.integer):
        return int(x)
    return x


def _fmt(x: Any) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    if x is None:
        return ""
    return str(x)


def render(table: Table, config: dict[str, Any], fmt: str) -> str:
    if fmt == "json":
        doc = {"config": config, "rows": table.rows, "summary": table.summary}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_fmt(row[c]) for c in table.columns])
    for key, value in table.summary.items():
        buf.write(f"# {key}={_fmt(value)}\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands

def _model(args) -> ClockModel:
    conv = args.convention or "zero-based"
    try:
        return ClockModel(args.n, Convention(conv))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _scale_text(n: int) -> str:
    return f"1/sqrt({n})"


def cmd_basis(args) -> tuple[Table, int]:
    model = _model(args)
    n = model.dim
    ks = range(n) if args.k is None else [args.k]
    if args.k is not None and not 0 <= args.k < n:
        raise ConfigError(f"--k must lie in 0..{n - 1}")
    table = Table(["k", "index", "m", "coefficient", "scale", "exact", "re", "im"])
    for k in ks:
        for i, m in enumerate(model.labels):
            z = root_of_unity(n, -k * m)
            w = to_complex(z)
            text = z.to_text()
            table.add(k, i, m, text, _scale_text(n), f"({text})/sqrt({n})", w.real, w.imag)
    table.summary = {"states": len(ks), "dim": n}
    return table, EXIT_OK


def cmd_evolve(args) -> tuple[Table, int]:
    model = _model(args)
    n = model.dim
    if (args.steps is None) == (args.t is None):
        raise ConfigError("evolve needs exactly one of --steps or --t")
    if args.steps is not None:
        if args.steps < 0:
            raise ConfigError("--steps must be non-negative")
        if not 0 <= args.k < n:
            raise ConfigError(f"--k must lie in 0..{n - 1}")
        table = Table(["step", "pointer_index"])
        state = clock.pointer_state_vector(model, args.k)
        one_step = clock.evolution_operator(model, 1)
        table.add(0, clock.pointer_index(model, state))
        for step in range(1, args.steps + 1):
            state = linalg.matvec(one_step, state)
            table.add(step, clock.pointer_index(model, state))
        final = table.rows[-1]["pointer_index"]
        table.summary = {"start": args.k, "steps": args.steps, "final_pointer_index": final,
                         "expected": (args.k + args.steps) % n}
        status = EXIT_OK if final == (args.k + args.steps) % n else EXIT_FAIL
        return table, status
    if args.t < 0:
        raise ConfigError("--t must be non-negative")
    phi = clock.wavefunction_evolution(model, EvolutionSpec(omega0=args.omega0), args.t)
    overlaps = clock.pointer_overlaps(model, phi)
    table = Table(["k", "overlap"])
    for k, ov in enumerate(overlaps):
        table.add(k, float(ov))
    best = int(np.argmax(overlaps))
    table.summary = {"t": args.t, "omega0": args.omega0, "argmax_k": best,
                     "max_overlap": float(overlaps[best])}
    return table, EXIT_OK


def cmd_commutator(args) -> tuple[Table, int]:
    model = _model(args)
    n = model.dim
    tol = args.tolerance
    variant = args.variant
    brute_float = clock.float_commutator(model, variant)
    if variant == "classic":
        exact = clock.commutator_tc_hc(model)
        closed = lambda r, c: clock.commutator_tc_hc_element(model, r, c)
        relation = clock.basis_relation(model)
        comm_v = linalg.embed(clock.to_pointer_basis(model, exact)).entries
        extra = ["v_re", "v_im", "phase_exponent", "predicted_exponent", "literal_equal"]
    else:
        exact = clock.commutator_tcyclot_hc(model)
        # row r, column c holds the coefficient of |u_r><u_c|, i.e. formula(l=c, n=r)
        closed = lambda r, c: clock.cyclo_commutator_element(model, c, r)
        extra = ["real_part_identity"]
    table = Table(["row", "col", "closed_form", "closed_re", "closed_im",
                   "brute_re", "brute_im", "abs_diff", "pass"] + extra)
    max_diff, exact_match, all_pass = 0.0, True, True
    real_identity = True
    for r in range(n):
        for c in range(n):
            cf = closed(r, c)
            exact_match &= exact.element(r, c) == cf
            cz = cf.to_complex()
            bz = complex(brute_float[r, c])
            diff = abs(cz - bz)
            ok = diff <= tol
            max_diff = max(max_diff, diff)
            all_pass &= ok
            row = [r, c, cf.to_text(), cz.real, cz.imag, bz.real, bz.imag, diff, ok]
            if variant == "classic":
                vz = complex(comm_v[r, c])
                row += [vz.real, vz.imag, relation.exponents[r][c],
                        relation.predicted[r][c], relation.literal_equal[r][c]]
            else:
                d = c - r
                s = weighted_coprime_sum(n, d)
                lhs = s.real_part() * d
                holds = lhs == Fraction(ramanujan_sum(n, d) * d * n, 2) if n >= 2 else True
                real_identity &= holds
                row.append(holds)
            table.add(*row)
    table.summary = {"variant": variant, "tolerance": tol, "max_abs_diff": max_diff,
                     "all_pass": all_pass, "exact_match": exact_match}
    if variant == "classic":
        table.summary.update({
            "phase_relation": "<v_m|C|v_n> = z^e <u_m|C|u_n>",
            "phase_relation_holds": relation.phase_relation_holds,
            "literal_equality_holds": relation.literal_equality_holds,
            "literal_equal_pairs": relation.literal_equal_count,
            "total_pairs": n * n,
        })
    else:
        table.summary["real_part_identity"] = real_identity
    ok = all_pass and exact_match and real_identity
    return table, EXIT_OK if ok else EXIT_FAIL


def _parse_n_list(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad --n-list {text!r}") from exc
    if not values or any(v < 1 for v in values):
        raise ConfigError("--n-list needs positive integers")
    return values


def cmd_uncertainty(args) -> tuple[Table, int]:
    ns = _parse_n_list(args.n_list) if args.n_list else [args.n]
    table = Table(["n", "convention", "mean_exact", "mean_h", "variance_exact", "delta_h",
                   "delta_h_tau_over_hbar", "asymptote", "relative_error",
                   "raw_second_moment", "large_n_estimate"])
    for n in ns:
        if args.convention:
            convs = [Convention(args.convention)]
        else:
            convs = [Convention.ZERO_BASED] + ([Convention.SYMMETRIC] if n % 2 else [])
        for conv in convs:
            try:
                model = ClockModel(n, conv)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
            rep = clock.energy_uncertainty(model)
            dh = rep.delta_h
            table.add(n, conv.value, str(rep.mean), rep.mean_energy, str(rep.variance), dh,
                      dh * model.tau / model.hbar, rep.asymptote, rep.relative_error,
                      rep.raw_second_moment, rep.large_n_second_moment)
    table.summary = {"units": "hbar=tau=1; exact columns in units of hbar*omega",
                     "asymptote": "pi/sqrt(3)"}
    return table, EXIT_OK


def _parse_range(text: Optional[str], n: int) -> range:
    if text is None:
        return range(n)
    try:
        parts = [int(p) for p in text.split(":")]
    except ValueError as exc:
        raise ConfigError(f"bad --m-range {text!r}") from exc
    if len(parts) != 2:
        raise ConfigError("--m-range takes START:STOP")
    return range(parts[0], parts[1])


def cmd_ramanujan(args) -> tuple[Table, int]:
    n = args.n
    if n < 1:
        raise ConfigError("--n must be positive")
    table = Table(["m", "holder", "direct_exact", "direct_re", "direct_im",
                   "s_exact", "s_re", "s_im", "identity"])
    all_ok = True
    for m in _parse_range(args.m_range, n):
        c = ramanujan_sum(n, m)
        direct = ramanujan_sum_direct(n, m)
        s = weighted_coprime_sum(n, m)
        dz, sz = to_complex(direct), to_complex(s)
        ok = direct == c
        if n >= 2:
            ok &= (s + s.conjugate()) == n * c
        all_ok &= ok
        table.add(m, c, direct.to_text(), dz.real, dz.imag, s.to_text(), sz.real, sz.imag, ok)
    table.summary = {"n": n, "all_identities_hold": all_ok}
    return table, EXIT_OK if all_ok else EXIT_FAIL


def _parse_coeffs(text: str) -> list[complex]:
    try:
        return [complex(tok.strip().replace(" ", "")) for tok in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"bad --coeffs {text!r}") from exc


def random_state(rng: np.random.Generator, n: int) -> np.ndarray:
    """Normalized complex Gaussian vector."""
    c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return c / np.linalg.norm(c)


def cmd_superposition(args) -> tuple[Table, int]:
    model = _model(args)
    if args.coeffs is not None:
        states = [np.asarray(_parse_coeffs(args.coeffs))]
        if len(states[0]) != model.dim:
            raise ConfigError(f"--coeffs needs {model.dim} values")
    else:
        if args.samples < 1:
            raise ConfigError("--samples must be positive")
        rng = np.random.default_rng(args.seed)
        states = [random_state(rng, model.dim) for _ in range(args.samples)]
    table = Table(["sample", "formula_re", "formula_im", "sandwich_re", "sandwich_im",
                   "abs_diff", "pass"])
    max_diff, all_pass = 0.0, True
    for i, c in enumerate(states):
        try:
            res = clock.superposition_expectation(model, c)
        except clock.NotNormalized as exc:
            raise ConfigError(str(exc)) from exc
        diff = res.abs_diff
        ok = diff <= args.tolerance
        max_diff = max(max_diff, diff)
        all_pass &= ok
        table.add(i, res.formula.real, res.formula.imag, res.sandwich.real,
                  res.sandwich.imag, diff, ok)
    table.summary = {"seed": None if args.coeffs is not None else args.seed,
                     "samples": len(states), "tolerance": args.tolerance,
                     "max_abs_diff": max_diff, "all_pass": all_pass}
    return table, EXIT_OK if all_pass else EXIT_FAIL


COMMANDS: dict[str, Callable] = {
    "basis": cmd_basis,
    "evolve": cmd_evolve,
    "commutator": cmd_commutator,
    "uncertainty": cmd_uncertainty,
    "ramanujan": cmd_ramanujan,
    "superposition": cmd_superposition,
}


# ---------------------------------------------------------------------------

def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0 or math.isinf(value):
        raise argparse.ArgumentTypeError(f"must be a positive real, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=3, help="clock dimension N (default 3)")
    common.add_argument("--convention", choices=[c.value for c in Convention], default=None)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--tolerance", type=_positive_float, default=1e-10)
    common.add_argument("--output", default="-", help="file path, or - for stdout")

    parser = argparse.ArgumentParser(
        prog="cycloclock",
        description="Exact and float experiments on the cyclotomic quantum clock.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", parents=[common], help="pointer-state coefficients")
    p.add_argument("--k", type=int, default=None)

    p = sub.add_parser("evolve", parents=[common], help="exact stepping or continuous overlaps")
    p.add_argument("--k", type=int, default=0, help="starting pointer state")
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--omega0", type=float, default=0.0)

    p = sub.add_parser("commutator", parents=[common], help="closed forms vs brute force")
    p.add_argument("--variant", choices=["classic", "cyclotomic"], default="classic")

    p = sub.add_parser("uncertainty", parents=[common], help="pointer-state energy spread")
    p.add_argument("--n-list", default=None, help="comma-separated dimensions")

    p = sub.add_parser("ramanujan", parents=[common], help="Ramanujan and weighted sums")
    p.add_argument("--m-range", default=None, help="START:STOP (default 0:N)")

    p = sub.add_parser("superposition", parents=[common], help="commutator expectation")
    p.add_argument("--coeffs", default=None, help="comma-separated complex coefficients")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        table, status = COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"cycloclock {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    config = {k: v for k, v in sorted(vars(args).items())}
    text = render(table, config, args.format)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
