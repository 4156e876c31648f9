"""Acceptance criteria, one test each, with a verdict line per criterion."""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from cycloclock import clock, linalg
from cycloclock.clock import ClockModel, Convention, EvolutionSpec
from cycloclock.exactcyc import root_of_unity
from cycloclock.numtheory import ramanujan_sum, weighted_coprime_sum

from acceptance_report import record

ZERO, SYM = Convention.ZERO_BASED, Convention.SYMMETRIC


def test_c01_exact_stepping():
    start = time.perf_counter()
    failures = []
    for n in range(1, 25):
        model = ClockModel(n)
        step = clock.evolution_operator(model, 1)
        for k in range(n):
            got = linalg.matvec(step, clock.pointer_state_vector(model, k))
            if got != clock.pointer_state_vector(model, (k + 1) % n):
                failures.append((n, k))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 10
    record(1, "exact stepping v_k -> v_(k+1) for N=1..24", ok,
           f"{len(failures)} failures, {elapsed:.2f}s")
    assert not failures
    assert elapsed < 10


def test_c02_classic_commutator_closed_form():
    max_diff, exact_ok = 0.0, True
    for n in (2, 3, 5, 8, 12):
        model = ClockModel(n)
        exact = clock.commutator_tc_hc(model)
        brute = clock.float_commutator(model)
        for m in range(n):
            for k in range(n):
                cf = clock.commutator_tc_hc_element(model, m, k)
                exact_ok &= exact.element(m, k) == cf
                max_diff = max(max_diff, abs(cf.to_complex() - brute[m, k]))
    ok = exact_ok and max_diff < 1e-10
    record(2, "classic [T_c,H_c] closed form vs brute force", ok,
           f"max abs diff {max_diff:.2e}, exact equality {exact_ok}")
    assert exact_ok
    assert max_diff < 1e-10


def test_c03_basis_relation():
    lines, ok = [], True
    for n in (3, 4, 5, 6, 8):
        model = ClockModel(n)
        rel = clock.basis_relation(model)
        comm = clock.commutator_tc_hc(model)
        comm_v = clock.to_pointer_basis(model, comm)
        for m in range(n):
            for k in range(n):
                # <v_m|C|v_k> == zeta^(k-m) <u_m|C|u_k>
                ok &= comm_v.element(m, k) == comm.element(m, k) * root_of_unity(n, k - m)
        ok &= rel.phase_relation_holds
        lines.append(f"N={n}: literal equality {'holds' if rel.literal_equality_holds else 'fails'} "
                     f"({rel.literal_equal_count}/{n * n} pairs)")
    record(3, "<v_m|C|v_n> = zeta^(n-m) <u_m|C|u_n>", ok, "; ".join(lines))
    assert ok


def test_c04_cyclotomic_commutator():
    ok, diag_ok = True, True
    for n in (2, 3, 4, 6, 9, 12):
        model = ClockModel(n)
        comm = clock.commutator_tcyclot_hc(model)
        for l in range(n):
            for k in range(n):
                # coefficient of |u_k><u_l| is hbar*omega * formula(l, k)
                ok &= comm.element(k, l) == clock.cyclo_commutator_element(model, l, k)
            diag_ok &= not comm.element(l, l)
    record(4, "[T_cyclot,H_c] = hbar*omega x closed form, exact", ok and diag_ok,
           f"elements {ok}, diagonal zero {diag_ok}")
    assert ok and diag_ok


def test_c05_ramanujan_identities():
    start = time.perf_counter()
    max_diff, identity_ok = 0.0, True
    for n in range(1, 61):
        for m in range(n):
            brute = sum(cmath_exp(p * m / n) for p in range(n) if math.gcd(p, n) == 1)
            max_diff = max(max_diff, abs(ramanujan_sum(n, m) - brute))
            if n >= 2:
                s = weighted_coprime_sum(n, m)
                identity_ok &= (s + s.conjugate()) == n * ramanujan_sum(n, m)
    elapsed = time.perf_counter() - start
    ok = max_diff < 1e-9 and identity_ok and elapsed < 30
    record(5, "Hoelder vs brute force; 2 Re S_N(m) = N c_N(m)", ok,
           f"max diff {max_diff:.2e}, identity {identity_ok}, {elapsed:.2f}s")
    assert max_diff < 1e-9
    assert identity_ok
    assert elapsed < 30


def cmath_exp(x):
    return complex(math.cos(2 * math.pi * x), math.sin(2 * math.pi * x))


def test_c06_energy_asymptote():
    target = math.pi / math.sqrt(3)
    reports = {conv: clock.energy_uncertainty(ClockModel(1001, conv)) for conv in (ZERO, SYM)}
    errs = {conv: abs(r.delta_h - target) / target for conv, r in reports.items()}
    mean_zero = {conv: r.mean == 0 for conv, r in reports.items()}
    ok = all(e < 0.01 for e in errs.values()) and mean_zero[SYM] and not mean_zero[ZERO]
    zb = reports[ZERO]
    detail = (f"rel err zero-based {errs[ZERO]:.2e}, symmetric {errs[SYM]:.2e}; "
              f"<H> zero-based {zb.mean_energy:.4f}, symmetric {reports[SYM].mean_energy}; "
              f"raw second moment {zb.raw_second_moment:.4f} vs w^2 N^2/3 "
              f"{zb.large_n_second_moment:.4f}; variance {float(zb.variance) * zb.omega ** 2:.4f}")
    record(6, "Delta H * tau/hbar -> pi/sqrt(3) at N=1001", ok, detail)
    assert ok


def test_c07_superposition_pipeline():
    rng = np.random.default_rng(20031118)
    max_diff = 0.0
    for n in (4, 6, 9):
        model = ClockModel(n)
        for _ in range(100):
            c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            c /= np.linalg.norm(c)
            max_diff = max(max_diff, clock.superposition_expectation(model, c).abs_diff)
    ok = max_diff < 1e-10
    record(7, "a_ln-sum expectation vs matrix sandwich", ok, f"max abs diff {max_diff:.2e}")
    assert ok


def test_c08_pointer_peak():
    rng = np.random.default_rng(4)
    grid = np.linspace(0, 2 * math.pi, 10_000, endpoint=False)
    step = grid[1] - grid[0]
    worst_peak, worst_sum = 0.0, 0.0
    for n in (7, 16, 51):
        model = ClockModel(n)
        for k in (0, 1, n - 1):
            vals = np.array([clock.pointer_wavefunction_closed_form(model, k, t) for t in grid])
            peak = grid[int(np.argmax(vals ** 2))]
            dist = abs(peak - 2 * math.pi * k / n)
            dist = min(dist, 2 * math.pi - dist)
            worst_peak = max(worst_peak, dist / step)
            for theta in rng.uniform(0, 2 * math.pi, 100):
                closed = clock.pointer_wavefunction_closed_form(model, k, theta)
                total = clock.pointer_wavefunction(model, k, theta)
                worst_sum = max(worst_sum,
                                abs(total - closed * clock.pointer_phase(model, k, theta)))
                if n % 2:
                    sym = ClockModel(n, SYM)
                    worst_sum = max(worst_sum, abs(clock.pointer_wavefunction(sym, k, theta)
                                                   - clock.pointer_wavefunction_closed_form(sym, k, theta)))
    ok = worst_peak <= 1 and worst_sum < 1e-10
    record(8, "pointer peak at 2 pi k/N; closed form vs finite sum", ok,
           f"peak offset {worst_peak:.2f} grid steps, max sum diff {worst_sum:.2e}")
    assert ok


def test_c09_hour_tick_traversal():
    worst = 0.0
    for n in (3, 8, 12):
        model = ClockModel(n)
        for omega0 in (0.0, 1.7):
            for j in range(n):
                phi = clock.wavefunction_evolution(model, EvolutionSpec(omega0), j * model.tau)
                worst = max(worst, abs(clock.pointer_overlaps(model, phi)[j] - 1))
    ok = worst < 1e-10
    record(9, "|<v_j|phi(j tau)>| = 1", ok, f"max deviation {worst:.2e}")
    assert ok


CLI_RUNS = [
    ["basis", "--n", "5"],
    ["evolve", "--n", "5", "--steps", "7"],
    ["evolve", "--n", "4", "--t", "2"],
    ["commutator", "--n", "6"],
    ["commutator", "--n", "6", "--variant", "cyclotomic"],
    ["uncertainty", "--n-list", "3,1001"],
    ["ramanujan", "--n", "12"],
    ["superposition", "--n", "6", "--seed", "5", "--samples", "3"],
]


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "cycloclock", *args],
                          capture_output=True, text=True)


def test_c10_cli_determinism_and_exit_codes():
    identical = True
    codes_ok = True
    for args in CLI_RUNS:
        for fmt in ("json", "csv"):
            a, b = _cli(*args, "--format", fmt), _cli(*args, "--format", fmt)
            identical &= a.stdout == b.stdout and a.stdout != ""
            codes_ok &= a.returncode == 0
    fail = _cli("commutator", "--n", "5", "--tolerance", "1e-30")
    usage = _cli("commutator", "--n", "4", "--convention", "symmetric")
    codes_ok &= fail.returncode == 1 and usage.returncode == 2
    ok = identical and codes_ok
    record(10, "CLI byte-identical reruns and 0/1/2 exit codes", ok,
           f"identical {identical}, exit codes ok {codes_ok} "
           f"(failing run {fail.returncode}, usage error {usage.returncode})")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
