"""Exit criteria. Each check prints one PASS/FAIL line (also repeated in the terminal summary)."""

import cmath
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from bhdimer.coherent import (
    CoherentParams,
    coherent_state,
    convert_params,
    default_alpha_window,
    energy_distribution_closed,
    energy_distribution_numeric,
    expected_energy,
)
from bhdimer.dynamics import evolve_h2, predicted_cat
from bhdimer.eigensystem import (
    cascade_with_count,
    eigenvector_normalized,
    eigenvector_raw,
    immersion_matrix,
    to_eigenbasis_direct,
)
from bhdimer.fock import KVector, apply_c, apply_d, max_abs_diff
from bhdimer.hamiltonian import (
    apply_h2_normal_ordered,
    apply_hopping,
    apply_n2_normal_ordered,
    apply_total_number,
    build_hopping_matrix,
)
from bhdimer.oracle import dense_evolve, dense_symmetric_eig

pytestmark = pytest.mark.acceptance

AMPS = [0.0, 0.5, -1.0 + 0.7j, 1.5j, 2.0, 2.0 * cmath.exp(2.3j)]
GRID = [CoherentParams(w, z) for w in AMPS for z in AMPS]
TIMES = [0.0, 0.3, math.pi / 4, 1.1]


def unit_random(rng, k):
    v = KVector(k, rng.normal(size=k + 1) + 1j * rng.normal(size=k + 1))
    return v / v.norm()


def test_1_spectrum_integrality(criterion):
    t0 = time.perf_counter()
    worst = 0.0
    for k in range(31):
        lam = dense_symmetric_eig(build_hopping_matrix(k).dense()).eigenvalues
        worst = max(worst, float(np.max(np.abs(lam - (2 * np.arange(k + 1) - k)))))
    elapsed = time.perf_counter() - t0
    criterion(1, "oracle spectrum of H|k equals {-k,...,k}, k<=30", worst, 1e-10)
    criterion(1, "spectrum runtime [s]", elapsed, 10.0)


def test_2_closed_form_eigenvectors(criterion):
    residual = 0.0
    for k in range(31):
        for m in range(k + 1):
            v = eigenvector_normalized(k, m)
            residual = max(residual, (apply_hopping(v) - v * (2 * m - k)).norm())
    norm_law = 0.0
    for k in range(21):
        for m in range(k + 1):
            expected = math.factorial(m) * math.factorial(k - m)
            norm_law = max(norm_law, abs(eigenvector_raw(k, m).norm() ** 2 - expected) / expected)
    criterion(2, "eigen-residual ||Hv-(2m-k)v||, k<=30", residual, 1e-10)
    criterion(2, "raw norm^2 = m!(k-m)! relative error, k<=20", norm_law, 1e-10)


def test_3_unitary_immersion(criterion):
    worst = 0.0
    for k in range(1, 51):
        m = immersion_matrix(k)
        worst = max(worst, float(np.max(np.abs(m.T @ m - np.eye(k + 1)))))
    criterion(3, "M^T M = I entrywise, k<=50", worst, 1e-12)


def test_4_cascade(criterion):
    rng = np.random.default_rng(4)
    worst = 0.0
    for k in range(21):
        for _ in range(100):
            v = KVector(k, rng.normal(size=k + 1) + 1j * rng.normal(size=k + 1))
            cascade, _ = cascade_with_count(v)
            worst = max(worst, float(np.max(np.abs(cascade.coeffs - to_eigenbasis_direct(v).coeffs))))
    criterion(4, "cascade vs direct coefficients, 100 vectors per k<=20", worst, 1e-10)

    ks = np.arange(1, 129)
    counts = np.array([cascade_with_count(KVector.zeros(int(k)))[1] for k in ks], dtype=float)
    c = counts[0]  # constant fixed by k = 1
    excess = float(np.max(counts / (c * ks**3.0)))
    criterion(4, "op count / (c k^3) with c = count(1), k<=128", excess, 1.0)
    slope = math.log(counts[127] / counts[63]) / math.log(2.0)
    criterion(4, "log-log growth exponent of op count (k=64..128)", slope, 3.0)


def test_5_coherent_states(criterion):
    norm_err = energy_err = eig_err = equiv_err = 0.0
    for p in GRID:
        cs = coherent_state(p)
        norm_err = max(norm_err, abs(cs.norm_sq() - 1.0))
        energy_err = max(energy_err, abs(expected_energy(cs) - (abs(p.w) ** 2 - abs(p.z) ** 2)))
        eig_err = max(eig_err, (cs.apply(apply_c) - cs * p.w).norm(), (cs.apply(apply_d) - cs * p.z).norm())
        equiv_err = max(equiv_err, max_abs_diff(cs, coherent_state(convert_params(p))))
    criterion(5, "coherent-state norm deviation", norm_err, 1e-12)
    criterion(5, "<H> - (|w|^2-|z|^2)", energy_err, 1e-8)
    criterion(5, "annihilator eigen-relation residual", eig_err, 1e-5)
    criterion(5, "CD vs A23 convention equivalence", equiv_err, 1e-10)


def test_6_energy_distribution(criterion):
    per_alpha = total_err = 0.0
    for p in GRID:
        lo, hi = default_alpha_window(p)
        closed = energy_distribution_closed(p, lo, hi)
        numeric = energy_distribution_numeric(coherent_state(p))
        per_alpha = max(per_alpha, max(abs(closed[a] - numeric[a]) for a in range(lo, hi + 1)))
        total_err = max(total_err, abs(closed.total() - 1.0))
    criterion(6, "closed-form vs numeric P(E=alpha)", per_alpha, 1e-8)
    criterion(6, "closed-form total probability - 1", total_err, 1e-8)


def test_7_cat_state_identities(criterion):
    t0 = time.perf_counter()
    cat = period = flip = oracle = 0.0
    for p in GRID:
        cs = coherent_state(p)
        cs_neg = coherent_state(-p)
        for t in TIMES:
            at_t = evolve_h2(cs, t)
            cat = max(cat, max_abs_diff(evolve_h2(cs, t + math.pi / 2), predicted_cat(p, t)))
            period = max(period, max_abs_diff(evolve_h2(cs, t + 2 * math.pi), at_t))
            flip = max(flip, max_abs_diff(evolve_h2(cs, t + math.pi), evolve_h2(cs_neg, t)))
            for k in range(13):
                ref = dense_evolve(build_hopping_matrix(k).dense(), cs.block(k).amps, t, square=True)
                oracle = max(oracle, float(np.max(np.abs(at_t.block(k).amps - ref))))
    elapsed = time.perf_counter() - t0
    criterion(7, "quarter-period cat identity, entrywise", cat, 1e-8)
    criterion(7, "2pi periodicity, entrywise", period, 1e-10)
    criterion(7, "pi sign flip, entrywise", flip, 1e-10)
    criterion(7, "evolve_h2 vs dense oracle per block, k<=12", oracle, 1e-8)
    criterion(7, "criterion 7 runtime [s]", elapsed, 60.0)


def test_8_normal_ordered_identities(criterion):
    rng = np.random.default_rng(8)
    h2 = n2 = 0.0
    for k in range(13):
        for _ in range(20):
            v = unit_random(rng, k)
            h2 = max(h2, (apply_hopping(apply_hopping(v)) - apply_h2_normal_ordered(v)).norm())
            n2 = max(n2, (apply_total_number(apply_total_number(v)) - apply_n2_normal_ordered(v)).norm())
    criterion(8, "H(Hv) vs +2 normal-ordered expansion, unit v, k<=12", h2, 1e-12)
    criterion(8, "N(Nv) vs normal-ordered expansion, unit v, k<=12", n2, 1e-12)


CLI_RUNS = [
    ["spectrum", "--k", "12"],
    ["eigvec", "--k", "9", "--m", "4"],
    ["coherent", "--w", "1.2-0.5i", "--z", "0.7"],
    ["energy-dist", "--w", "1.5", "--z", "-0.5i"],
    ["evolve", "--w", "1", "--z", "0.5", "--times", "0,0.3,1.1"],
    ["cat-check", "--w", "2", "--z", "1.5i"],
    ["selftest"],
]


def test_9_cli_determinism(criterion):
    mismatches = 0
    selftest_seconds = None
    for argv in CLI_RUNS:
        for fmt in ("csv", "json"):
            cmd = [sys.executable, "-m", "bhdimer.cli", *argv, "--format", fmt]
            t0 = time.perf_counter()
            first = subprocess.run(cmd, capture_output=True)
            elapsed = time.perf_counter() - t0
            second = subprocess.run(cmd, capture_output=True)
            assert first.returncode == 0, (argv, first.stderr)
            mismatches += first.stdout != second.stdout or not first.stdout
            if argv[0] == "selftest" and fmt == "csv":
                selftest_seconds = elapsed
    criterion(9, "subcommands with non-identical repeated output", mismatches, 0)
    criterion(9, "full selftest runtime [s] (exit 0)", selftest_seconds, 120.0)
