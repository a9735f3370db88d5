"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to watch the lines live;
without -s the lines surface for failed criteria only.
"""

import math
import time

import numpy as np
import pytest

from conftest import product_cdf, quad_single_outage, random_config
from relaysec import (
    ALL_SCHEMES,
    OS,
    TS,
    RelayLinkParams,
    SystemConfig,
    asymp_os_balanced,
    asymp_single_balanced,
    asymp_single_unbalanced,
    db_to_linear,
    diversity_order_estimate,
    outage_flags,
    outage_for_scheme,
    outage_os,
    outage_ps,
    outage_ss_rd,
    outage_ss_re,
    outage_ss_sr,
    outage_ts,
    rho_of_rate,
    signed_sum,
    simulate_outage,
    single,
    single_relay_outage,
    snr_gap_db,
    subset_terms,
)
from relaysec.cli import main


def report(criterion: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
    assert ok, f"{criterion}: {detail}"


def balanced_config(n, hop_rate, eve_rate, rate_rs):
    relays = tuple(RelayLinkParams(hop_rate, hop_rate, eve_rate) for _ in range(n))
    return SystemConfig(relays, rate_rs)


def test_criterion_1_integral_oracle():
    """Closed form vs adaptive quadrature, 200 random parameter sets."""
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        relay = RelayLinkParams(*np.exp(rng.uniform(np.log(1e-3), np.log(1e3), 3)))
        rho = rho_of_rate(float(rng.uniform(0.05, 4.0)))
        err = abs(single_relay_outage(relay, rho).p - quad_single_outage(relay, rho))
        worst = max(worst, err)
    elapsed = time.perf_counter() - t0
    report(
        "criterion 1 (integral oracle)",
        worst <= 1e-8 and elapsed < 10.0,
        f"max |closed - quadrature| = {worst:.2e}, {elapsed:.1f}s",
    )


def test_criterion_2_monte_carlo_agreement():
    """Every scheme vs its simulation at 1e6 trials, 20 configs per (scheme, N)."""
    rng = np.random.default_rng(202)
    trials = 1_000_000
    t0 = time.perf_counter()
    cells = 0
    hits = 0
    for scheme in ALL_SCHEMES:
        for n in (2, 3, 4):
            for _ in range(20):
                while True:
                    cfg = random_config(rng, n)
                    p_closed = outage_for_scheme(cfg, scheme).p
                    if 0.05 <= p_closed <= 0.95:
                        break
                est = simulate_outage(cfg, scheme, trials, seed=1000 + cells)
                cells += 1
                if abs(p_closed - est.p_hat) <= 3.0 * est.std_err:
                    hits += 1
    elapsed = time.perf_counter() - t0
    report(
        "criterion 2 (Monte Carlo agreement)",
        hits / cells >= 0.95 and elapsed < 300.0,
        f"{hits}/{cells} cells within 3 stderr, {elapsed:.0f}s",
    )


def test_criterion_3_collapse_identities():
    rng = np.random.default_rng(303)
    worst = {"n1": 0.0, "re_ts": 0.0, "rd_sr": 0.0, "os_prod": 0.0}
    ps_exact = True

    for _ in range(20):
        cfg = random_config(rng, 1)
        base = single_relay_outage(cfg.relays[0], cfg.rho).p
        for scheme in list(ALL_SCHEMES) + [single(1)]:
            worst["n1"] = max(worst["n1"], abs(outage_for_scheme(cfg, scheme).p - base))

    for n in (2, 3, 4):
        for _ in range(10):
            eve = float(rng.uniform(0.2, 3.0))
            relays = tuple(
                RelayLinkParams(float(rng.uniform(0.1, 2)), float(rng.uniform(0.1, 2)), eve)
                for _ in range(n)
            )
            cfg = SystemConfig(relays, rate_rs=float(rng.uniform(0.2, 1.5)))
            worst["re_ts"] = max(worst["re_ts"], abs(outage_ss_re(cfg).p - outage_ts(cfg).p))

            sym = tuple(
                RelayLinkParams(r.sr_rate, r.sr_rate, r.eve_rate) for r in relays
            )
            cfg_sym = SystemConfig(sym, cfg.rate_rs)
            worst["rd_sr"] = max(
                worst["rd_sr"], abs(outage_ss_rd(cfg_sym).p - outage_ss_sr(cfg_sym).p)
            )

            product = 1.0
            for r in cfg.relays:
                product *= single_relay_outage(r, cfg.rho).p
            worst["os_prod"] = max(
                worst["os_prod"], abs(outage_os(cfg).p - product) / product
            )

            ps_exact &= outage_ps(cfg).p == min(
                single_relay_outage(r, cfg.rho).p for r in cfg.relays
            )

    ok = (
        worst["n1"] <= 1e-12
        and worst["re_ts"] <= 1e-10
        and worst["rd_sr"] <= 1e-12
        and worst["os_prod"] <= 1e-14
        and ps_exact
    )
    report(
        "criterion 3 (collapse identities)",
        ok,
        f"N=1 {worst['n1']:.1e}, RE=TS {worst['re_ts']:.1e}, "
        f"RD=SR {worst['rd_sr']:.1e}, OS-product rel {worst['os_prod']:.1e}, "
        f"PS exact {ps_exact}",
    )


def test_criterion_4_scheme_dominance():
    rng = np.random.default_rng(404)
    closed_ok = True
    for _ in range(500):
        n = int(rng.integers(1, 7))
        relays = tuple(
            RelayLinkParams(*np.exp(rng.uniform(np.log(1e-3), np.log(1e3), 3)))
            for _ in range(n)
        )
        cfg = SystemConfig(relays, rate_rs=float(rng.uniform(0.05, 4.0)))
        p_os = outage_os(cfg).p
        for scheme in ALL_SCHEMES[1:]:
            if p_os > outage_for_scheme(cfg, scheme).p + 1e-10:
                closed_ok = False

    cfg = random_config(np.random.default_rng(405), 4)
    os_flags = outage_flags(cfg, OS, 100_000, seed=406)
    pathwise_ok = True
    for scheme in ALL_SCHEMES[1:]:
        other = outage_flags(cfg, scheme, 100_000, seed=406)
        if np.any(os_flags & ~other):
            pathwise_ok = False
    report(
        "criterion 4 (scheme dominance)",
        closed_ok and pathwise_ok,
        f"closed-form over 500 fuzzed configs: {closed_ok}; "
        f"pathwise over 1e5 shared trials: {pathwise_ok}",
    )


def test_criterion_5_diversity_orders():
    grid = [40.0, 45.0, 50.0, 55.0, 60.0, 65.0]
    results = {}

    def curve(n, builder):
        points = []
        for db in grid:
            hop_rate = 1.0 / db_to_linear(db)
            points.append((db, builder(balanced_config(n, hop_rate, 1.0, 0.5))))
        return diversity_order_estimate(points, window_db=None)

    results["single"] = curve(1, lambda cfg: single_relay_outage(cfg.relays[0], cfg.rho).p)
    for n in (2, 3, 4):
        results[f"OS n={n}"] = curve(n, lambda cfg: outage_os(cfg).p)
    for n in (2, 4):
        results[f"TS n={n}"] = curve(n, lambda cfg: outage_ts(cfg).p)

    ok = abs(results["single"] - 1.0) <= 0.1
    for n in (2, 3, 4):
        ok &= abs(results[f"OS n={n}"] - n) <= 0.3
    for n in (2, 4):
        ok &= abs(results[f"TS n={n}"] - n) <= 0.3
    report(
        "criterion 5 (diversity orders)",
        ok,
        ", ".join(f"{k}={v:.3f}" for k, v in results.items()),
    )


def test_criterion_6_asymptote_convergence():
    mean_snr = db_to_linear(70.0)
    hop_rate = 1.0 / mean_snr
    worst = 0.0
    for rho in (1.149, 2.0, 4.0):
        for eve in (0.25, 1.0, 4.0):
            exact = single_relay_outage(RelayLinkParams(hop_rate, hop_rate, eve), rho).p
            ratio = exact / asymp_single_balanced(eve, rho, mean_snr).value
            worst = max(worst, abs(ratio - 1.0))
            for n in (2, 3):
                relays = tuple(RelayLinkParams(hop_rate, hop_rate, eve) for _ in range(n))
                exact_n = 1.0
                for r in relays:
                    exact_n *= single_relay_outage(r, rho).p
                ratio_n = exact_n / asymp_os_balanced([eve] * n, rho, mean_snr).value
                worst = max(worst, abs(ratio_n - 1.0))
    report(
        "criterion 6 (asymptote convergence)",
        worst <= 0.05,
        f"max |exact/asymptote - 1| = {worst:.4f} at 70 dB",
    )


def test_criterion_7_unbalanced_floors():
    eve = 1.0 / db_to_linear(6.0)
    rho = rho_of_rate(0.1)
    vary_rate = 1.0 / db_to_linear(80.0)
    worst_rel = 0.0
    worst_swap = 0.0
    for fixed_db in (25.0, 30.0, 35.0):
        fixed_rate = 1.0 / db_to_linear(fixed_db)
        floor = asymp_single_unbalanced(fixed_rate, eve, rho, db_to_linear(80.0)).floor
        exact = single_relay_outage(RelayLinkParams(fixed_rate, vary_rate, eve), rho).p
        worst_rel = max(worst_rel, abs(exact - floor) / floor)
        swapped = single_relay_outage(RelayLinkParams(vary_rate, fixed_rate, eve), rho).p
        worst_swap = max(worst_swap, abs(exact - swapped))
    report(
        "criterion 7 (unbalanced floors)",
        worst_rel <= 1e-3 and worst_swap <= 1e-12,
        f"max floor error {worst_rel:.2e} rel, hop-swap asymmetry {worst_swap:.1e}",
    )


def test_criterion_8_gap_monotonicity():
    rhos = (1.1, 1.5, 2.0, 4.0, 16.0)
    pairs = ((1.0, 0.5), (2.0, 0.25), (0.8, 0.1), (4.0, 1.0), (1.5, 1.2))
    monotone = True
    for a_from, a_to in pairs:
        gaps = [snr_gap_db(a_from, a_to, rho) for rho in rhos]
        if not all(b < a for a, b in zip(gaps, gaps[1:])):
            monotone = False
    spot1 = snr_gap_db(1.0, 0.5, 2.0)
    spot2 = snr_gap_db(1.0, 0.5, 4.0)
    spots_ok = abs(spot1 - 2.2185) <= 1e-3 and abs(spot2 - 1.9629) <= 1e-3
    report(
        "criterion 8 (gap monotonicity)",
        monotone and spots_ok,
        f"decreasing over rho grid: {monotone}; spots {spot1:.4f} dB, {spot2:.4f} dB",
    )


def test_criterion_9_determinism(tmp_path):
    import json

    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    args = ["--trials", "100000", "--seed", "42"]
    assert main(["figure", "fig5", "--out", str(out_a)] + args) == 0
    assert main(["figure", "fig5", "--out", str(out_b)] + args) == 0
    identical = out_a.read_bytes() == out_b.read_bytes()
    max_z = json.loads((tmp_path / "a.manifest.json").read_text())["mc_agreement_max_z"]
    report(
        "criterion 9 (determinism)",
        identical and max_z <= 3.0,
        f"two fig5 runs at 1e5 trials byte-identical: {identical}; "
        f"manifest agreement max z = {max_z:.2f}",
    )


def test_criterion_10_combinatorics_oracle():
    rng = np.random.default_rng(1010)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 11))
        weights = rng.uniform(0.5, 2.0, size=n).tolist()
        x = float(rng.uniform(1.5, 4.0))
        rebuilt = 1.0 + signed_sum(
            subset_terms(weights), lambda t: math.exp(-x * t.beta_prime)
        )
        target = product_cdf(weights, x)
        worst = max(worst, abs(rebuilt - target) / target)
    report(
        "criterion 10 (combinatorics oracle)",
        worst <= 1e-10,
        f"max relative reconstruction error {worst:.2e} over 100 draws, N <= 10",
    )
