#!/usr/bin/env python3
"""Calibration search for the paper_fig5 reference scenario.

The silencing ladder targets (uplink success 0.58 with no silencing, 0.82
with complete silencing, 0.68 at some partial factor, all at a -10 dB
threshold) do not pin down the station density, survival fraction, path
loss exponent, power ratio, suppression factor, or silencing radius, so
those are recovered by search:

  stage coarse  - scan (density, survival, alpha, silencing radius) and,
                  for each point, the BS:device power ratio that lands the
                  unsilenced success on 0.58; report the complete-silencing
                  success the point can reach.
  stage refine  - at one chosen point, bisect the partial suppression
                  factor until the partial success hits 0.68.
  stage verify  - re-run a committed scenario file at full trial count and
                  print the ladder.

The committed outcome of this search and the measured ladder live in
docs/calibration_fig5.md.
"""
import argparse
import dataclasses
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from disastersim.channel import ChannelParams
from disastersim.netsim import ScenarioConfig, SilencingPolicy, estimate_success
from disastersim.scenario import load_scenario


def make_config(density, survival, alpha, radius, beta, n_trials, seed):
    return ScenarioConfig(
        disaster_radius=2000.0,
        active_ring_width=600.0,
        silencing_radius=radius,
        sim_radius=20000.0,
        bs_density=density,
        bs_survival_prob=survival,
        device_tx_power=0.2,
        bs_tx_power=0.2 * beta,
        channel=ChannelParams(path_loss_exponent=alpha, sinr_threshold=0.1),
        n_trials=n_trials,
        master_seed=seed,
    )


def solve_beta(density, survival, alpha, radius, n_trials, seed, target=0.58):
    """Bisect the BS:device power ratio until the unsilenced success hits target."""
    lo, hi = 1e-3, 1e3
    for _ in range(30):
        beta = (lo * hi) ** 0.5
        cfg = make_config(density, survival, alpha, radius, beta, n_trials, seed)
        p = estimate_success(cfg, SilencingPolicy.none()).value
        if p > target:
            lo = beta  # more interference needed to pull success down
        else:
            hi = beta
        if hi / lo < 1.01:
            break
    return (lo * hi) ** 0.5


def stage_coarse(n_trials, seed):
    print("density/km2  survival  alpha  radius_km  beta     none   complete")
    for density_km2 in (0.3, 0.4, 0.5):
        for survival in (0.03, 0.05, 0.08):
            for alpha in (3.0, 3.25):
                radius = 12000.0
                beta = solve_beta(density_km2 * 1e-6, survival, alpha, radius, n_trials, seed)
                cfg = make_config(density_km2 * 1e-6, survival, alpha, radius, beta, n_trials, seed)
                p_none = estimate_success(cfg, SilencingPolicy.none()).value
                p_comp = estimate_success(cfg, SilencingPolicy.complete()).value
                print(
                    f"{density_km2:>11} {survival:>9} {alpha:>6} {radius / 1000:>10} "
                    f"{beta:>7.3f} {p_none:>7.4f} {p_comp:>9.4f}"
                )


def stage_refine(n_trials, seed, target=0.68):
    cfg = make_config(4e-7, 0.05, 3.0, 12000.0, 0.4, n_trials, seed)
    lo, hi = 0.0, 1.0
    for _ in range(12):
        rho = 0.5 * (lo + hi)
        p = estimate_success(cfg, SilencingPolicy.partial(rho)).value
        print(f"rho={rho:.4f}  partial success={p:.4f}")
        if p > target:
            lo = rho
        else:
            hi = rho
    print(f"rho* in [{lo:.4f}, {hi:.4f}]")


def stage_verify(scenario_path, trials_override):
    doc = load_scenario(scenario_path, trials_override=trials_override)
    cfg = doc.silencing.config
    print(f"scenario {doc.name}: n_trials={cfg.n_trials} seed={cfg.master_seed}")
    for policy in doc.silencing.policies:
        est = estimate_success(cfg, policy)
        label = policy.kind if policy.kind != "partial" else f"partial({policy.rho})"
        print(
            f"{label:>16}: {est.value:.5f} +- {est.ci_halfwidth:.5f} "
            f"(coverage holes {est.n_coverage_holes})"
        )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("stage", choices=["coarse", "refine", "verify"])
    parser.add_argument("--trials", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=20260810)
    parser.add_argument(
        "--scenario", default=str(Path(__file__).resolve().parent.parent / "scenarios/paper_fig5.yaml")
    )
    args = parser.parse_args()
    if args.stage == "coarse":
        stage_coarse(args.trials, args.seed)
    elif args.stage == "refine":
        stage_refine(args.trials, args.seed)
    else:
        stage_verify(args.scenario, args.trials)


if __name__ == "__main__":
    main()
