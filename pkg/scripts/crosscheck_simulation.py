#!/usr/bin/env python3
"""Side-by-side table of closed-form metrics and Monte Carlo estimates.

Usage:
    python scripts/crosscheck_simulation.py --realizations 10000 --seed 1
"""

from __future__ import annotations

import argparse

from bwalloc.experiments import db_to_linear, default_bandwidth, default_network
from bwalloc.meanmodel import mean_interference_k
from bwalloc.metadist import meta_ccdf_gilpelaez
from bwalloc.metrics import shannon_throughput_k, success_prob_k
from bwalloc.simulate import (
    SimConfig,
    estimate_mean_interference,
    estimate_meta_distribution,
    estimate_throughput,
    success_prob_curve,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--realizations", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    net = default_network()
    ba = default_bandwidth()
    sim = SimConfig(n_realizations=args.realizations, seed=args.seed)
    line = "{:<34} {:>10} {:>10} {:>8} {:>6}"
    print(line.format("metric", "analytic", "simulated", "se", "z"))

    theta_dbs = (-10.0, 0.0, 10.0)
    thetas = [db_to_linear(db) for db in theta_dbs]
    for k in (1, 2, 3):
        curve = success_prob_curve(net, ba, sim, k, thetas)
        for est, theta, db in zip(curve, thetas, theta_dbs):
            ana = success_prob_k(net, ba, k, theta)
            z = (est.value - ana) / max(est.std_error, 1e-12)
            print(
                line.format(
                    f"P(SIR > {db:+.0f} dB), type {k}",
                    f"{ana:.4f}",
                    f"{est.value:.4f}",
                    f"{est.std_error:.4f}",
                    f"{z:+.2f}",
                )
            )

    theta = db_to_linear(-5.0)
    for k in (1, 2, 3):
        ana = meta_ccdf_gilpelaez(net, ba, k, theta, 0.6)
        (est,) = estimate_meta_distribution(net, ba, sim, k, theta, [0.6])
        z = (est.value - ana) / max(est.std_error, 1e-12)
        print(
            line.format(
                f"reliability >= 0.6 at -5 dB, type {k}",
                f"{ana:.4f}",
                f"{est.value:.4f}",
                f"{est.std_error:.4f}",
                f"{z:+.2f}",
            )
        )

    for k in (1, 2, 3):
        ana = shannon_throughput_k(net, ba, k).value
        est = estimate_throughput(net, ba, sim, k)
        z = (est.value - ana) / max(est.std_error, 1e-12)
        print(
            line.format(
                f"throughput (bit/s), type {k}",
                f"{ana:.4f}",
                f"{est.value:.4f}",
                f"{est.std_error:.4f}",
                f"{z:+.2f}",
            )
        )

    for k in (1, 2, 3):
        ana = mean_interference_k(net, ba, k)
        est = estimate_mean_interference(net, ba, sim, k)
        z = (est.value - ana) / max(est.std_error, 1e-12)
        print(
            line.format(
                f"mean interference power, type {k}",
                f"{ana:.4f}",
                f"{est.value:.4f}",
                f"{est.std_error:.4f}",
                f"{z:+.2f}",
            )
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
