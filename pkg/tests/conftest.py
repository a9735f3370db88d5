"""Shared test oracles, independent of the implementation paths they check."""

import numpy as np
from scipy import integrate

from relaysec import RelayLinkParams, SystemConfig


def quad_single_outage(relay: RelayLinkParams, rho: float) -> float:
    """Single-branch outage by adaptive quadrature.

    Integrates the min-of-hops CDF at the eavesdropper-dependent threshold
    rho*(1+g)-1 against the eavesdropper's exponential density, which stays
    independent of the algebraic closed form.
    """
    b = relay.main_rate
    a = relay.eve_rate

    def integrand(g):
        lam = rho * (1.0 + g) - 1.0
        return (1.0 - np.exp(-b * lam)) * a * np.exp(-a * g)

    value, _ = integrate.quad(integrand, 0.0, np.inf, epsabs=1e-12, epsrel=1e-12, limit=400)
    return value


def product_cdf(weights, x: float) -> float:
    """Brute-force CDF of the max of independent exponentials at x."""
    result = 1.0
    for w in weights:
        result *= -np.expm1(-x * w)
    return float(result)


def random_relay(rng, snr_lo=3.0, snr_hi=15.0, eve_lo=-3.0, eve_hi=9.0) -> RelayLinkParams:
    sr_db, rd_db = rng.uniform(snr_lo, snr_hi, size=2)
    eve_db = rng.uniform(eve_lo, eve_hi)
    return RelayLinkParams.from_mean_snr_db(sr_db, rd_db, eve_db)


def random_config(rng, n, rate_lo=0.3, rate_hi=1.5, **kw) -> SystemConfig:
    """Moderate-SNR config whose outage stays away from 0 and 1, which keeps
    the Wald standard error meaningful in simulation comparisons."""
    relays = tuple(random_relay(rng, **kw) for _ in range(n))
    return SystemConfig(relays=relays, rate_rs=float(rng.uniform(rate_lo, rate_hi)))
