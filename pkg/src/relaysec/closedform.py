"""Closed-form secrecy outage probabilities for every selection scheme.

Single relay
------------
With both hops Rayleigh faded, the usable SNR of a decode-and-forward branch
is the minimum of the two hop SNRs, itself exponential with the summed rate
B.  Averaging the outage event over the eavesdropper's exponential fading
(rate a) against the ratio threshold rho gives the kernel

    W(B) = 1 - a * exp(-B*(rho-1)) / (B*rho + a)

evaluated here in the cancellation-free form
(B*rho - a*expm1(-B*(rho-1))) / (B*rho + a), which stays accurate for B -> 0
and saturates to exactly 1 for large B*(rho-1).

Multi-relay schemes
-------------------
Each instantaneous-CSI scheme is the total-probability sum over relays of
P[relay k wins the selection metric AND relay k is in outage].  Expanding the
CDF of the strongest competitor by inclusion-exclusion collapses every scheme
to the same shape,

    T_k = sum over subsets A of the other relays (empty set included) of
          (-1)^|A| * s_k/(s_k + c_A) * W_k(B_k + c_A)

where s_k is the rate of the metric the selection compares, c_A the subset
aggregate of the competitors' metric rates (scaled back to the main-channel
axis for SS-RE), and B_k the selected branch's min-of-hops rate.  The empty
subset contributes W_k(B_k), which makes the N = 1 case collapse to the
single-relay expression with no special handling.

At high SNR the alternating subset sum cancels almost completely; when the
surviving value is small relative to the largest term, the per-relay sum is
re-evaluated in extended precision so the result stays meaningful far past
the float64 cancellation floor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp

from .params import (
    OS,
    PS,
    SS_RD,
    SS_RE,
    SS_SR,
    TS,
    ConfigError,
    RelayLinkParams,
    SelectionScheme,
    SystemConfig,
    single,
)
from .subsets import DEFAULT_MAX_WEIGHTS, signed_sum, subset_terms

__all__ = [
    "OutageProbability",
    "CancellationError",
    "single_relay_outage",
    "outage_os",
    "outage_ts",
    "outage_ss_re",
    "outage_ss_rd",
    "outage_ss_sr",
    "select_ps",
    "outage_ps",
    "outage_for_scheme",
]

# Raw values may stray outside [0, 1] by at most this much before the result
# is treated as a numerical failure rather than round-off.
CLAMP_TOL = 1e-9

# Relative cancellation level below which a per-relay subset sum is redone in
# extended precision.
_CANCEL_GUARD = 1e-5
_MP_DPS = 50


class CancellationError(ArithmeticError):
    """Assembled probability fell outside [0, 1] by more than round-off."""


@dataclass(frozen=True)
class OutageProbability:
    """A secrecy outage probability tagged with the scheme that produced it."""

    p: float
    scheme: SelectionScheme
    clamped: bool = False


def _as_probability(raw: float, scheme: SelectionScheme) -> OutageProbability:
    if not math.isfinite(raw):
        raise CancellationError(f"{scheme.label}: non-finite outage value {raw!r}")
    if 0.0 <= raw <= 1.0:
        return OutageProbability(raw, scheme)
    if -CLAMP_TOL <= raw < 0.0:
        return OutageProbability(0.0, scheme, clamped=True)
    if 1.0 < raw <= 1.0 + CLAMP_TOL:
        return OutageProbability(1.0, scheme, clamped=True)
    raise CancellationError(
        f"{scheme.label}: outage value {raw!r} outside [0, 1] beyond the "
        f"{CLAMP_TOL:g} clamp band; alternating-sum cancellation blew up"
    )


def _check_rho(rho: float) -> float:
    rho = float(rho)
    if not math.isfinite(rho) or rho < 1.0:
        raise ConfigError(f"rho must be finite and >= 1, got {rho!r}")
    return rho


def _kernel(main_rate: float, eve_rate: float, rho: float) -> float:
    """Outage of one branch: min-hop rate `main_rate` against eavesdropper
    fading with rate `eve_rate` at ratio threshold rho."""
    br = main_rate * rho
    return (br - eve_rate * math.expm1(-main_rate * (rho - 1.0))) / (br + eve_rate)


def _kernel_mp(main_rate, eve_rate, rho):
    br = main_rate * rho
    return (br - eve_rate * mp.expm1(-main_rate * (rho - 1.0))) / (br + eve_rate)


def single_relay_outage(relay: RelayLinkParams, rho: float) -> OutageProbability:
    """Secrecy outage of a lone dual-hop branch at ratio threshold rho.

    rho = 1 is admitted as the zero-target-rate limit, where the value
    reduces to B / (B + eve_rate) with B the min-of-hops rate.
    """
    rho = _check_rho(rho)
    raw = _kernel(relay.main_rate, relay.eve_rate, rho)
    return _as_probability(raw, single(1))


def outage_os(cfg: SystemConfig) -> OutageProbability:
    """Outage under best-secrecy-rate selection: the selected relay fails only
    if every relay fails, so the probability is the product of the per-relay
    single-branch outages."""
    rho = cfg.rho
    p = 1.0
    for r in cfg.relays:
        p *= _kernel(r.main_rate, r.eve_rate, rho)
    return _as_probability(p, OS)


def _selection_sum(
    cfg: SystemConfig,
    scheme: SelectionScheme,
    select_rates: list[float],
    weights: list[float],
    couple_scales: list[float],
    max_relays: int,
) -> OutageProbability:
    """Assemble sum_k T_k for a metric-based selection scheme.

    select_rates[k]  rate of relay k's own selection metric
    weights[i]       competitor i's metric rate on the comparison axis
    couple_scales[k] maps a subset aggregate of `weights` back onto relay k's
                     main-channel rate axis (1 except for SS-RE)
    """
    rho = cfg.rho
    n = cfg.n_relays
    contributions: list[float] = []
    for k in range(n):
        b_k = cfg.relays[k].main_rate
        a_k = cfg.relays[k].eve_rate
        s_k = select_rates[k]
        scale = couple_scales[k]
        lead = _kernel(b_k, a_k, rho)
        peak = abs(lead)

        def term_value(term, _bk=b_k, _ak=a_k, _sk=s_k, _sc=scale):
            nonlocal peak
            c = _sc * term.beta_prime
            v = (_sk / (_sk + c)) * _kernel(_bk + c, _ak, rho)
            if v > peak:
                peak = v
            return v

        tail = signed_sum(subset_terms(weights, exclude=k + 1, max_weights=max_relays), term_value)
        total = lead + tail
        if n > 1 and abs(total) < _CANCEL_GUARD * peak:
            total = _selection_sum_mp(weights, k, b_k, a_k, s_k, scale, rho)
        contributions.append(total)
    return _as_probability(math.fsum(contributions), scheme)


def _selection_sum_mp(
    weights: list[float],
    k: int,
    b_k: float,
    a_k: float,
    s_k: float,
    scale: float,
    rho: float,
) -> float:
    """Extended-precision re-evaluation of one relay's subset sum.

    Subset aggregates are rebuilt from the original weights so that the
    alternating cancellation resolves exactly, not merely to float64.
    """
    others = [mp.mpf(w) for i, w in enumerate(weights) if i != k]
    n = len(others)
    with mp.workdps(_MP_DPS):
        bk, ak, sk, sc, rh = map(mp.mpf, (b_k, a_k, s_k, scale, rho))
        total = _kernel_mp(bk, ak, rh)
        for mask in range(1, 1 << n):
            agg = mp.mpf(0)
            card = 0
            for i in range(n):
                if mask & (1 << i):
                    agg += others[i]
                    card += 1
            c = sc * agg
            v = (sk / (sk + c)) * _kernel_mp(bk + c, ak, rh)
            total += -v if card & 1 else v
        return float(total)


def outage_ts(cfg: SystemConfig, max_relays: int = DEFAULT_MAX_WEIGHTS) -> OutageProbability:
    """Outage when the relay with the strongest min-of-hops SNR is selected."""
    main = [r.main_rate for r in cfg.relays]
    return _selection_sum(cfg, TS, main, main, [1.0] * cfg.n_relays, max_relays)


def outage_ss_re(cfg: SystemConfig, max_relays: int = DEFAULT_MAX_WEIGHTS) -> OutageProbability:
    """Outage when selection weights each min-of-hops SNR by the relay's own
    eavesdropper link rate (statistics of the leak channel).

    When every eavesdropper rate is equal the metric is a common positive
    scaling of the TS metric, so the result coincides with TS.
    """
    main = [r.main_rate for r in cfg.relays]
    weights = [r.main_rate / r.eve_rate for r in cfg.relays]
    scales = [r.eve_rate for r in cfg.relays]
    return _selection_sum(cfg, SS_RE, main, weights, scales, max_relays)


def outage_ss_rd(cfg: SystemConfig, max_relays: int = DEFAULT_MAX_WEIGHTS) -> OutageProbability:
    """Outage when only the relay-destination hop SNR drives the selection."""
    rd = [r.rd_rate for r in cfg.relays]
    return _selection_sum(cfg, SS_RD, rd, rd, [1.0] * cfg.n_relays, max_relays)


def outage_ss_sr(cfg: SystemConfig, max_relays: int = DEFAULT_MAX_WEIGHTS) -> OutageProbability:
    """Outage when only the source-relay hop SNR drives the selection.

    Mirror image of SS-RD under a hop swap, and computed exactly that way.
    """
    swapped = outage_ss_rd(cfg.swap_hops(), max_relays=max_relays)
    return OutageProbability(swapped.p, SS_SR, swapped.clamped)


def select_ps(cfg: SystemConfig) -> int:
    """Statistics-only selection: the 1-based relay index minimising the
    single-branch outage.  Ties break to the lowest index."""
    rho = cfg.rho
    best_k = 1
    best_p = _kernel(cfg.relays[0].main_rate, cfg.relays[0].eve_rate, rho)
    for k, r in enumerate(cfg.relays[1:], start=2):
        p = _kernel(r.main_rate, r.eve_rate, rho)
        if p < best_p:
            best_p = p
            best_k = k
    return best_k


def outage_ps(cfg: SystemConfig) -> OutageProbability:
    """Outage of the statistics-only scheme: the minimum single-branch value."""
    k = select_ps(cfg)
    p = single_relay_outage(cfg.relays[k - 1], cfg.rho)
    return OutageProbability(p.p, PS, p.clamped)


def outage_for_scheme(
    cfg: SystemConfig,
    scheme: SelectionScheme,
    max_relays: int = DEFAULT_MAX_WEIGHTS,
) -> OutageProbability:
    """Dispatch a scheme to its closed-form evaluator."""
    scheme.validate_for(cfg)
    if scheme.kind == "OS":
        return outage_os(cfg)
    if scheme.kind == "TS":
        return outage_ts(cfg, max_relays)
    if scheme.kind == "SS-RE":
        return outage_ss_re(cfg, max_relays)
    if scheme.kind == "SS-RD":
        return outage_ss_rd(cfg, max_relays)
    if scheme.kind == "SS-SR":
        return outage_ss_sr(cfg, max_relays)
    if scheme.kind == "PS":
        return outage_ps(cfg)
    p = single_relay_outage(cfg.relays[scheme.relay - 1], cfg.rho)
    return OutageProbability(p.p, scheme, p.clamped)
