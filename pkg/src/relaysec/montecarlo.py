"""Seeded channel simulator: the universal oracle for the closed forms.

Each trial draws one exponential SNR per link by inverse CDF
(gamma = -ln(U)/rate), applies a selection rule to the realization, and marks
an outage when the selected relay's instantaneous secrecy rate falls strictly
below the target.

Determinism contract: trials are partitioned into fixed-size blocks; block b
draws from a counter-based substream keyed by (seed, b), and block counts are
reduced in block order.  The estimate is therefore bit-identical for a given
(config, scheme, trials, seed) at any degree of parallelism, and every scheme
simulated at the same seed sees the same channel realizations (selection
consumes no randomness).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .closedform import select_ps
from .params import ConfigError, SelectionScheme, SystemConfig

__all__ = [
    "BLOCK_SIZE",
    "ChannelRealization",
    "MonteCarloEstimate",
    "block_generator",
    "sample_realization",
    "secrecy_rate",
    "apply_selection",
    "simulate_outage",
    "outage_flags",
]

BLOCK_SIZE = 1 << 14

_U64 = 1 << 64


@dataclass(frozen=True)
class ChannelRealization:
    """Instantaneous linear SNRs of every link, one entry per relay."""

    gamma_sr: tuple[float, ...]
    gamma_rd: tuple[float, ...]
    gamma_eve: tuple[float, ...]

    def __post_init__(self) -> None:
        n = len(self.gamma_sr)
        if not (len(self.gamma_rd) == len(self.gamma_eve) == n) or n < 1:
            raise ConfigError("realization arrays must share one length >= 1")
        for seq in (self.gamma_sr, self.gamma_rd, self.gamma_eve):
            for v in seq:
                if not math.isfinite(v) or v < 0.0:
                    raise ConfigError(f"SNR values must be finite and >= 0, got {v!r}")

    @property
    def n_relays(self) -> int:
        return len(self.gamma_sr)

    @property
    def gamma_main(self) -> tuple[float, ...]:
        """Usable branch SNR per relay: min of the two hop SNRs."""
        return tuple(min(s, d) for s, d in zip(self.gamma_sr, self.gamma_rd))


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Empirical outage probability with its Wald standard error."""

    p_hat: float
    trials: int
    std_err: float
    seed: int


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < _U64:
        raise ConfigError(f"seed must fit in 64 bits, got {seed!r}")
    return seed


def block_generator(seed: int, block_index: int) -> np.random.Generator:
    """Counter-based substream for one block, independent across blocks."""
    seed = _check_seed(seed)
    return np.random.Generator(np.random.Philox(key=(seed << 64) + block_index))


def _uniforms(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """Uniform(0,1) variates; exact zeros are redrawn to keep -ln(U) finite."""
    u = rng.random(shape)
    while True:
        zero = u == 0.0
        if not zero.any():
            return u
        u[zero] = rng.random(int(zero.sum()))


def _rate_matrix(cfg: SystemConfig) -> np.ndarray:
    return np.array(
        [[r.sr_rate, r.rd_rate, r.eve_rate] for r in cfg.relays], dtype=np.float64
    )


def sample_realization(cfg: SystemConfig, rng: np.random.Generator) -> ChannelRealization:
    """Draw one channel realization; consumes 3 uniforms per relay."""
    rates = _rate_matrix(cfg)
    u = _uniforms(rng, (cfg.n_relays, 3))
    g = -np.log(u) / rates
    return ChannelRealization(
        gamma_sr=tuple(g[:, 0]), gamma_rd=tuple(g[:, 1]), gamma_eve=tuple(g[:, 2])
    )


def secrecy_rate(gamma_main: float, gamma_eve: float) -> float:
    """Instantaneous secrecy rate of one branch, clipped at zero.

    Half of log2((1 + main SNR) / (1 + eavesdropper SNR)); the half reflects
    the two-slot dual-hop transmission.
    """
    value = 0.5 * math.log2((1.0 + gamma_main) / (1.0 + gamma_eve))
    return value if value > 0.0 else 0.0


def apply_selection(
    scheme: SelectionScheme, cfg: SystemConfig, realization: ChannelRealization
) -> int:
    """1-based index of the relay the scheme picks; ties break to the lowest."""
    scheme.validate_for(cfg)
    if realization.n_relays != cfg.n_relays:
        raise ConfigError("realization arity does not match the config")
    if scheme.kind == "SINGLE":
        return scheme.relay
    if scheme.kind == "PS":
        return select_ps(cfg)
    main = realization.gamma_main
    if scheme.kind == "OS":
        metric = [
            secrecy_rate(m, e) for m, e in zip(main, realization.gamma_eve)
        ]
    elif scheme.kind == "TS":
        metric = list(main)
    elif scheme.kind == "SS-RE":
        metric = [m * r.eve_rate for m, r in zip(main, cfg.relays)]
    elif scheme.kind == "SS-RD":
        metric = list(realization.gamma_rd)
    else:  # SS-SR
        metric = list(realization.gamma_sr)
    best = 0
    for i in range(1, len(metric)):
        if metric[i] > metric[best]:
            best = i
    return best + 1


def _sample_block(
    cfg: SystemConfig, seed: int, block_index: int, size: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized twin of sample_realization for `size` trials of one block."""
    rng = block_generator(seed, block_index)
    rates = _rate_matrix(cfg)
    u = _uniforms(rng, (size, cfg.n_relays, 3))
    g = -np.log(u) / rates[None, :, :]
    return g[:, :, 0], g[:, :, 1], g[:, :, 2]


def _select_block(
    scheme: SelectionScheme,
    cfg: SystemConfig,
    gs: np.ndarray,
    gd: np.ndarray,
    ge: np.ndarray,
) -> np.ndarray:
    """0-based selected relay per trial; np.argmax keeps the lowest tie."""
    if scheme.kind == "SINGLE":
        return np.full(gs.shape[0], scheme.relay - 1, dtype=np.intp)
    if scheme.kind == "PS":
        return np.full(gs.shape[0], select_ps(cfg) - 1, dtype=np.intp)
    gmain = np.minimum(gs, gd)
    if scheme.kind == "OS":
        # Clipping the ratio at 1 reproduces the zero-rate tie behaviour of
        # the scalar rule (all clipped branches tie, lowest index wins).
        metric = np.maximum((1.0 + gmain) / (1.0 + ge), 1.0)
    elif scheme.kind == "TS":
        metric = gmain
    elif scheme.kind == "SS-RE":
        eve_rates = np.array([r.eve_rate for r in cfg.relays])
        metric = gmain * eve_rates[None, :]
    elif scheme.kind == "SS-RD":
        metric = gd
    else:  # SS-SR
        metric = gs
    return np.argmax(metric, axis=1)


def _outage_block(
    scheme: SelectionScheme,
    cfg: SystemConfig,
    seed: int,
    block_index: int,
    size: int,
) -> np.ndarray:
    gs, gd, ge = _sample_block(cfg, seed, block_index, size)
    idx = _select_block(scheme, cfg, gs, gd, ge)
    rows = np.arange(size)
    gmain = np.minimum(gs[rows, idx], gd[rows, idx])
    geve = ge[rows, idx]
    # C_S < R_s  <=>  (1 + main) < rho * (1 + eve) for rho > 1; the
    # comparison stays correct when the secrecy rate clips to zero.
    return (1.0 + gmain) < cfg.rho * (1.0 + geve)


def _block_sizes(trials: int) -> list[int]:
    full, rem = divmod(trials, BLOCK_SIZE)
    sizes = [BLOCK_SIZE] * full
    if rem:
        sizes.append(rem)
    return sizes


def simulate_outage(
    cfg: SystemConfig, scheme: SelectionScheme, trials: int, seed: int
) -> MonteCarloEstimate:
    """Empirical secrecy outage probability over `trials` seeded trials."""
    scheme.validate_for(cfg)
    trials = int(trials)
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials!r}")
    seed = _check_seed(seed)
    count = 0
    for b, size in enumerate(_block_sizes(trials)):
        count += int(_outage_block(scheme, cfg, seed, b, size).sum())
    p_hat = count / trials
    std_err = math.sqrt(p_hat * (1.0 - p_hat) / trials)
    return MonteCarloEstimate(p_hat=p_hat, trials=trials, std_err=std_err, seed=seed)


def outage_flags(
    cfg: SystemConfig, scheme: SelectionScheme, trials: int, seed: int
) -> np.ndarray:
    """Per-trial outage indicators, same stream as simulate_outage.

    Different schemes evaluated at one seed share identical realizations,
    which makes pathwise comparisons between selection rules possible.
    """
    scheme.validate_for(cfg)
    trials = int(trials)
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials!r}")
    seed = _check_seed(seed)
    parts = [
        _outage_block(scheme, cfg, seed, b, size)
        for b, size in enumerate(_block_sizes(trials))
    ]
    return np.concatenate(parts)
