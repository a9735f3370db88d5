"""Signed subset sums over relay-index subsets.

The CDF of the maximum of independent exponentials expands, by inclusion and
exclusion, into an alternating sum of exponentials whose rates are subset
aggregates of the per-relay rates:

    prod_i (1 - e^(-w_i x)) = 1 + sum_{A != {}} (-1)^|A| e^(-x * sum_{i in A} w_i)

Every multi-relay closed form consumes these terms, either over all indices
or with one index (the candidate relay) excluded.  Enumeration is in binary
counter order over the index bitmask, so a given weight vector always yields
the same term sequence and bit-for-bit reproducible sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

__all__ = ["SignedSubsetTerm", "subset_terms", "signed_sum", "DEFAULT_MAX_WEIGHTS"]

# Beyond ~20 indices the 2^n term count explodes and alternating-sign
# cancellation destroys accuracy; callers must opt in explicitly.
DEFAULT_MAX_WEIGHTS = 20


class SubsetSizeError(ValueError):
    """Weight vector larger than the configured enumeration cap."""


class EvaluationError(ArithmeticError):
    """A term evaluated to a non-finite value."""


@dataclass(frozen=True)
class SignedSubsetTerm:
    """One subset's contribution: sign (-1)^|A|, aggregate weight, and |A|."""

    sign: int
    beta_prime: float
    cardinality: int


def subset_terms(
    weights: Iterable[float],
    exclude: int | None = None,
    max_weights: int = DEFAULT_MAX_WEIGHTS,
) -> Iterator[SignedSubsetTerm]:
    """Yield one term per non-empty subset of the (possibly reduced) index set.

    `exclude`, when given, is a 1-based index removed before enumeration, so
    the stream ranges over subsets of the remaining indices.  Exactly
    2^n - 1 terms are produced for n effective indices; excluding the only
    index yields an empty stream (the max over nothing is degenerate at 0).
    """
    w = [float(x) for x in weights]
    n_all = len(w)
    if n_all < 1:
        raise ValueError("weights must be non-empty")
    for x in w:
        if not math.isfinite(x) or x <= 0.0:
            raise ValueError(f"weights must be positive finite reals, got {x!r}")
    if exclude is not None:
        if not 1 <= exclude <= n_all:
            raise ValueError(f"exclude index {exclude} out of range 1..{n_all}")
        w = w[: exclude - 1] + w[exclude:]
    n = len(w)
    if n > max_weights:
        raise SubsetSizeError(
            f"{n} effective weights exceed the cap of {max_weights} "
            f"(2^{n} - 1 subset terms); raise max_weights to override"
        )
    for mask in range(1, 1 << n):
        total = 0.0
        card = 0
        for i in range(n):
            if mask & (1 << i):
                total += w[i]
                card += 1
        yield SignedSubsetTerm(sign=-1 if card & 1 else 1, beta_prime=total, cardinality=card)


def signed_sum(
    terms: Iterable[SignedSubsetTerm],
    f: Callable[[SignedSubsetTerm], float],
) -> float:
    """Compensated (Neumaier) accumulation of sign * f(term) over the stream.

    Deterministic for a deterministic stream order.  Raises EvaluationError
    if f produces a non-finite value.
    """
    total = 0.0
    comp = 0.0
    for term in terms:
        value = f(term)
        if not math.isfinite(value):
            raise EvaluationError(f"term {term} evaluated to non-finite {value!r}")
        addend = term.sign * value
        fresh = total + addend
        if abs(total) >= abs(addend):
            comp += (total - fresh) + addend
        else:
            comp += (addend - fresh) + total
        total = fresh
    return total + comp
