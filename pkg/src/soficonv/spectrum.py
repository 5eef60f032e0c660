"""Level sets and density spectra of positive integer functions.

The growth ratio log f(n) / log n classifies integers into level sets; at
desk scale every "density" is reported at an explicit finite horizon with
a checkpoint series, never as a claimed limit.  The module also houses the
base-2 three-digit representation count (a Stern-type recursion), its
continued-fraction identity through the binary run decomposition, and
seeded stochastic estimates of the associated Lyapunov and Levy constants.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import Callable, Iterable, Optional, Sequence

from .bernoulli import BernoulliSpec, count_representations
from .errors import DomainError

__all__ = ["stern", "binary_runs", "RunDecomposition", "cf_denominator",
           "cf_log_denominator", "DensityProfile", "Checkpoint", "level_set",
           "profile", "alpha0_estimate", "lyapunov_estimate",
           "endpoint_constants", "interleave", "InterleaveResult",
           "named_function"]

_STERN = {0: 1}


def stern(n: int, b: int = 2, d: int = 3) -> int:
    """Representation count in base b with digits {0..d-1}.

    For the default (2, 3) this is the memoized halving recursion
    f(2m) = f(m) + f(m-1), f(2m+1) = f(m), f(0) = 1; other parameters
    delegate to the generic digit-string count.
    """
    if not (isinstance(n, int) and n >= 0):
        raise DomainError("n must be a nonnegative integer", code="LETTER_RANGE")
    if (b, d) != (2, 3):
        return count_representations(n, BernoulliSpec.uniform(b, d))

    def rec(m: int) -> int:
        v = _STERN.get(m)
        if v is not None:
            return v
        half, odd = divmod(m, 2)
        v = rec(half) if odd else rec(half) + rec(half - 1)
        _STERN[m] = v
        return v

    return rec(n)


@dataclass(frozen=True)
class RunDecomposition:
    """Run lengths of the binary word of n, least-significant run first.

    a[0] counts the trailing ones (zero when n is even); subsequent entries
    are the alternating run lengths up to the leading ones.
    """

    a: tuple

    @property
    def s(self) -> int:
        return len(self.a) - 1

    @property
    def quotients(self) -> tuple:
        return self.a[1:]

    def reconstruct(self) -> int:
        word = ""
        bit = "1" if len(self.a) % 2 == 1 else "0"
        for length in reversed(self.a):
            word += bit * length
            bit = "0" if bit == "1" else "1"
        return int(word, 2) if word else 0


def binary_runs(n: int) -> RunDecomposition:
    if not (isinstance(n, int) and n >= 1):
        raise DomainError("run decomposition needs n >= 1", code="LETTER_RANGE")
    bits = []
    m = n
    while m:
        bits.append(m & 1)
        m >>= 1
    groups = [(key, sum(1 for _ in grp)) for key, grp in groupby(bits)]
    if groups[0][0] == 1:
        a = [groups[0][1]]
        rest = groups[1:]
    else:
        a = [0]
        rest = groups
    a.extend(length for _key, length in rest)
    return RunDecomposition(tuple(a))


def cf_denominator(quotients: Sequence[int]) -> int:
    """Denominator of [0; a1, ..., as] by the standard recurrence."""
    q_prev, q = 0, 1
    for a in quotients:
        if not (isinstance(a, int) and a >= 1):
            raise DomainError(f"partial quotient {a!r} must be a positive integer",
                              code="LETTER_RANGE")
        q_prev, q = q, a * q + q_prev
    return q


def cf_log_denominator(quotients: Iterable[int]) -> float:
    """log of the continued-fraction denominator, in floating point.

    Tracks the ratio q_k / q_{k-1} = a_k + 1 / previous ratio, so arbitrarily
    long quotient streams never build big integers.
    """
    total = 0.0
    ratio = None
    for a in quotients:
        ratio = float(a) if ratio is None else a + 1.0 / ratio
        total += math.log(ratio)
    return total


# ---------------------------------------------------------------------------
# density profiles and level sets


@dataclass(frozen=True)
class Checkpoint:
    N: int
    count: int
    density: Fraction
    dexp: float


@dataclass(frozen=True)
class DensityProfile:
    """Horizon-indexed density report for a set of integers in [2, N).

    d_minus / d_plus are the natural density at the horizon (count over the
    window size N - 2); dexp_minus / dexp_plus are log(count)/log(N).  The
    checkpoint series carries the same numbers at powers of two so callers
    can see the finite-horizon trend instead of trusting a single point.
    """

    horizon: int
    count: int
    d_minus: Fraction
    d_plus: Fraction
    dexp_minus: float
    dexp_plus: float
    checkpoints: tuple


def _density_at(count: int, N: int) -> Fraction:
    window = max(N - 2, 1)
    return Fraction(count, window)


def _dexp_at(count: int, N: int) -> float:
    if count <= 0 or N < 2:
        return 0.0
    return math.log(count) / math.log(N)


def build_profile(members: Sequence[int], horizon: int) -> DensityProfile:
    """Profile of a sorted member list against the horizon [2, horizon)."""
    marks = []
    N = 4
    while N < horizon:
        marks.append(N)
        N *= 2
    marks.append(horizon)
    checkpoints = []
    for mark in marks:
        cnt = bisect_left(members, mark)
        checkpoints.append(Checkpoint(mark, cnt, _density_at(cnt, mark),
                                      _dexp_at(cnt, mark)))
    count = len(members)
    dens = _density_at(count, horizon)
    dexp = _dexp_at(count, horizon)
    return DensityProfile(horizon, count, dens, dens, dexp, dexp,
                          tuple(checkpoints))


def level_set(f: Callable[[int], float], alpha: float, eps: float, N: int):
    """Members of the level set at alpha with window eps, over [2, N).

    Membership means alpha - eps <= log f(n) / log n <= alpha + eps; f must
    be positive on the range.  Returns (members, profile).
    """
    if N < 3:
        raise DomainError("horizon must be at least 3", code="LETTER_RANGE")
    if eps <= 0:
        raise DomainError("eps must be positive", code="LETTER_RANGE")
    lo_bound, hi_bound = alpha - eps, alpha + eps
    members = []
    for n in range(2, N):
        value = f(n)
        if value <= 0:
            raise DomainError(f"f({n}) = {value!r} is not positive",
                              code="NONPOSITIVE_VALUE")
        ratio = math.log(value) / math.log(n)
        if lo_bound <= ratio <= hi_bound:
            members.append(n)
    return members, build_profile(members, N)


def profile(f: Callable[[int], float], n_lo: int, n_hi: int):
    """The series (n, log f(n) / log n) for n in [n_lo, n_hi)."""
    if n_lo < 2 or n_hi <= n_lo:
        raise DomainError("need 2 <= n_lo < n_hi", code="LETTER_RANGE")
    rows = []
    for n in range(n_lo, n_hi):
        value = f(n)
        if value <= 0:
            raise DomainError(f"f({n}) = {value!r} is not positive",
                              code="NONPOSITIVE_VALUE")
        rows.append((n, math.log(value) / math.log(n)))
    return rows


def alpha0_estimate(K: int, lo: Optional[int] = None, hi: Optional[int] = None) -> float:
    """Average growth exponent of the three-digit count over a dyadic block:
    (sum of ln f(n) for n in [lo, hi)) / ((hi - lo) * ln lo), default block
    [2^(K-1), 2^K)."""
    if K < 4:
        raise DomainError("need K >= 4", code="LETTER_RANGE")
    lo = 2 ** (K - 1) if lo is None else lo
    hi = 2 ** K if hi is None else hi
    total = 0.0
    for n in range(lo, hi):
        total += math.log(stern(n))
    return total / ((hi - lo) * math.log(lo))


def endpoint_constants(K: int = 14) -> dict:
    """The two local-dimension endpoints of the three-digit convolution:
    log2(3) minus the average exponent, and log2(3) minus log2(golden)."""
    a0 = alpha0_estimate(K)
    log2_3 = math.log(3) / math.log(2)
    log2_phi = math.log((1 + math.sqrt(5)) / 2) / math.log(2)
    return {
        "alpha0": a0,
        "K": K,
        "max_local_dimension": log2_3 - a0,
        "min_local_dimension": log2_3 - log2_phi,
    }


# ---------------------------------------------------------------------------
# stochastic constants


def lyapunov_estimate(mode: str, seed: int, s: int) -> float:
    """Seeded estimate of log q_s / s along a random continued fraction.

    mode "binary_drive": draw fair bits as the binary expansion of a real
    in [1/2, 1), read the run lengths as partial quotients.  mode "levy":
    draw a dyadic rational with 16*s bits and take its exact continued
    fraction.  Both return log q_s / s; the generator is fixed
    (random.Random, Mersenne Twister) so runs are reproducible bit for bit.
    """
    if s < 1:
        raise DomainError("need s >= 1", code="LETTER_RANGE")
    rng = random.Random(seed)
    if mode == "binary_drive":
        quotients = _runs_from_bits(rng, s)
    elif mode == "levy":
        quotients = _quotients_of_random_dyadic(rng, s)
    else:
        raise DomainError(f"unknown mode {mode!r}", code="BAD_MODE")
    return cf_log_denominator(quotients) / s


def _runs_from_bits(rng: random.Random, s: int):
    """Run lengths of a fair-bit stream whose first bit is forced to 1."""
    quotients = []
    current_bit = 1
    run = 1
    while len(quotients) < s:
        bit = rng.getrandbits(1)
        if bit == current_bit:
            run += 1
        else:
            quotients.append(run)
            current_bit = bit
            run = 1
    return quotients


def _quotients_of_random_dyadic(rng: random.Random, s: int):
    bits = 16 * s
    numerator = rng.getrandbits(bits)
    if numerator == 0:
        raise DomainError("drew zero; not enough bits for any quotient",
                          code="INSUFFICIENT_BITS")
    p, q = (1 << bits), numerator     # continued fraction of numerator/2^bits
    quotients = []
    while len(quotients) < s:
        if q == 0:
            raise DomainError(
                f"only {len(quotients)} quotients available, need {s}",
                code="INSUFFICIENT_BITS")
        a, rem = divmod(p, q)
        quotients.append(a)
        p, q = q, rem
    return quotients


# ---------------------------------------------------------------------------
# interleaving a monotone family into one set


@dataclass(frozen=True)
class InterleaveResult:
    cut_points: tuple      # 1 = N_1 < N_2 < ... as found below the horizon
    blocks: tuple          # (k, lo, hi) with E restricted to E_k on [lo, hi)
    members: tuple
    direction: str         # "non-increasing" or "non-decreasing"


def interleave(family: Callable[[int, int], bool], targets, horizon: int,
               max_k: Optional[int] = None, spot_checks: int = 48) -> InterleaveResult:
    """Glue a monotone family into one set matching the target densities.

    family(k, n) is membership of n in the k-th set; targets gives, per k,
    the quadruple (d_minus, d_plus, dexp_minus, dexp_plus) the construction
    aims for.  Each next cut point is the least N >= 2*N_k at which the
    eight finite-horizon inequalities (counts of E_k restricted above N_k,
    of E_k padded below N_k, and of E_{k+1}, against the targets with slack
    1/k) all hold.  If no such N exists below the horizon a NO_CUT_POINT
    error reports the inequality that failed last.
    """
    if horizon < 4:
        raise DomainError("horizon too small", code="LETTER_RANGE")
    get_targets = targets if callable(targets) else lambda k: targets[k - 1]
    direction = _spot_check_monotone(family, horizon, spot_checks)

    cuts = [1]
    blocks = []
    k = 0
    while True:
        k += 1
        n_k = cuts[-1]
        lo = 2 * n_k
        if lo > horizon or (max_k is not None and k > max_k):
            break
        dmk, dpk, demk, depk = (float(x) for x in get_targets(k))
        dmk1, dpk1, demk1, depk1 = (float(x) for x in get_targets(k + 1))
        c_k_at_nk = sum(1 for n in range(1, n_k) if family(k, n))
        complement = (n_k - 1) - c_k_at_nk
        c_k = c_k_at_nk
        c_k1 = sum(1 for n in range(1, n_k) if family(k + 1, n))
        slack = 1.0 / k
        found = None
        last_failure = None
        for n in range(n_k, horizon):
            c_k += 1 if family(k, n) else 0
            c_k1 += 1 if family(k + 1, n) else 0
            N = n + 1
            if N < lo:
                continue
            restricted = c_k - c_k_at_nk       # E_k cut below N_k
            padded = c_k + complement          # E_k padded below N_k
            checks = (
                ("N*(d_minus(E_k) - 1/k) <= #E_k'", N * (dmk - slack) <= restricted),
                ("#E_k'' <= N*(d_plus(E_k) + 1/k)", padded <= N * (dpk + slack)),
                ("N^(dexp_minus(E_k) - 1/k) <= #E_k'", N ** (demk - slack) <= restricted),
                ("#E_k'' <= N^(dexp_plus(E_k) + 1/k)", padded <= N ** (depk + slack)),
                ("N*(d_minus(E_k+1) - 1/k) <= #E_k+1", N * (dmk1 - slack) <= c_k1),
                ("#E_k+1 <= N*(d_plus(E_k+1) + 1/k)", c_k1 <= N * (dpk1 + slack)),
                ("N^(dexp_minus(E_k+1) - 1/k) <= #E_k+1", N ** (demk1 - slack) <= c_k1),
                ("#E_k+1 <= N^(dexp_plus(E_k+1) + 1/k)", c_k1 <= N ** (depk1 + slack)),
            )
            bad = next((name for name, ok in checks if not ok), None)
            if bad is None:
                found = N
                break
            last_failure = bad
        if found is None:
            raise DomainError(
                f"no admissible cut point in [{lo}, {horizon}] for k={k}; "
                f"last failing inequality: {last_failure}",
                code="NO_CUT_POINT")
        cuts.append(found)
        blocks.append((k, n_k, found))

    blocks.append((k, cuts[-1], horizon))
    members = []
    for block_k, b_lo, b_hi in blocks:
        for n in range(max(b_lo, 1), b_hi):
            if family(block_k, n):
                members.append(n)
    return InterleaveResult(tuple(cuts), tuple(blocks), tuple(members), direction)


def _spot_check_monotone(family, horizon: int, samples: int) -> str:
    rng = random.Random(20240801)
    ns = [rng.randrange(2, horizon) for _ in range(samples)]
    ks = [rng.randrange(1, 6) for _ in range(samples)]
    non_increasing = True
    non_decreasing = True
    for n, k in zip(ns, ks):
        a, b = family(k, n), family(k + 1, n)
        if b and not a:
            non_increasing = False
        if a and not b:
            non_decreasing = False
    if non_increasing:
        return "non-increasing"
    if non_decreasing:
        return "non-decreasing"
    raise DomainError("family is not monotone on sampled points",
                      code="NOT_MONOTONE")


# ---------------------------------------------------------------------------
# named oracles for the CLI


def named_function(name: str) -> Callable[[int], float]:
    """Built-in growth functions: stern, linear (f(n) = n), and sinpower
    (f(n) = n^(1 + sin n))."""
    if name == "stern":
        return lambda n: stern(n)
    if name == "linear":
        return lambda n: float(n)
    if name == "sinpower":
        return lambda n: float(n) ** (1.0 + math.sin(n))
    raise DomainError(f"unknown function {name!r}", code="BAD_FUNCTION")
