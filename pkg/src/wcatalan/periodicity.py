"""Periodicity of weighted Catalan numbers modulo m.

The truncated continued fraction for the generating function is a rational
function P/Q whose coefficients are signed sums over sparse index chains;
once the prefix product b(0)...b(k) vanishes mod m the residue sequence
satisfies the linear recurrence read off Q, hence is eventually periodic.
This module computes P/Q exactly, finds truncation indices, detects cycles
in residue streams, and certifies pure periodicity when the degree and
coprimality conditions hold.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import catalan
from .arith import IntPolynomial
from .errors import DomainError
from .weights import WeightFunction

__all__ = [
    "PQPair",
    "PeriodReport",
    "PurePeriodicityCheck",
    "continued_fraction_pq",
    "truncation_index",
    "detect_period",
    "pure_periodicity_sufficient",
    "weighted_residues",
    "analyze_weight_period",
]

DEFAULT_TRUNCATION_BOUND = 4096


@dataclass(frozen=True)
class PQPair:
    """Numerator and denominator of the depth-n truncated continued fraction.

    Both have constant term 1; for everywhere-nonzero weights
    deg P = ceil(n/2) and deg Q = ceil((n+1)/2).
    """

    P: IntPolynomial
    Q: IntPolynomial
    truncation: int


def _gap_chain_sums(bv: list[int], lo: int, hi: int) -> list[int]:
    """coefficient k = sum of b(i_1)...b(i_k) over lo <= i_1 < ... <= hi with gaps >= 2."""
    skip = [1]   # chains inside (j+1 .. hi)
    skip2 = [1]  # chains inside (j+2 .. hi)
    for j in range(hi, lo - 1, -1):
        cur = [0] * max(len(skip), len(skip2) + 1)
        for k, c in enumerate(skip):
            cur[k] += c
        for k, c in enumerate(skip2):
            cur[k + 1] += bv[j] * c
        while len(cur) > 1 and cur[-1] == 0:
            cur.pop()
        skip2 = skip
        skip = cur
    return skip


def continued_fraction_pq(b: WeightFunction, n: int) -> PQPair:
    """Exact P/Q with deepest level b(n).

    P has coefficient (-1)^k * (chain sums over indices 1..n) at x^k and Q
    the same over indices 0..n; the chains are strictly increasing with
    consecutive gaps >= 2.  P/Q expands to the generating function of
    weighted paths of height at most n+1.
    """
    if n < 0:
        raise DomainError("truncation depth must be nonnegative")
    bv = b.values(0, n + 1)
    p_sums = _gap_chain_sums(bv, 1, n) if n >= 1 else [1]
    q_sums = _gap_chain_sums(bv, 0, n)
    P = IntPolynomial(tuple(c if k % 2 == 0 else -c for k, c in enumerate(p_sums)))
    Q = IntPolynomial(tuple(c if k % 2 == 0 else -c for k, c in enumerate(q_sums)))
    return PQPair(P, Q, n)


def truncation_index(b: WeightFunction, modulus: int, bound: int) -> int | None:
    """Least k <= bound with modulus dividing b(0)...b(k), or None.

    None means eventual periodicity mod `modulus` is not certified within
    the bound; if no k ever works the residue sequence is not eventually
    periodic at all.
    """
    if modulus < 2:
        raise DomainError(f"modulus must be at least 2, got {modulus}")
    if bound < 0:
        raise DomainError("bound must be nonnegative")
    prod = 1
    for k in range(bound + 1):
        prod = prod * b(k) % modulus
        if prod == 0:
            return k
    return None


@dataclass(frozen=True)
class PeriodReport:
    """Cycle structure of a residue sequence over an examined window.

    period is None when no verified cycle was found within the window;
    certified records whether the truncation criterion guarantees eventual
    periodicity (it never asserts aperiodicity).
    """

    modulus: int
    preperiod: int | None
    period: int | None
    window: int
    certified: bool

    @property
    def found(self) -> bool:
        return self.period is not None

    def to_json_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "preperiod": self.preperiod,
            "period": self.period,
            "window": self.window,
            "certified": self.certified,
        }


def _divisors(d: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= d:
        if d % i == 0:
            small.append(i)
            if i != d // i:
                large.append(d // i)
        i += 1
    return small + large[::-1]


def _verified_period(terms: list[int], start: int, lam: int) -> bool:
    return all(terms[t] == terms[t + lam] for t in range(start, len(terms) - lam))


def detect_period(
    residues,
    modulus: int,
    max_terms: int,
    state_width: int = 1,
    *,
    certified: bool = False,
) -> PeriodReport:
    """Find the cycle of a residue stream via first repeated state tuples.

    A repeat of a width-k tuple at distance d suggests a cycle; the minimal
    period is the least divisor of d that verifies over the entire examined
    suffix, and the preperiod is then extended backwards as far as the
    repetition holds.  If no repeat verifies, the report carries period
    None ("undetected within window") rather than raising.
    """
    if state_width < 1:
        raise DomainError("state width must be at least 1")
    if max_terms < 1:
        raise DomainError("window must contain at least one term")
    terms = [r % modulus for r in itertools.islice(iter(residues), max_terms)]
    k = state_width
    first: dict[tuple, int] = {}
    for i in range(len(terms) - k + 1):
        key = tuple(terms[i : i + k])
        j = first.setdefault(key, i)
        if j == i:
            continue
        d = i - j
        for lam in _divisors(d):
            if _verified_period(terms, j, lam):
                pre = j
                while pre > 0 and terms[pre - 1] == terms[pre - 1 + lam]:
                    pre -= 1
                return PeriodReport(modulus, pre, lam, len(terms), certified)
    return PeriodReport(modulus, None, None, len(terms), certified)


@dataclass(frozen=True)
class PurePeriodicityCheck:
    """Sufficient-condition verdict: deg P < deg Q and unit ends of Q mod m."""

    sufficient: bool
    reasons: tuple[str, ...]


def pure_periodicity_sufficient(pq: PQPair, modulus: int) -> PurePeriodicityCheck:
    """True iff deg P < deg Q and both ends of Q are units mod `modulus`.

    When true, the recurrence read off Q runs backwards as well, so the
    residue sequence of P/Q is purely periodic (preperiod 0).  A False
    verdict makes no claim about the sequence.
    """
    if modulus < 2:
        raise DomainError(f"modulus must be at least 2, got {modulus}")
    reasons = []
    if pq.P.degree >= pq.Q.degree:
        reasons.append(
            f"deg P = {pq.P.degree} is not strictly below deg Q = {pq.Q.degree}"
        )
    if math.gcd(pq.Q.constant, modulus) != 1:
        reasons.append(f"constant term {pq.Q.constant} of Q shares a factor with {modulus}")
    if math.gcd(pq.Q.leading, modulus) != 1:
        reasons.append(f"leading term {pq.Q.leading} of Q shares a factor with {modulus}")
    return PurePeriodicityCheck(not reasons, tuple(reasons))


def weighted_residues(
    b: WeightFunction, modulus: int, count: int, height_cap: int | None = None
) -> list[int]:
    """First `count` weighted Catalan residues mod `modulus`."""
    if count < 1:
        raise DomainError("need at least one term")
    return catalan.weighted_catalan_series_mod(b, count - 1, modulus, height_cap=height_cap)


def analyze_weight_period(
    b: WeightFunction,
    modulus: int,
    max_terms: int = 2048,
    state_width: int | None = None,
    truncation_bound: int = DEFAULT_TRUNCATION_BOUND,
) -> PeriodReport:
    """End-to-end period analysis of the weighted Catalan residues mod m.

    When a truncation index k exists the DP is height-capped at k, the
    report is certified, and the default state width is the degree of the
    truncated denominator; otherwise the full DP runs uncertified.
    """
    k = truncation_index(b, modulus, truncation_bound)
    if k is None:
        cap = None
        width = state_width if state_width is not None else 4
        certified = False
    else:
        cap = k
        pq = continued_fraction_pq(b, k)
        width = state_width if state_width is not None else max(1, pq.Q.degree)
        certified = True
    residues = weighted_residues(b, modulus, max_terms, height_cap=cap)
    return detect_period(residues, modulus, max_terms, width, certified=certified)
