"""
Kernel expansions and series summation.

The three kernels of the integral families expand into exponentials:

    1/cosh(pi x)               = 2 sum_r (-1)^r e^{-(1+2r) pi x}
    1/(1 + 2 cosh t)           = sum_{p,q} (-1)^{p+q} C(p+q, p) e^{-(2q+p+1) t}
    1/(e^{2 pi s} - 1)         = sum_r e^{-2 pi (1+r) s}

each valid for x, t, s > 0 (the binomial series sits on |z| = 1 at the
origin). Each term integrates against a Laplace kernel, which turns the
integrals into G-function series.

Summation supports three modes: plain, the Cohen-Rodriguez Villegas-Zagier
transform for alternating moment sequences (error about 2|a_0|/5.83^n),
and a zeta tail that adds the tail of a known asymptotic model through the
Hurwitz zeta function.
"""

import logging
import math
from itertools import islice
from typing import Iterable, Iterator, List, Sequence, Tuple

import numpy as np
from scipy import special

from .errors import DomainError, ToleranceNotReached
from .models import (
    AccelerationKind,
    EvaluationResult,
    ExpansionTerm,
    Method,
    SummationConfig,
    TailComponent,
)


logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps
CVZ_BASE = 3.0 + math.sqrt(8.0)
TRIPLE_COSH_RATE = 2.0 * math.pi / math.sqrt(3.0)


# =============================================================================
# Term generators
# =============================================================================

def cosh_expansion(r: int) -> ExpansionTerm:
    """r-th term of 1/cosh(pi x): coefficient 2(-1)^r, rate pi(1 + 2r)."""
    if r < 0:
        raise DomainError(f"index must be non-negative, got {r}")
    return ExpansionTerm(index=(r,), coefficient=2 * (-1) ** r, rate=math.pi * (1 + 2 * r))


def triple_cosh_expansion(p: int, q: int) -> ExpansionTerm:
    """(p, q) term of 1/(1 + 2 cosh(2 pi x/sqrt 3)); the coefficient is an exact int."""
    if p < 0 or q < 0:
        raise DomainError(f"indices must be non-negative, got ({p}, {q})")
    return ExpansionTerm(
        index=(p, q),
        coefficient=(-1) ** (p + q) * math.comb(p + q, p),
        rate=TRIPLE_COSH_RATE * (2 * q + p + 1),
    )


def bose_expansion(r: int) -> ExpansionTerm:
    """r-th term of 1/(e^{2 pi s} - 1) in s = sqrt(x): coefficient 1, rate 2 pi (1 + r)."""
    if r < 0:
        raise DomainError(f"index must be non-negative, got {r}")
    return ExpansionTerm(index=(r,), coefficient=1, rate=2.0 * math.pi * (1 + r))


def diagonal(d: int) -> List[ExpansionTerm]:
    """All (p, q) terms with p + 2q = d; they share the rate 2 pi (d + 1)/sqrt 3."""
    return [triple_cosh_expansion(d - 2 * q, q) for q in range(d // 2 + 1)]


def diagonal_coefficient(d: int) -> int:
    """Exact integer sum of the coefficients on diagonal d."""
    return sum(term.coefficient for term in diagonal(d))


def regrouped_coefficient(d: int) -> int:
    """
    Coefficient of e^{-(d+1) t} in 1/(1 + 2 cosh t) = sum_k (e^{-(3k+1)t} - e^{-(3k+2)t}).

    Independent of the double sum; diagonal_coefficient must agree with it.
    """
    return (1, -1, 0)[d % 3]


def expansion_value(terms: Iterable[ExpansionTerm], s: float) -> float:
    """Partial sum of coefficient * exp(-rate * s), reduced in iteration order."""
    return math.fsum(float(t.coefficient) * math.exp(-t.rate * s) for t in terms)


# =============================================================================
# Sequence transformations
# =============================================================================

def cvz_alternating(a: Sequence[float]) -> float:
    """Cohen-Rodriguez Villegas-Zagier estimate of sum_k (-1)^k a_k from n terms."""
    n = len(a)
    d = CVZ_BASE ** n
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    s = 0.0
    for k in range(n):
        c = b - c
        s += c * a[k]
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1))
    return s / d


def cvz_terms_for(tol: float) -> int:
    return int(math.ceil(math.log(2.0 / tol) / math.log(CVZ_BASE))) + 1


def wynn_epsilon(partials: Sequence[float]) -> Tuple[float, float]:
    """
    Limit of a sequence of partial sums by Wynn's epsilon algorithm.

    Returns:
        (estimate, change from the previous estimate in the same column)
    """
    s = np.asarray(partials, dtype=float)
    if len(s) < 3:
        return float(s[-1]), float(abs(s[-1] - s[-2])) if len(s) > 1 else 0.0
    e_prev = np.zeros(len(s) + 1)
    e_cur = s.copy()
    evens = [s]
    for k in range(1, len(s)):
        delta = np.diff(e_cur)
        if np.any(delta == 0.0):
            break
        e_next = e_prev[1:len(delta) + 1] + 1.0 / delta
        if not np.all(np.isfinite(e_next)):
            break
        e_prev, e_cur = e_cur, e_next
        if k % 2 == 0:
            evens.append(e_next)
    best = evens[-1]
    if len(best) >= 2:
        return float(best[-1]), float(abs(best[-1] - best[-2]))
    return float(best[-1]), float(abs(best[-1] - evens[-2][-1]))


def zeta_tail(components: Sequence[TailComponent], start: int) -> float:
    """
    sum_{k >= start} of the asymptotic model, via the Hurwitz zeta function.

    Exponent-1 components diverge one by one; together they converge when
    their weights cancel, and sum_k sum_i w_i/(k + q_i) = -sum_i w_i psi(q_i).

    Raises:
        DomainError: the model has exponent < 1, or exponent-1 weights that do not cancel
    """
    total = 0.0
    harmonic = []
    for comp in components:
        q = start + comp.offset / comp.stride
        weight = comp.coefficient * comp.stride ** (-comp.exponent)
        if comp.exponent == 1.0:
            harmonic.append((weight, q))
        elif comp.exponent > 1.0:
            total += weight * special.zeta(comp.exponent, q)
        else:
            raise DomainError(f"tail model term with exponent {comp.exponent} diverges")
    if harmonic:
        net = sum(w for w, _ in harmonic)
        scale = sum(abs(w) for w, _ in harmonic)
        if abs(net) > 1e-14 * scale:
            raise DomainError(f"harmonic tail terms do not cancel (net weight {net:.3g})")
        total -= sum(w * special.digamma(q) for w, q in harmonic)
    return total


# =============================================================================
# Summation
# =============================================================================

def _sum_plain(terms: Iterator[float], cfg: SummationConfig, consecutive: int) -> EvaluationResult:
    partial = 0.0
    small = 0
    count = 0
    last = 0.0
    for t in terms:
        partial += t
        count += 1
        last = t
        small = small + 1 if abs(t) < cfg.tol * abs(partial) else 0
        if small >= consecutive and count >= cfg.min_terms:
            return EvaluationResult(
                value=partial,
                abs_err_est=consecutive * abs(last) + EPS * count * abs(partial),
                method=Method.SERIES,
                work={"terms": count},
            )
        if count >= cfg.max_terms:
            break
    raise ToleranceNotReached(
        f"series not converged after {count} terms", best_value=partial, abs_err_est=abs(last)
    )


def _sum_alternating(terms: Iterator[float], cfg: SummationConfig) -> EvaluationResult:
    n = min(cfg.max_terms, max(cfg.min_terms, cvz_terms_for(cfg.tol)))
    signed = list(islice(terms, n))
    if len(signed) < n:
        raise ToleranceNotReached(f"alternating stream ended after {len(signed)} of {n} terms")
    a = [(-1) ** k * t for k, t in enumerate(signed)]
    value = cvz_alternating(a)
    coarse = cvz_alternating(a[:-2])
    err = abs(value - coarse) + 2.0 * abs(a[0]) / CVZ_BASE ** n + EPS * sum(abs(x) for x in a)
    return EvaluationResult(value=value, abs_err_est=err, method=Method.SERIES, work={"terms": n})


def _sum_zeta_tail(
    terms: Iterator[float], cfg: SummationConfig, tail: Sequence[TailComponent], consecutive: int
) -> EvaluationResult:
    partial = 0.0
    small = 0
    count = 0
    resid = 0.0
    for t in terms:
        partial += t
        resid = t - sum(comp.at(count) for comp in tail)
        count += 1
        if count >= cfg.min_terms:
            small = small + 1 if abs(resid) < cfg.tol * abs(partial) else 0
        if small >= consecutive:
            value = partial + zeta_tail(tail, count)
            err = count * abs(resid) + EPS * count * abs(value)
            return EvaluationResult(
                value=value, abs_err_est=err, method=Method.SERIES, work={"terms": count}
            )
        if count >= cfg.max_terms:
            break
    raise ToleranceNotReached(
        f"asymptotic tail model not reached after {count} terms",
        best_value=partial + zeta_tail(tail, count),
        abs_err_est=count * abs(resid),
    )


def sum_series(
    terms: Iterable[float],
    cfg: SummationConfig = None,
    tail: Sequence[TailComponent] = (),
    consecutive: int = 3,
) -> EvaluationResult:
    """
    Sum a stream of real terms.

    Args:
        terms: the series terms in summation order (blocks for double sums)
        cfg: tolerance, caps and acceleration mode
        tail: asymptotic model of the k-th term, used by the zeta_tail mode
        consecutive: small terms in a row that end the sum (3 single, 2 diagonal)

    Returns:
        EvaluationResult tagged series, work counting terms

    Raises:
        ToleranceNotReached: max_terms reached first
    """
    cfg = cfg or SummationConfig()
    stream = iter(terms)
    if cfg.acceleration == AccelerationKind.ALTERNATING:
        result = _sum_alternating(stream, cfg)
    elif cfg.acceleration == AccelerationKind.ZETA_TAIL:
        result = _sum_zeta_tail(stream, cfg, tail, consecutive)
    else:
        result = _sum_plain(stream, cfg, consecutive)
    logger.debug(
        "sum_series[%s]: %.15g (+/- %.1e) from %d terms",
        cfg.acceleration.value, result.value, result.abs_err_est, result.work["terms"],
    )
    return result
