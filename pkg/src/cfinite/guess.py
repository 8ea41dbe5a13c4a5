"""Recurrence guessing and everything built on top of it.

The guessing strategy is plain undetermined coefficients: postulate an
order, set up the exact linear system the terms impose, solve over Q, and
only accept a recurrence that every supplied term satisfies.  Closure
operations (sum, Hadamard product, binomial transform, partial sums,
subsequences) generate enough terms for their theoretical order bound and
then guess; a guessing failure at the bound means an arithmetic bug, never
a mathematical possibility, and raises InvariantViolation.

Equality of two sequences is decidable by a finite check: the difference
satisfies a recurrence of order at most L1 + L2, so that many matching
terms force identical sequences.  prove_equal implements exactly that and
returns a certificate recording the bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, lcm

from . import linalg
from .core import CFiniteSeq, Rational, eval_terms, format_rational, minimize
from .gf import RationalGF, taylor


class InvariantViolation(AssertionError):
    """A guaranteed-by-theory step failed; indicates a bug, not bad input."""


@dataclass(frozen=True)
class GuessConfig:
    max_order: int
    safety_terms: int = 4
    verify_extra: int = 10

    def __post_init__(self):
        if self.max_order < 1:
            raise ValueError("max_order must be >= 1")
        if self.safety_terms < 0:
            raise ValueError("safety_terms must be >= 0")


@dataclass(frozen=True)
class ProofCertificate:
    order_bound: int
    terms_checked: int
    statement: str
    verified: bool

    def __str__(self):
        status = "VERIFIED" if self.verified else "NOT VERIFIED"
        return (
            f"{status}: {self.statement} "
            f"(order bound {self.order_bound}, {self.terms_checked} terms checked)"
        )


def guess_rec(terms, cfg: GuessConfig):
    """Minimal-order recurrence fitting every supplied term, or None.

    Orders are tried ascending; for each candidate order L the full exact
    system over all available indices is solved (free variables pinned to
    0), so any returned recurrence fits all terms by construction.  The
    search is capped so at least `safety_terms` equations remain beyond
    the 2L terms that barely determine an order-L fit.
    """
    terms = [Fraction(t) for t in terms]
    if len(terms) < 4:
        raise ValueError("need at least 4 terms to guess")
    max_l = min(cfg.max_order, (len(terms) - cfg.safety_terms) // 2)
    for L in range(1, max_l + 1):
        A = [[terms[n - 1 - i] for i in range(L)] for n in range(L, len(terms))]
        b = [terms[n] for n in range(L, len(terms))]
        sol = linalg.solve(A, b)
        if sol is None:
            continue
        cand = CFiniteSeq(terms[:L], sol)
        if eval_terms(cand, len(terms)) != terms:
            raise InvariantViolation("full-system solution failed verification")
        return minimize(cand)
    return None


def _guess_at_bound(terms, bound: int, what: str) -> CFiniteSeq:
    found = guess_rec(terms, GuessConfig(max_order=bound))
    if found is None:
        raise InvariantViolation(
            f"{what}: no recurrence of order <= {bound} fits, "
            "which contradicts the closure bound"
        )
    return found


def add(s1: CFiniteSeq, s2: CFiniteSeq) -> CFiniteSeq:
    """Termwise sum; order at most L1 + L2."""
    bound = s1.order + s2.order
    n = 2 * bound + 4
    t1, t2 = eval_terms(s1, n), eval_terms(s2, n)
    return _guess_at_bound([a + b for a, b in zip(t1, t2)], bound, "add")


def mul(s1: CFiniteSeq, s2: CFiniteSeq) -> CFiniteSeq:
    """Hadamard (termwise) product; order at most L1 * L2."""
    bound = s1.order * s2.order
    n = 2 * bound + 4
    t1, t2 = eval_terms(s1, n), eval_terms(s2, n)
    return _guess_at_bound([a * b for a, b in zip(t1, t2)], bound, "mul")


def binomial_transform(s: CFiniteSeq) -> CFiniteSeq:
    """n -> sum_k C(n,k) s(k); preserves the order bound L."""
    bound = s.order
    n = 2 * bound + 4
    base = eval_terms(s, n)
    transformed = [
        sum(comb(m, k) * base[k] for k in range(m + 1)) for m in range(n)
    ]
    return _guess_at_bound(transformed, bound, "binomial_transform")


def partial_sums(s: CFiniteSeq) -> CFiniteSeq:
    """n -> sum_{k<=n} s(k); order at most L + 1."""
    bound = s.order + 1
    n = 2 * bound + 4
    base = eval_terms(s, n)
    sums = list(itertools.accumulate(base))
    return _guess_at_bound(sums, bound, "partial_sums")


def subsequence(s: CFiniteSeq, step: int, offset: int = 0) -> CFiniteSeq:
    """n -> s(step * n + offset); order at most L."""
    if step < 1:
        raise ValueError("step must be >= 1")
    if offset < 0:
        raise ValueError("offset must be >= 0")
    bound = s.order
    count = 2 * bound + 4
    base = eval_terms(s, step * (count - 1) + offset + 1)
    sampled = [base[step * k + offset] for k in range(count)]
    return _guess_at_bound(sampled, bound, "subsequence")


def prove_equal(s1: CFiniteSeq, s2: CFiniteSeq, verify_extra: int = 10) -> ProofCertificate:
    """Finite-check equality proof.

    The difference of the two sequences satisfies a recurrence of order at
    most L1 + L2, so agreement on that many initial terms proves equality
    everywhere.  `verify_extra` additional terms are compared as a sanity
    margin; a disagreement there would be an arithmetic bug.
    """
    bound = s1.order + s2.order
    checked = bound + verify_extra
    t1, t2 = eval_terms(s1, checked), eval_terms(s2, checked)
    for n in range(checked):
        if t1[n] != t2[n]:
            if n >= bound:
                raise InvariantViolation(
                    f"terms agree through the order bound {bound} but differ "
                    f"at n={n}"
                )
            return ProofCertificate(
                order_bound=bound,
                terms_checked=checked,
                statement=(
                    f"sequences differ first at n={n}: "
                    f"{format_rational(t1[n])} != {format_rational(t2[n])}"
                ),
                verified=False,
            )
    return ProofCertificate(
        order_bound=bound,
        terms_checked=checked,
        statement=(
            f"first {bound} terms agree; the difference satisfies a "
            f"recurrence of order <= {bound}, hence the sequences are equal"
        ),
        verified=True,
    )


# --- nonlinear (polynomial) recurrence guessing ------------------------------

@dataclass(frozen=True)
class PolyRelation:
    """A polynomial relation among a(n-order), ..., a(n) and 1.

    `support` lists exponent vectors (one entry per variable, the variable
    for a(n-order+i) at index i); `coefficients` are the matching integer
    coefficients.  The relation evaluates to 0 at every verified index.
    """

    order: int
    degree: int
    support: tuple
    coefficients: tuple

    def evaluate(self, window):
        """Value of the relation on a window (a(n-order), ..., a(n))."""
        total = Fraction(0)
        for exps, c in zip(self.support, self.coefficients):
            term = c
            for x, e in zip(window, exps):
                if e:
                    term *= x**e
            total += term
        return total

    def __str__(self):
        parts = []
        for exps, c in zip(self.support, self.coefficients):
            factors = []
            for i in range(len(exps) - 1, -1, -1):
                e = exps[i]
                if not e:
                    continue
                j = self.order - i
                name = "a(n)" if j == 0 else f"a(n-{j})"
                factors.append(name if e == 1 else f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts) + " = 0"


def _monomials(nvars: int, degree: int):
    """All exponent vectors of total degree <= degree.

    Ordered by total degree descending, lexicographically within a degree;
    the constant monomial therefore comes last.
    """
    out = []
    for exps in itertools.product(range(degree + 1), repeat=nvars):
        if sum(exps) <= degree:
            out.append(exps)
    out.sort(key=lambda e: (-sum(e), e))
    return out


def guess_nlr(terms, order: int, degree: int):
    """Polynomial recurrence of the given window and degree, or None.

    The monomial basis runs over a(n-order), ..., a(n) and the constant
    monomial.  The returned relation is the kernel vector attached to the
    last free column of the evaluation matrix (a deterministic choice that
    prefers relations involving the constant), normalized to integer
    coefficients with content 1 and positive first nonzero coefficient.
    """
    if order < 0 or degree < 1:
        raise ValueError("order must be >= 0 and degree >= 1")
    terms = [Fraction(t) for t in terms]
    nvars = order + 1
    monos = _monomials(nvars, degree)
    if len(terms) < order + 2 * len(monos) + 4:
        raise ValueError(
            f"need at least {order + 2 * len(monos) + 4} terms for "
            f"order {order}, degree {degree}"
        )
    rows = []
    for n in range(order, len(terms)):
        window = terms[n - order : n + 1]
        row = []
        for exps in monos:
            v = Fraction(1)
            for x, e in zip(window, exps):
                if e:
                    v *= x**e
            row.append(v)
        rows.append(row)
    free = linalg.free_columns(rows)
    if not free:
        return None
    vec = linalg.kernel_vector_for_column(rows, free[-1])
    # normalize: integer content 1, first nonzero positive
    den = lcm(*(c.denominator for c in vec))
    ints = [int(c * den) for c in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    first = next(v for v in ints if v)
    if first < 0:
        g = -g
    ints = [v // g for v in ints]
    relation = PolyRelation(order, degree, tuple(monos), tuple(ints))
    for n in range(order, len(terms)):
        if relation.evaluate(terms[n - order : n + 1]) != 0:
            raise InvariantViolation("kernel relation failed re-verification")
    return relation


# --- parametric identities via grid specialization ---------------------------

def verify_parametric_identity(
    lhs_builder,
    rhs_gf_builder,
    param_degrees,
    series_terms: int,
    grids=None,
) -> ProofCertificate:
    """Prove a polynomial identity in parameters by finite specialization.

    Every series coefficient of both sides is assumed polynomial in
    parameter i of degree at most param_degrees[i]; checking on a grid of
    degree+1 distinct rational points per parameter then proves the
    identity for the first `series_terms` coefficients.  Larger grids may
    be supplied explicitly via `grids`.
    """
    if grids is None:
        grids = [[Fraction(j) for j in range(d + 1)] for d in param_degrees]
    if len(grids) != len(param_degrees):
        raise ValueError("one grid per parameter required")
    for d, g in zip(param_degrees, grids):
        if len(g) < d + 1:
            raise ValueError(f"grid needs at least {d + 1} points for degree {d}")
    npoints = 1
    for g in grids:
        npoints *= len(g)
    for point in itertools.product(*grids):
        lhs_seq = lhs_builder(*point)
        rhs_gf = rhs_gf_builder(*point)
        lhs_coeffs = eval_terms(lhs_seq, series_terms)
        rhs_coeffs = taylor(rhs_gf, series_terms)
        for n in range(series_terms):
            if lhs_coeffs[n] != rhs_coeffs[n]:
                pt = ", ".join(format_rational(x) for x in point)
                return ProofCertificate(
                    order_bound=series_terms,
                    terms_checked=series_terms,
                    statement=(
                        f"mismatch at grid point ({pt}), coefficient {n}: "
                        f"{format_rational(lhs_coeffs[n])} != "
                        f"{format_rational(rhs_coeffs[n])}"
                    ),
                    verified=False,
                )
    return ProofCertificate(
        order_bound=series_terms,
        terms_checked=series_terms,
        statement=(
            f"identity verified on all {npoints} grid points, "
            f"{series_terms} coefficients each; grid sizes exceed the stated "
            "coefficient degrees, so the identity holds identically"
        ),
        verified=True,
    )
