"""Transfer-matrix enumeration of domino tilings of m x n grid strips.

Rows have m cells; the state between two consecutive rows is the set of
cells covered by a vertical domino protruding into the next row, encoded
as a bitmask.  A row transition fills every non-protruded cell either by a
horizontal domino (weight h per domino) or by starting a new vertical
domino (weight v, counted once, at the start).  Powers of the resulting
2^m x 2^m matrix enumerate tilings of the whole strip.

kasteleyn_count evaluates the classical closed-form double product in
high-precision floating point and rounds; it serves as an independent
oracle for the transfer-matrix counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log2

import mpmath

from . import guess, roots
from .core import CFiniteSeq, eval_terms, minimize

PRACTICAL_WIDTH_LIMIT = 10


@dataclass(frozen=True)
class TransferMatrix:
    width: int
    entries: tuple  # 2^m x 2^m, rows of tuples of Fraction
    weights: tuple  # (horizontal, vertical)


def transfer_matrix(m: int, weights=(1, 1)) -> TransferMatrix:
    if not 1 <= m <= PRACTICAL_WIDTH_LIMIT:
        raise ValueError(f"width must be between 1 and {PRACTICAL_WIDTH_LIMIT}")
    h, v = (Fraction(w) for w in weights)
    size = 1 << m
    rows = [[Fraction(0)] * size for _ in range(size)]

    def fill(col, occupied, protrude, weight, state):
        # `occupied` marks cells of the current row already covered
        if col == m:
            rows[state][protrude] += weight
            return
        if occupied >> col & 1:
            fill(col + 1, occupied, protrude, weight, state)
            return
        # vertical domino into the next row
        fill(col + 1, occupied, protrude | (1 << col), weight * v, state)
        # horizontal domino with the right neighbor
        if col + 1 < m and not (occupied >> (col + 1) & 1):
            fill(col + 2, occupied, protrude, weight * h, state)

    for state in range(size):
        fill(0, state, 0, Fraction(1), state)
    return TransferMatrix(m, tuple(tuple(r) for r in rows), (h, v))


def dimer_terms(m: int, N: int, weights=(1, 1)) -> list:
    """Weighted tiling counts of the m x n grid for n = 1..N, exact."""
    if N < 1:
        raise ValueError("N must be >= 1")
    tm = transfer_matrix(m, weights)
    size = 1 << m
    # iterate the row vector e_0^T * M^n and read component 0
    vec = list(tm.entries[0])
    out = [vec[0]]
    for _ in range(N - 1):
        vec = [
            sum(vec[s] * tm.entries[s][t] for s in range(size) if vec[s])
            for t in range(size)
        ]
        out.append(vec[0])
    return out


def dimer_seq(m: int, weights=(1, 1)) -> CFiniteSeq:
    """Minimal recurrence for the width-m strip counts.

    Even widths index straight: a(n) = count(m, n+1).  Odd widths have
    every odd-area count equal to 0, so the even-index subsequence
    a(n) = count(m, 2n+2) is returned instead, keeping the minimality
    analysis meaningful.
    """
    bound = 1 << m
    count = 2 * bound + 8
    if m % 2 == 0:
        terms = dimer_terms(m, count, weights)
    else:
        raw = dimer_terms(m, 2 * count, weights)
        terms = [raw[2 * k + 1] for k in range(count)]
    found = guess.guess_rec(terms, guess.GuessConfig(max_order=bound))
    if found is None:
        raise guess.InvariantViolation(
            f"width-{m} strip counts admit no recurrence of order <= {bound}"
        )
    return found


def kasteleyn_count(m: int, n: int) -> int:
    """Closed-form tiling count of the m x n grid, via the double product.

    Evaluated in floating point at a precision scaled to the grid area and
    rounded; errors out rather than return a dubious rounding.
    """
    if m * n % 2:
        raise ValueError("m * n must be even (odd-area grids have no tilings)")
    if m > 32 or n > 32:
        raise ValueError("grid sides limited to 32")
    with mpmath.workdps(15 + m * n):
        prod = mpmath.mpf(1)
        for j in range(1, m + 1):
            cj = 4 * mpmath.cos(j * mpmath.pi / (m + 1)) ** 2
            for k in range(1, n + 1):
                ck = 4 * mpmath.cos(k * mpmath.pi / (n + 1)) ** 2
                prod *= mpmath.sqrt(mpmath.sqrt(cj + ck))
        nearest = mpmath.nint(prod)
        if abs(prod - nearest) > mpmath.mpf("1e-5"):
            raise ArithmeticError(
                f"product formula for {m}x{n} did not round cleanly: {prod}"
            )
        return int(nearest)


@dataclass(frozen=True)
class DimerProductReport:
    width: int
    weights: tuple
    seq: CFiniteSeq
    minimal_order: int
    factor_orders: tuple
    verdict: roots.ProductVerdict | None
    applicable: bool
    note: str

    def __str__(self):
        head = (
            f"width {self.width}, weights "
            f"({self.weights[0]}, {self.weights[1]}): minimal order "
            f"{self.minimal_order}"
        )
        if not self.applicable:
            return f"{head}; product test inapplicable: {self.note}"
        return f"{head}; {self.verdict}"


def dimer_product_report(
    m: int, digits: int = roots.DEFAULT_DIGITS, weights=(1, 1)
) -> DimerProductReport:
    """Test whether the width-m strip sequence is a product of order-2 parts.

    The minimal order must be a power of 2 for the all-order-2 hypothesis
    to make sense; log2(order) factors of order 2 are then tested, so the
    product of the hypothesized orders equals the minimal order.  Orders
    below 2^m are common (the minimal recurrence sheds factors), in which
    case the report simply tests fewer order-2 factors.
    """
    seq = minimize(dimer_seq(m, weights))
    order = seq.order
    if order == 1:
        return DimerProductReport(
            m, tuple(weights), seq, order, (), None, False,
            "order 1; nothing to factor",
        )
    k = log2(order)
    if k != int(k):
        return DimerProductReport(
            m, tuple(weights), seq, order, (), None, False,
            f"minimal order {order} is not a power of 2",
        )
    factor_orders = (2,) * int(k)
    try:
        verdict = roots.is_prod_g(seq, factor_orders, digits)
    except roots.DegenerateRootsError as exc:
        return DimerProductReport(
            m, tuple(weights), seq, order, factor_orders, None, False, str(exc)
        )
    return DimerProductReport(
        m, tuple(weights), seq, order, factor_orders, verdict, True, ""
    )
