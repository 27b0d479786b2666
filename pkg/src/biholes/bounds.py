"""Exact degree-sequence lower bounds for balanced bipartite graphs.

Everything here is computed with ``fractions.Fraction``, so floors and
ceilings are exact no matter how adversarial the degree sequence is.  The
single deliberately approximate quantity is :func:`log_reference_bound`,
which needs a logarithm; it is computed to 30 correctly-rounded significant
digits and is report-only, never part of a correctness check.

The quantities, for a balanced n x n graph G with degeneracy parameter d:

* ``potential(x, d)``    = min(1, (d+1)/(x+1))
* ``caro_wei_sum(G, d)`` = sum of potential(deg(v), d) over all vertices
* ``floor_bound(G, d)``  = floor(caro_wei_sum / 2), a guaranteed size of a
  balanced induced d-degenerate subgraph (a bi-hole when d = 0)
* ``strengthened_bound`` = (potential(max_deg_left) + potential(max_deg_right)
  + caro_wei_sum) / 2 - 1, which never decreases during pair peeling and
  whose ceiling dominates floor_bound
* ``average_degree_bound`` = n/(avg_deg + 1) - 2, a coarser classical bound
* ``log_reference_bound``  = (eps/2) * n * ln(avg_deg)/avg_deg, the
  asymptotic reference for sparse graphs
"""

from __future__ import annotations

import decimal
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .bigraph import BipartiteGraph, Side
from .errors import DegreeTooSmall, UnbalancedGraph

__all__ = [
    "potential",
    "caro_wei_sum",
    "floor_bound",
    "strengthened_bound",
    "average_degree_bound",
    "log_reference_bound",
    "BoundReport",
    "bound_report",
    "rational_to_json",
    "decimal_string",
]

_LOG_DIGITS = 30
_DECIMAL_SIGNIFICANT_DIGITS = 12


def potential(x: int, d: int = 0) -> Fraction:
    """min(1, (d+1)/(x+1)) for a vertex of degree x; equals 1 iff x <= d."""
    if x <= d:
        return Fraction(1)
    return Fraction(d + 1, x + 1)


def _require_balanced(g: BipartiteGraph, op: str) -> None:
    if not g.is_balanced:
        raise UnbalancedGraph(f"{op} needs a balanced graph, got {g.left_count} x {g.right_count}")


def _degree_multiset(g: BipartiteGraph) -> Counter:
    counts: Counter = Counter()
    for nbrs in g.left_adj:
        counts[len(nbrs)] += 1
    for nbrs in g.right_adj:
        counts[len(nbrs)] += 1
    return counts


def caro_wei_sum(g: BipartiteGraph, d: int = 0) -> Fraction:
    """Sum of potential(deg(v), d) over all vertices of g (any shape)."""
    total = Fraction(0)
    for deg, count in _degree_multiset(g).items():
        total += count * potential(deg, d)
    return total


def floor_bound(g: BipartiteGraph, d: int = 0) -> int:
    """floor(caro_wei_sum(g, d) / 2): the guaranteed balanced subgraph size."""
    _require_balanced(g, "floor_bound")
    return math.floor(caro_wei_sum(g, d) / 2)


def strengthened_bound(g: BipartiteGraph, d: int = 0) -> Fraction:
    """The peeling-invariant quantity whose ceiling refines floor_bound.

    Equals (f(max_deg_left) + f(max_deg_right) + sum_v f(deg v)) / 2 - 1
    with f = potential(. , d).  On the 0 x 0 graph there is no max degree;
    the value is 0 by convention so traces and reports stay total.
    """
    _require_balanced(g, "strengthened_bound")
    if g.left_count == 0:
        return Fraction(0)
    total = caro_wei_sum(g, d)
    total += potential(g.max_degree(Side.LEFT), d)
    total += potential(g.max_degree(Side.RIGHT), d)
    return total / 2 - 1


def average_degree_bound(g: BipartiteGraph) -> Fraction:
    """n/(average degree + 1) - 2, computed exactly; 0 on the empty graph."""
    _require_balanced(g, "average_degree_bound")
    n = g.left_count
    if n == 0:
        return Fraction(0)
    avg = Fraction(g.edge_count, n)
    return Fraction(n) / (avg + 1) - 2


def _ln(x: Fraction) -> Fraction:
    """Natural log of a positive rational, correctly rounded to 30 digits."""
    with decimal.localcontext() as ctx:
        ctx.prec = _LOG_DIGITS
        value = (decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)).ln()
    return Fraction(value)


def log_reference_bound(g: BipartiteGraph, eps: Fraction) -> Fraction:
    """(eps/2) * n * ln(avg_deg)/avg_deg, the sparse-regime reference value.

    Approximate by necessity (the log is rounded to 30 significant digits)
    and report-only: it carries an unspecified degree threshold, so it never
    participates in correctness checks.  Requires average degree > 1.
    """
    _require_balanced(g, "log_reference_bound")
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    n = g.left_count
    avg = Fraction(g.edge_count, n) if n else Fraction(0)
    if avg <= 1:
        raise DegreeTooSmall(f"log reference needs average degree > 1, got {avg}")
    return eps / 2 * n * _ln(avg) / avg


def decimal_string(x: Fraction, digits: int = _DECIMAL_SIGNIFICANT_DIGITS) -> str:
    """Decimal rendering of a rational, correctly rounded to ``digits``
    significant digits (round-half-even).  Informational only; the rational
    fields stay authoritative."""
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        value = decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)
    return str(value)


def rational_to_json(x: Fraction) -> dict:
    return {
        "num": str(x.numerator),
        "den": str(x.denominator),
        "decimal": decimal_string(x),
    }


@dataclass(frozen=True)
class BoundReport:
    """All bound values for one (graph, d) pair.

    ``log_reference`` is None when the average degree is <= 1 (the reference
    formula is undefined there).  ``log_size_hypothesis_met`` records whether
    n >= (1 + eps) * avg_deg, the checkable part of the reference bound's
    hypotheses; it is reported, not enforced.
    """

    n: int
    d: int
    floor_bound: int
    strengthened: Fraction
    average_degree_bound: Fraction
    log_reference: Fraction | None = None
    log_reference_eps: Fraction | None = None
    log_size_hypothesis_met: bool | None = None

    @property
    def ceil_strengthened(self) -> int:
        return math.ceil(self.strengthened)

    def to_json(self) -> dict:
        log_part = None
        if self.log_reference is not None:
            log_part = {
                "value": rational_to_json(self.log_reference),
                "eps": rational_to_json(self.log_reference_eps),
                "size_hypothesis_met": self.log_size_hypothesis_met,
            }
        return {
            "n": self.n,
            "d": self.d,
            "floor_bound": self.floor_bound,
            "strengthened": rational_to_json(self.strengthened),
            "ceil_strengthened": self.ceil_strengthened,
            "average_degree_bound": rational_to_json(self.average_degree_bound),
            "log_reference": log_part,
        }


def bound_report(g: BipartiteGraph, d: int = 0, eps: Fraction = Fraction(1, 2)) -> BoundReport:
    """Assemble the full report; on the empty graph every bound is 0."""
    _require_balanced(g, "bound_report")
    n = g.left_count
    fb = floor_bound(g, d)
    strengthened = strengthened_bound(g, d)
    avg_bound = average_degree_bound(g)
    log_ref = None
    log_eps = None
    hypothesis = None
    avg = Fraction(g.edge_count, n) if n else Fraction(0)
    if avg > 1:
        log_eps = Fraction(eps)
        log_ref = log_reference_bound(g, log_eps)
        hypothesis = n >= (1 + log_eps) * avg
    report = BoundReport(
        n=n,
        d=d,
        floor_bound=fb,
        strengthened=strengthened,
        average_degree_bound=avg_bound,
        log_reference=log_ref,
        log_reference_eps=log_eps,
        log_size_hypothesis_met=hypothesis,
    )
    assert report.ceil_strengthened >= fb, "rounding refinement must dominate the floor bound"
    return report
