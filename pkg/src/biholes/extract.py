"""Constructive peeling: extract bi-holes and balanced degenerate subgraphs.

The extractor repeatedly shrinks a private working copy of the input graph
until no edges remain; the surviving vertices are the witness.  Three kinds
of step can occur, always chosen by fixed deterministic rules:

* ``low_degree_edge_deletion`` (only when d >= 1): some vertex v has
  1 <= deg(v) <= d, so all of v's edges are deleted and v survives.  The
  vertex chosen is the one of minimum degree in [1, d], Left side first,
  then lowest index.
* ``pair_case1``: a maximum-degree left vertex a and maximum-degree right
  vertex b are nonadjacent; both are removed.
* ``pair_case2``: every maximum-degree pair is adjacent; the lexicographically
  smallest maximum-degree pair is removed.  In this case both sides' maximum
  degrees strictly drop.

Pair selection scans maximum-degree left vertices in ascending order and,
for each, maximum-degree right vertices in ascending order; the first
nonadjacent hit wins and yields case 1.

The strengthened bound of the working graph never decreases along the peel,
and the final edgeless working graph's value equals the witness size, which
is why the witness size always reaches ceil(strengthened) and hence the
floor bound.  Every step is recorded (in original vertex labels, with the
degrees that justified it) so the whole run can be replayed and audited by
:func:`check_trace`.

For d >= 1 the witness is a vertex set whose induced subgraph *in the
original graph* is d-degenerate: edges deleted at a low-degree vertex come
back when the witness is induced, but each such vertex gained at most d
edges, which cannot break d-degeneracy.  A min-degree elimination order of
the induced witness is attached as an independently checkable certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bigraph import BipartiteGraph, Side, VertexRef
from .bounds import BoundReport, bound_report, potential, rational_to_json
from .errors import NegativeD, NoEdges, TraceMismatch, UnbalancedGraph
from .oracle import StuckCore, degeneracy_certificate

__all__ = [
    "PAIR_CASE1",
    "PAIR_CASE2",
    "LOW_DEGREE_EDGE_DELETION",
    "PeelStep",
    "PeelTrace",
    "BiholeWitness",
    "DegenerateWitness",
    "select_pair",
    "find_bihole",
    "find_degenerate",
    "check_trace",
]

PAIR_CASE1 = "pair_case1"
PAIR_CASE2 = "pair_case2"
LOW_DEGREE_EDGE_DELETION = "low_degree_edge_deletion"


@dataclass(frozen=True)
class PeelStep:
    """One recorded peeling step, in original vertex labels.

    ``degrees_before`` is (max_deg_left, max_deg_right, deg(a) or deg(v),
    deg(b) or None) measured in the working graph just before the step.
    """

    kind: str
    degrees_before: tuple
    a: int | None = None
    b: int | None = None
    v: VertexRef | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "a": self.a,
            "b": self.b,
            "v": self.v.to_json() if self.v is not None else None,
            "degrees_before": list(self.degrees_before),
        }


@dataclass(frozen=True)
class PeelTrace:
    """Audit log of one extraction run.

    ``bound_values[0]`` is the strengthened bound of the input graph and
    ``bound_values[i]`` the value after step i; the sequence never decreases
    and its last entry equals the witness size.
    """

    steps: tuple[PeelStep, ...]
    initial_report: BoundReport
    bound_values: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {
            "initial_report": self.initial_report.to_json(),
            "steps": [s.to_json() for s in self.steps],
            "bound_values": [rational_to_json(v) for v in self.bound_values],
        }


@dataclass(frozen=True)
class BiholeWitness:
    """Balanced vertex sets with no edges between them, in original labels."""

    left_set: tuple[int, ...]
    right_set: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.left_set)

    def to_json(self) -> dict:
        return {
            "left": list(self.left_set),
            "right": list(self.right_set),
            "size": self.size,
        }


@dataclass(frozen=True)
class DegenerateWitness:
    """Balanced vertex sets inducing a d-degenerate subgraph, with certificate."""

    left_set: tuple[int, ...]
    right_set: tuple[int, ...]
    elimination_order: tuple[VertexRef, ...]

    @property
    def size(self) -> int:
        return len(self.left_set)

    def to_json(self) -> dict:
        return {
            "left": list(self.left_set),
            "right": list(self.right_set),
            "size": self.size,
            "elimination_order": [v.to_json() for v in self.elimination_order],
        }


class _WorkingGraph:
    """Mutable peeling state, kept in the original index space.

    Invariant: adjacency sets only mention alive vertices, so a vertex's
    degree is just the size of its set.
    """

    def __init__(self, g: BipartiteGraph):
        self.n = g.left_count
        self.ladj = [set(nbrs) for nbrs in g.left_adj]
        self.radj = [set(nbrs) for nbrs in g.right_adj]
        self.alive_l = [True] * g.left_count
        self.alive_r = [True] * g.right_count
        self.alive_count = g.left_count  # per side; pair removals keep sides equal
        self.edge_count = g.edge_count

    def max_deg_left(self) -> int:
        return max((len(self.ladj[i]) for i in range(self.n) if self.alive_l[i]), default=0)

    def max_deg_right(self) -> int:
        return max((len(self.radj[j]) for j in range(self.n) if self.alive_r[j]), default=0)

    def _max_candidates(self) -> tuple[list[int], list[int]]:
        da = self.max_deg_left()
        db = self.max_deg_right()
        cand_a = [i for i in range(self.n) if self.alive_l[i] and len(self.ladj[i]) == da]
        cand_b = [j for j in range(self.n) if self.alive_r[j] and len(self.radj[j]) == db]
        return cand_a, cand_b

    def select_pair(self) -> tuple[int, int, int]:
        """(a, b, case): first nonadjacent max-degree pair in ascending scan
        order, else the lexicographically smallest max-degree pair (case 2)."""
        cand_a, cand_b = self._max_candidates()
        for a in cand_a:
            nbrs = self.ladj[a]
            for b in cand_b:
                if b not in nbrs:
                    return a, b, 1
        return cand_a[0], cand_b[0], 2

    def has_nonadjacent_max_pair(self) -> bool:
        cand_a, cand_b = self._max_candidates()
        return any(b not in self.ladj[a] for a in cand_a for b in cand_b)

    def low_degree_vertex(self, d: int) -> VertexRef | None:
        """The vertex of minimum degree in [1, d]; Left side first, then
        ascending index.  None when no such vertex exists."""
        best = None
        for i in range(self.n):
            if self.alive_l[i] and 1 <= len(self.ladj[i]) <= d:
                key = (len(self.ladj[i]), 0, i)
                if best is None or key < best:
                    best = key
        for j in range(self.n):
            if self.alive_r[j] and 1 <= len(self.radj[j]) <= d:
                key = (len(self.radj[j]), 1, j)
                if best is None or key < best:
                    best = key
        if best is None:
            return None
        _, side_rank, idx = best
        return VertexRef(Side.LEFT if side_rank == 0 else Side.RIGHT, idx)

    def remove_pair(self, a: int, b: int) -> None:
        self.edge_count -= len(self.ladj[a])
        for r in self.ladj[a]:
            self.radj[r].discard(a)
        self.ladj[a] = set()
        self.edge_count -= len(self.radj[b])
        for l in self.radj[b]:
            self.ladj[l].discard(b)
        self.radj[b] = set()
        self.alive_l[a] = False
        self.alive_r[b] = False
        self.alive_count -= 1

    def isolate(self, v: VertexRef) -> None:
        if v.side is Side.LEFT:
            self.edge_count -= len(self.ladj[v.index])
            for r in self.ladj[v.index]:
                self.radj[r].discard(v.index)
            self.ladj[v.index] = set()
        else:
            self.edge_count -= len(self.radj[v.index])
            for l in self.radj[v.index]:
                self.ladj[l].discard(v.index)
            self.radj[v.index] = set()

    def degree_of(self, v: VertexRef) -> int:
        return len(self.ladj[v.index] if v.side is Side.LEFT else self.radj[v.index])

    def strengthened(self, d: int) -> Fraction:
        """Strengthened bound of the current working graph (0 when empty)."""
        if self.alive_count == 0:
            return Fraction(0)
        total = potential(self.max_deg_left(), d) + potential(self.max_deg_right(), d)
        for i in range(self.n):
            if self.alive_l[i]:
                total += potential(len(self.ladj[i]), d)
        for j in range(self.n):
            if self.alive_r[j]:
                total += potential(len(self.radj[j]), d)
        return total / 2 - 1

    def survivors(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        lefts = tuple(i for i in range(self.n) if self.alive_l[i])
        rights = tuple(j for j in range(self.n) if self.alive_r[j])
        return lefts, rights


def select_pair(g: BipartiteGraph) -> tuple[int, int, int]:
    """Public pair selection on a balanced graph with at least one edge.

    Returns (left_index, right_index, case) with case 1 when the pair is
    nonadjacent and case 2 when every maximum-degree pair is adjacent.
    """
    if not g.is_balanced:
        raise UnbalancedGraph(f"select_pair needs a balanced graph, got {g.left_count} x {g.right_count}")
    if g.edge_count == 0:
        raise NoEdges("select_pair needs at least one edge")
    return _WorkingGraph(g).select_pair()


def _run_peel(g: BipartiteGraph, d: int):
    work = _WorkingGraph(g)
    steps: list[PeelStep] = []
    values = [work.strengthened(d)]
    while work.edge_count > 0:
        da = work.max_deg_left()
        db = work.max_deg_right()
        v = work.low_degree_vertex(d) if d >= 1 else None
        if v is not None:
            steps.append(
                PeelStep(
                    kind=LOW_DEGREE_EDGE_DELETION,
                    degrees_before=(da, db, work.degree_of(v), None),
                    v=v,
                )
            )
            work.isolate(v)
        else:
            a, b, case = work.select_pair()
            steps.append(
                PeelStep(
                    kind=PAIR_CASE1 if case == 1 else PAIR_CASE2,
                    degrees_before=(da, db, len(work.ladj[a]), len(work.radj[b])),
                    a=a,
                    b=b,
                )
            )
            work.remove_pair(a, b)
        values.append(work.strengthened(d))
    lefts, rights = work.survivors()
    return lefts, rights, tuple(steps), tuple(values)


def find_bihole(g: BipartiteGraph) -> tuple[BiholeWitness, PeelTrace]:
    """Extract a bi-hole of size >= max(floor_bound, ceil(strengthened)).

    Deterministic: equal inputs give equal witnesses and traces.
    """
    if not g.is_balanced:
        raise UnbalancedGraph(f"find_bihole needs a balanced graph, got {g.left_count} x {g.right_count}")
    lefts, rights, steps, values = _run_peel(g, 0)
    trace = PeelTrace(steps=steps, initial_report=bound_report(g, 0), bound_values=values)
    return BiholeWitness(lefts, rights), trace


def find_degenerate(g: BipartiteGraph, d: int) -> tuple[DegenerateWitness, PeelTrace]:
    """Extract a balanced set inducing a d-degenerate subgraph of g.

    At d = 0 this performs exactly the same peel as :func:`find_bihole` (the
    low-degree branch can never fire) and returns the identical vertex sets
    and trace.  The witness carries a min-degree elimination order of the
    induced subgraph as its certificate.
    """
    if not g.is_balanced:
        raise UnbalancedGraph(f"find_degenerate needs a balanced graph, got {g.left_count} x {g.right_count}")
    if d < 0:
        raise NegativeD(f"degeneracy parameter must be >= 0, got {d}")
    lefts, rights, steps, values = _run_peel(g, d)
    order = degeneracy_certificate(g, lefts, rights, d)
    if isinstance(order, StuckCore):
        raise RuntimeError(
            f"extraction produced a witness that is not {d}-degenerate; "
            f"stuck core {order}"
        )
    trace = PeelTrace(steps=steps, initial_report=bound_report(g, d), bound_values=values)
    return DegenerateWitness(lefts, rights, tuple(order)), trace


def check_trace(g: BipartiteGraph, trace: PeelTrace, d: int) -> bool:
    """Replay a trace against the graph it claims to describe.

    Every step must be applicable exactly as recorded: the named vertices
    alive with the recorded degrees, case 1 pairs nonadjacent, case 2 pairs
    adjacent with no nonadjacent maximum-degree pair available, pair steps
    only while edges remain, and edge deletions only at degrees in [1, d].
    Violations raise :class:`TraceMismatch`.  Returns True iff the replayed
    strengthened-bound sequence is nondecreasing (recomputed from scratch;
    the trace's own stored values are not trusted).
    """
    if not g.is_balanced:
        raise UnbalancedGraph(f"check_trace needs a balanced graph, got {g.left_count} x {g.right_count}")
    work = _WorkingGraph(g)
    values = [work.strengthened(d)]
    for pos, step in enumerate(trace.steps):
        da = work.max_deg_left()
        db = work.max_deg_right()
        if step.kind in (PAIR_CASE1, PAIR_CASE2):
            a, b = step.a, step.b
            if a is None or b is None or not (0 <= a < work.n and 0 <= b < work.n):
                raise TraceMismatch(f"step {pos}: pair ({a}, {b}) out of range")
            if not (work.alive_l[a] and work.alive_r[b]):
                raise TraceMismatch(f"step {pos}: pair ({a}, {b}) already removed")
            if work.edge_count == 0:
                raise TraceMismatch(f"step {pos}: pair step on an edgeless working graph")
            deg_a = len(work.ladj[a])
            deg_b = len(work.radj[b])
            if deg_a != da or deg_b != db:
                raise TraceMismatch(
                    f"step {pos}: ({a}, {b}) degrees ({deg_a}, {deg_b}) "
                    f"do not attain the maxima ({da}, {db})"
                )
            adjacent = b in work.ladj[a]
            if step.kind == PAIR_CASE1 and adjacent:
                raise TraceMismatch(f"step {pos}: case 1 pair ({a}, {b}) is adjacent")
            if step.kind == PAIR_CASE2:
                if not adjacent:
                    raise TraceMismatch(f"step {pos}: case 2 pair ({a}, {b}) is nonadjacent")
                if work.has_nonadjacent_max_pair():
                    raise TraceMismatch(
                        f"step {pos}: case 2 recorded but a nonadjacent "
                        f"maximum-degree pair existed"
                    )
            if tuple(step.degrees_before) != (da, db, deg_a, deg_b):
                raise TraceMismatch(
                    f"step {pos}: recorded degrees {step.degrees_before} != "
                    f"replayed {(da, db, deg_a, deg_b)}"
                )
            work.remove_pair(a, b)
        elif step.kind == LOW_DEGREE_EDGE_DELETION:
            v = step.v
            if v is None or not 0 <= v.index < work.n:
                raise TraceMismatch(f"step {pos}: vertex {v} out of range")
            alive = work.alive_l[v.index] if v.side is Side.LEFT else work.alive_r[v.index]
            if not alive:
                raise TraceMismatch(f"step {pos}: vertex {v} already removed")
            deg_v = work.degree_of(v)
            if not 1 <= deg_v <= d:
                raise TraceMismatch(
                    f"step {pos}: degree {deg_v} of {v} not in [1, {d}]"
                )
            if tuple(step.degrees_before) != (da, db, deg_v, None):
                raise TraceMismatch(
                    f"step {pos}: recorded degrees {step.degrees_before} != "
                    f"replayed {(da, db, deg_v, None)}"
                )
            work.isolate(v)
        else:
            raise TraceMismatch(f"step {pos}: unknown step kind {step.kind!r}")
        values.append(work.strengthened(d))
    return all(values[i] <= values[i + 1] for i in range(len(values) - 1))
