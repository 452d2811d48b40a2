"""State merging with determinization, the one operation learning relies on.

Merging two states replaces them with a fresh state that takes over both
label sets, both aggregates, and both transition sets.  When the two states
leave on the same symbol toward different targets, those targets are merged
too, and so on until the machine is deterministic again; the work queue is
seeded in ascending symbol order and drained breadth-first, so the sequence
of merged pairs is reproducible.  A merge fails iff any pair along the way
puts an accepting and a rejecting state together.  The input automaton is
never modified.

The module-level :func:`merge` is the pure public entry point.  The
:class:`MergeArena` underneath supports cheap trial merges with rollback and
is shared with the learner, which needs to score many candidate merges
against the same machine without copying it each time.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .automaton import Automaton, StateAggregate, StateId, Symbol


def merge_aggregates(x: StateAggregate, y: StateAggregate) -> StateAggregate:
    """Field-wise sum of two aggregates.

    The all-zero aggregate is the identity.  Mixing two non-empty attribute
    vectors of different lengths is an error.
    """
    if x.attribute_sums and y.attribute_sums and len(x.attribute_sums) != len(y.attribute_sums):
        raise ValueError(
            f"attribute arity mismatch: {len(x.attribute_sums)} vs {len(y.attribute_sums)}"
        )
    if not x.attribute_sums:
        attrs = y.attribute_sums
    elif not y.attribute_sums:
        attrs = x.attribute_sums
    else:
        attrs = tuple(u + v for u, v in zip(x.attribute_sums, y.attribute_sums))
    out = dict(x.out_counts)
    for sym, c in y.out_counts.items():
        out[sym] = out.get(sym, 0) + c
    return StateAggregate(
        total_count=x.total_count + y.total_count,
        end_pos_count=x.end_pos_count + y.end_pos_count,
        end_neg_count=x.end_neg_count + y.end_neg_count,
        out_counts=out,
        target_count=x.target_count + y.target_count,
        target_sum=x.target_sum + y.target_sum,
        target_sumsq=x.target_sumsq + y.target_sumsq,
        attribute_sums=attrs,
    )


@dataclass(frozen=True)
class PairDistribution:
    """Outgoing-frequency snapshot of one merged pair, taken before pooling.

    ``n_*`` are total visit counts, ``out_*`` per-symbol continuation counts
    and ``end_*`` the implied stop counts.  Compatibility heuristics read
    these instead of re-walking the machine.
    """

    left: StateId
    right: StateId
    n_left: int
    n_right: int
    out_left: dict[Symbol, int]
    out_right: dict[Symbol, int]
    end_left: int
    end_right: int


@dataclass(frozen=True)
class MergeOutcome:
    """What one merge did.

    On failure (``label_conflict`` True) the remaining fields carry no
    information.  On success ``result`` is the new automaton (None only for
    internal trial runs that skip extraction), ``merged_pairs`` lists every
    pair folded together in determinization order, ``label_matches`` counts
    the pairs whose states agreed on a label (both accepting or both
    rejecting), and ``sse_delta`` is the total pooled-minus-separate squared
    target error over the merged pairs, never negative.
    """

    result: Automaton | None
    merged_pairs: tuple[tuple[StateId, StateId], ...] = ()
    label_matches: int = 0
    label_conflict: bool = False
    sse_delta: float = 0.0
    distribution_stats: tuple[PairDistribution, ...] = ()
    targets_touched: bool = False

    @property
    def failed(self) -> bool:
        return self.label_conflict


@dataclass
class _TrialFrame:
    """Undo information for one trial merge inside an arena."""

    created: list[tuple[StateId, StateId, StateId]] = field(default_factory=list)
    next_id_before: int = 0


class MergeArena:
    """Mutable union-find view of an automaton supporting merge and rollback.

    Every class of merged original states is named by a public id: either the
    original state id, or the fresh id minted when the class was formed.
    Merging never edits the maps of existing classes, it only adds entries
    for the fresh id, so rolling back is deleting those entries again.
    Transition targets may go stale as classes merge; ``find`` resolves them
    on read.
    """

    def __init__(self, a: Automaton, collect_distributions: bool = True):
        self.base = a
        self.collect = collect_distributions
        self.parent: dict[StateId, StateId] = {}
        self.out: dict[StateId, dict[Symbol, StateId]] = {q: {} for q in a.states}
        for (src, sym), dst in a.transitions.items():
            self.out[src][sym] = dst
        self.acc: set[StateId] = set(a.accepting)
        self.rej: set[StateId] = set(a.rejecting)
        self.agg: dict[StateId, StateAggregate] = dict(a.states)
        self.live: set[StateId] = set(a.states)
        self.next_id = a.next_id

    def find(self, s: StateId) -> StateId:
        parent = self.parent
        while s in parent:
            s = parent[s]
        return s

    def run_merge(self, q1: StateId, q2: StateId) -> tuple[MergeOutcome, _TrialFrame]:
        """Merge the classes of q1 and q2, cascading until deterministic.

        Returns the outcome (without extraction) plus the undo frame.  On
        label conflict the partial work is already rolled back.
        """
        frame = _TrialFrame(next_id_before=self.next_id)
        pairs: list[tuple[StateId, StateId]] = []
        label_matches = 0
        sse_delta = 0.0
        targets = False
        dist: list[PairDistribution] = []
        queue: deque[tuple[StateId, StateId]] = deque([(q1, q2)])
        while queue:
            x, y = queue.popleft()
            x = self.find(x)
            y = self.find(y)
            if x == y:
                continue
            x_acc, x_rej = x in self.acc, x in self.rej
            y_acc, y_rej = y in self.acc, y in self.rej
            if (x_acc and y_rej) or (x_rej and y_acc):
                self.rollback(frame)
                return MergeOutcome(result=None, label_conflict=True), frame
            gx, gy = self.agg[x], self.agg[y]
            gz = merge_aggregates(gx, gy)
            pairs.append((x, y))
            if (x_acc and y_acc) or (x_rej and y_rej):
                label_matches += 1
            # Pooling a partition cannot reduce squared error; clamp roundoff.
            sse_delta += max(gz.sse() - gx.sse() - gy.sse(), 0.0)
            if gz.target_count:
                targets = True
            if self.collect:
                dist.append(PairDistribution(
                    left=x, right=y,
                    n_left=gx.total_count, n_right=gy.total_count,
                    out_left=dict(gx.out_counts), out_right=dict(gy.out_counts),
                    end_left=gx.end_count, end_right=gy.end_count,
                ))
            z = self.next_id
            self.next_id += 1
            ox, oy = self.out[x], self.out[y]
            oz = dict(ox)
            for sym in sorted(oy):
                if sym in oz:
                    queue.append((oz[sym], oy[sym]))
                else:
                    oz[sym] = oy[sym]
            self.out[z] = oz
            self.agg[z] = gz
            if x_acc or y_acc:
                self.acc.add(z)
            if x_rej or y_rej:
                self.rej.add(z)
            self.parent[x] = z
            self.parent[y] = z
            self.live.discard(x)
            self.live.discard(y)
            self.live.add(z)
            frame.created.append((z, x, y))
        outcome = MergeOutcome(
            result=None,
            merged_pairs=tuple(pairs),
            label_matches=label_matches,
            sse_delta=sse_delta,
            distribution_stats=tuple(dist),
            targets_touched=targets,
        )
        return outcome, frame

    def rollback(self, frame: _TrialFrame) -> None:
        for z, x, y in reversed(frame.created):
            del self.parent[x]
            del self.parent[y]
            del self.out[z]
            del self.agg[z]
            self.acc.discard(z)
            self.rej.discard(z)
            self.live.discard(z)
            self.live.add(x)
            self.live.add(y)
        self.next_id = frame.next_id_before

    def resolution(self, frame: _TrialFrame) -> dict[StateId, StateId]:
        """Map every id retired by this frame to its surviving class id."""
        mapping: dict[StateId, StateId] = {}
        for z, x, y in frame.created:
            mapping[x] = z
            mapping[y] = z
        resolved: dict[StateId, StateId] = {}
        for old in mapping:
            cur = old
            while cur in mapping:
                cur = mapping[cur]
            resolved[old] = cur
        return resolved

    def extract(self) -> Automaton:
        states = {c: self.agg[c] for c in self.live}
        transitions = {}
        for c in self.live:
            for sym, t in self.out[c].items():
                transitions[(c, sym)] = self.find(t)
        return Automaton(
            alphabet=self.base.alphabet,
            states=states,
            accepting=frozenset(self.acc & self.live),
            rejecting=frozenset(self.rej & self.live),
            transitions=transitions,
            start=self.find(self.base.start),
            next_id=self.next_id,
            attribute_arity=self.base.attribute_arity,
        )


def merge(a: Automaton, q1: StateId, q2: StateId) -> MergeOutcome:
    """Merge states ``q1`` and ``q2`` of ``a`` into a fresh state.

    Pure: ``a`` is left untouched and the result, when the merge succeeds, is
    a new automaton whose state count dropped by exactly the number of merged
    pairs.  Fails (rather than raising) iff determinization runs into a pair
    with conflicting labels.  Unknown or identical state ids are caller
    errors and raise ValueError.
    """
    if q1 not in a.states or q2 not in a.states:
        raise ValueError(f"unknown state id in merge request ({q1}, {q2})")
    if q1 == q2:
        raise ValueError(f"cannot merge state {q1} with itself")
    arena = MergeArena(a)
    outcome, _frame = arena.run_merge(q1, q2)
    if outcome.label_conflict:
        return outcome
    return MergeOutcome(
        result=arena.extract(),
        merged_pairs=outcome.merged_pairs,
        label_matches=outcome.label_matches,
        sse_delta=outcome.sse_delta,
        distribution_stats=outcome.distribution_stats,
        targets_touched=outcome.targets_touched,
    )
