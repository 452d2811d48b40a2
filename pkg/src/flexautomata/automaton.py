"""Core automaton values and the operations every other layer builds on.

An automaton here is a deterministic finite-state machine whose states carry
three-way labels (accepting / rejecting / unlabeled) plus per-state occurrence
aggregates collected from the training sample.  Values are treated as
immutable once constructed: the merge engine and the learner always produce
fresh automata instead of editing one in place, so concurrent readers never
need locks.

Exposed API: :class:`StateLabel`, :class:`StateAggregate`, :class:`Automaton`,
:class:`ComputationResult`, :func:`compute`, :func:`language_upto`,
:func:`check_integrity`.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Mapping

Symbol = int
StateId = int
Word = tuple[Symbol, ...]


class StateLabel(enum.Enum):
    ACCEPTING = "accepting"
    REJECTING = "rejecting"
    UNLABELED = "unlabeled"


class Outcome(enum.Enum):
    """How a computation over a word ended."""

    ACCEPT = "accept"
    REJECT_BY_LABEL = "reject_by_label"
    REJECT_NO_TRANSITION = "reject_no_transition"


@dataclass(frozen=True)
class StateAggregate:
    """Occurrence statistics accumulated at one state.

    ``total_count`` counts every trace whose computation visits the state.
    ``end_pos_count`` / ``end_neg_count`` count labeled traces that end there.
    ``out_counts`` counts, per symbol, the traces that leave the state along
    that symbol; a trace that visits but does not leave ended here, so the
    number of trace ends at the state is ``total_count - sum(out_counts)``.
    Regression targets and symbol attributes are credited to the state the
    annotated symbol leads to.
    """

    total_count: int = 0
    end_pos_count: int = 0
    end_neg_count: int = 0
    out_counts: Mapping[Symbol, int] = field(default_factory=dict)
    target_count: int = 0
    target_sum: float = 0.0
    target_sumsq: float = 0.0
    attribute_sums: tuple[float, ...] = ()

    @property
    def end_count(self) -> int:
        return self.total_count - sum(self.out_counts.values())

    @property
    def mean_target(self) -> float | None:
        if self.target_count == 0:
            return None
        return self.target_sum / self.target_count

    def sse(self) -> float:
        """Within-state sum of squared target residuals (0 when no targets)."""
        if self.target_count == 0:
            return 0.0
        return self.target_sumsq - self.target_sum * self.target_sum / self.target_count


@dataclass(frozen=True)
class Automaton:
    """A deterministic labeled automaton with per-state aggregates.

    ``transitions`` is keyed by ``(state, symbol)`` so nondeterminism is
    unrepresentable.  ``accepting`` and ``rejecting`` are kept as separate
    sets; they must be disjoint, which :func:`check_integrity` verifies.
    ``next_id`` is the lowest id never handed out, so merged states can take
    fresh ids without colliding with anything that ever existed in this run.
    """

    alphabet: tuple[str, ...]
    states: Mapping[StateId, StateAggregate]
    accepting: frozenset[StateId]
    rejecting: frozenset[StateId]
    transitions: Mapping[tuple[StateId, Symbol], StateId]
    start: StateId
    next_id: int
    attribute_arity: int = 0

    def label(self, q: StateId) -> StateLabel:
        if q in self.accepting:
            return StateLabel.ACCEPTING
        if q in self.rejecting:
            return StateLabel.REJECTING
        return StateLabel.UNLABELED

    def step(self, q: StateId, sym: Symbol) -> StateId | None:
        return self.transitions.get((q, sym))

    def out_edges(self, q: StateId) -> Iterator[tuple[Symbol, StateId]]:
        """Outgoing edges of ``q`` in ascending symbol order."""
        for sym in range(len(self.alphabet)):
            dst = self.transitions.get((q, sym))
            if dst is not None:
                yield sym, dst

    def children(self, q: StateId) -> list[StateId]:
        return [dst for _, dst in self.out_edges(q)]

    @property
    def state_count(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class ComputationResult:
    """Outcome of running one word through an automaton.

    ``path`` holds the visited states, one more entry than consumed symbols.
    ``missing_at`` is the 0-based position of the symbol that had no
    transition (only for REJECT_NO_TRANSITION).  ``end_label`` is the label of
    the final state when the whole word was consumed, distinguishing a
    rejecting end state from a merely unlabeled one.
    """

    path: tuple[StateId, ...]
    outcome: Outcome
    missing_at: int | None = None
    end_label: StateLabel | None = None

    @property
    def accepted(self) -> bool:
        return self.outcome is Outcome.ACCEPT


def compute(a: Automaton, word: Word) -> ComputationResult:
    """Run ``word`` through ``a`` from the start state.

    Accepts iff the whole word is consumed and the end state is accepting.
    A symbol outside the alphabet range raises ValueError; a merely missing
    transition is a normal rejection, not an error.
    """
    size = len(a.alphabet)
    path = [a.start]
    cur = a.start
    for i, sym in enumerate(word):
        if not 0 <= sym < size:
            raise ValueError(
                f"symbol {sym} at position {i} outside alphabet of size {size}"
            )
        nxt = a.transitions.get((cur, sym))
        if nxt is None:
            return ComputationResult(tuple(path), Outcome.REJECT_NO_TRANSITION, missing_at=i)
        cur = nxt
        path.append(cur)
    end = a.label(cur)
    outcome = Outcome.ACCEPT if end is StateLabel.ACCEPTING else Outcome.REJECT_BY_LABEL
    return ComputationResult(tuple(path), outcome, end_label=end)


def language_upto(a: Automaton, max_len: int) -> list[Word]:
    """All accepted words of length <= max_len, shortest first, ties lexicographic.

    Walks the transition structure breadth-first, so only words with a live
    path are ever visited.  Intended as a small-bound oracle; the number of
    paths grows quickly with cyclic automata and large bounds.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    accepted: list[Word] = []
    queue: deque[tuple[StateId, Word]] = deque([(a.start, ())])
    while queue:
        q, word = queue.popleft()
        if q in a.accepting:
            accepted.append(word)
        if len(word) < max_len:
            for sym, dst in a.out_edges(q):
                queue.append((dst, word + (sym,)))
    return accepted


def check_integrity(a: Automaton) -> list[str]:
    """Structural and aggregate sanity violations, as plain strings.

    Returns an empty list for a healthy automaton.  Violations are data, not
    exceptions, so loaders and tests can report all of them at once.
    """
    out: list[str] = []
    if a.start not in a.states:
        out.append(f"start state {a.start} not in state set")
    both = set(a.accepting) & set(a.rejecting)
    for q in sorted(both):
        out.append(f"state {q} is both accepting and rejecting")
    for q in sorted(set(a.accepting) - set(a.states)):
        out.append(f"accepting state {q} not in state set")
    for q in sorted(set(a.rejecting) - set(a.states)):
        out.append(f"rejecting state {q} not in state set")
    size = len(a.alphabet)
    for (src, sym), dst in sorted(a.transitions.items()):
        if src not in a.states:
            out.append(f"transition source {src} not in state set")
        if dst not in a.states:
            out.append(f"transition target {dst} not in state set")
        if not 0 <= sym < size:
            out.append(f"transition ({src},{sym}) uses symbol outside alphabet")
    for q in sorted(a.states):
        agg = a.states[q]
        if q >= a.next_id:
            out.append(f"state {q} not below next_id {a.next_id}")
        if min(agg.total_count, agg.end_pos_count, agg.end_neg_count, agg.target_count) < 0:
            out.append(f"state {q} has a negative count")
        if sum(agg.out_counts.values()) > agg.total_count:
            out.append(f"state {q} out_counts exceed total_count")
        if agg.target_count > agg.total_count:
            out.append(f"state {q} target_count exceeds total_count")
        for sym, c in sorted(agg.out_counts.items()):
            if c < 0:
                out.append(f"state {q} negative out count on symbol {sym}")
            if c > 0 and (q, sym) not in a.transitions:
                out.append(f"state {q} counts symbol {sym} but has no such transition")
        for v in (agg.target_sum, agg.target_sumsq, *agg.attribute_sums):
            if not math.isfinite(v):
                out.append(f"state {q} has a non-finite aggregate value")
                break
        if len(agg.attribute_sums) not in (0, a.attribute_arity):
            out.append(f"state {q} attribute arity {len(agg.attribute_sums)} != {a.attribute_arity}")
    return out
