"""Evidence heuristics: how promising is a candidate merge?

Every heuristic runs the same trial merge and turns its statistics into a
single comparable score, or a failure when the merge should not be taken at
all.  Three stock heuristics are provided:

* :class:`Edsm` counts the merged pairs whose labels agree; more agreement
  means more evidence.
* :class:`Alergia` runs a Hoeffding compatibility test on the outgoing
  frequency of every symbol (plus the implicit "end here" event) of every
  merged pair, and fails the merge when any test rejects; the score is the
  number of compatible pairs.
* :class:`Mse` scores the (negated) growth in squared target error caused by
  pooling, plus a configurable reward per merged pair; it fails distinctly
  when the trial touched no target data at all, since the score would be
  meaningless.

All scoring is pure and reads only the trial statistics, so the learner can
feed it cheap in-place trials while the public ``evidence_*`` functions run
full merges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .automaton import Automaton, StateId
from .merging import MergeOutcome, merge

FAIL_LABEL_CONFLICT = "label_conflict"
FAIL_DISTRIBUTION = "distribution_reject"
FAIL_NO_TARGETS = "no_targets"


@dataclass(frozen=True)
class Edsm:
    """Label-agreement evidence."""


@dataclass(frozen=True)
class Alergia:
    """Frequency-compatibility evidence with rejection level ``alpha``."""

    alpha: float = 0.05

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")


@dataclass(frozen=True)
class Mse:
    """Squared-error evidence with a ``penalty`` reward per merged pair."""

    penalty: float = 0.0

    def __post_init__(self):
        if self.penalty < 0.0 or not math.isfinite(self.penalty):
            raise ValueError(f"penalty must be finite and >= 0, got {self.penalty}")


HeuristicId = Edsm | Alergia | Mse


@dataclass(frozen=True)
class EvidenceScore:
    """A merge score: a real value, or a failure with a reason."""

    value: float | None
    reason: str = ""

    @property
    def failed(self) -> bool:
        return self.value is None

    @classmethod
    def fail(cls, reason: str) -> "EvidenceScore":
        return cls(None, reason)


def hoeffding_bound(n1: int, n2: int, alpha: float) -> float:
    """Hoeffding deviation bound for comparing two frequencies.

    Two observed frequencies f1/n1 and f2/n2 are deemed compatible when
    their difference stays within sqrt(ln(2/alpha)/2) * (1/sqrt(n1) +
    1/sqrt(n2)).
    """
    if n1 <= 0 or n2 <= 0:
        raise ValueError("counts must be positive")
    return math.sqrt(0.5 * math.log(2.0 / alpha)) * (1.0 / math.sqrt(n1) + 1.0 / math.sqrt(n2))


def hoeffding_compatible(f1: int, n1: int, f2: int, n2: int, alpha: float) -> bool:
    """True iff the two frequencies pass the Hoeffding test at level alpha.

    Vacuously true when either count is zero: no data, no contradiction.
    """
    if n1 == 0 or n2 == 0:
        return True
    return abs(f1 / n1 - f2 / n2) <= hoeffding_bound(n1, n2, alpha)


def _score_edsm(outcome: MergeOutcome) -> EvidenceScore:
    if outcome.label_conflict:
        return EvidenceScore.fail(FAIL_LABEL_CONFLICT)
    return EvidenceScore(float(outcome.label_matches))


def _score_alergia(outcome: MergeOutcome, alpha: float) -> EvidenceScore:
    if outcome.label_conflict:
        return EvidenceScore.fail(FAIL_LABEL_CONFLICT)
    for pair in outcome.distribution_stats:
        n1, n2 = pair.n_left, pair.n_right
        if n1 == 0 or n2 == 0:
            continue
        bound = hoeffding_bound(n1, n2, alpha)
        if abs(pair.end_left / n1 - pair.end_right / n2) > bound:
            return EvidenceScore.fail(FAIL_DISTRIBUTION)
        for sym in pair.out_left.keys() | pair.out_right.keys():
            f1 = pair.out_left.get(sym, 0)
            f2 = pair.out_right.get(sym, 0)
            if abs(f1 / n1 - f2 / n2) > bound:
                return EvidenceScore.fail(FAIL_DISTRIBUTION)
    return EvidenceScore(float(len(outcome.merged_pairs)))


def _score_mse(outcome: MergeOutcome, penalty: float) -> EvidenceScore:
    if outcome.label_conflict:
        return EvidenceScore.fail(FAIL_LABEL_CONFLICT)
    if not outcome.targets_touched:
        return EvidenceScore.fail(FAIL_NO_TARGETS)
    return EvidenceScore(-outcome.sse_delta + penalty * len(outcome.merged_pairs))


def score_outcome(outcome: MergeOutcome, heuristic: HeuristicId) -> EvidenceScore:
    """Score an already-computed merge outcome under ``heuristic``."""
    if isinstance(heuristic, Edsm):
        return _score_edsm(outcome)
    if isinstance(heuristic, Alergia):
        return _score_alergia(outcome, heuristic.alpha)
    if isinstance(heuristic, Mse):
        return _score_mse(outcome, heuristic.penalty)
    raise TypeError(f"unknown heuristic {heuristic!r}")


def needs_distributions(heuristic: HeuristicId) -> bool:
    """Whether scoring this heuristic reads per-pair frequency snapshots."""
    return isinstance(heuristic, Alergia)


def evidence_edsm(a: Automaton, q1: StateId, q2: StateId) -> EvidenceScore:
    """Trial-merge q1 and q2 and count label-agreeing merged pairs."""
    return _score_edsm(merge(a, q1, q2))


def evidence_alergia(a: Automaton, q1: StateId, q2: StateId, alpha: float = 0.05) -> EvidenceScore:
    """Trial-merge q1 and q2 and test outgoing-frequency compatibility."""
    return _score_alergia(merge(a, q1, q2), Alergia(alpha).alpha)


def evidence_mse(a: Automaton, q1: StateId, q2: StateId, penalty: float = 0.0) -> EvidenceScore:
    """Trial-merge q1 and q2 and score the squared-error cost of pooling."""
    return _score_mse(merge(a, q1, q2), Mse(penalty).penalty)
