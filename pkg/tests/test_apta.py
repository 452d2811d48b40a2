"""Prefix tree construction: shape, ids, labels, counts, targets."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flexautomata import (
    InconsistentSampleError,
    build_apta,
    check_integrity,
    compute,
    language_upto,
    parse_abbadingo,
    parse_augmented,
    structural_tree_check,
)
from flexautomata.automaton import Outcome
from gen import TargetDfa, labeled_sample


def words_of(sample, label):
    return sorted(
        {t.word for t in sample.traces if t.label.name == label},
        key=lambda w: (len(w), w),
    )


class TestShape:
    def test_two_word_tree(self):
        a = build_apta(parse_abbadingo("1 2 0 0\n1 4 0 0 0 0\n"))
        # path 0 -0-> 1 -0-> 2 -0-> 3 -0-> 4, accepting at depths 2 and 4
        assert a.state_count == 5
        assert a.start == 0
        assert a.transitions == {(0, 0): 1, (1, 0): 2, (2, 0): 3, (3, 0): 4}
        assert a.accepting == frozenset({2, 4})
        assert a.rejecting == frozenset()

    def test_breadth_first_ids_follow_symbol_order(self):
        a = build_apta(parse_abbadingo("1 2 1 1\n1 2 0 0\n"))
        # level 1 gets ids in ascending symbol order regardless of insert order
        assert a.transitions[(0, 0)] == 1
        assert a.transitions[(0, 1)] == 2
        assert a.transitions[(1, 0)] == 3
        assert a.transitions[(2, 1)] == 4

    def test_empty_sample_is_lone_root(self):
        a = build_apta(parse_abbadingo(""))
        assert a.state_count == 1
        assert a.transitions == {}
        assert a.label(0).name == "UNLABELED"

    def test_empty_word_labels_the_root(self):
        a = build_apta(parse_abbadingo("1 0\n"))
        assert a.accepting == frozenset({0})

    def test_is_always_a_tree(self, ref_apta):
        assert structural_tree_check(ref_apta)
        assert check_integrity(ref_apta) == []

    def test_reference_sample_size(self, ref_apta):
        assert ref_apta.state_count == 71

    def test_state_count_equals_distinct_prefixes(self, ref_sample, ref_apta):
        prefixes = {()}
        for t in ref_sample.traces:
            for i in range(1, len(t.word) + 1):
                prefixes.add(t.word[:i])
        assert ref_apta.state_count == len(prefixes)


class TestLabels:
    def test_language_is_exactly_the_positive_words(self, ref_sample, ref_apta):
        longest = max(len(t.word) for t in ref_sample.traces)
        assert language_upto(ref_apta, longest) == words_of(ref_sample, "POSITIVE")

    def test_negative_words_rejected_with_label(self, ref_sample, ref_apta):
        for w in words_of(ref_sample, "NEGATIVE"):
            assert compute(ref_apta, w).outcome is Outcome.REJECT_BY_LABEL

    def test_contradictory_traces_rejected(self):
        with pytest.raises(InconsistentSampleError):
            build_apta(parse_abbadingo("1 2 0 1\n0 2 0 1\n"))

    def test_conflict_message_names_the_word(self):
        with pytest.raises(InconsistentSampleError) as err:
            build_apta(parse_abbadingo("1 2 0 1\n0 2 0 1\n"))
        assert "(0, 1)" in str(err.value)

    def test_duplicate_same_label_is_fine(self):
        a = build_apta(parse_abbadingo("1 1 0\n1 1 0\n"))
        assert a.accepting == frozenset({1})
        assert a.states[1].total_count == 2

    def test_unlabeled_traces_add_counts_but_no_labels(self):
        a = build_apta(parse_augmented("? 1 0\n"))
        assert a.accepting == frozenset()
        assert a.rejecting == frozenset()
        assert a.states[1].total_count == 1


class TestAggregates:
    def test_root_total_is_trace_count(self, ref_sample, ref_apta):
        assert ref_apta.states[0].total_count == len(ref_sample.traces)

    def test_out_counts_split_the_passing_traces(self, ref_sample, ref_apta):
        root = ref_apta.states[0]
        starts_0 = sum(1 for t in ref_sample.traces if t.word[:1] == (0,))
        starts_1 = sum(1 for t in ref_sample.traces if t.word[:1] == (1,))
        assert root.out_counts.get(0, 0) == starts_0
        assert root.out_counts.get(1, 0) == starts_1

    def test_end_counts_by_polarity(self):
        # tree states see one word each, so polarities land on separate states
        a = build_apta(parse_abbadingo("1 1 0\n1 1 0\n0 1 1\n"))
        pos_state = a.transitions[(0, 0)]
        neg_state = a.transitions[(0, 1)]
        assert a.states[pos_state].end_pos_count == 2
        assert a.states[pos_state].end_neg_count == 0
        assert a.states[pos_state].end_count == 2
        assert a.states[neg_state].end_neg_count == 1
        assert a.states[neg_state].end_count == 1

    def test_end_count_is_total_minus_outgoing(self, ref_apta):
        for q, agg in ref_apta.states.items():
            assert agg.end_count == agg.total_count - sum(agg.out_counts.values())
            assert agg.end_count >= 0

    def test_targets_credited_to_destination_state(self):
        a = build_apta(parse_augmented("? 2 0/1.0 1/5.0\n? 1 0/3.0\n"))
        after_0 = a.transitions[(0, 0)]
        after_01 = a.transitions[(after_0, 1)]
        assert a.states[after_0].target_count == 2
        assert a.states[after_0].target_sum == pytest.approx(4.0)
        assert a.states[after_0].target_sumsq == pytest.approx(10.0)
        assert a.states[after_01].target_sum == pytest.approx(5.0)
        assert a.states[0].target_count == 0

    def test_attributes_summed_per_state(self):
        a = build_apta(parse_augmented("? 1 0:2.0,3.0\n? 1 0:4.0,5.0\n"))
        assert a.states[a.transitions[(0, 0)]].attribute_sums == (6.0, 8.0)
        assert a.attribute_arity == 2

    def test_totals_conserved_level_by_level(self, ref_sample, ref_apta):
        # every trace passing through a state continues or ends there
        by_depth = {0: [0]}
        depth_of = {0: 0}
        order = [0]
        for q in order:
            for _, child in ref_apta.out_edges(q):
                depth_of[child] = depth_of[q] + 1
                by_depth.setdefault(depth_of[child], []).append(child)
                order.append(child)
        for depth, states in by_depth.items():
            passing = sum(
                1 for t in ref_sample.traces if len(t.word) >= depth
            )
            assert sum(ref_apta.states[q].total_count for q in states) == passing


class TestAgainstRandomSamples:
    @given(st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_language_matches_positives(self, seed):
        rng = random.Random(seed)
        dfa = TargetDfa(rng, rng.randint(2, 5), rng.choice((2, 3)))
        sample = labeled_sample(rng, dfa, rng.randint(10, 80), 8)
        a = build_apta(sample)
        assert structural_tree_check(a)
        assert check_integrity(a) == []
        longest = max((len(t.word) for t in sample.traces), default=0)
        assert language_upto(a, longest) == sorted(
            set(sample.positive_words), key=lambda w: (len(w), w)
        )
