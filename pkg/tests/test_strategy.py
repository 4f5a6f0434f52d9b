"""Session state machine, policy invariants, and the decision tree."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from probe_budget import (
    NO_FLOOR_BREAKS,
    InfeasibleError,
    ProbeOutcome,
    ProbeRejectedError,
    SearchResult,
    SessionStateError,
    SessionStatus,
    TreeLeaf,
    TreeNode,
    TreeSizeError,
    apply_outcome,
    build_tree,
    coverage,
    current_result,
    min_trials,
    next_probe,
    probe_schedule,
    start_session,
    tree_stats,
)


class TestSessionLifecycle:
    def test_fresh_session(self):
        state = start_session(100, 2)
        assert state.status is SessionStatus.ACTIVE
        assert state.attempts_left == 14
        assert state.balls_left == 2
        assert state.low == 1
        assert state.unknown_count == 100
        assert current_result(state) is None

    def test_empty_building_resolves_immediately(self):
        state = start_session(0, 3)
        assert state.status is SessionStatus.RESOLVED
        assert current_result(state) == NO_FLOOR_BREAKS

    def test_infeasible(self):
        with pytest.raises(InfeasibleError):
            start_session(4, 0)

    def test_first_probes(self):
        assert next_probe(start_session(100, 2)) == 14
        assert next_probe(start_session(7, 3)) == 4

    def test_single_ball_probes_bottom_up(self):
        state = start_session(20, 1)
        for floor in range(1, 6):
            assert next_probe(state) == floor
            apply_outcome(state, floor, ProbeOutcome.SURVIVED)
        assert state.low == 6

    def test_single_ball_from_offset(self):
        state = start_session(20, 1)
        for floor in range(1, 5):
            apply_outcome(state, floor, ProbeOutcome.SURVIVED)
        assert state.low == 5
        assert next_probe(state) == 5

    def test_break_then_sequential_fallback(self):
        state = start_session(100, 2)
        apply_outcome(state, 14, ProbeOutcome.BROKE)
        assert state.status is SessionStatus.ACTIVE
        assert state.balls_left == 1
        assert state.attempts_left == 13
        assert (state.low, state.unknown_top) == (1, 13)
        assert next_probe(state) == 1

    def test_immediate_resolutions(self):
        state = start_session(1, 1)
        apply_outcome(state, 1, ProbeOutcome.BROKE)
        assert current_result(state) == SearchResult(1)

        state = start_session(1, 1)
        apply_outcome(state, 1, ProbeOutcome.SURVIVED)
        assert current_result(state) == NO_FLOOR_BREAKS

    def test_three_floor_single_ball_walkthrough(self):
        state = start_session(3, 1)
        assert current_result(state) is None
        for floor in (1, 2, 3):
            apply_outcome(state, floor, ProbeOutcome.SURVIVED)
        assert current_result(state) == NO_FLOOR_BREAKS

        state = start_session(3, 1)
        apply_outcome(state, 1, ProbeOutcome.BROKE)
        assert current_result(state) == SearchResult(1)

    def test_history_records_every_probe(self):
        state = start_session(10, 2)
        f1 = next_probe(state)
        apply_outcome(state, f1, "survived")
        f2 = next_probe(state)
        apply_outcome(state, f2, "broke")
        assert state.history == [
            (f1, ProbeOutcome.SURVIVED),
            (f2, ProbeOutcome.BROKE),
        ]


class TestRejections:
    def test_probe_outside_interval_leaves_state_alone(self):
        state = start_session(6, 2)
        before = (state.low, state.attempts_left, state.balls_left, len(state.history))
        with pytest.raises(ProbeRejectedError):
            apply_outcome(state, 7, ProbeOutcome.BROKE)
        with pytest.raises(ProbeRejectedError):
            apply_outcome(state, 0, ProbeOutcome.SURVIVED)
        assert before == (
            state.low,
            state.attempts_left,
            state.balls_left,
            len(state.history),
        )

    def test_interval_shrinks_what_is_probeable(self):
        state = start_session(10, 3)
        apply_outcome(state, 4, ProbeOutcome.BROKE)  # candidates now [1, 3]
        with pytest.raises(ProbeRejectedError):
            apply_outcome(state, 4, ProbeOutcome.SURVIVED)

    def test_operations_require_active_state(self):
        state = start_session(1, 1)
        apply_outcome(state, 1, ProbeOutcome.BROKE)
        with pytest.raises(SessionStateError):
            next_probe(state)
        with pytest.raises(SessionStateError):
            apply_outcome(state, 1, ProbeOutcome.BROKE)

    def test_unknown_outcome_token(self):
        state = start_session(5, 2)
        with pytest.raises(ValueError):
            apply_outcome(state, 3, "exploded")
        assert state.history == []


class TestOffPolicy:
    def test_manual_probe_can_invalidate_the_budget(self):
        # breaking high with one ball left leaves more floors than attempts
        state = start_session(6, 2)
        apply_outcome(state, 5, ProbeOutcome.BROKE)
        assert state.status is SessionStatus.INVALID
        assert state.invalid_reason == "budget insufficient"
        with pytest.raises(SessionStateError) as info:
            current_result(state)
        assert "budget insufficient" in str(info.value)

    def test_manual_probe_inside_policy_margin_stays_active(self):
        state = start_session(6, 2)
        apply_outcome(state, 4, ProbeOutcome.SURVIVED)  # off-policy but safe
        assert state.status is SessionStatus.ACTIVE
        assert (state.low, state.unknown_top) == (5, 6)

    def test_overcautious_survival_also_invalidates(self):
        # surviving below the policy probe overspends the budget too
        state = start_session(6, 2)
        apply_outcome(state, 2, ProbeOutcome.SURVIVED)
        assert state.status is SessionStatus.INVALID

    def test_resolution_soundness_from_manual_play(self):
        state = start_session(9, 9)
        apply_outcome(state, 5, ProbeOutcome.SURVIVED)
        apply_outcome(state, 7, ProbeOutcome.BROKE)
        apply_outcome(state, 6, ProbeOutcome.BROKE)
        result = current_result(state)
        assert result == SearchResult(6)
        survived = [f for f, o in state.history if o is ProbeOutcome.SURVIVED]
        broke = [f for f, o in state.history if o is ProbeOutcome.BROKE]
        assert all(f < result.floor for f in survived)
        assert all(f >= result.floor for f in broke)


def play_on_policy(floors, balls, hidden):
    """Drive the policy against a hidden outcome, asserting safety throughout."""
    state = start_session(floors, balls)
    budget = state.attempts_left
    assert state.unknown_count <= coverage(state.attempts_left, state.balls_left)
    while state.status is SessionStatus.ACTIVE:
        floor = next_probe(state)
        assert state.low <= floor <= state.unknown_top
        if hidden is not None and floor >= hidden:
            assert state.balls_left > 0
            apply_outcome(state, floor, ProbeOutcome.BROKE)
        else:
            apply_outcome(state, floor, ProbeOutcome.SURVIVED)
        assert state.status is not SessionStatus.INVALID
        assert state.attempts_left >= 0
        if state.status is SessionStatus.ACTIVE:
            assert state.unknown_count <= coverage(
                state.attempts_left, state.balls_left
            )
    assert len(state.history) <= budget
    return current_result(state)


class TestPolicyInvariants:
    @given(
        st.integers(1, 160),
        st.integers(1, 6),
        st.integers(0, 160),
    )
    @settings(max_examples=250)
    def test_budget_safety_and_correctness(self, floors, balls, hidden_seed):
        hidden = None if hidden_seed == 0 or hidden_seed > floors else hidden_seed
        result = play_on_policy(floors, balls, hidden)
        assert result == (NO_FLOOR_BREAKS if hidden is None else SearchResult(hidden))

    @given(
        st.integers(1, 40),
        st.integers(1, 4),
        st.integers(0, 40),
        st.data(),
    )
    @settings(max_examples=120)
    def test_off_policy_play_is_never_wrong(self, floors, balls, hidden_seed, data):
        """Arbitrary in-interval probes may overspend the budget (Invalid) but
        a Resolved result must still be the truth."""
        hidden = None if hidden_seed == 0 or hidden_seed > floors else hidden_seed
        state = start_session(floors, balls)
        while state.status is SessionStatus.ACTIVE:
            floor = data.draw(
                st.integers(state.low, state.unknown_top), label="probe"
            )
            if hidden is not None and floor >= hidden:
                apply_outcome(state, floor, ProbeOutcome.BROKE)
            else:
                apply_outcome(state, floor, ProbeOutcome.SURVIVED)
        if state.status is SessionStatus.RESOLVED:
            expected = NO_FLOOR_BREAKS if hidden is None else SearchResult(hidden)
            assert current_result(state) == expected

    def test_all_survived_path_replays_schedule(self):
        for floors, balls in [(100, 2), (7, 3), (127, 7), (37, 4), (5, 2)]:
            schedule = probe_schedule(floors, balls)
            state = start_session(floors, balls)
            visited = []
            while state.status is SessionStatus.ACTIVE:
                floor = next_probe(state)
                visited.append(floor)
                apply_outcome(state, floor, ProbeOutcome.SURVIVED)
            assert tuple(visited) == schedule.probes
            assert current_result(state) == NO_FLOOR_BREAKS


class TestDecisionTree:
    def test_single_floor_tree(self):
        tree = build_tree(1, 1)
        assert isinstance(tree, TreeNode)
        assert tree.probe == 1
        assert tree.on_broke == TreeLeaf(SearchResult(1))
        assert tree.on_survived == TreeLeaf(NO_FLOOR_BREAKS)

    def test_empty_building_tree(self):
        tree = build_tree(0, 2)
        assert tree == TreeLeaf(NO_FLOOR_BREAKS)
        stats = tree_stats(tree)
        assert (stats.leaves, stats.internal_nodes, stats.depth) == (1, 0, 0)

    @pytest.mark.parametrize(
        "floors,balls,leaves,internal,depth,max_breaks",
        [
            (7, 3, 8, 7, 3, 3),
            (1, 1, 2, 1, 1, 1),
            (6, 2, 7, 6, 3, 2),
        ],
    )
    def test_known_stats(self, floors, balls, leaves, internal, depth, max_breaks):
        stats = tree_stats(build_tree(floors, balls))
        assert stats.leaves == leaves
        assert stats.internal_nodes == internal
        assert stats.depth == depth
        assert stats.max_breaks_on_path == max_breaks

    def test_root_matches_schedule_head(self):
        assert build_tree(6, 2).probe == 3
        assert build_tree(100, 2).probe == 14

    def test_shape_across_instances(self):
        for balls in range(1, 9):
            for floors in range(0, 65):
                stats = tree_stats(build_tree(floors, balls))
                assert stats.leaves == floors + 1
                assert stats.internal_nodes == floors
                assert stats.depth == min_trials(floors, balls)
                assert stats.max_breaks_on_path <= balls

    def test_leaves_enumerate_every_outcome_once(self):
        tree = build_tree(23, 3)
        seen = []
        stack = [(tree, 0)]
        while stack:
            node, breaks = stack.pop()
            if isinstance(node, TreeLeaf):
                seen.append(node.result.floor)
                assert breaks <= 3
            else:
                stack.append((node.on_broke, breaks + 1))
                stack.append((node.on_survived, breaks))
        assert sorted(seen, key=lambda v: (v is None, v)) == [*range(1, 24), None]

    def test_break_edges_record_the_result_floor(self):
        # walking only broke edges from the root pins the lowest floors
        tree = build_tree(50, 4)
        node = tree
        while isinstance(node, TreeNode):
            probe = node.probe
            node = node.on_broke
            if isinstance(node, TreeLeaf):
                assert node.result.floor == probe

    def test_guard(self):
        with pytest.raises(TreeSizeError):
            build_tree(4096, 2)  # 4097 leaves > default guard
        assert tree_stats(build_tree(4095, 2)).leaves == 4096
        with pytest.raises(TreeSizeError):
            build_tree(10, 2, max_leaves=10)
        assert build_tree(10, 2, max_leaves=11) is not None

    def test_deep_single_ball_chain(self):
        # depth == floors; must not hit the interpreter recursion limit
        stats = tree_stats(build_tree(4000, 1))
        assert stats.depth == 4000
        assert stats.max_breaks_on_path == 1
