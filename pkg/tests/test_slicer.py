import itertools
import math
import random

import pytest

from permflow import (
    ALGORITHMS,
    BRUTE_LIMIT,
    Constraint,
    ConstraintSet,
    DP_LIMIT,
    INSTRUMENT_LIMIT,
    Permutation,
    SizeLimitError,
    comparison_count,
    feasible_count,
    feasible_count_brute,
    instrument,
    is_contradictory,
    isolates_sorted,
    log2_factorial,
    parse_constraints,
    reduction_report,
)


class TestConstraintSet:
    def test_empty(self):
        s = ConstraintSet.empty(4)
        assert s.n == 4
        assert s.constraints == ()

    def test_with_constraint_appends(self):
        s = ConstraintSet.empty(3).with_constraint(Constraint(1, 2))
        assert s.constraints == (Constraint(1, 2),)

    def test_with_constraint_skips_duplicates(self):
        s = ConstraintSet.empty(3).with_constraint(Constraint(1, 2))
        assert s.with_constraint(Constraint(1, 2)) is s

    def test_reversed_pair_is_distinct(self):
        s = ConstraintSet.empty(3).with_constraint(Constraint(1, 2))
        s2 = s.with_constraint(Constraint(2, 1))
        assert len(s2.constraints) == 2

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            ConstraintSet(3, (Constraint(1, 4),))
        with pytest.raises(ValueError):
            ConstraintSet(3, (Constraint(0, 2),))

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            ConstraintSet(3, (Constraint(2, 2),))

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            ConstraintSet(3, (Constraint(1, 2), Constraint(1, 2)))

    def test_rejects_nonpositive_n(self):
        with pytest.raises(ValueError):
            ConstraintSet(0, ())


class TestParseConstraints:
    def test_basic(self):
        s = parse_constraints("1<2,2<3", 3)
        assert s.constraints == (Constraint(1, 2), Constraint(2, 3))

    def test_whitespace_tolerated(self):
        s = parse_constraints(" 1<2 ,  3<1 ", 3)
        assert s.constraints == (Constraint(1, 2), Constraint(3, 1))

    def test_empty_string(self):
        assert parse_constraints("", 4).constraints == ()
        assert parse_constraints("   ", 4).constraints == ()

    def test_repeats_collapse(self):
        s = parse_constraints("1<2,1<2", 3)
        assert s.constraints == (Constraint(1, 2),)

    def test_bad_formats(self):
        for text in ["1", "1<", "<2", "1<2<3", "a<b", "1>2", "1<2;2<3"]:
            with pytest.raises(ValueError):
                parse_constraints(text, 4)

    def test_out_of_range_label(self):
        with pytest.raises(ValueError):
            parse_constraints("1<5", 4)


class TestFeasibleCount:
    def test_unconstrained_is_factorial(self):
        for n in range(1, 8):
            assert feasible_count(ConstraintSet.empty(n)) == math.factorial(n)

    def test_single_constraint_halves(self):
        assert feasible_count(parse_constraints("1<2", 3)) == 3

    def test_full_chain_pins_one(self):
        for n in range(2, 10):
            text = ",".join(f"{k}<{k + 1}" for k in range(1, n))
            assert feasible_count(parse_constraints(text, n)) == 1

    def test_contradiction_counts_zero(self):
        assert feasible_count(parse_constraints("1<2,2<1", 3)) == 0
        assert feasible_count(parse_constraints("1<2,2<3,3<1", 4)) == 0

    def test_star_pattern(self):
        # label 1 below the other three: the 3! orders of {2,3,4} remain
        assert feasible_count(parse_constraints("1<2,1<3,1<4", 4)) == 6

    def test_independent_pairs_multiply_down(self):
        # each of two disjoint pairs halves 4! independently
        assert feasible_count(parse_constraints("1<2,3<4", 4)) == 6

    def test_matches_brute_force_exhaustively_small(self):
        pairs = [(i, j) for i in range(1, 5) for j in range(1, 5) if i != j]
        for picks in itertools.combinations(pairs, 2):
            s = ConstraintSet(4, tuple(Constraint(a, b) for a, b in picks))
            assert feasible_count(s) == feasible_count_brute(s)

    def test_matches_brute_force_random(self):
        rng = random.Random(97)
        for _ in range(200):
            n = rng.randint(2, 9)
            pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
            k = rng.randint(0, min(len(pairs), 8))
            s = ConstraintSet(n, tuple(Constraint(a, b) for a, b in rng.sample(pairs, k)))
            assert feasible_count(s) == feasible_count_brute(s)

    def test_size_limits(self):
        with pytest.raises(SizeLimitError):
            feasible_count(ConstraintSet.empty(DP_LIMIT + 1))
        with pytest.raises(SizeLimitError):
            feasible_count_brute(ConstraintSet.empty(BRUTE_LIMIT + 1))

    def test_large_n_within_limit(self):
        assert feasible_count(ConstraintSet.empty(12)) == math.factorial(12)


class TestContradiction:
    def test_acyclic_is_fine(self):
        assert not is_contradictory(parse_constraints("1<2,2<3,1<3", 3))

    def test_two_cycle(self):
        assert is_contradictory(parse_constraints("1<2,2<1", 2))

    def test_longer_cycle(self):
        assert is_contradictory(parse_constraints("1<2,2<3,3<4,4<1", 4))

    def test_agrees_with_zero_count(self):
        rng = random.Random(13)
        for _ in range(200):
            n = rng.randint(2, 7)
            pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
            k = rng.randint(0, min(len(pairs), 7))
            s = ConstraintSet(n, tuple(Constraint(a, b) for a, b in rng.sample(pairs, k)))
            assert is_contradictory(s) == (feasible_count(s) == 0)


class TestIsolatesSorted:
    def test_chain_isolates(self):
        assert isolates_sorted(parse_constraints("1<2,2<3", 3))

    def test_underdetermined(self):
        assert not isolates_sorted(parse_constraints("1<2", 3))

    def test_unique_but_not_sorted(self):
        # pins the single assignment with label 2 lowest, not the sorted one
        s = parse_constraints("2<1,1<3", 3)
        assert feasible_count(s) == 1
        assert not isolates_sorted(s)

    def test_contradictory_is_not_isolating(self):
        assert not isolates_sorted(parse_constraints("1<2,2<1", 2))

    def test_redundant_edges_still_isolate(self):
        assert isolates_sorted(parse_constraints("1<2,2<3,1<3", 3))


class TestInstrument:
    def test_merge_on_three_keys(self):
        run = instrument("merge", (3, 1, 2))
        rows = [
            (s.constraint, s.feasible_before, s.feasible_after) for s in run.trace
        ]
        assert rows == [
            (Constraint(1, 2), 6, 3),
            (Constraint(1, 3), 3, 2),
            (Constraint(2, 3), 2, 1),
        ]
        assert run.output == (1, 2, 3)
        assert run.final_feasible == 1

    def test_every_algorithm_sorts_every_small_input(self):
        for algorithm in ALGORITHMS:
            for ranks in itertools.permutations(range(1, 5)):
                run = instrument(algorithm, ranks)
                assert run.output == (1, 2, 3, 4)
                assert run.final_feasible == 1
                assert isolates_sorted(run.constraints)

    def test_counts_never_increase(self):
        for algorithm in ALGORITHMS:
            run = instrument(algorithm, (4, 2, 5, 1, 3))
            prev = math.factorial(5)
            for step in run.trace:
                assert step.feasible_before == prev
                assert step.feasible_after <= step.feasible_before
                prev = step.feasible_after

    def test_bits_telescope_to_total_information(self):
        for algorithm in ALGORITHMS:
            run = instrument(algorithm, (2, 4, 1, 3))
            assert math.isclose(run.total_bits, log2_factorial(4), abs_tol=1e-9)

    def test_duplicate_comparisons_carry_zero_bits(self):
        # a pair asked about twice must contract nothing the second time;
        # note the converse fails: a fresh constraint already implied by
        # transitivity also carries zero bits
        found = False
        for algorithm in ALGORITHMS:
            for ranks in itertools.permutations(range(1, 6)):
                run = instrument(algorithm, ranks)
                seen = set()
                for step in run.trace:
                    if step.constraint in seen:
                        found = True
                        assert step.bits == 0.0
                        assert step.feasible_before == step.feasible_after
                    seen.add(step.constraint)
                assert len(seen) == len(run.constraints.constraints)
        assert found, "no algorithm ever repeated a comparison on n = 5"

    def test_bits_are_nonnegative(self):
        for algorithm in ALGORITHMS:
            run = instrument(algorithm, (3, 5, 2, 6, 1, 4))
            assert all(s.bits >= 0.0 for s in run.trace)

    def test_some_orientation_is_at_most_one_bit(self):
        # a single comparison may beat one bit (the observed branch can be
        # the rarer one), but the two possible outcomes cannot both do so:
        # re-count each step under the flipped orientation and check the min
        for algorithm in ALGORITHMS:
            for ranks in [(4, 1, 5, 2, 3), (2, 3, 1, 5, 4), (5, 4, 3, 2, 1)]:
                run = instrument(algorithm, ranks)
                active = ConstraintSet.empty(len(ranks))
                for step in run.trace:
                    c = step.constraint
                    if c in active.constraints:
                        continue  # repeat: carries zero bits by construction
                    flipped_count = feasible_count(
                        active.with_constraint(Constraint(c.hi, c.lo))
                    )
                    flipped_bits = (
                        math.inf
                        if flipped_count == 0
                        else math.log2(step.feasible_before / flipped_count)
                    )
                    assert min(step.bits, flipped_bits) <= 1.0 + 1e-12
                    active = active.with_constraint(c)

    def test_worst_input_meets_information_bound(self):
        # no per-input bound exists (a lucky input finishes early), but the
        # costliest input of a correct sort cannot beat ceil(log2 n!)
        bound = math.ceil(log2_factorial(4) - 1e-12)
        for algorithm in ALGORITHMS:
            worst = max(
                instrument(algorithm, ranks).comparisons
                for ranks in itertools.permutations(range(1, 5))
            )
            assert worst >= bound

    def test_sorted_input_costs(self):
        # on already sorted input quicksort degrades to the quadratic worst
        # case while merge stays linearithmic
        assert instrument("quick", (1, 2, 3, 4, 5, 6)).comparisons == 15
        assert instrument("merge", (1, 2, 3, 4, 5, 6)).comparisons <= 10

    def test_accepts_permutation_object(self):
        run = instrument("heap", Permutation.reverse(5))
        assert run.output == (1, 2, 3, 4, 5)
        assert run.input == Permutation.reverse(5)

    def test_unknown_algorithm(self):
        with pytest.raises(ValueError):
            instrument("bubble", (2, 1))

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            instrument("merge", tuple(range(1, INSTRUMENT_LIMIT + 2)))


class TestComparisonCount:
    def test_agrees_with_instrument(self):
        for algorithm in ALGORITHMS:
            for ranks in itertools.permutations(range(1, 5)):
                assert comparison_count(algorithm, ranks) == instrument(algorithm, ranks).comparisons

    def test_scales_past_instrument_limit(self):
        n = 64
        ranks = list(range(n, 0, -1))
        hits = comparison_count("merge", ranks)
        # worst case of top-down merge: n ceil(lg n) - 2**ceil(lg n) + 1
        assert hits <= n * 6 - 2**6 + 1

    def test_quick_worst_case_quadratic(self):
        assert comparison_count("quick", range(1, 8)) == 21
        assert comparison_count("quick", range(7, 0, -1)) == 21

    def test_unknown_algorithm(self):
        with pytest.raises(ValueError):
            comparison_count("bogo", (2, 1))


class TestMergeRecurrence:
    def test_worst_case_matches_recurrence(self):
        # T(n) = T(floor(n/2)) + T(ceil(n/2)) + n - 1 bounds the top-down
        # variant; the bound is attained by some input for n <= 7
        def t(n):
            return 0 if n <= 1 else t(n // 2) + t(n - n // 2) + n - 1

        for n in range(2, 8):
            counts = {
                comparison_count("merge", ranks)
                for ranks in itertools.permutations(range(1, n + 1))
            }
            assert max(counts) == t(n)


class TestReductionReport:
    def test_fields_line_up(self):
        run = instrument("insertion", (4, 3, 2, 1))
        report = reduction_report(run)
        assert report.algorithm == "insertion"
        assert report.comparisons == run.comparisons
        assert math.isclose(report.total_bits, run.total_bits, abs_tol=1e-12)
        assert report.initial_feasible == 24
        assert report.final_feasible == 1
        assert 0.0 <= report.halving_fraction <= 1.0
        assert report.max_bits == max(s.bits for s in run.trace)

    def test_halving_fraction_counts_big_steps(self):
        run = instrument("merge", (3, 1, 2))
        report = reduction_report(run)
        # the trace contracts 6 -> 3 -> 2 -> 1: bits 1, 0.585, 1
        assert math.isclose(report.halving_fraction, 2 / 3, abs_tol=1e-12)

    def test_max_bits_can_exceed_one(self):
        found = False
        for ranks in itertools.permutations(range(1, 5)):
            report = reduction_report(instrument("insertion", ranks))
            if report.max_bits > 1.0 + 1e-9:
                found = True
        assert found, "no insertion-sort comparison ever beat one bit on n = 4"
