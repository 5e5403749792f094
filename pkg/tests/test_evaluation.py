import random

import pytest

from khmerkw import evaluate_corpus, gold_annotation, score_document
from khmerkw.evaluation import GoldAnnotation, NoEvaluableDocumentsError


class TestScoreDocument:
    def test_perfect(self):
        gold = gold_annotation("d", ["a", "b"])
        assert score_document(["a", "b"], gold) == (1.0, 1.0, 1.0)

    def test_disjoint(self):
        gold = gold_annotation("d", ["a", "b"])
        assert score_document(["x", "y"], gold) == (0.0, 0.0, 0.0)

    def test_hand_derived_four_sevenths(self):
        gold = gold_annotation("d", ["a", "b", "e"])
        p, r, f1 = score_document(["a", "b", "c", "d"], gold)
        assert p == 0.5
        assert r == pytest.approx(2 / 3, abs=1e-15)
        assert f1 == pytest.approx(4 / 7, abs=1e-12)

    def test_empty_prediction_zero_precision(self):
        gold = gold_annotation("d", ["a"])
        assert score_document([], gold) == (0.0, 0.0, 0.0)

    def test_empty_gold_rejected(self):
        with pytest.raises(ValueError):
            GoldAnnotation("d", frozenset())

    def test_unnormalized_gold_rejected(self):
        with pytest.raises(ValueError):
            GoldAnnotation("d", frozenset(["ABC"]))

    def test_prediction_normalized_before_match(self):
        gold = gold_annotation("d", ["abc"])
        assert score_document(["ABC "], gold) == (1.0, 1.0, 1.0)

    def test_duplicate_predictions_count_once(self):
        gold = gold_annotation("d", ["a", "b"])
        p, r, f1 = score_document(["a", "a"], gold)
        assert p == 1.0 and r == 0.5

    def test_symmetry_swaps_p_and_r(self):
        rng = random.Random(11)
        universe = [f"w{i}" for i in range(12)]
        for _ in range(200):
            pred = rng.sample(universe, rng.randint(1, 10))
            goldset = rng.sample(universe, rng.randint(1, 10))
            p1, r1, f1a = score_document(pred, gold_annotation("d", goldset))
            p2, r2, f1b = score_document(goldset, gold_annotation("d", pred))
            assert p1 == pytest.approx(r2, abs=1e-15)
            assert r1 == pytest.approx(p2, abs=1e-15)
            assert f1a == pytest.approx(f1b, abs=1e-12)

    def test_f1_identity_and_bounds_randomized(self):
        rng = random.Random(12)
        universe = [f"w{i}" for i in range(15)]
        for _ in range(300):
            pred = rng.sample(universe, rng.randint(0, 12))
            goldset = rng.sample(universe, rng.randint(1, 12))
            p, r, f1 = score_document(pred, gold_annotation("d", goldset))
            assert 0.0 <= p <= 1.0 and 0.0 <= r <= 1.0 and 0.0 <= f1 <= 1.0
            if p + r > 0:
                assert abs(f1 - 2 * p * r / (p + r)) < 1e-12
                if p > 0 and r > 0:
                    assert min(p, r) <= f1 <= (p + r) / 2 + 1e-12
            else:
                assert f1 == 0.0


class TestEvaluateCorpus:
    def test_single_perfect_document(self):
        report = evaluate_corpus({"d": ["a"]}, [gold_annotation("d", ["a"])])
        assert report.overall == (1.0, 1.0, 1.0)
        assert report.skipped == 0

    def test_macro_average_of_perfect_and_zero(self):
        gold = [gold_annotation("d1", ["a"]), gold_annotation("d2", ["b"])]
        report = evaluate_corpus({"d1": ["a"], "d2": ["x"]}, gold)
        assert report.overall == (0.5, 0.5, 0.5)

    def test_three_group_fixture_hand_means(self):
        gold = [
            gold_annotation("d1", ["a"]),
            gold_annotation("d2", ["b"]),
            gold_annotation("d3", ["c"]),
            gold_annotation("d4", ["d"]),
        ]
        predictions = {"d1": ["a"], "d2": ["x"], "d3": ["c"], "d4": ["d"]}
        grouping = {"d1": "g1", "d2": "g1", "d3": "g2", "d4": "g3"}
        report = evaluate_corpus(predictions, gold, grouping)
        assert set(report.groups) == {"g1", "g2", "g3"}
        assert report.groups["g1"] == (0.5, 0.5, 0.5)
        assert report.groups["g2"] == (1.0, 1.0, 1.0)
        assert report.groups["g3"] == (1.0, 1.0, 1.0)
        assert report.overall == (0.75, 0.75, 0.75)

    def test_missing_gold_counted_skipped(self):
        report = evaluate_corpus(
            {"d1": ["a"], "d2": ["b"]}, [gold_annotation("d1", ["a"])]
        )
        assert report.skipped == 1
        assert list(report.per_doc) == ["d1"]

    def test_zero_evaluable_errors(self):
        with pytest.raises(NoEvaluableDocumentsError):
            evaluate_corpus({"d1": ["a"]}, [gold_annotation("other", ["a"])])

    def test_duplicate_gold_rejected(self):
        gold = [gold_annotation("d", ["a"]), gold_annotation("d", ["b"])]
        with pytest.raises(ValueError):
            evaluate_corpus({"d": ["a"]}, gold)

    def test_identical_docs_average_to_themselves(self):
        gold = [gold_annotation(f"d{i}", ["a", "b"]) for i in range(5)]
        predictions = {f"d{i}": ["a", "c"] for i in range(5)}
        report = evaluate_corpus(predictions, gold)
        single = score_document(["a", "c"], gold[0])
        for got, want in zip(report.overall, single):
            assert got == pytest.approx(want, abs=1e-15)

    def test_grouping_labels_sorted(self):
        gold = [gold_annotation(f"d{i}", ["a"]) for i in range(3)]
        predictions = {f"d{i}": ["a"] for i in range(3)}
        grouping = {"d0": "zeta", "d1": "alpha", "d2": "midl"}
        report = evaluate_corpus(predictions, gold, grouping)
        assert list(report.groups) == ["alpha", "midl", "zeta"]
