"""ROUGE metrics: hand-computed examples, duality, and summary-level LCS."""

import pytest

from relnotes.corpus import GeneratedSummary, ReleaseRecord
from relnotes.rouge import Score, aggregate, evaluate_release, rouge_l, rouge_n


class TestRougeN:
    def test_identical(self):
        tokens = ["fix", "parser", "crash"]
        for n in (1, 2):
            score = rouge_n(tokens, tokens, n)
            assert score == Score(1.0, 1.0, 1.0)

    def test_hand_unigram_example(self):
        ref = ["fix", "switchmap", "not", "cancel", "properli"]
        gen = ["fix", "switchmap", "cancel", "race"]
        score = rouge_n(ref, gen, 1)
        assert score.recall == pytest.approx(0.6, abs=1e-12)
        assert score.precision == pytest.approx(0.75, abs=1e-12)
        assert score.f1 == pytest.approx(2 / 3, abs=1e-9)

    def test_disjoint(self):
        assert rouge_n(["a", "b"], ["c", "d"], 1) == Score(0.0, 0.0, 0.0)

    def test_bigram_counting(self):
        ref = ["a", "b", "c"]
        gen = ["a", "b", "d"]
        score = rouge_n(ref, gen, 2)
        # one shared bigram (a, b) out of two on each side
        assert score.recall == pytest.approx(0.5)
        assert score.precision == pytest.approx(0.5)

    def test_clipping_repeated_grams(self):
        ref = ["x", "x", "y"]
        gen = ["x", "x", "x", "x"]
        score = rouge_n(ref, gen, 1)
        assert score.recall == pytest.approx(2 / 3)
        assert score.precision == pytest.approx(2 / 4)

    def test_empty_sides(self):
        assert rouge_n([], ["a"], 1) == Score(0.0, 0.0, 0.0)
        assert rouge_n(["a"], [], 1) == Score(0.0, 0.0, 0.0)
        assert rouge_n(["a"], ["b"], 2) == Score(0.0, 0.0, 0.0)

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            rouge_n(["a"], ["a"], 3)

    def test_duality(self):
        import random

        rng = random.Random(31)
        pool = list("abcdef")
        for n in (1, 2):
            for _ in range(40):
                ref = rng.choices(pool, k=rng.randint(1, 12))
                gen = rng.choices(pool, k=rng.randint(1, 12))
                assert rouge_n(ref, gen, n).precision == pytest.approx(
                    rouge_n(gen, ref, n).recall, abs=1e-12
                )

    def test_unigram_permutation_invariance(self):
        ref = ["a", "b", "c", "a"]
        gen = ["c", "a", "b", "a"]
        base = rouge_n(ref, gen, 1)
        assert base == rouge_n(list(reversed(ref)), gen, 1)
        assert base == rouge_n(ref, list(reversed(gen)), 1)


class TestRougeL:
    def test_identical(self):
        assert rouge_l(["a", "b", "c"], ["a", "b", "c"]) == Score(1.0, 1.0, 1.0)

    def test_hand_lcs_example(self):
        score = rouge_l(["a", "b", "c", "d"], ["a", "c", "d", "b"])
        assert score.recall == pytest.approx(0.75)
        assert score.precision == pytest.approx(0.75)
        assert score.f1 == pytest.approx(0.75)

    def test_empty_sides(self):
        assert rouge_l([], ["a"]) == Score(0.0, 0.0, 0.0)
        assert rouge_l(["a"], []) == Score(0.0, 0.0, 0.0)

    def test_whole_mode_concatenates(self):
        ref = [["a", "b"], ["c", "d"]]
        gen = [["a", "b", "c", "d"]]
        score = rouge_l(ref, gen, mode="whole")
        assert score == Score(1.0, 1.0, 1.0)

    def test_union_mode_per_reference_sentence(self):
        # Each reference sentence takes its union-LCS against all generated
        # sentences; hits are clipped by token counts on both sides.
        ref = [["a", "b"], ["a", "b"]]
        gen = [["a", "b"]]
        score = rouge_l(ref, gen, mode="union")
        assert score.recall == pytest.approx(0.5)
        assert score.precision == pytest.approx(1.0)

    def test_union_beats_or_equals_single_sentence_lcs(self):
        ref = [["a", "b", "c"]]
        gen = [["a", "x"], ["x", "b", "c"]]
        # union of LCS positions {a} and {b, c} covers all three tokens
        score = rouge_l(ref, gen, mode="union")
        assert score.recall == pytest.approx(1.0)
        assert score.precision == pytest.approx(0.6)

    def test_invalid_mode(self):
        with pytest.raises(ValueError):
            rouge_l(["a"], ["a"], mode="bogus")

    def test_flat_sequences_match_sentence_lists(self):
        flat = rouge_l(["a", "b", "c"], ["a", "c"])
        nested = rouge_l([["a", "b", "c"]], [["a", "c"]])
        assert flat == nested


class TestEvaluateRelease:
    def record(self, refs, source=("irrelevant line",)):
        return ReleaseRecord(
            project="o/r",
            tag="v1",
            date="2021-01-01",
            reference_notes=list(refs),
            source=list(source),
        )

    def summary(self, sentences):
        return GeneratedSummary(sentences=list(sentences), method="lsa")

    def test_identical_summary_scores_one(self):
        refs = ["Fix the parser crash", "Update the cache docs"]
        report = evaluate_release(self.record(refs), self.summary(refs))
        assert report.rouge1.f1 == pytest.approx(1.0)
        assert report.rouge2.f1 == pytest.approx(1.0)
        assert report.rougeL.f1 == pytest.approx(1.0)

    def test_empty_reference_rejected(self):
        with pytest.raises(ValueError):
            evaluate_release(self.record([]), self.summary(["something"]))

    def test_stemming_bridges_inflection(self):
        report = evaluate_release(
            self.record(["fixes the failing tests"]),
            self.summary(["fixed the failed test"]),
        )
        # fix/fail/test all align after stemming and stopword removal
        assert report.rouge1.f1 == pytest.approx(1.0)

    def test_stopword_flag_changes_tokens(self):
        record = self.record(["fix the parser"])
        summary = self.summary(["fix a parser"])
        without = evaluate_release(record, summary)
        with_sw = evaluate_release(record, summary, include_stopwords=True)
        assert without.rouge1.f1 == pytest.approx(1.0)
        assert with_sw.rouge1.f1 < 1.0

    def test_low_overlap_release(self):
        # terse human note vs a bug-fix subject line: low but nonzero R-1
        record = self.record(["this release fixes few minor issues"])
        summary = self.summary(
            ["fixes failed to disable slave database and fixes unit test errors"]
        )
        report = evaluate_release(record, summary)
        assert 0.0 < report.rouge1.f1 < 0.5
        assert report.rouge2.f1 == pytest.approx(0.0)

    def test_cleaning_applied_unless_raw(self):
        record = self.record(["fix crash (#12)"])
        summary = self.summary(["fix crash"])
        cleaned = evaluate_release(record, summary)
        assert cleaned.rouge1.f1 == pytest.approx(1.0)

    def test_generated_empty_scores_zero(self):
        record = self.record(["fix the parser"])
        report = evaluate_release(record, self.summary([]))
        assert report.rouge1 == Score(0.0, 0.0, 0.0)
        assert report.rougeL == Score(0.0, 0.0, 0.0)


class TestAggregate:
    def one(self, f1):
        s = Score(f1, f1, f1)
        from relnotes.rouge import RougeReport

        return RougeReport(rouge1=s, rouge2=s, rougeL=s)

    def test_single_report_is_identity(self):
        report = self.one(0.42)
        assert aggregate([report]) == report

    def test_mean_of_two(self):
        agg = aggregate([self.one(0.2), self.one(0.4)])
        assert agg.rouge1.f1 == pytest.approx(0.3)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            aggregate([])
