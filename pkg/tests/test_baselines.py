import pytest

from khmerkw import (
    BaselineConfig,
    build_corpus_index,
    clean_text,
    compare_methods,
    extract_keywords,
    gold_annotation,
    load_dictionary,
    normalize,
    rake_extract,
    textrank_extract,
    tfidf_plain_extract,
    tokenize,
)
from khmerkw.baselines import METHODS
from khmerkw.stopwords import StopWordDictionary

import oracles
from conftest import SENTENCE_1, write_words


def toks(text, lexicon=()):
    return tokenize(normalize(clean_text(text)), lexicon)


@pytest.fixture
def latin_stop_dict(tmp_path):
    path = write_words(tmp_path / "stop.txt", ["the", "is", "of"])
    return load_dictionary([(path, "corpus1")])


class TestBaselineConfig:
    def test_defaults_valid(self):
        config = BaselineConfig()
        assert config.window == 4 and config.damping == 0.85

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"method": "bogus"},
            {"window": 0},
            {"damping": 0.0},
            {"damping": 1.0},
            {"convergence_epsilon": 0.0},
            {"max_iterations": 0},
        ],
    )
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(ValueError):
            BaselineConfig(**kwargs)


class TestTfidfPlain:
    def test_single_term_single_doc_scores_zero(self):
        index = build_corpus_index([("d", "word")], None)
        ranked = tfidf_plain_extract("word", "d", index)
        assert [(kw.term, kw.score) for kw in ranked] == [("word", 0.0)]

    def test_keeps_stop_words_example_sentence(self, tmp_path):
        lex = {"ខ្ញុំ", "នឹង", "ទៅ", "សាលារៀន"}
        docs = [("d1", SENTENCE_1), ("d2", "ទៅ")]
        index = build_corpus_index(docs, None, lex)
        ranked = tfidf_plain_extract(SENTENCE_1, "d1", index, lexicon=lex)
        terms = {kw.term for kw in ranked}
        assert {"ខ្ញុំ", "នឹង"} <= terms

    def test_empty_stop_dict_equivalence(self, tmp_path):
        # the main pipeline with an empty dictionary must agree bitwise
        empty = StopWordDictionary()
        lex = {"ខ្ញុំ", "នឹង", "ទៅ", "សាលារៀន"}
        docs = [("d1", SENTENCE_1), ("d2", "ទៅសាលារៀន។"), ("d3", "នឹងនឹងទៅ")]
        index = build_corpus_index(docs, None, lex)
        for doc_id, raw in docs:
            plain = tfidf_plain_extract(raw, doc_id, index, lexicon=lex)
            ksw = extract_keywords(raw, doc_id, empty, index, lexicon=lex)
            assert plain == ksw


class TestRake:
    def test_single_non_stop_word(self, latin_stop_dict):
        ranked = rake_extract(toks("the word"), latin_stop_dict)
        assert ranked == [("word", 1.0)]

    def test_all_stop_words(self, latin_stop_dict):
        assert rake_extract(toks("the is of"), latin_stop_dict) == []

    def test_two_phrase_fixture_hand_scores(self, latin_stop_dict):
        # phrases: (alpha beta) and (beta) -> freq: alpha 1, beta 2;
        # degree: alpha 2, beta 3; word scores: alpha 2, beta 1.5;
        # phrase scores: "alpha beta" 3.5, "beta" 1.5
        ranked = rake_extract(toks("alpha beta the beta"), latin_stop_dict)
        assert ranked == [("alpha beta", 3.5), ("beta", 1.5)]

    def test_degree_over_frequency_at_least_one(self, latin_stop_dict):
        text = "alpha beta gamma the beta gamma of gamma"
        tokens = toks(text)
        ranked = rake_extract(tokens, latin_stop_dict, top_k=100)
        # every single-word phrase score is that word's deg/freq ratio
        for phrase, score in ranked:
            words = phrase.split(" ")
            assert score >= len(words)

    def test_ties_break_lexicographically(self, latin_stop_dict):
        ranked = rake_extract(toks("zed the apple"), latin_stop_dict)
        assert [p for p, _ in ranked] == ["apple", "zed"]

    def test_repeated_phrase_single_row(self, latin_stop_dict):
        ranked = rake_extract(toks("word the word"), latin_stop_dict)
        assert len(ranked) == 1
        assert ranked[0][0] == "word"


class TestTextRank:
    def test_single_distinct_term(self, latin_stop_dict):
        ranked = textrank_extract(toks("word the word"), latin_stop_dict)
        assert len(ranked) == 1
        assert ranked[0][0] == "word"

    def test_two_mutual_terms_equal_scores(self, latin_stop_dict):
        ranked = textrank_extract(toks("alpha beta"), latin_stop_dict)
        scores = dict(ranked)
        assert scores["alpha"] == pytest.approx(scores["beta"], abs=1e-12)
        assert scores["alpha"] == pytest.approx(1.0, abs=1e-6)

    def test_empty_after_filtering(self, latin_stop_dict):
        assert textrank_extract(toks("the of is"), latin_stop_dict) == []

    def test_four_node_fixture_matches_dense_oracle(self, latin_stop_dict):
        text = "alpha beta gamma delta alpha gamma"
        config = BaselineConfig(window=3)
        ranked = textrank_extract(toks(text), latin_stop_dict, config, top_k=10)
        sequence = [t.surface for t in toks(text)]
        expected = oracles.dense_textrank(sequence, 3, 0.85, 1e-6, 100)
        assert len(ranked) == 4
        for term, score in ranked:
            assert score == pytest.approx(expected[term], abs=1e-6)

    def test_converges_within_budget(self, latin_stop_dict):
        tokens = toks("alpha beta gamma alpha beta delta")
        tight = BaselineConfig(convergence_epsilon=1e-10, max_iterations=500)
        loose = BaselineConfig(convergence_epsilon=1e-10, max_iterations=1000)
        assert textrank_extract(tokens, latin_stop_dict, tight) == pytest.approx(
            textrank_extract(tokens, latin_stop_dict, loose)
        )

    def test_deterministic(self, latin_stop_dict):
        tokens = toks("alpha beta gamma delta beta alpha")
        first = textrank_extract(tokens, latin_stop_dict)
        second = textrank_extract(tokens, latin_stop_dict)
        assert first == second


class TestCompareMethods:
    def _fixture(self, tmp_path):
        stop_path = write_words(tmp_path / "stop.txt", ["ខ្ញុំ", "នឹង"])
        stop_dict = load_dictionary([(stop_path, "corpus1")])
        lex = ["ខ្ញុំ", "នឹង", "ទៅ", "សាលារៀន"]
        docs = [("d1", SENTENCE_1), ("d2", "ទៅនឹងទៅសាលារៀន។")]
        return docs, stop_dict, lex

    def test_report_shape(self, tmp_path):
        docs, stop_dict, lex = self._fixture(tmp_path)
        gold = [gold_annotation("d1", ["ទៅ"]), gold_annotation("d2", ["សាលារៀន"])]
        report = compare_methods(docs, gold, stop_dict, lexicon_words=lex)
        rows = report.rows()
        assert [m for m, *_ in rows] == list(METHODS)
        assert all(len(row) == 4 for row in rows)

    def test_gold_equal_to_ksw_output_scores_ones(self, tmp_path):
        docs, stop_dict, lex = self._fixture(tmp_path)
        from khmerkw.extraction import make_lexicon

        lexicon = make_lexicon(stop_dict, lex)
        index = build_corpus_index(docs, stop_dict, lexicon)
        gold = [
            gold_annotation(
                doc_id,
                [kw.term for kw in extract_keywords(raw, doc_id, stop_dict, index, lexicon=lexicon)],
            )
            for doc_id, raw in docs
        ]
        report = compare_methods(docs, gold, stop_dict, lexicon_words=lex)
        assert report.per_method["ksw"].overall == (1.0, 1.0, 1.0)

    def test_stop_heavy_fixture_ksw_at_least_plain(self, tmp_path):
        # stop words flood every document; gold contains none of them, so
        # the unfiltered baseline dilutes its precision.
        stops = ["កា", "ខេ", "គី", "ងោ", "ចូ"]
        content = {"d1": ["តា", "ទី"], "d2": ["នុ", "បែ"], "d3": ["ពោ", "មៅ"]}
        stop_path = write_words(tmp_path / "stop.txt", stops)
        stop_dict = load_dictionary([(stop_path, "corpus1")])
        docs = [
            (doc_id, "".join(words) + "".join(stops) * 2)
            for doc_id, words in content.items()
        ]
        gold = [gold_annotation(doc_id, words) for doc_id, words in content.items()]
        report = compare_methods(docs, gold, stop_dict, top_k=10)
        ksw_f1 = report.per_method["ksw"].overall[2]
        plain_f1 = report.per_method["tfidf_plain"].overall[2]
        assert ksw_f1 >= plain_f1
        assert ksw_f1 == 1.0

    def test_missing_gold_counted_skipped(self, tmp_path):
        docs, stop_dict, lex = self._fixture(tmp_path)
        gold = [gold_annotation("d1", ["ទៅ"])]
        report = compare_methods(docs, gold, stop_dict, lexicon_words=lex)
        for method in METHODS:
            assert report.per_method[method].skipped == 1
