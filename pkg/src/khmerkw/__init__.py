"""Khmer keyword extraction with a curated stop-word dictionary.

The pipeline: clean and normalize raw text, parse Khmer script into
syllable clusters, segment words by longest dictionary match, drop stop
words, then rank the remaining terms by TF-IDF against a corpus index.
Baselines (plain TF-IDF, RAKE, TextRank) and a precision/recall/F1
harness support side-by-side evaluation.
"""

__version__ = "0.1.0"

from .baselines import (
    BaselineConfig,
    ComparisonReport,
    compare_methods,
    rake_extract,
    textrank_extract,
    tfidf_plain_extract,
)
from .corpus_io import Corpus, Document, dedupe_documents, load_corpus
from .evaluation import (
    EvalReport,
    GoldAnnotation,
    evaluate_corpus,
    gold_annotation,
    score_document,
)
from .extraction import (
    CorpusIndex,
    KeywordCandidate,
    RankedKeyword,
    build_corpus_index,
    build_index,
    extract_candidates,
    extract_keywords,
    inverse_document_frequency,
    make_lexicon,
    rank_keywords,
    term_frequency,
    tfidf_score,
)
from .khmer_text import (
    Lexicon,
    SyllableCluster,
    TextSpan,
    Token,
    clean_text,
    normalize,
    segment_clusters,
    tokenize,
)
from .stopwords import (
    StopWordDictionary,
    StopWordEntry,
    build_stoplist_candidates,
    dedupe,
    is_stop_word,
    load_dictionary,
    remove_stop_words,
    save_dictionary,
)
