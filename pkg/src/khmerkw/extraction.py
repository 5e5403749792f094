"""Corpus indexing, candidate extraction, and TF-IDF keyword ranking.

Scores follow the classic definitions: a term's frequency in a document is
its count divided by the document's token count, its inverse document
frequency is the natural log of (number of documents / number of documents
containing it), and its score is the product of the two. Document lengths
are counted after stop-word removal, matching the pipeline order
(clean, normalize, tokenize, remove stop words, extract, rank).
"""

from collections import Counter
from dataclasses import dataclass
from math import log

from . import khmer_text, stopwords
from .khmer_text import Lexicon, Token
from .stopwords import StopWordDictionary


def _surface(token) -> str:
    return token.surface if isinstance(token, Token) else token


class CorpusIndex:
    """Per-term document frequencies and per-document term counts.

    ``n_docs`` is the corpus size, ``doc_freq[t]`` the number of documents
    containing ``t``, ``term_counts[d][t]`` the count of ``t`` in ``d``,
    and ``doc_lengths[d]`` the token count of ``d``. Built once, then
    immutable; reads are safe from any number of workers.
    """

    def __init__(self):
        self.n_docs: int = 0
        self.doc_freq: dict[str, int] = {}
        self.term_counts: dict[str, Counter] = {}
        self.doc_lengths: dict[str, int] = {}

    def documents(self) -> list[str]:
        return sorted(self.term_counts)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self.term_counts

    def term_count(self, term: str, doc_id: str) -> int:
        return self.term_counts[doc_id][term]


def build_index(documents) -> CorpusIndex:
    """Index ``(doc_id, tokens)`` pairs; tokens may be Token objects or strings.

    Duplicate document ids raise ``ValueError``. An empty input yields an
    index with ``n_docs == 0`` on which frequency queries are rejected.
    The result does not depend on document order.
    """
    index = CorpusIndex()
    for doc_id, tokens in documents:
        if doc_id in index.term_counts:
            raise ValueError(f"duplicate document id {doc_id!r}")
        counts = Counter(_surface(t) for t in tokens)
        index.term_counts[doc_id] = counts
        index.doc_lengths[doc_id] = sum(counts.values())
        index.n_docs += 1
        for term in counts:
            index.doc_freq[term] = index.doc_freq.get(term, 0) + 1
    return index


def term_frequency(term: str, doc_id: str, index: CorpusIndex) -> float:
    """Count of ``term`` in the document divided by the document's length."""
    if doc_id not in index.term_counts:
        raise KeyError(f"unknown document id {doc_id!r}")
    length = index.doc_lengths[doc_id]
    if length == 0:
        raise ValueError(f"document {doc_id!r} has no tokens; frequency undefined")
    return index.term_counts[doc_id][term] / length


def inverse_document_frequency(term: str, index: CorpusIndex, smoothing: bool = False) -> float:
    """Natural log of (corpus size / documents containing ``term``).

    A term in every document scores 0. A term in no document is an error
    unless ``smoothing`` is set, which computes
    ``log((n_docs + 1) / (doc_freq + 1))`` instead.
    """
    if index.n_docs == 0:
        raise ValueError("index is empty; inverse document frequency undefined")
    n_t = index.doc_freq.get(term, 0)
    if smoothing:
        return log((index.n_docs + 1) / (n_t + 1))
    if n_t == 0:
        raise ValueError(f"term {term!r} not in any document (enable smoothing to allow)")
    return log(index.n_docs / n_t)


def tfidf_score(term: str, doc_id: str, index: CorpusIndex, smoothing: bool = False) -> float:
    """Product of term frequency and inverse document frequency."""
    return term_frequency(term, doc_id, index) * inverse_document_frequency(
        term, index, smoothing
    )


@dataclass(frozen=True)
class KeywordCandidate:
    """A distinct non-stop term that met the in-document frequency floor."""

    term: str
    doc_count: int
    first_position: int


@dataclass(frozen=True)
class RankedKeyword:
    term: str
    tf: float
    idf: float
    score: float
    rank: int


def extract_candidates(tokens, min_freq: int = 1) -> list[KeywordCandidate]:
    """Distinct terms occurring at least ``min_freq`` times in the document.

    ``tokens`` must already be stop-filtered. Candidates are returned in
    first-occurrence order and carry that position for tie-breaking.
    """
    if min_freq < 1:
        raise ValueError("min_freq must be >= 1")
    counts: Counter = Counter()
    first_pos: dict[str, int] = {}
    for pos, token in enumerate(tokens):
        term = _surface(token)
        counts[term] += 1
        first_pos.setdefault(term, pos)
    return [
        KeywordCandidate(term, counts[term], pos)
        for term, pos in sorted(first_pos.items(), key=lambda kv: kv[1])
        if counts[term] >= min_freq
    ]


def rank_keywords(
    doc_id: str,
    candidates,
    index: CorpusIndex,
    top_k: int = 10,
    smoothing: bool = False,
) -> list[RankedKeyword]:
    """Score candidates against the index and return the top ``top_k``.

    Sorted by score descending, then in-document count descending, then
    first occurrence ascending. Ranks are consecutive from 1.
    """
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    scored = []
    for cand in candidates:
        tf = term_frequency(cand.term, doc_id, index)
        idf = inverse_document_frequency(cand.term, index, smoothing)
        scored.append((tf * idf, cand, tf, idf))
    scored.sort(key=lambda row: (-row[0], -row[1].doc_count, row[1].first_position))
    return [
        RankedKeyword(cand.term, tf, idf, score, rank)
        for rank, (score, cand, tf, idf) in enumerate(scored[:top_k], start=1)
    ]


def preprocess(raw: str, stop_dict: StopWordDictionary | None, lexicon) -> list[Token]:
    """Clean, normalize, tokenize, and (when a dictionary is given) stop-filter."""
    tokens = khmer_text.tokenize(khmer_text.normalize(khmer_text.clean_text(raw)), lexicon)
    if stop_dict is not None:
        tokens = stopwords.remove_stop_words(tokens, stop_dict)
    return tokens


def make_lexicon(stop_dict: StopWordDictionary | None = None, extra_words=()) -> Lexicon:
    """Segmentation lexicon: the stop-word surfaces plus any user word list."""
    words = set(extra_words)
    if stop_dict is not None:
        words |= stop_dict.surfaces()
    return Lexicon(words)


def build_corpus_index(
    documents,
    stop_dict: StopWordDictionary | None = None,
    lexicon=None,
) -> CorpusIndex:
    """Run the preprocessing pipeline over ``(doc_id, raw_text)`` pairs and index.

    Passing ``stop_dict=None`` indexes raw (unfiltered) token counts, which
    is what the plain TF-IDF baseline uses.
    """
    if lexicon is None:
        lexicon = make_lexicon(stop_dict)
    return build_index(
        (doc_id, preprocess(raw, stop_dict, lexicon)) for doc_id, raw in documents
    )


def extract_keywords(
    raw: str,
    doc_id: str,
    stop_dict: StopWordDictionary,
    index: CorpusIndex,
    min_freq: int = 1,
    top_k: int = 10,
    lexicon=None,
    smoothing: bool = False,
) -> list[RankedKeyword]:
    """Full per-document pipeline against a prebuilt index.

    ``index`` must have been built with the same stop dictionary and
    lexicon, or the frequencies will not line up.
    """
    if lexicon is None:
        lexicon = make_lexicon(stop_dict)
    tokens = preprocess(raw, stop_dict, lexicon)
    candidates = extract_candidates(tokens, min_freq)
    return rank_keywords(doc_id, candidates, index, top_k, smoothing)
