"""Reference keyword-extraction baselines for side-by-side comparison.

Three methods are provided: plain TF-IDF (the main pipeline minus the
stop-word filter), RAKE (stop-word-delimited phrases scored by word
degree/frequency), and TextRank (damped rank propagation over a term
co-occurrence graph). All are deterministic under a fixed configuration.
"""

from collections import Counter
from dataclasses import dataclass, field

from . import evaluation, khmer_text
from .extraction import (
    CorpusIndex,
    RankedKeyword,
    build_corpus_index,
    extract_keywords,
    inverse_document_frequency,
    make_lexicon,
    term_frequency,
)
from .stopwords import StopWordDictionary, remove_stop_words

METHODS = ("ksw", "tfidf_plain", "rake", "textrank")


@dataclass(frozen=True)
class BaselineConfig:
    method: str = "textrank"
    window: int = 4
    damping: float = 0.85
    convergence_epsilon: float = 1e-6
    max_iterations: int = 100

    def __post_init__(self):
        if self.method not in ("tfidf_plain", "rake", "textrank"):
            raise ValueError(f"unknown baseline method {self.method!r}")
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if not 0.0 < self.damping < 1.0:
            raise ValueError("damping must be in (0, 1)")
        if self.convergence_epsilon <= 0.0:
            raise ValueError("convergence_epsilon must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


def tfidf_plain_extract(
    raw: str,
    doc_id: str,
    index_raw: CorpusIndex,
    top_k: int = 10,
    min_freq: int = 1,
    lexicon=None,
    smoothing: bool = False,
) -> list[RankedKeyword]:
    """TF-IDF ranking with no stop-word filtering.

    ``index_raw`` must be built over unfiltered token counts. Written as
    its own pipeline (not a call into the stop-filtered one) so the two
    can be checked against each other.
    """
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    if lexicon is None:
        lexicon = khmer_text.Lexicon(())
    text = khmer_text.normalize(khmer_text.clean_text(raw))
    tokens = khmer_text.tokenize(text, lexicon)
    counts: Counter = Counter()
    first_pos: dict[str, int] = {}
    for pos, token in enumerate(tokens):
        counts[token.surface] += 1
        first_pos.setdefault(token.surface, pos)
    scored = []
    for term, count in counts.items():
        if count < min_freq:
            continue
        tf = term_frequency(term, doc_id, index_raw)
        idf = inverse_document_frequency(term, index_raw, smoothing)
        scored.append((tf * idf, count, first_pos[term], term, tf, idf))
    scored.sort(key=lambda row: (-row[0], -row[1], row[2]))
    return [
        RankedKeyword(term, tf, idf, score, rank)
        for rank, (score, _, _, term, tf, idf) in enumerate(scored[:top_k], start=1)
    ]


def rake_extract(tokens, stop_dict: StopWordDictionary, top_k: int = 10) -> list[tuple[str, float]]:
    """RAKE: score stop-word-delimited phrases by summed degree/frequency.

    Candidate phrases are maximal runs of consecutive non-stop tokens.
    Each word's degree accumulates the lengths of the phrases it appears
    in (so degree counts the word itself and deg/freq >= 1); a phrase
    scores the sum of its words' degree/frequency ratios. Ties break
    lexicographically on the phrase.
    """
    from .stopwords import is_stop_word

    phrases: list[tuple[str, ...]] = []
    current: list[str] = []
    for token in tokens:
        if is_stop_word(stop_dict, token):
            if current:
                phrases.append(tuple(current))
                current = []
        else:
            current.append(token.surface if hasattr(token, "surface") else token)
    if current:
        phrases.append(tuple(current))
    if not phrases:
        return []

    freq: Counter = Counter()
    degree: Counter = Counter()
    for phrase in phrases:
        for word in phrase:
            freq[word] += 1
            degree[word] += len(phrase)
    word_score = {w: degree[w] / freq[w] for w in freq}

    scores: dict[str, float] = {}
    for phrase in phrases:
        scores[" ".join(phrase)] = sum(word_score[w] for w in phrase)
    ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:top_k]


def textrank_extract(
    tokens,
    stop_dict: StopWordDictionary,
    config: BaselineConfig | None = None,
    top_k: int = 10,
) -> list[tuple[str, float]]:
    """TextRank: damped rank propagation over a windowed co-occurrence graph.

    Nodes are the distinct stop-filtered terms; an undirected edge joins
    two terms whose positions in the filtered sequence differ by less
    than ``config.window``. Ranks start at 1 and are updated with
    ``(1 - d) + d * sum(score[u] / degree[u])`` over neighbors until the
    largest change drops below ``config.convergence_epsilon`` or
    ``config.max_iterations`` is reached. Ties break lexicographically.
    """
    if config is None:
        config = BaselineConfig()
    sequence = [
        t.surface if hasattr(t, "surface") else t
        for t in remove_stop_words(tokens, stop_dict)
    ]
    if not sequence:
        return []

    adjacency: dict[str, set[str]] = {term: set() for term in sequence}
    for i, term in enumerate(sequence):
        for j in range(i + 1, min(i + config.window, len(sequence))):
            other = sequence[j]
            if other != term:
                adjacency[term].add(other)
                adjacency[other].add(term)

    scores = {term: 1.0 for term in adjacency}
    neighbors = {term: sorted(adj) for term, adj in adjacency.items()}
    d = config.damping
    for _ in range(config.max_iterations):
        new_scores = {}
        for term in scores:
            rank_sum = sum(scores[u] / len(neighbors[u]) for u in neighbors[term])
            new_scores[term] = (1.0 - d) + d * rank_sum
        delta = max(abs(new_scores[t] - scores[t]) for t in scores)
        scores = new_scores
        if delta < config.convergence_epsilon:
            break

    ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:top_k]


@dataclass
class ComparisonReport:
    """One evaluation row per method, in the fixed order of ``METHODS``."""

    per_method: dict[str, "evaluation.EvalReport"] = field(default_factory=dict)

    def rows(self) -> list[tuple[str, float, float, float]]:
        out = []
        for method in METHODS:
            report = self.per_method[method]
            p, r, f1 = report.overall
            out.append((method, p, r, f1))
        return out


def compare_methods(
    corpus,
    gold,
    stop_dict: StopWordDictionary,
    lexicon_words=(),
    min_freq: int = 1,
    top_k: int = 10,
    config: BaselineConfig | None = None,
) -> ComparisonReport:
    """Run every method over the corpus and evaluate each against the gold.

    ``corpus`` is an iterable of ``(doc_id, raw_text)`` pairs or objects
    with ``id`` and ``raw_text`` attributes. Documents without a gold
    annotation are excluded and counted in each method's report.
    """
    if config is None:
        config = BaselineConfig()
    pairs = [
        (doc.id, doc.raw_text) if hasattr(doc, "raw_text") else (doc[0], doc[1])
        for doc in (corpus.documents if hasattr(corpus, "documents") else corpus)
    ]
    lexicon = make_lexicon(stop_dict, lexicon_words)
    index_ksw = build_corpus_index(pairs, stop_dict, lexicon)
    index_raw = build_corpus_index(pairs, None, lexicon)

    predictions: dict[str, dict[str, list[str]]] = {m: {} for m in METHODS}
    for doc_id, raw in pairs:
        tokens = khmer_text.tokenize(
            khmer_text.normalize(khmer_text.clean_text(raw)), lexicon
        )
        predictions["ksw"][doc_id] = [
            kw.term
            for kw in extract_keywords(
                raw, doc_id, stop_dict, index_ksw, min_freq, top_k, lexicon
            )
        ]
        predictions["tfidf_plain"][doc_id] = [
            kw.term
            for kw in tfidf_plain_extract(raw, doc_id, index_raw, top_k, min_freq, lexicon)
        ]
        predictions["rake"][doc_id] = [
            phrase for phrase, _ in rake_extract(tokens, stop_dict, top_k)
        ]
        predictions["textrank"][doc_id] = [
            term for term, _ in textrank_extract(tokens, stop_dict, config, top_k)
        ]

    report = ComparisonReport()
    for method in METHODS:
        report.per_method[method] = evaluation.evaluate_corpus(predictions[method], gold)
    return report
