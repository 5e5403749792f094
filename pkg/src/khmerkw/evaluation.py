"""Precision/recall/F1 scoring of extracted keywords against gold annotations.

Matching is exact string equality of normalized single terms. Corpus-level
numbers are macro-averages: the unweighted mean of per-document values,
optionally grouped by a caller-supplied label (source type, category).
"""

from dataclasses import dataclass, field

from .khmer_text import normalize


class NoEvaluableDocumentsError(ValueError):
    """Raised when no document has both a prediction and a gold annotation."""


@dataclass(frozen=True)
class GoldAnnotation:
    """Reference keyword set for one document. Keywords must be normalized."""

    doc_id: str
    keywords: frozenset[str]

    def __post_init__(self):
        if not self.keywords:
            raise ValueError(f"gold annotation for {self.doc_id!r} has no keywords")
        for kw in self.keywords:
            if kw != normalize(kw):
                raise ValueError(f"gold keyword {kw!r} is not normalized")


def gold_annotation(doc_id: str, keywords) -> GoldAnnotation:
    """Build a GoldAnnotation, normalizing the keywords first."""
    return GoldAnnotation(doc_id, frozenset(normalize(kw) for kw in keywords))


@dataclass
class EvalReport:
    per_doc: dict[str, tuple[float, float, float]] = field(default_factory=dict)
    groups: dict[str, tuple[float, float, float]] = field(default_factory=dict)
    overall: tuple[float, float, float] = (0.0, 0.0, 0.0)
    skipped: int = 0


def score_document(predicted, gold: GoldAnnotation) -> tuple[float, float, float]:
    """Precision, recall, and F1 of a predicted term list against the gold set.

    Precision is 0 for an empty prediction; F1 is the harmonic mean of
    precision and recall, 0 when both are 0.
    """
    pred = {normalize(term) for term in predicted}
    if not gold.keywords:
        raise ValueError("gold keyword set is empty")
    hits = len(pred & gold.keywords)
    precision = hits / len(pred) if pred else 0.0
    recall = hits / len(gold.keywords)
    f1 = (
        2.0 * precision * recall / (precision + recall)
        if precision + recall > 0.0
        else 0.0
    )
    return precision, recall, f1


def _macro(triples) -> tuple[float, float, float]:
    triples = list(triples)
    n = len(triples)
    return (
        sum(t[0] for t in triples) / n,
        sum(t[1] for t in triples) / n,
        sum(t[2] for t in triples) / n,
    )


def evaluate_corpus(predictions, gold_set, grouping=None) -> EvalReport:
    """Score every predicted document that has a gold annotation.

    ``predictions`` maps doc id to predicted terms; ``gold_set`` is an
    iterable of :class:`GoldAnnotation` (or a ready mapping of doc id to
    annotation). Per-document triples are macro-averaged overall and
    within each ``grouping`` label. Predicted documents with no gold are
    counted as skipped; zero evaluable documents is an error.
    """
    if isinstance(gold_set, dict):
        gold_by_id = dict(gold_set)
    else:
        gold_by_id = {}
        for ann in gold_set:
            if ann.doc_id in gold_by_id:
                raise ValueError(f"duplicate gold annotation for {ann.doc_id!r}")
            gold_by_id[ann.doc_id] = ann

    report = EvalReport()
    for doc_id in predictions:
        if doc_id not in gold_by_id:
            report.skipped += 1
            continue
        report.per_doc[doc_id] = score_document(predictions[doc_id], gold_by_id[doc_id])
    if not report.per_doc:
        raise NoEvaluableDocumentsError("no document has both a prediction and a gold annotation")

    report.overall = _macro(report.per_doc.values())
    if grouping is not None:
        by_label: dict[str, list] = {}
        for doc_id, triple in report.per_doc.items():
            label = grouping.get(doc_id)
            if label is not None:
                by_label.setdefault(label, []).append(triple)
        report.groups = {label: _macro(ts) for label, ts in sorted(by_label.items())}
    return report
