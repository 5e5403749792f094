"""Khmer stop-word dictionary: loading, merging, deduplication, queries,
and frequency-based candidate proposals.

Dictionary file format: UTF-8, one entry per line, ``#`` comment lines and
blank lines ignored, optional tab-separated provenance column. CRLF and a
leading BOM are tolerated on read; files are written with LF.
"""

import logging
from dataclasses import dataclass

from .khmer_text import normalize

logger = logging.getLogger(__name__)

CORPUS_TAGS = ("corpus1", "corpus2", "corpus3", "user")
PROVENANCE_TAGS = (
    "translated",
    "synonym",
    "context_specific",
    "frequency_derived",
    "unknown",
)


@dataclass(frozen=True)
class StopWordEntry:
    """One stop word with its source corpus and construction provenance."""

    surface: str
    corpus_tag: str = "user"
    provenance: str = "unknown"

    def __post_init__(self):
        if not self.surface:
            raise ValueError("stop-word surface must be non-empty")
        if self.corpus_tag not in CORPUS_TAGS:
            raise ValueError(f"unknown corpus tag {self.corpus_tag!r}")
        if self.provenance not in PROVENANCE_TAGS:
            raise ValueError(f"unknown provenance {self.provenance!r}")


class StopWordDictionary:
    """Ordered collection of stop-word entries with surface-set membership.

    ``source_counts`` records pre-merge per-source entry counts;
    ``dropped_duplicates`` and ``skipped_blank`` carry load bookkeeping.
    Instances are immutable once built and safe to share across readers.
    """

    def __init__(self, entries=(), source_counts=None, dropped_duplicates=0, skipped_blank=0):
        self.entries: tuple[StopWordEntry, ...] = tuple(entries)
        if source_counts is None:
            source_counts = {}
            for entry in self.entries:
                source_counts[entry.corpus_tag] = source_counts.get(entry.corpus_tag, 0) + 1
        self.source_counts: dict[str, int] = dict(source_counts)
        self.dropped_duplicates = dropped_duplicates
        self.skipped_blank = skipped_blank
        self._surfaces = frozenset(entry.surface for entry in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, surface: str) -> bool:
        return surface in self._surfaces

    def surfaces(self) -> frozenset[str]:
        return self._surfaces


def load_dictionary(sources) -> StopWordDictionary:
    """Load and merge stop-word files into one deduplicated dictionary.

    ``sources`` is a sequence of ``(path, corpus_tag)`` pairs. Every line
    is normalized; duplicate surfaces across files keep the first entry's
    corpus tag. Lines that normalize to nothing are skipped and counted.
    Unreadable files raise ``OSError`` naming the path.
    """
    merged: dict[str, StopWordEntry] = {}
    source_counts: dict[str, int] = {}
    dropped = 0
    skipped = 0
    for path, corpus_tag in sources:
        if corpus_tag not in CORPUS_TAGS:
            raise ValueError(f"unknown corpus tag {corpus_tag!r} for {path}")
        count = 0
        try:
            with open(path, encoding="utf-8-sig", newline="") as fh:
                raw_lines = fh.read().splitlines()
        except OSError as exc:
            raise OSError(f"cannot read stop-word file {path}: {exc}") from exc
        for raw in raw_lines:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            columns = line.split("\t")
            surface = normalize(columns[0])
            provenance = columns[1].strip() if len(columns) > 1 else "unknown"
            if provenance not in PROVENANCE_TAGS:
                provenance = "unknown"
            if not surface:
                skipped += 1
                logger.warning("skipping line that normalizes to empty in %s", path)
                continue
            count += 1
            if surface in merged:
                dropped += 1
            else:
                merged[surface] = StopWordEntry(surface, corpus_tag, provenance)
        source_counts[corpus_tag] = source_counts.get(corpus_tag, 0) + count
    return StopWordDictionary(merged.values(), source_counts, dropped, skipped)


def save_dictionary(dictionary: StopWordDictionary, path) -> None:
    """Write entries one per line (surface TAB provenance), LF, no BOM."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for entry in dictionary.entries:
            fh.write(f"{entry.surface}\t{entry.provenance}\n")


def dedupe(dictionary: StopWordDictionary) -> StopWordDictionary:
    """Collapse entries sharing a surface, keeping the first occurrence."""
    seen: dict[str, StopWordEntry] = {}
    dropped = dictionary.dropped_duplicates
    for entry in dictionary.entries:
        if entry.surface in seen:
            dropped += 1
        else:
            seen[entry.surface] = entry
    return StopWordDictionary(
        seen.values(), dictionary.source_counts, dropped, dictionary.skipped_blank
    )


def is_stop_word(dictionary: StopWordDictionary, token) -> bool:
    """True iff the token's normalized surface is in the dictionary.

    Accepts a :class:`~khmerkw.khmer_text.Token` or a plain string;
    matching is exact full-surface equality after normalization.
    """
    surface = getattr(token, "surface", token)
    return normalize(surface) in dictionary


def remove_stop_words(tokens, dictionary: StopWordDictionary) -> list:
    """Filter out stop-word tokens, preserving the order of survivors."""
    return [t for t in tokens if not is_stop_word(dictionary, t)]


def build_stoplist_candidates(index, top_n: int, min_doc_freq: int = 0) -> list[tuple[str, int, int]]:
    """Propose stop-word candidates by collection frequency.

    Returns up to ``top_n`` tuples ``(term, collection_frequency,
    document_frequency)`` sorted by collection frequency descending, ties
    broken lexicographically. Terms seen in fewer than ``min_doc_freq``
    documents are excluded. The output is a proposal for human review; it
    is never merged into a dictionary automatically.
    """
    if top_n < 0:
        raise ValueError("top_n must be non-negative")
    totals: dict[str, int] = {}
    for doc_id in index.documents():
        for term, count in index.term_counts[doc_id].items():
            totals[term] = totals.get(term, 0) + count
    rows = [
        (term, total, index.doc_freq[term])
        for term, total in totals.items()
        if index.doc_freq[term] >= min_doc_freq
    ]
    rows.sort(key=lambda r: (-r[1], r[0]))
    return rows[:top_n]
