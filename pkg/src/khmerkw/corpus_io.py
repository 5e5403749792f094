"""Corpus ingestion, deduplication, and source-type labeling.

Two input layouts are supported. ``jsonl``: one JSON record per line with
fields ``id``, ``text``, optional ``source`` and ``category``.
``text_dir``: one UTF-8 ``.txt`` file per document, the id taken from the
relative path and the source type from the parent directory name.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .khmer_text import clean_text, normalize

logger = logging.getLogger(__name__)

SOURCE_TYPES = ("social_media", "blog", "book_publication", "other")


class EmptyCorpusError(ValueError):
    """Raised when a corpus path yields zero loadable documents."""


@dataclass(frozen=True)
class Document:
    id: str
    source_type: str = "other"
    category: str | None = None
    raw_text: str = ""

    def __post_init__(self):
        if self.source_type not in SOURCE_TYPES:
            raise ValueError(f"unknown source type {self.source_type!r}")


@dataclass
class Corpus:
    documents: list[Document] = field(default_factory=list)
    dedup_report: tuple[int, int] = (0, 0)  # (input count, removed count)
    skipped_records: int = 0
    filtered_short: int = 0

    def source_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for doc in self.documents:
            counts[doc.source_type] = counts.get(doc.source_type, 0) + 1
        return counts


def _coerce_source(value) -> str:
    return value if value in SOURCE_TYPES else "other"


def load_corpus(path, format: str = "jsonl", min_length: int = 0) -> Corpus:
    """Load documents in a stable order; malformed records are counted, not fatal.

    ``min_length`` drops documents whose raw text is shorter than the given
    number of code points (a mechanical stand-in for manual quality
    filtering). Zero loadable documents raises :class:`EmptyCorpusError`.
    """
    path = Path(path)
    if format == "jsonl":
        corpus = _load_jsonl(path)
    elif format == "text_dir":
        corpus = _load_text_dir(path)
    else:
        raise ValueError(f"unknown corpus format {format!r}")

    if min_length > 0:
        kept = [d for d in corpus.documents if len(d.raw_text) >= min_length]
        corpus.filtered_short = len(corpus.documents) - len(kept)
        corpus.documents = kept
    if not corpus.documents:
        raise EmptyCorpusError(f"no loadable documents under {path}")
    return corpus


def _load_jsonl(path: Path) -> Corpus:
    corpus = Corpus()
    seen_ids: set[str] = set()
    try:
        lines = path.read_text(encoding="utf-8-sig").splitlines()
    except OSError as exc:
        raise OSError(f"cannot read corpus file {path}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
            doc_id = str(record["id"])
            text = record["text"]
            if not isinstance(text, str) or doc_id in seen_ids:
                raise ValueError("bad record")
        except (ValueError, KeyError, TypeError):
            corpus.skipped_records += 1
            logger.warning("skipping malformed record at %s:%d", path, lineno)
            continue
        seen_ids.add(doc_id)
        corpus.documents.append(
            Document(
                id=doc_id,
                source_type=_coerce_source(record.get("source")),
                category=record.get("category"),
                raw_text=text,
            )
        )
    return corpus


def _load_text_dir(path: Path) -> Corpus:
    corpus = Corpus()
    if not path.is_dir():
        raise OSError(f"cannot read corpus directory {path}: not a directory")
    for file in sorted(path.rglob("*.txt")):
        rel = file.relative_to(path)
        try:
            text = file.read_text(encoding="utf-8-sig")
        except (OSError, UnicodeDecodeError):
            corpus.skipped_records += 1
            logger.warning("skipping unreadable document %s", file)
            continue
        source = rel.parent.name if rel.parent != Path(".") else "other"
        corpus.documents.append(
            Document(
                id=rel.with_suffix("").as_posix(),
                source_type=_coerce_source(source),
                raw_text=text,
            )
        )
    return corpus


def dedupe_documents(corpus: Corpus) -> Corpus:
    """Drop documents whose cleaned, normalized text repeats an earlier one.

    Keeps first occurrences, so markup- or punctuation-only variants
    collapse onto the first copy seen. Idempotent.
    """
    seen: set[str] = set()
    kept: list[Document] = []
    for doc in corpus.documents:
        fingerprint = normalize(clean_text(doc.raw_text))
        if fingerprint in seen:
            continue
        seen.add(fingerprint)
        kept.append(doc)
    removed = len(corpus.documents) - len(kept)
    return Corpus(
        documents=kept,
        dedup_report=(len(corpus.documents), removed),
        skipped_records=corpus.skipped_records,
        filtered_short=corpus.filtered_short,
    )
