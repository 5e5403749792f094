"""Batch command-line interface.

Subcommands: ``segment`` (token listing), ``extract`` (ranked keywords per
document), ``evaluate`` (precision/recall/F1 against gold annotations),
``compare`` (all methods side by side), and ``build-stoplist`` (frequency-
ranked stop-word candidates).

Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 empty result
(no loadable documents / nothing evaluable). All file I/O is UTF-8; the
default output is TSV with a header row, ``--output-format structured``
emits JSON. Every command is deterministic for identical inputs.
"""

import argparse
import json
import sys
from contextlib import nullcontext
from dataclasses import dataclass

from . import __version__
from .baselines import BaselineConfig, compare_methods, rake_extract, textrank_extract, tfidf_plain_extract
from .corpus_io import EmptyCorpusError, load_corpus
from .evaluation import NoEvaluableDocumentsError, evaluate_corpus, gold_annotation
from .extraction import build_corpus_index, extract_keywords, make_lexicon
from .khmer_text import clean_text, normalize, tokenize
from .stopwords import build_stoplist_candidates, load_dictionary

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_EMPTY = 4

_CORPUS_TAG_ORDER = ("corpus1", "corpus2", "corpus3")


@dataclass
class RunConfig:
    """Validated knobs shared by the pipeline commands."""

    stopword_paths: list
    lexicon_paths: list
    min_freq: int = 1
    top_k: int = 10
    method: str = "ksw"
    smoothing: bool = False
    min_length: int = 0
    output_format: str = "tsv"
    baseline: BaselineConfig = BaselineConfig()
    # IDF uses the natural logarithm; base choice rescales all scores
    # uniformly, so rankings are base-invariant. Recorded for provenance.
    log_base: str = "natural"

    def __post_init__(self):
        if self.min_freq < 1:
            raise ValueError("--min-freq must be >= 1")
        if self.top_k < 1:
            raise ValueError("--top-k must be >= 1")
        if self.min_length < 0:
            raise ValueError("--min-length must be >= 0")


def _config_from(args) -> RunConfig:
    return RunConfig(
        stopword_paths=args.stopwords or [],
        lexicon_paths=getattr(args, "lexicon", None) or [],
        min_freq=getattr(args, "min_freq", 1),
        top_k=getattr(args, "top_k", 10),
        method=getattr(args, "method", "ksw"),
        smoothing=getattr(args, "smoothing", False),
        min_length=getattr(args, "min_length", 0),
        output_format=args.output_format,
        baseline=BaselineConfig(
            window=getattr(args, "window", 4),
            damping=getattr(args, "damping", 0.85),
            convergence_epsilon=getattr(args, "epsilon", 1e-6),
            max_iterations=getattr(args, "max_iterations", 100),
        ),
    )


def _load_stopwords(config: RunConfig):
    sources = []
    for i, path in enumerate(config.stopword_paths):
        tag = _CORPUS_TAG_ORDER[i] if i < len(_CORPUS_TAG_ORDER) else "user"
        sources.append((path, tag))
    return load_dictionary(sources)


def _load_lexicon_words(config: RunConfig) -> set[str]:
    words: set[str] = set()
    for path in config.lexicon_paths:
        with open(path, encoding="utf-8-sig") as fh:
            for line in fh:
                entry = line.strip().split("\t")[0]
                if entry and not entry.startswith("#"):
                    words.add(normalize(entry))
    words.discard("")
    return words


def _load_gold(path) -> list:
    annotations = []
    with open(path, encoding="utf-8-sig") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                annotations.append(gold_annotation(str(record["id"]), record["keywords"]))
            except (ValueError, KeyError, TypeError) as exc:
                raise ValueError(f"malformed gold record at {path}:{lineno}: {exc}") from exc
    return annotations


def _out_stream(path):
    if path in (None, "-"):
        return nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8", newline="\n")


def _fmt(value) -> str:
    return format(value, ".12g") if isinstance(value, float) else str(value)


def _write_tsv(stream, header, rows, comments=()) -> None:
    for comment in comments:
        stream.write(f"# {comment}\n")
    stream.write("\t".join(header) + "\n")
    for row in rows:
        stream.write("\t".join(_fmt(v) for v in row) + "\n")


def _write_structured(stream, payload) -> None:
    json.dump(payload, stream, ensure_ascii=False, sort_keys=True, indent=2)
    stream.write("\n")


def _predictions(method, pairs, stop_dict, lexicon, config: RunConfig):
    """Per-document predicted terms under one method name."""
    out: dict[str, list[str]] = {}
    if method == "ksw":
        index = build_corpus_index(pairs, stop_dict, lexicon)
        for doc_id, raw in pairs:
            ranked = extract_keywords(
                raw, doc_id, stop_dict, index, config.min_freq, config.top_k,
                lexicon, config.smoothing,
            )
            out[doc_id] = [kw.term for kw in ranked]
    elif method == "tfidf":
        index = build_corpus_index(pairs, None, lexicon)
        for doc_id, raw in pairs:
            ranked = tfidf_plain_extract(
                raw, doc_id, index, config.top_k, config.min_freq, lexicon,
                config.smoothing,
            )
            out[doc_id] = [kw.term for kw in ranked]
    else:
        for doc_id, raw in pairs:
            tokens = tokenize(normalize(clean_text(raw)), lexicon)
            if method == "rake":
                out[doc_id] = [p for p, _ in rake_extract(tokens, stop_dict, config.top_k)]
            else:
                out[doc_id] = [
                    t for t, _ in textrank_extract(tokens, stop_dict, config.baseline, config.top_k)
                ]
    return out


def cmd_segment(args) -> int:
    config = _config_from(args)
    stop_dict = _load_stopwords(config)
    lexicon = make_lexicon(stop_dict, _load_lexicon_words(config))
    with open(args.input, encoding="utf-8-sig") as fh:
        text = fh.read()
    tokens = tokenize(normalize(clean_text(text)), lexicon)
    with _out_stream(args.out) as out:
        if config.output_format == "structured":
            _write_structured(out, [
                {
                    "surface": t.surface,
                    "start": t.span.start,
                    "end": t.span.end,
                    "script": t.script,
                    "clusters": t.cluster_count,
                }
                for t in tokens
            ])
        else:
            _write_tsv(
                out,
                ("surface", "start", "end", "script", "clusters"),
                ((t.surface, t.span.start, t.span.end, t.script, t.cluster_count) for t in tokens),
            )
    return EXIT_OK


def cmd_extract(args) -> int:
    config = _config_from(args)
    stop_dict = _load_stopwords(config)
    lexicon = make_lexicon(stop_dict, _load_lexicon_words(config))
    corpus = load_corpus(args.corpus, args.format, config.min_length)
    pairs = [(doc.id, doc.raw_text) for doc in corpus.documents]
    index = build_corpus_index(pairs, stop_dict, lexicon)
    records = []
    for doc_id, raw in pairs:
        for kw in extract_keywords(
            raw, doc_id, stop_dict, index, config.min_freq, config.top_k,
            lexicon, config.smoothing,
        ):
            records.append((doc_id, kw.rank, kw.term, kw.tf, kw.idf, kw.score))
    with _out_stream(args.out) as out:
        if config.output_format == "structured":
            _write_structured(out, [
                {"doc": d, "rank": r, "term": t, "tf": tf, "idf": idf, "score": s}
                for d, r, t, tf, idf, s in records
            ])
        else:
            _write_tsv(out, ("doc", "rank", "term", "tf", "idf", "score"), records)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    config = _config_from(args)
    stop_dict = _load_stopwords(config)
    lexicon = make_lexicon(stop_dict, _load_lexicon_words(config))
    corpus = load_corpus(args.corpus, args.format, config.min_length)
    pairs = [(doc.id, doc.raw_text) for doc in corpus.documents]
    gold = _load_gold(args.gold)
    predictions = _predictions(config.method, pairs, stop_dict, lexicon, config)

    groupings = {
        "source": {doc.id: doc.source_type for doc in corpus.documents},
        "category": {
            doc.id: doc.category for doc in corpus.documents if doc.category is not None
        },
    }
    wanted = [args.group_by] if args.group_by else ["source", "category"]
    base = evaluate_corpus(predictions, gold)
    rows = [("overall", "", *base.overall)]
    sections = {"overall": dict(zip(("precision", "recall", "f1"), base.overall))}
    for name in wanted:
        grouped = evaluate_corpus(predictions, gold, groupings[name])
        sections[f"by_{name}"] = {
            label: dict(zip(("precision", "recall", "f1"), triple))
            for label, triple in grouped.groups.items()
        }
        rows.extend((name, label, *triple) for label, triple in grouped.groups.items())
    sections["skipped"] = base.skipped

    with _out_stream(args.out) as out:
        if config.output_format == "structured":
            _write_structured(out, sections)
        else:
            _write_tsv(
                out,
                ("section", "label", "precision", "recall", "f1"),
                rows,
                comments=(f"method: {config.method}", f"skipped (no gold): {base.skipped}"),
            )
    return EXIT_OK


def cmd_compare(args) -> int:
    config = _config_from(args)
    stop_dict = _load_stopwords(config)
    corpus = load_corpus(args.corpus, args.format, config.min_length)
    gold = _load_gold(args.gold)
    report = compare_methods(
        corpus,
        gold,
        stop_dict,
        lexicon_words=_load_lexicon_words(config),
        min_freq=config.min_freq,
        top_k=config.top_k,
        config=config.baseline,
    )
    rows = report.rows()
    with _out_stream(args.out) as out:
        if config.output_format == "structured":
            _write_structured(out, {
                method: dict(zip(("precision", "recall", "f1"), triple))
                for method, *triple in rows
            })
        else:
            _write_tsv(out, ("method", "precision", "recall", "f1"), rows)
    return EXIT_OK


def cmd_build_stoplist(args) -> int:
    config = _config_from(args)
    stop_dict = _load_stopwords(config)
    lexicon = make_lexicon(stop_dict, _load_lexicon_words(config))
    corpus = load_corpus(args.corpus, args.format, config.min_length)
    pairs = [(doc.id, doc.raw_text) for doc in corpus.documents]
    index = build_corpus_index(pairs, None, lexicon)
    candidates = build_stoplist_candidates(index, args.top_n, args.min_df)
    with _out_stream(args.out) as out:
        if config.output_format == "structured":
            _write_structured(out, {
                "note": "proposal only; review before adding to a dictionary",
                "candidates": [
                    {"term": t, "collection_frequency": cf, "document_frequency": df}
                    for t, cf, df in candidates
                ],
            })
        else:
            _write_tsv(
                out,
                ("term", "collection_frequency", "document_frequency"),
                candidates,
                comments=("PROPOSAL: candidate stop words for human review; do not merge automatically",),
            )
    return EXIT_OK


def _add_common(parser, corpus: bool = True) -> None:
    parser.add_argument("--stopwords", action="append", metavar="FILE",
                        help="stop-word dictionary file; repeat for the corpus1/2/3 files")
    parser.add_argument("--lexicon", action="append", metavar="FILE",
                        help="extra segmentation word list (same line format)")
    parser.add_argument("--out", metavar="FILE", help="output path (default stdout)")
    parser.add_argument("--output-format", choices=("tsv", "structured"), default="tsv")
    if corpus:
        parser.add_argument("--corpus", required=True, metavar="PATH")
        parser.add_argument("--format", choices=("jsonl", "text_dir"), default="jsonl")
        parser.add_argument("--min-length", type=int, default=0,
                            help="drop documents shorter than this many code points")


def _add_extraction_knobs(parser) -> None:
    parser.add_argument("--min-freq", type=int, default=1)
    parser.add_argument("--top-k", type=int, default=10)
    parser.add_argument("--smoothing", action="store_true",
                        help="use add-one smoothing for unseen-term document frequencies")
    parser.add_argument("--window", type=int, default=4, help="textrank co-occurrence window")
    parser.add_argument("--damping", type=float, default=0.85)
    parser.add_argument("--epsilon", type=float, default=1e-6,
                        help="textrank convergence threshold")
    parser.add_argument("--max-iterations", type=int, default=100)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="khmerkw",
        description="Khmer keyword extraction with a stop-word dictionary.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("segment", help="tokenize a text file, one token per line")
    p.add_argument("input", help="UTF-8 text file to segment")
    _add_common(p, corpus=False)
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("extract", help="ranked keywords for every corpus document")
    _add_common(p)
    _add_extraction_knobs(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("evaluate", help="precision/recall/F1 against gold annotations")
    _add_common(p)
    _add_extraction_knobs(p)
    p.add_argument("--gold", required=True, metavar="FILE",
                   help="JSONL gold file: {\"id\": ..., \"keywords\": [...]}")
    p.add_argument("--method", choices=("ksw", "tfidf", "rake", "textrank"), default="ksw")
    p.add_argument("--group-by", choices=("source", "category"))
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", help="all methods side by side against gold annotations")
    _add_common(p)
    _add_extraction_knobs(p)
    p.add_argument("--gold", required=True, metavar="FILE")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("build-stoplist", help="frequency-ranked stop-word candidates")
    _add_common(p)
    p.add_argument("--top-n", type=int, default=100)
    p.add_argument("--min-df", type=int, default=0)
    p.set_defaults(func=cmd_build_stoplist)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (EmptyCorpusError, NoEvaluableDocumentsError) as exc:
        print(f"khmerkw: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except OSError as exc:
        print(f"khmerkw: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"khmerkw: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
