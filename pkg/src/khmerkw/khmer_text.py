"""Khmer-aware text cleaning, normalization, syllable clustering, and
dictionary-based word segmentation.

Khmer script is written without spaces between words, and every written
syllable is a cluster: a base consonant or independent vowel followed by
subscript consonants (attached with the coeng mark U+17D2), dependent
vowels, and diacritic signs. Tokenization must never cut inside a cluster,
so everything here works cluster-first: text is normalized, parsed into
clusters, and only then matched against a word list.
"""

import re
import unicodedata
from dataclasses import dataclass, field

# Khmer code point classes. The main block is U+1780-U+17FF; U+19E0-U+19FF
# (Khmer symbols) counts as Khmer for script classification but its members
# are symbols, not cluster material.
COENG = "្"
ZWSP = "​"

_CONSONANTS = range(0x1780, 0x17A3)          # ក .. អ
_INDEP_VOWELS = range(0x17A3, 0x17B4)        # ឣ .. ឳ
_DEP_VOWELS = range(0x17B4, 0x17C6)          # invisible AQ/AA + ា .. ៅ
_SIGNS = (*range(0x17C6, 0x17D2), 0x17D3, 0x17DD)
_EXTRA_BASES = (0x17D7, 0x17DC)              # ៗ and avakrahasanya act as standalone letters

_KHMER_BLOCKS = ((0x1780, 0x17FF), (0x19E0, 0x19FF))


def _is_khmer(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _KHMER_BLOCKS)


def _is_base(ch: str) -> bool:
    cp = ord(ch)
    return cp in _CONSONANTS or cp in _INDEP_VOWELS or cp in _EXTRA_BASES


def _is_subscriptable(ch: str) -> bool:
    cp = ord(ch)
    return cp in _CONSONANTS or cp in _INDEP_VOWELS


def _is_dep_vowel(ch: str) -> bool:
    return ord(ch) in _DEP_VOWELS


def _is_sign(ch: str) -> bool:
    return ord(ch) in _SIGNS


def _is_cluster_char(ch: str) -> bool:
    """True for code points that belong inside syllable clusters.

    Khmer digits, Khmer punctuation, and the Khmer-symbols block are in the
    Khmer script but are not cluster material.
    """
    return _is_base(ch) or _is_dep_vowel(ch) or _is_sign(ch) or ch == COENG


@dataclass(frozen=True)
class TextSpan:
    """Half-open code-point range [start, end) into the normalized text."""

    start: int
    end: int

    def __post_init__(self):
        if self.start < 0 or self.end < self.start:
            raise ValueError(f"invalid span ({self.start}, {self.end})")


@dataclass(frozen=True)
class SyllableCluster:
    """One written Khmer syllable.

    ``malformed`` marks degenerate clusters: combining marks (or a coeng)
    that appeared with no preceding base character. They are kept so that
    clusters always cover their run exactly.
    """

    surface: str
    span: TextSpan
    malformed: bool = False


@dataclass(frozen=True)
class Token:
    """A segmented surface unit.

    ``script`` is one of ``khmer``, ``latin``, ``digit``, ``other``.
    ``cluster_count`` is the number of syllable clusters a Khmer token
    spans; it is 0 for non-Khmer tokens.
    """

    surface: str
    span: TextSpan
    script: str
    cluster_count: int = 0


_TAG_RE = re.compile(r"<[^<>]*>")
_WS_RE = re.compile(r"\s+")


def clean_text(raw: str) -> str:
    """Strip markup tags, punctuation, symbols, and control characters.

    Letters, combining marks, decimal digits, and whitespace survive.
    Each removed span becomes a single space so that word boundaries are
    preserved; spans touching existing whitespace or the ends of the string
    insert nothing. Zero-width format characters vanish without leaving a
    boundary (they are invisible), except ZWSP, which is kept as a
    word-boundary hint for :func:`normalize`. Total and idempotent.
    """
    # \x00 marks removed tag spans; NUL is a control character, so a literal
    # NUL in the input lands in the same removal class.
    text = _TAG_RE.sub("\x00", raw)
    out: list[str] = []
    pending_removal = False
    for ch in text:
        if ch == ZWSP or ch.isspace():
            pending_removal = False
            out.append(ch)
            continue
        cat = unicodedata.category(ch)
        if cat[0] in "LM" or cat == "Nd":
            if pending_removal:
                if out and not out[-1].isspace():
                    out.append(" ")
                pending_removal = False
            out.append(ch)
        elif cat == "Cf":
            continue  # zero-width: no boundary
        else:
            pending_removal = True
    return "".join(out)


def normalize(text: str) -> str:
    """Put text into the canonical form used everywhere downstream.

    NFC, lowercase, canonical in-cluster mark order (coeng pairs, then
    dependent vowels, then signs), ZWSP converted to a space, whitespace
    runs collapsed to single spaces, ends trimmed. Idempotent.
    """
    text = unicodedata.normalize("NFC", text)
    text = text.lower()
    text = _reorder_marks(text)
    text = text.replace(ZWSP, " ")
    text = _WS_RE.sub(" ", text)
    return text.strip()


def _reorder_marks(text: str) -> str:
    """Stable-sort the marks trailing each base: coeng pairs < vowels < signs.

    Makes the spelling variants that differ only in mark order (for example
    sign typed before vowel) identical. Orphan marks with no base are left
    in place.
    """
    out: list[str] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if not _is_base(ch):
            out.append(ch)
            i += 1
            continue
        units: list[tuple[int, str]] = []
        j = i + 1
        while j < n:
            c = text[j]
            if c == COENG and j + 1 < n and _is_subscriptable(text[j + 1]):
                units.append((0, text[j : j + 2]))
                j += 2
            elif _is_dep_vowel(c):
                units.append((1, c))
                j += 1
            elif _is_sign(c):
                units.append((2, c))
                j += 1
            else:
                break
        out.append(ch)
        out.extend(u for _, u in sorted(units, key=lambda u: u[0]))
        i = j
    return "".join(out)


def segment_clusters(text: str) -> list[SyllableCluster]:
    """Parse the Khmer runs of ``text`` into syllable clusters.

    A cluster is a base (consonant, independent vowel, or standalone letter
    mark) plus any following coeng+consonant pairs, dependent vowels, and
    signs. Non-Khmer runs and Khmer digits yield no clusters. Orphan
    combining marks become single degenerate clusters flagged ``malformed``;
    an orphan coeng still absorbs its following consonant, and the pair is
    flagged. Clusters exactly cover every maximal run of cluster characters.
    """
    clusters: list[SyllableCluster] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if not _is_cluster_char(ch):
            i += 1
            continue
        if _is_base(ch):
            j = _scan_cluster_body(text, i + 1)
            clusters.append(SyllableCluster(text[i:j], TextSpan(i, j)))
        elif ch == COENG and i + 1 < n and _is_subscriptable(text[i + 1]):
            j = _scan_cluster_body(text, i + 2)
            clusters.append(SyllableCluster(text[i:j], TextSpan(i, j), malformed=True))
        else:
            j = i + 1
            clusters.append(SyllableCluster(ch, TextSpan(i, j), malformed=True))
        i = clusters[-1].span.end
    return clusters


def _scan_cluster_body(text: str, j: int) -> int:
    """Advance past coeng pairs, dependent vowels, and signs; return the end."""
    n = len(text)
    while j < n:
        c = text[j]
        if c == COENG and j + 1 < n and _is_subscriptable(text[j + 1]):
            j += 2
        elif _is_dep_vowel(c) or _is_sign(c):
            j += 1
        else:
            break
    return j


class Lexicon:
    """Shared-prefix (trie) word list for longest-match segmentation.

    Words are normalized on insertion. Build once and reuse: the structure
    is immutable after construction and safe to share across workers.
    """

    __slots__ = ("_root", "_size")

    def __init__(self, words=()):
        self._root: dict = {}
        self._size = 0
        for word in words:
            self._insert(normalize(word))

    def _insert(self, word: str) -> None:
        if not word:
            return
        node = self._root
        for ch in word:
            node = node.setdefault(ch, {})
        if not node.get(None):
            node[None] = True
            self._size += 1

    def __len__(self) -> int:
        return self._size

    def walk(self, node, ch):
        """One trie step from ``node`` (None means the root); None if no edge."""
        if node is None:
            node = self._root
        return node.get(ch)

    @staticmethod
    def is_word(node) -> bool:
        return node is not None and None in node


def tokenize(text: str, lexicon) -> list[Token]:
    """Segment normalized text into tokens.

    Khmer runs are segmented by greedy longest match of ``lexicon`` words
    over cluster boundaries; clusters not covered by any word fall back to
    single-cluster tokens, so segmentation is total. Non-Khmer runs are
    split on whitespace. Token spans tile the non-space positions of
    ``text``, so the text can be reassembled exactly from spans.

    ``lexicon`` is a :class:`Lexicon` or any iterable of words.
    """
    if not isinstance(lexicon, Lexicon):
        lexicon = Lexicon(lexicon)
    clusters = segment_clusters(text)
    cluster_at = {c.span.start: idx for idx, c in enumerate(clusters)}

    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if i in cluster_at:
            run = _cluster_run(clusters, cluster_at[i])
            tokens.extend(_match_run(text, run, lexicon))
            i = run[-1].span.end
        else:
            j = i
            while j < n and not text[j].isspace() and j not in cluster_at:
                j += 1
            surface = text[i:j]
            tokens.append(Token(surface, TextSpan(i, j), _classify(surface)))
            i = j
    return tokens


def _cluster_run(clusters: list[SyllableCluster], start: int) -> list[SyllableCluster]:
    """Collect the maximal gapless sequence of clusters starting at ``start``."""
    run = [clusters[start]]
    for c in clusters[start + 1 :]:
        if c.span.start != run[-1].span.end:
            break
        run.append(c)
    return run


def _match_run(text: str, run: list[SyllableCluster], lexicon: Lexicon) -> list[Token]:
    """Greedy longest match over one Khmer run, cluster-aligned."""
    tokens = []
    ci, n = 0, len(run)
    while ci < n:
        node = None
        best = 0
        k = ci
        while k < n:
            failed = False
            for ch in run[k].surface:
                node = lexicon.walk(node, ch)
                if node is None:
                    failed = True
                    break
            if failed:
                break
            k += 1
            if Lexicon.is_word(node):
                best = k
        end = best if best > ci else ci + 1
        span = TextSpan(run[ci].span.start, run[end - 1].span.end)
        tokens.append(Token(text[span.start : span.end], span, "khmer", end - ci))
        ci = end
    return tokens


def _classify(surface: str) -> str:
    """Script class of a token surface: khmer, latin, digit, or other."""
    if all(unicodedata.category(ch) == "Nd" for ch in surface):
        return "digit"
    if all(_is_khmer(ch) for ch in surface):
        return "khmer"
    if all(("a" <= ch <= "z") or ("A" <= ch <= "Z") for ch in surface):
        return "latin"
    return "other"
