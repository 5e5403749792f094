import pytest

from khmerkw import load_dictionary

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE_RESULTS.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE_RESULTS:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status} {name}")

# Words from the two worked example sentences.
STOP_WORDS = ["ខ្ញុំ", "នឹង", "យើង", "អំពី"]
CONTENT_WORDS = ["ទៅ", "សាលារៀន", "និយាយ", "មេរៀន"]

SENTENCE_1 = "ខ្ញុំនឹងទៅសាលារៀន។"
SENTENCE_2 = "យើងនឹងនិយាយអំពីមេរៀន។"
KEYWORDS_1 = {"ទៅ", "សាលារៀន"}
KEYWORDS_2 = {"និយាយ", "មេរៀន"}


def write_words(path, words):
    path.write_text("".join(f"{w}\n" for w in words), encoding="utf-8")
    return path


def khmer_word_pool(n: int) -> list[str]:
    """Deterministic pool of distinct, normalization-stable Khmer words."""
    consonants = [chr(c) for c in range(0x1780, 0x17A3)]
    vowels = [chr(v) for v in range(0x17B6, 0x17C6)]
    pool: list[str] = []
    for c in consonants:
        for v in vowels:
            pool.append(c + v)
            if len(pool) == n:
                return pool
    for c1 in consonants:
        for v1 in vowels:
            for c2 in consonants:
                for v2 in vowels:
                    pool.append(c1 + v1 + c2 + v2)
                    if len(pool) == n:
                        return pool
    raise ValueError(f"pool exhausted below {n}")


@pytest.fixture
def stop_dict(tmp_path):
    path = write_words(tmp_path / "stop.txt", STOP_WORDS)
    return load_dictionary([(path, "corpus1")])


@pytest.fixture
def example_lexicon():
    return set(STOP_WORDS) | set(CONTENT_WORDS)
