import pytest

from fpnb.corpus import Corpus
from fpnb.nbmodel import train
from fpnb.preprocess import PipelineConfig, keyword_set

from example_data import CN, SN, TRAIN_KEYWORDS, TEST_KEYWORDS

_CRITERIA: list[tuple[str, str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    mark = getattr(report, "criterion", None)
    if mark:
        _CRITERIA.append((mark[0], mark[1], "PASS" if report.passed else "FAIL"))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark:
        report.criterion = mark.args


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, status in sorted(_CRITERIA, key=lambda c: int(c[0])):
        terminalreporter.write_line(f"{status}  criterion {num:>2}: {title}")


def _train_corpus() -> Corpus:
    docs = [
        keyword_set(doc_id, words.split(), SN if int(doc_id[1:]) <= 6 else CN)
        for doc_id, words in TRAIN_KEYWORDS.items()
    ]
    return Corpus(tuple(docs), (SN, CN))


@pytest.fixture(scope="session")
def train_corpus() -> Corpus:
    return _train_corpus()


@pytest.fixture(scope="session")
def example_model(train_corpus):
    return train(train_corpus, 2)


@pytest.fixture(scope="session")
def test_docs():
    return [keyword_set(t, [w.strip() for w in kw.split(",")]) for t, kw in TEST_KEYWORDS.items()]


@pytest.fixture(scope="session")
def train_cfg():
    return PipelineConfig.builtin("train")


@pytest.fixture(scope="session")
def test_cfg():
    return PipelineConfig.builtin("test")
