import sys

import pytest

from sorani_fst.grammar import Analyzer, default_lexicon
from sorani_fst.lexicon import parse_lexicon


@pytest.fixture(scope="session")
def seed_lexicon():
    return default_lexicon()


@pytest.fixture(scope="session")
def analyzer(seed_lexicon):
    return Analyzer.from_lexicon(seed_lexicon)


@pytest.fixture(scope="session")
def intransitive_lexicon():
    # the bundled seed lexicon has no intransitive verb
    return parse_lexicon("naw\tnoun\nkewtin\tverb\tkewt\tkew\tintrans\n")


@pytest.fixture(scope="session")
def intransitive_analyzer(intransitive_lexicon):
    return Analyzer.from_lexicon(intransitive_lexicon)


def pytest_terminal_summary(terminalreporter):
    module = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
