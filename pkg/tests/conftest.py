import hypothesis.strategies as st
import mpmath
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def word_strategy(min_size=0, max_size=6):
    return st.text(alphabet="01", min_size=min_size, max_size=max_size)


def convergent_word_strategy(max_size=6):
    # "1" + middle + "0" covers every nonempty convergent word
    return st.text(alphabet="01", max_size=max_size - 2).map(lambda m: "1" + m + "0")


def composition_strategy(max_parts=4, max_part=4):
    return st.lists(st.integers(1, max_part), min_size=1, max_size=max_parts).map(tuple)


@pytest.fixture(autouse=True)
def high_precision():
    # references and differences must be formed above the engine's 128 bits
    with mpmath.workprec(192):
        yield


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE_LINES
    except ImportError:
        return
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
