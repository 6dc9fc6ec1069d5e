import json
import random
from pathlib import Path

import pytest

from homflypt import diagram as dg

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
CORPUS = ROOT / "corpus"

FIGURE_EIGHT_PD = (FIXTURES / "figure_eight.pd").read_text()
FIGURE_EIGHT = "a^2 + a^-2 - z^2 - 1"
# The 5-crossing 2-component link of the introductory figure, as a braid closure.
LINK5 = ([1, -2, 1, -2, -2], 3)


def fixture_json(name: str) -> dict:
    return json.loads((FIXTURES / name).read_text())


def random_braids(count: int, seed: int, strands=(2, 5), length=(1, 10)):
    """Deterministic random braid closures as ``(word, strands, diagram)``."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        s = rng.randint(*strands)
        word = dg.random_braid_word(s, rng.randint(*length), rng)
        out.append((word, s, dg.generate_braid_closure(word, s)))
    return out


def corpus_files():
    return sorted(CORPUS.glob("*.json"))


@pytest.fixture
def fig8():
    return dg.parse_pd(FIGURE_EIGHT_PD)


@pytest.fixture
def link5():
    return dg.generate_braid_closure(*LINK5)


# Acceptance results, printed once at the end of the session.
ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        verdict, title = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {verdict}  {title}")
