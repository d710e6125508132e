from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from fincoh.engine import CohomologyEngine  # noqa: E402
from fincoh.groups import parse_group  # noqa: E402
from fincoh.modules import parse_module  # noqa: E402
from fincoh.verify import CORPUS_GROUPS, CORPUS_MODULES  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SMALL_GROUPS = ("cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "klein4", "dihedral:3")


@lru_cache(maxsize=None)
def group(spec: str):
    return parse_group(spec)


@lru_cache(maxsize=None)
def engine(group_spec: str, module_spec: str = "trivial:Z", max_term_size: int = 20000) -> CohomologyEngine:
    """Engines are cached per session so complexes are built once."""
    G = group(group_spec)
    return CohomologyEngine(G, parse_module(G, module_spec), max_term_size=max_term_size)


def corpus_pairs(max_order: int = 8):
    return [(g, m) for g in CORPUS_GROUPS if group(g).n <= max_order for m in CORPUS_MODULES]


# acceptance lines, printed again in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

