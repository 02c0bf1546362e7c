import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import build_corpus  # noqa: E402

from proxitop import check_axioms, is_compatible  # noqa: E402


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def classified_corpus(corpus):
    """Corpus models with their axiom reports and compatibility verdicts."""
    out = []
    for m in corpus:
        report = check_axioms(m.prox)
        compat = is_compatible(m.prox).compatible
        out.append((m, report, compat))
    return out
