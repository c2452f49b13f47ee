from pathlib import Path

import pytest

from tablesense.data import corpus_path
from tablesense.extraction import CellGrid

CORPUS = corpus_path()
PAGES = CORPUS.parent / "pages"

CONTACT_ROWS = [
    ["Name", "City", "Phone", "e-mail"],
    ["Ivanov I. I.", "Berlin", "1112233", "ivanov@mail.de"],
    ["Petrov P.P", "Berlin", "2223344", "petrov@mail.de"],
    ["Sidorov S. S.", "Moscow", "3334455", "sidorov@ya.ru"],
    ["Pupkin V.V.", "Moscow", "4445566", "pupkinv@gmail.com"],
]


@pytest.fixture
def contacts_grid():
    return CellGrid.from_rows(CONTACT_ROWS, source=("contacts", 0))


@pytest.fixture(scope="session")
def pages() -> Path:
    return PAGES


@pytest.fixture(scope="session")
def corpus() -> Path:
    return CORPUS


def write_page(directory: Path, name: str, body: str, encoding: str = "utf-8") -> Path:
    path = directory / name
    path.write_bytes(body.encode(encoding))
    return path


def separable_set(seed=0, size=200, dim=4, margin=0.5):
    """Two Gaussian blobs in [0,1]^dim, kept only where the gap along the diagonal is >= margin."""
    import numpy as np

    from tablesense.classifiers import LabeledSample

    rng = np.random.default_rng(seed)
    u = np.ones(dim) / np.sqrt(dim)
    centre = 0.5 * np.sqrt(dim)
    out = []
    while len(out) < size:
        positive = len(out) % 2 == 0
        x = rng.normal(0.75 if positive else 0.25, 0.12, dim)
        proj = x @ u
        if (positive and proj >= centre + margin / 2) or (not positive and proj <= centre - margin / 2):
            out.append(LabeledSample(tuple(x), positive, "horizontal" if positive else None))
    return out


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
