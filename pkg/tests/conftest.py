from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "data" / "corpus"

# criterion id -> (passed, detail); filled by test_acceptance, printed at the end
ACCEPTANCE = {}


def corpus_paths():
    return sorted(CORPUS.glob("*.pgm"))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def camera():
    from dcrecover.io import load_pgm
    return load_pgm(CORPUS / "02_camera.pgm")


@pytest.fixture(scope="session")
def camera_crop(camera):
    # 96x128 region with edges and texture
    return camera[160:256, 192:320]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{ok}] {key}: {detail}")
