import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from timelime.data import build_triple, read_manifest  # noqa: E402
from timelime.synthetic import synthetic_project  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]

# acceptance id -> (status, detail); printed in the terminal summary
ACCEPTANCE: dict[str, tuple[str, str]] = {}


def real_manifest():
    """Manifest of the nine published trials, if present."""
    env = os.environ.get("TIMELIME_MANIFEST")
    path = Path(env) if env else ROOT / "data" / "trials.txt"
    return path if path.exists() else None


@pytest.fixture(scope="session")
def real_trials():
    path = real_manifest()
    if path is None:
        pytest.skip("published release CSVs not available (set TIMELIME_MANIFEST)")
    return {t.name.lower(): t for t in read_manifest(path)}


@pytest.fixture(scope="session")
def small_triple():
    x, y, z = synthetic_project("fx", n_files=120, seed=7)
    return build_triple(x, y, z)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (len(k.split()[0]), k)):
        status, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{status:5s} {key}: {detail}")
