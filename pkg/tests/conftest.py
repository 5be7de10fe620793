import numpy as np
import pytest

POLICIES = ["replicate", "reflect", "zero"]


@pytest.fixture(scope="session")
def camera():
    """The 512x512 'cameraman' photograph shipped with scikit-image, in [0, 1]."""
    data = pytest.importorskip("skimage.data")
    return data.camera().astype(np.float64) / 255.0


@pytest.fixture
def rng():
    return np.random.default_rng(20231222)


# Acceptance verdicts: criterion number -> list of (check name, passed, detail).
ACCEPTANCE = {}


def record(criterion, check, passed, detail=""):
    ACCEPTANCE.setdefault(criterion, []).append((check, bool(passed), detail))
    line = f"criterion {criterion} [{check}]: {'PASS' if passed else 'FAIL'}"
    print(line + (f" ({detail})" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    from test_acceptance import CRITERIA
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[number]
        ok = all(passed for _, passed, _ in checks)
        failed = [f"{name}: {detail}" for name, passed, detail in checks if not passed]
        line = f"{'PASS' if ok else 'FAIL'}  {number}. {CRITERIA[number]}"
        if failed:
            line += "  <- " + "; ".join(failed)
        terminalreporter.write_line(line)
