import csv
import pathlib

import numpy as np
import pytest

from fraclindblad.quantum_ops import LindbladModel, lindblad_superoperator

DATA = pathlib.Path(__file__).parent / "data"

ACCEPTANCE_RESULTS = {}


def record(criterion, passed, detail):
    ACCEPTANCE_RESULTS[criterion] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def ml_oracle_rows():
    with (DATA / "ml_oracle.csv").open() as fh:
        return [
            (float(r["alpha"]), float(r["beta"]), float(r["z"]), float(r["reference"]))
            for r in csv.DictReader(fh)
        ]


@pytest.fixture(scope="session")
def ad_generator():
    return lindblad_superoperator(LindbladModel.amplitude_damping(1.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
