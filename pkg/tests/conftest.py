import numpy as np
import pytest

from kme.qnum import kron_all, random_unitary

_ACCEPTANCE = []


def record_criterion(label, passed, detail=""):
    _ACCEPTANCE.append((label, bool(passed), detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_frame(d, rng):
    """Two orthonormal local vectors taken from a Haar-random unitary."""
    u = random_unitary(d, rng)
    return u[:, 0], u[:, 1]


def min_eig(rho):
    # test-side positivity check; production code never diagonalizes
    return float(np.linalg.eigvalsh(rho)[0])


def dense_element(rho, bra_sites, ket_sites):
    return np.vdot(kron_all(bra_sites), rho @ kron_all(ket_sites))
