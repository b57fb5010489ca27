import math

import numpy as np
import pytest

from springgp.gp_model import GPCoefficients, build_coefficients
from springgp.mechanics import LoadCase, MaterialSpec

# Stainless-steel example: N = 10, rho = 7700, n = 0.1, nu = 0.275,
# K = 960 MPa, P = 10 N, delta_max = 0.03 m, tau_max = 200 MPa.
EXAMPLE_TURNS = 10.0


@pytest.fixture
def material():
    return MaterialSpec(K=960e6, n=0.1, nu=0.275, rho=7700.0)


@pytest.fixture
def load():
    return LoadCase(P=10.0, tau_max=200e6, delta_max=0.03)


@pytest.fixture
def coeffs(material, load):
    return build_coefficients(material, EXAMPLE_TURNS, load)


def random_coefficient_sets(count, seed=12345):
    """Coefficient sets with a known root k* > 1.

    c21 is back-solved from a chosen k* so g(k*) = 0 by construction; the
    target root is returned alongside as an independent reference.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = float(rng.uniform(0.1, 1.0))
        c = float(10 ** rng.uniform(3, 6))
        c11 = float(10 ** rng.uniform(-9, -6))
        c12 = float(c11 * 10 ** rng.uniform(-1.5, 0.5))
        k_star = float(10 ** rng.uniform(math.log10(1.5), 2))
        ln_c21 = (n / 2.0) * (math.log(c11 * k_star + c12) - (6.0 / n) * math.log(k_star))
        out.append((GPCoefficients(c=c, c11=c11, c12=c12, c21=math.exp(ln_c21), n=n), k_star))
    return out


_CRITERIA = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rpartition("::")[2]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.failed:
        _CRITERIA[name] = _CRITERIA.get(name, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        _, _, rest = name.partition("test_criterion_")
        number, _, label = rest.partition("_")
        status = "PASS" if _CRITERIA[name] else "FAIL"
        terminalreporter.write_line(f"criterion {int(number):2d} {label.replace('_', ' '):<24} {status}")
