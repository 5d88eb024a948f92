import mpmath
import pytest

mpmath.mp.dps = 30


@pytest.fixture(scope="session")
def mp_consts():
    """High-precision reference values computed independently of the package."""
    K5 = mpmath.mpf(5) / 2 * mpmath.sin(2 * mpmath.pi / 5)
    K6 = 3 * mpmath.sqrt(3) / 2
    lam = K6 - K5 + 1
    u0 = mpmath.findroot(lambda u: u**6 + 4 * lam**2 * u**2 - 16 * lam**2, 1.5)
    per_cell = lam - u0 / 2 * mpmath.sqrt(4 - u0**2)
    return {
        "K5": K5,
        "K6": K6,
        "gap": K6 - K5,
        "lam": lam,
        "u0": u0,
        "per_cell": per_cell,
        "alpha_lower": 2 * mpmath.sqrt(K6) * per_cell,
        "naive_lower": 2 * mpmath.sqrt(2) * (K6 - K5),
        "sharper_lower": 2 * mpmath.sqrt(K6) * (K6 - K5),
    }


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
