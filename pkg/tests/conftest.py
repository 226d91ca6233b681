import os
import sys
import pytest

# Ensure the repository root (parent of `src/`) is on sys.path so tests can import
# using the `src.` package prefix. This mirrors running tests with `PYTHONPATH=.` or
# `PYTHONPATH=<repo_root>` and makes test runs reproducible in CI/dev.
repo_root = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if repo_root not in sys.path:
	sys.path.insert(0, repo_root)

os.environ.setdefault("CYLRESP_WORKERS", "1")

from src.models.excitation import Bvp, ExcitationSpec, omega_from_hz
from src.models.material import MaterialGeometry


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long acceptance runs (deselect with -m 'not slow')")


@pytest.fixture(scope="session")
def steel() -> MaterialGeometry:
    """Stainless-steel cylinder of the natural-frequency table: L = 0.15 m, R = 0.05 m."""
    return MaterialGeometry(lam=1.0962e11, mu=7.308e10, rho=8000.0, length=0.15, radius=0.05)


@pytest.fixture(scope="session")
def settings():
    return {
        "workers": 1,
        "boundary_grid": (6, 6),
        "determinant_floor": 1.0e-300,
        "near_resonance_tol": 1.0e-8,
        "singular_rel_tol": 1.0e-9,
        "near_boundary_rel_tol": 1.0e-6,
        "step_hz": 10.0,
        "fine_step_hz": 0.1,
        "amplitude_pa": 1.0e5,
        "materials": {
            "steel_table": {"lambda_pa": 1.0962e11, "mu_pa": 7.308e10, "rho": 8000.0, "length_m": 0.15, "radius_m": 0.05},
        },
    }


@pytest.fixture
def excite():
    def make(bvp, m, k, f_hz, a=1.0e5, b=1.0e5, c=1.0e5):
        return ExcitationSpec(bvp=Bvp.parse(bvp), m=m, k=k, omega=omega_from_hz(f_hz), amp_a=a, amp_b=b, amp_c=c)
    return make


STEEL_CFG = """\
bvp = 2
m = 1
k = 1
f_start_hz = 1000
f_stop_hz = 1100
f_step_hz = 10
lambda_pa = 1.0962e11
mu_pa = 7.308e10
rho = 8000
length_m = 0.15
radius_m = 0.05
amp_a_pa = 1e5
amp_b_pa = 1e5
amp_c_pa = 1e5
"""


@pytest.fixture
def steel_cfg_text() -> str:
    return STEEL_CFG

