import os
import subprocess
import sys

import numpy as np
import pytest

from projstruct import _kernels_py, kernels

compiled = pytest.importorskip("projstruct._kernels")


def test_backend_selected():
    assert kernels.BACKEND == "cython"


def test_riccati_kernel_parity():
    U0 = np.array([[1, 0, 1], [0, 1, 1]], dtype=complex)
    args = (0.3 + 0.2j, 1 + 0j, 2, 0.5, 0.4, 4000)
    a = compiled.riccati_circle(*args, U0)
    b = _kernels_py.riccati_circle(*args, U0)
    assert np.abs(a - b).max() < 1e-12


def test_fuchsian_kernel_parity():
    nodes = 0.5 - 0.5j + 0.25 * np.exp(2j * np.pi * np.linspace(0, 1, 2001))
    Y0 = np.eye(2, dtype=complex)
    a = compiled.fuchsian_path(0.4, 0.3, -0.1 + 0.2j, nodes, Y0)
    b = _kernels_py.fuchsian_path(0.4, 0.3, -0.1 + 0.2j, nodes, Y0)
    assert np.abs(a - b).max() < 1e-12


def test_env_var_forces_fallback():
    env = dict(os.environ, PROJSTRUCT_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from projstruct import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
