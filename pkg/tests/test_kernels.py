import importlib

import pytest
from hypothesis import given, strategies as st

from arckh import _kernels_py, kernels
from arckh.homology import homology
from arckh.khovanov import KhComplex
from arckh.library import diagram

compiled = pytest.importorskip("arckh._kernels")

sparse = st.dictionaries(st.integers(0, 6), st.dictionaries(st.integers(0, 6),
                         st.integers(-5, 5).filter(bool), max_size=4), max_size=6)


@given(sparse)
def test_diagonalize_backends_agree(cols):
    assert sorted(compiled.diagonalize(cols)) == sorted(_kernels_py.diagonalize(cols))


@pytest.mark.parametrize("name", ["trefoil", "5_2", "K1"])
def test_eliminate_backends_agree(name):
    d = KhComplex(diagram(name)).d
    assert compiled.eliminate_units(d) == _kernels_py.eliminate_units(d)


def test_fallback_selected_by_environment(monkeypatch):
    monkeypatch.setenv("ARCKH_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("ARCKH_PURE_PYTHON")
        importlib.reload(kernels)


def test_compiled_backend_is_default():
    assert kernels.BACKEND == "cython"
    assert homology(KhComplex(diagram("trefoil"))).total_rank() == 4
