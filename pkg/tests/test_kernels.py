import os
import subprocess
import sys

import numpy as np
import pytest

from sortstat import kernels, permutations as P
from sortstat.polynomials import distribution, var

BACKENDS = ["numpy", "numba"]

A_REF = {
    "inv": P.inv,
    "maj": P.maj,
    "sor": P.sor,
    "cyc": P.cyc,
    "rlminl_mask": P.rlminl_set,
    "cycmin_mask": P.cyc_min_set,
}
B_REF = {
    "neg": P.neg_count,
    "inv_B": P.inv_B,
    "nmin_B": P.nmin_B,
    "sor_B": P.sor_B,
    "cyc0_mask": P.cyc0_set,
    "cyc1_mask": P.cyc1_set,
    "prlminl_mask": P.prlminl_set,
}
D_REF = {"inv_D": P.inv_D, "sor_D": P.sor_D}


def _as_ref(value):
    return value if isinstance(value, int) else sum(1 << (i - 1) for i in value)


def _compare(windows, name, ref, be):
    got = getattr(kernels.backend(be), name)(windows)
    want = [_as_ref(ref(P.SignedPermutation(tuple(int(x) for x in w)))) for w in windows]
    assert got.tolist() == want


@pytest.mark.parametrize("be", BACKENDS)
@pytest.mark.parametrize("name", sorted(A_REF))
@pytest.mark.parametrize("n", [1, 2, 5])
def test_type_a_kernels_match_reference(be, name, n):
    _compare(kernels.windows_A(n), name, A_REF[name], be)


@pytest.mark.parametrize("be", BACKENDS)
@pytest.mark.parametrize("name", sorted(B_REF))
@pytest.mark.parametrize("n", [1, 3, 4])
def test_type_b_kernels_match_reference(be, name, n):
    _compare(kernels.windows_B(n), name, B_REF[name], be)


@pytest.mark.parametrize("be", BACKENDS)
@pytest.mark.parametrize("name", sorted(D_REF))
@pytest.mark.parametrize("n", [2, 3, 4])
def test_type_d_kernels_match_reference(be, name, n):
    _compare(kernels.windows_D(n), name, D_REF[name], be)


@pytest.mark.parametrize("name", kernels.STATS)
def test_backends_agree_on_larger_groups(name):
    if name in A_REF:
        w = kernels.windows_A(7)
    elif name in D_REF:
        w = kernels.windows_D(6)
    else:
        w = kernels.windows_B(6)
    a = getattr(kernels.backend("numpy"), name)(w)
    b = getattr(kernels.backend("numba"), name)(w)
    assert np.array_equal(a, b)


def test_window_counts():
    assert [len(kernels.windows_A(n)) for n in range(5)] == [1, 1, 2, 6, 24]
    assert [len(kernels.windows_B(n)) for n in range(5)] == [1, 2, 8, 48, 384]
    assert [len(kernels.windows_D(n)) for n in range(1, 5)] == [1, 4, 24, 192]
    assert kernels.windows_A(0).shape == (1, 0)


def test_windows_are_distinct_group_elements():
    w = kernels.windows_D(4)
    assert len({tuple(r) for r in w.tolist()}) == len(w)
    assert ((w < 0).sum(axis=1) % 2 == 0).all()


def test_mask_helpers():
    assert kernels.mask_to_set(0b1011) == frozenset({1, 2, 4})
    assert kernels.mask_to_set(0) == frozenset()
    assert kernels.popcount([0, 1, 7, 0b1010]).tolist() == [0, 1, 3, 2]


def test_joint_distribution_matches_generic():
    w = kernels.windows_A(4)
    k = kernels.backend("numpy")
    fast = kernels.joint_distribution({"q": k.inv(w)}, {"t": k.rlminl_mask(w)})
    slow = distribution(P.enumerate_Sr((4, 4, 4, 4)), lambda s: {"q": P.inv(s), "t": P.rlminl_set(s)})
    assert fast == slow


def test_joint_distribution_empty():
    assert kernels.joint_distribution({"q": np.zeros(0, dtype=np.int64)}) == 0
    assert kernels.joint_distribution({"q": np.array([0, 1, 1])}) == 1 + 2 * var("q")


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.backend("cuda")


def _backend_in_subprocess(value):
    env = dict(os.environ)
    env.pop("SORTSTAT_NO_NUMBA", None)
    if value is not None:
        env["SORTSTAT_NO_NUMBA"] = value
    out = subprocess.run(
        [sys.executable, "-c", "from sortstat import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    return out.stdout.strip()


def test_env_flag_selects_numpy():
    assert _backend_in_subprocess("1") == "numpy"
    assert _backend_in_subprocess("0") == "numba"
    assert _backend_in_subprocess(None) == "numba"


@pytest.mark.parametrize("be", BACKENDS)
def test_warmup(be):
    assert kernels.warmup(be) >= 0.0
