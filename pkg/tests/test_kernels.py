import os
import random
import subprocess
import sys

import pytest

from _gen import SMALL_PARAMS, random_word
from bsva import _kernels, _pykernels

ck = pytest.importorskip("bsva._ckernels")

FUNCS = ["britton_left", "britton_right", "sweep", "normal_form", "affine"]


def syllable_form(word):
    syl = word.syllables()
    return syl[0], [tuple(x) for x in syl[1]]


def random_inputs(rng, count):
    for _ in range(count):
        n, m = rng.choice(SMALL_PARAMS)
        e0, syls = syllable_form(random_word(rng, n, m))
        yield n, m, e0, syls


def test_backend_default_is_compiled():
    if os.environ.get("BSVA_PURE_PYTHON", "") in ("", "0"):
        assert _kernels.BACKEND == ck.BACKEND != _pykernels.BACKEND


@pytest.mark.parametrize("name", FUNCS)
def test_word_kernel_parity(name):
    rng = random.Random(name)
    py, c = getattr(_pykernels, name), getattr(ck, name)
    for n, m, e0, syls in random_inputs(rng, 2000):
        assert c(n, m, e0, syls) == py(n, m, e0, syls)


def test_sweep_parity_after_reduction():
    rng = random.Random(5)
    for n, m, e0, syls in random_inputs(rng, 2000):
        red = _pykernels.britton_left(n, m, e0, syls)
        assert ck.sweep(n, m, *red) == _pykernels.sweep(n, m, *red)


def test_overflow_falls_back_to_exact_integers():
    # b^70 a^(2^70) b^-70 overflows a 64-bit fast path; the result must stay exact
    n, m = 2, 3
    syls = [(1, 0)] * 69 + [(1, 2**70)] + [(-1, 0)] * 70
    for name in ("britton_left", "britton_right", "normal_form"):
        assert getattr(ck, name)(n, m, 0, syls) == getattr(_pykernels, name)(n, m, 0, syls)
    assert ck.normal_form(n, m, 0, syls) == (3**70, [])
    huge = [(1, 2**63 - 1), (-1, 5), (1, -(2**63))]
    assert ck.normal_form(3, 5, 2**62, huge) == _pykernels.normal_form(3, 5, 2**62, huge)


@pytest.mark.parametrize("name", ["forward_neighbors", "backward_neighbors"])
def test_neighbor_kernel_parity(name):
    rng = random.Random(name)
    py, c = getattr(_pykernels, name), getattr(ck, name)
    for _ in range(3000):
        n, m = rng.choice(SMALL_PARAMS)
        q = rng.randint(1, 10**rng.randint(1, 25))
        p = rng.randrange(q)
        assert c(n, m, p, q) == py(n, m, p, q)


def test_env_forces_pure_python():
    code = "from bsva import _kernels; print(_kernels.BACKEND)"
    env = dict(os.environ, BSVA_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
