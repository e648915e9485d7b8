import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hpi.algebra import StructAlgebra
from hpi.field import GroundField, QQ
from hpi.linalg import Matrix


def dual_numbers(power=2, field=QQ):
    t = [[[field.zero] * power for _ in range(power)] for _ in range(power)]
    for i in range(power):
        for j in range(power):
            if i + j < power:
                t[i][j][i + j] = field.one
    return StructAlgebra(t, unit=[field.one] + [field.zero] * (power - 1), field=field)


def zero_mult_algebra(dim=1):
    t = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    return StructAlgebra(t)


def strict_upper_3():
    # basis e12, e13, e23
    t = [[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)]
    t[0][2][1] = 1  # e12 e23 = e13
    return StructAlgebra(t)


@pytest.fixture(scope="session")
def ut2():
    from hpi.hopfzoo import load_catalog

    return load_catalog("ut2-trivial").algebra


@pytest.fixture(scope="session")
def ut3():
    from hpi.hopfzoo import load_catalog

    return load_catalog("ut3-trivial").algebra


@pytest.fixture(scope="session")
def m2():
    from hpi.hopfzoo import load_catalog

    return load_catalog("m2-trivial").algebra


@pytest.fixture(scope="session")
def ff():
    from hpi.hopfzoo import load_catalog

    return load_catalog("f2-trivial").algebra


@pytest.fixture(scope="session")
def sweedler_action():
    from hpi.hopfzoo import load_catalog

    return load_catalog("sweedler-dual-numbers").action
