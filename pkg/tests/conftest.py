import os

import pytest

from quiverhh.exactla import Field
from quiverhh.pathalg import Quiver, FreeElement, compose

DATA = os.path.join(os.path.dirname(__file__), "data")


def data_text(name):
    with open(os.path.join(DATA, name), "r", encoding="utf-8") as fh:
        return fh.read()


def written(quiver, *names):
    """Path from arrow names given in written (left to right) order."""
    return quiver.written_path(names)


def wnames(quiver, path):
    """Arrow names of a path in written order."""
    return tuple(quiver.arrow_names[i] for i in path.written())


def elem(field, quiver, *terms):
    """FreeElement from (coeff, path) pairs."""
    out = None
    for coeff, path in terms:
        t = FreeElement.from_path(path, field, field.of(coeff))
        out = t if out is None else out.add(t)
    return out


@pytest.fixture
def rationals():
    return Field(0)


@pytest.fixture
def two_loops():
    # x > y (y declared first)
    return Quiver(["e"], [("y", "e", "e"), ("x", "e", "e")])
