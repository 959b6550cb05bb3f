import csv
from pathlib import Path

import pytest

from mst_extremes.distributions import example_spec

DATA = Path(__file__).parent / "data"


def reference_table(name):
    """Rows ``(n, [d1_l, d1_p, d2_l, d2_p, d3_l, d3_p])`` of a reference error table."""
    with open(DATA / ("ref_%s.csv" % name), newline="") as fh:
        rows = list(csv.reader(fh))
    return [(int(r[0]), [float(v) for v in r[1:]]) for r in rows[1:]]


@pytest.fixture(scope="session")
def ex1():
    return example_spec(1)


@pytest.fixture(scope="session")
def ex2():
    return example_spec(2)
