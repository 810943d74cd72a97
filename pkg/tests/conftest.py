from pathlib import Path

import numpy as np
import pytest

from alleyflow import io as aio
from alleyflow.netmodel import build_graph
from alleyflow.synth import make_grid_venue, random_venue

DATA = Path(__file__).parent / "data"

SHOPPER_160 = (
    "1a-A-B-D-F-H-J-I-K-L-N-M-K-X-AA-AD-AG-AJ-AM-AL-AO-AP-AS-AR-AU-AV-AY-BB-BE-BH-"
    "BK-BL-BO-BN-BQ-BR-BO-BL-BI-BF-BC-AZ-1d-1c-1b"
)


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def grid5():
    return build_graph(*make_grid_venue(5, 5, 10.0))


@pytest.fixture
def shopper_venue():
    return aio.load_venue(DATA / "shopper160_nodes.csv", DATA / "shopper160_links.csv")


def random_graphs(count, n_max, seed, one_way=0.2, n_min=2):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        yield build_graph(*random_venue(n, rng, extra=float(rng.uniform(0.05, 0.5)), one_way=one_way))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report():
        terminalreporter.write_line(line)
