import pytest

from building_ball import build_ball
from projective_plane import pg2_of_order


@pytest.fixture(scope="session")
def ball_r2():
    """Шар q=2 радиуса 2 (113 вершин)"""
    return build_ball(2, 2, threads=1)


@pytest.fixture(scope="session")
def ball_r3():
    """Шар q=2 радиуса 3 (673 вершины)"""
    return build_ball(2, 3, threads=1)


@pytest.fixture(scope="session")
def ball_q3():
    """Шар q=3 радиуса 2 (417 вершин)"""
    return build_ball(3, 2, threads=1)


@pytest.fixture(scope="session")
def planes():
    """Дезарговы плоскости порядков 2, 3, 4"""
    return {q: pg2_of_order(q) for q in (2, 3, 4)}
