import pytest

from ttba import bundled


@pytest.fixture(scope="session")
def tri_scalar():
    return bundled.scalar_triangular()


@pytest.fixture(scope="session")
def tri_m2():
    return bundled.m2_triangular()


@pytest.fixture(scope="session")
def tri_c3():
    return bundled.c3_triangular()


@pytest.fixture(scope="session")
def tri_x0():
    return bundled.x_zero_triangular()


@pytest.fixture(scope="session")
def tri_anchored():
    return bundled.anchored_triangular_a()


@pytest.fixture(scope="session")
def bundled_suite(tri_scalar, tri_m2, tri_c3, tri_anchored):
    """The four nontrivial bundled triangles (X != 0)."""
    return {"scalar": tri_scalar, "m2": tri_m2, "c3": tri_c3,
            "anchored": tri_anchored}
