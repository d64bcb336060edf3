"""Shared fixtures.

CONVEX10 is a frozen integer realization of 10 points in convex position,
counterclockwise (its chirotope is identically +1), in strong general
position, with uint16 coordinates.  It lives in kpkc.geomoracle; the
chirotope-equality test in test_chirotope pins it against drift.
"""

import pytest

from kpkc.geomoracle import convex_config

CONVEX10 = convex_config()


@pytest.fixture(scope="session")
def convex10_points():
    return CONVEX10
