import itertools

import pytest

from quiverlab import build_registry


def brute_force_isomorphic(q1, q2) -> bool:
    """Factorial-search isomorphism oracle, independent of canonical keys."""
    n = q1.n
    if n != q2.n:
        return False
    b1, b2 = q1.b, q2.b
    for perm in itertools.permutations(range(n)):
        if all(b2[perm[i]][perm[j]] == b1[i][j] for i in range(n) for j in range(n)):
            return True
    return False


@pytest.fixture(scope="session")
def registry7():
    """All six families enumerated on 7 vertices (fast, ~1s)."""
    return build_registry([7], ["A", "D", "E", "A-tilde", "D-tilde", "E-tilde"])
