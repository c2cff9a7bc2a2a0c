import numpy as np
import pytest

from sparkcert import build_matrix


@pytest.fixture
def identity3():
    return build_matrix(np.eye(3))


@pytest.fixture
def three_column_pair():
    # e1, e2, and their normalized sum: coherences {1/sqrt(2), 1/sqrt(2), 0}
    s = 1.0 / np.sqrt(2.0)
    return build_matrix([[1.0, 0.0, s], [0.0, 1.0, s]])
