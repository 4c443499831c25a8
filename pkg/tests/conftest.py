import pytest

from elkies.modpoly import ModPolyDB
from elkies.ring import ctx_create

# Worked example: y^2 = x^3 + x + 4 over F_5 with ell = 11.
EX_P, EX_A4, EX_A6, EX_ELL, EX_MU = 5, 1, 4, 11, 6
EX_ISOGENOUS = (-7329, -3934)

# G = 1/(1 + x^4 + 4x^6) mod (5^6, x^43): degree -> value
EX_G = {
    0: 1, 4: -1, 6: -4, 8: 1, 10: 8, 12: 15, 14: -12, 16: -47, 18: -48,
    20: 95, 22: 236, 24: 97, 26: -616, 28: -1041, 30: 228, 32: 3505,
    34: 3936, 36: -4417, 38: -2331, 40: 4298, 42: 4374,
}

# S coefficients with the printed precision: degree -> (value, k) meaning value + O(5^k)
EX_S = {
    1: (1, 6), 3: (0, 6), 5: (-733, 5), 7: (1058, 5), 9: (-1494, 5),
    11: (211, 5), 13: (-611, 5), 15: (-161, 4), 17: (4, 4), 19: (293, 4),
    21: (125, 4), 23: (192, 4), 25: (-1, 2), 27: (-7, 2), 29: (-10, 2),
    31: (0, 2), 33: (0, 2), 35: (-1, 1), 37: (8, 2), 39: (-1, 1),
    41: (2, 1), 43: (-2, 1),
}

# mod-5 data, ascending coefficients
EX_T = [1, 0, 2, 3, 1, 1, 4, 4, 4, 3, 0, 2, 4, 3, 0, 3, 0, 4, 3, 4, 2, 3]
EX_R = [1, 0, 1, 4, 0, 4, 4, 3, 2, 0, 2, 2, 3, 1, 3, 2, 1, 0, 3, 2, 2, 0]
EX_NUM = [1, 2, 2, 3, 2, 3, 1, 1, 1, 1, 0, 3]
EX_DEN = [1, 2, 1, 2, 3, 3, 3, 1, 1, 1, 1]
EX_D = [1, 1, 1, 1, 3, 3, 3, 2, 1, 2, 1]
EX_KERNEL = [1, 3, 1, 0, 1, 1]


@pytest.fixture(scope="session")
def db():
    return ModPolyDB()


@pytest.fixture(scope="session")
def F5():
    return ctx_create(5)


@pytest.fixture(scope="session")
def Z56():
    return ctx_create(5, 1, 6)
