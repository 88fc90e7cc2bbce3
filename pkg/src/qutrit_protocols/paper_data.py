"""Published settings and detector counts for the three experiments.

Secret-sharing and DBA rows are ``((a0, a1), (b0, b1), (c0, c1), m, counts)``
with ``m = None`` for rounds that fail the sift. CCP rows are
``((sa, sb, sc), T, counts)``. Counts are in detector order D0, D1, D2.
"""

from math import pi

SECRET_SHARING_TABLE = [
    ((0, 0), (0, 0), (2, 0), 2, (7, 5, 210)),
    ((1, 0), (0, 0), (1, 0), 2, (7, 6, 261)),
    ((2, 0), (2, 1), (2, 2), 0, (375, 15, 26)),
    ((0, 1), (2, 2), (1, 0), 0, (391, 10, 29)),
    ((1, 1), (0, 1), (2, 1), 0, (336, 7, 23)),
    ((2, 1), (1, 1), (1, 1), 1, (7, 373, 22)),
    ((0, 2), (2, 0), (0, 1), 2, (16, 13, 313)),
    ((1, 2), (2, 2), (2, 2), 2, (19, 8, 248)),
    ((2, 2), (1, 0), (1, 1), 1, (9, 284, 22)),
    ((1, 0), (0, 2), (2, 0), None, (102, 98, 94)),
    ((2, 2), (0, 0), (0, 0), None, (89, 75, 71)),
]
SECRET_SHARING_QTER_PCT = [5.41, 4.74, 9.86, 9.07, 8.20, 7.21, 8.48, 9.82, 9.84, 65.31, 62.13]

DBA_TABLE = [
    ((0, 0), (1, 0), (1, 0), 2, (16, 11, 337)),
    ((1, 0), (0, 0), (0, 0), 1, (16, 320, 19)),
    ((2, 0), (1, 0), (0, 0), 0, (347, 13, 20)),
    ((0, 1), (0, 1), (0, 1), 0, (363, 13, 20)),
    ((1, 1), (1, 1), (0, 1), 2, (11, 17, 333)),
    ((2, 1), (0, 1), (1, 1), 0, (309, 9, 13)),
    ((0, 2), (1, 1), (0, 0), 1, (7, 277, 19)),
    ((1, 2), (0, 2), (1, 2), 2, (9, 18, 274)),
    ((2, 2), (1, 2), (0, 2), 0, (300, 7, 26)),
]
DBA_QTER_PCT = [7.42, 9.86, 8.68, 8.33, 7.76, 6.65, 8.58, 8.97, 9.91]

CCP_TABLE = [
    ((0, 1, 8), 0, (350, 7, 28)),
    ((0, 2, 1), 1, (8, 284, 23)),
    ((1, 5, 0), 2, (14, 14, 255)),
    ((1, 6, 2), 0, (337, 5, 29)),
    ((2, 7, 3), 1, (13, 268, 16)),
    ((2, 0, 4), 2, (10, 2, 204)),
    ((3, 2, 4), 0, (302, 8, 22)),
    ((3, 1, 8), 1, (8, 358, 22)),
    ((4, 8, 3), 2, (10, 13, 269)),
    ((4, 5, 0), 0, (332, 12, 21)),
    ((5, 6, 1), 1, (21, 370, 19)),
    ((5, 4, 6), 2, (14, 18, 297)),
    ((6, 2, 1), 0, (298, 3, 28)),
    ((6, 8, 7), 1, (6, 297, 18)),
    ((7, 3, 5), 2, (6, 13, 232)),
    ((7, 0, 2), 0, (264, 12, 12)),
    ((8, 2, 2), 1, (7, 385, 31)),
    ((8, 8, 8), 2, (13, 11, 229)),
]
CCP_SUCCESS_PCT = [
    90.91, 92.53, 90.11, 90.84, 90.24, 94.44, 90.96, 92.27, 92.12,
    90.96, 90.24, 90.27, 90.30, 92.52, 92.43, 91.67, 90.40, 90.51,
]

_t = 2 * pi / 3
_n = 2 * pi / 9

# (x0, x1) -> (distributor angles, relay angles)
ENCODING_TABLE_S1 = {
    (0, 0): ((0, 0, 0), (0, 0, 0)),
    (0, 1): ((_t, 2 * _t, 0), (0, _t, 2 * _t)),
    (0, 2): ((2 * _t, _t, 0), (0, 2 * _t, _t)),
    (1, 0): ((2 * _t, 0, 0), (0, _t, _t)),
    (1, 1): ((0, 2 * _t, 0), (0, 2 * _t, 0)),
    (1, 2): ((_t, _t, 0), (0, 0, 2 * _t)),
    (2, 0): ((_t, 0, 0), (0, 2 * _t, 2 * _t)),
    (2, 1): ((2 * _t, 2 * _t, 0), (0, 0, _t)),
    (2, 2): ((0, _t, 0), (0, _t, 0)),
}

# S -> (distributor angles, relay angles)
ENCODING_TABLE_S2 = {
    0: ((0, 0, 0), (0, 0, 0)),
    1: ((7 * _n, 8 * _n, 0), (0, _n, 2 * _n)),
    2: ((5 * _n, 7 * _n, 0), (0, 2 * _n, 4 * _n)),
    3: ((_t, 2 * _t, 0), (0, _t, 2 * _t)),
    4: ((_n, 5 * _n, 0), (0, 4 * _n, 8 * _n)),
    5: ((8 * _n, 4 * _n, 0), (0, 5 * _n, _n)),
    6: ((2 * _t, _t, 0), (0, 2 * _t, _t)),
    7: ((4 * _n, 2 * _n, 0), (0, 7 * _n, 5 * _n)),
    8: ((2 * _n, _n, 0), (0, 8 * _n, 7 * _n)),
}
