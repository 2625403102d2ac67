"""Reference pre-barrier lengths as printed, used only for comparison.

Values are kept as the printed strings (trailing zeros included) and are
never modified; ``as_float`` parses them on demand. Rows run from E = 0.99
down to E = 0.01 eV, columns follow ``*_LENGTHS``.
"""

from __future__ import annotations

from types import MappingProxyType

V0_REFERENCE = 1.0

RECT_LENGTHS = (0.1, 0.2, 0.5, 1.0, 2.0)
TRI_LENGTHS = (0.1, 0.2, 0.5, 1.0, 2.0)

_RECT_ROWS = (
    (0.99, ("0.0579", "0.116", "0.289", "0.528", "1.157")),
    (0.95, ("0.302", "0.603", "1.508", "3.016", "6.031")),
    (0.90, ("0.637", "1.273", "3.183", "6.366", "12.73")),
    (0.85, ("1.01", "2.02", "5.06", "10.11", "20.22")),
    (0.80, ("1.43", "2.86", "7.16", "14.32", "28.65")),
    (0.75, ("1.91", "3.82", "9.55", "19.10", "38.20")),
    (0.70, ("2.46", "4.91", "12.28", "24.56", "49.11")),
    (0.65, ("3.09", "6.17", "15.43", "30.85", "61.70")),
    (0.60, ("3.82", "7.64", "19.10", "38.20", "76.39")),
    (0.55, ("4.69", "9.38", "23.44", "46.88", "93.76")),
    (0.50, ("5.73", "11.46", "28.65", "57.30", "114.60")),
    (0.45, ("7.00", "14.01", "35.01", "70.03", "140.10")),
    (0.40, ("8.59", "17.19", "42.97", "85.94", "171.90")),
    (0.35, ("10.64", "21.28", "53.20", "106.40", "212.80")),
    (0.30, ("13.37", "26.74", "66.84", "133.69", "267.40")),
    (0.25, ("17.19", "34.38", "85.94", "171.89", "343.80")),
    (0.20, ("22.92", "45.84", "114.59", "229.18", "458.40")),
    (0.15, ("32.47", "64.94", "162.34", "324.67", "649.30")),
    (0.10, ("51.57", "103.13", "257.83", "515.65", "1031.00")),
    (0.05, ("108.62", "217.72", "544.30", "1088.57", "2177.00")),
    (0.01, ("567.23", "1134.44", "2835.00", "5671.05", "1135.00")),
)

_TRI_ROWS = (
    (0.99, ("1232.46", "1232.36", "1232.06", "1231.56", "1230.56")),
    (0.95, ("1258.14", "1258.04", "1257.74", "1257.24", "1256.24")),
    (0.90, ("1292.62", "1292.52", "1292.22", "1291.72", "1290.72")),
    (0.85, ("1330.09", "1329.99", "1329.69", "1329.19", "1328.19")),
    (0.80, ("1371.03", "1370.93", "1370.63", "1370.13", "1369.13")),
    (0.75, ("1416.00", "1415.90", "1415.60", "1415.10", "1414.10")),
    (0.70, ("1465.70", "1465.60", "1465.30", "1464.80", "1463.80")),
    (0.65, ("1521.04", "1520.94", "1520.64", "1520.14", "1519.14")),
    (0.60, ("1583.15", "1583.05", "1582.75", "1582.25", "1581.25")),
    (0.55, ("1653.55", "1653.45", "1653.15", "1652.65", "1651.65")),
    (0.50, ("1734.36", "1734.36", "1734.36", "1734.36", "1734.36")),
    (0.45, ("1828.17", "1828.16", "1828.12", "1828.07", "1827.96")),
    (0.40, ("1939.05", "1939.02", "1938.95", "1938.82", "1938.57")),
    (0.35, ("2072.92", "2072.87", "2072.74", "2072.53", "2072.10")),
    (0.30, ("2238.98", "2238.92", "2238.72", "2238.38", "2237.72")),
    (0.25, ("2452.66", "2452.56", "2452.26", "2451.76", "2450.76")),
    (0.20, ("2742.17", "2742.07", "2741.77", "2741.27", "2740.27")),
    (0.15, ("3166.40", "3166.30", "3166.00", "3165.50", "3164.50")),
    (0.10, ("3878.05", "3877.95", "3877.65", "3877.15", "3876.15")),
    (0.05, ("5484.43", "5484.33", "5484.03", "5483.53", "5482.53")),
    (0.01, ("12263.69", "12263.59", "12263.29", "12262.79", "12261.79")),
)

ENERGIES = tuple(r[0] for r in _RECT_ROWS)


def _table(rows, lengths):
    out = {}
    for E, values in rows:
        for L, v in zip(lengths, values):
            out[(E, L)] = v
    return MappingProxyType(out)


RECT_TABLE = _table(_RECT_ROWS, RECT_LENGTHS)
"""(E, b) -> printed |a| for the rectangular barrier with V0 = 1 eV."""

TRI_TABLE = _table(_TRI_ROWS, TRI_LENGTHS)
"""(E, c) -> printed |a| for the triangular barrier with V0 = 1 eV."""

FIG_MEAN_THETA_DEG = -359.77003
FIG_STDDEV_THETA_DEG = 0.178557
FIG_BARRIER_LENGTH = 1.0


def as_float(printed: str) -> float:
    return float(printed)
