from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from geometry.errors import InsufficientData
from geometry.exact import format_rational


@dataclass(frozen=True)
class ZoneObservation:
    """
    One measured zone size; anything with ``n`` and ``zone_size`` (such as a
    RecurrenceRecord) can be fed to ``fit_constants``.
    """

    n: int
    zone_size: int


@dataclass(frozen=True)
class ZoneStatisticsRow:
    n: int
    trials: int
    max_zone: int
    mean_zone: float
    max_f: Fraction
    max_ratio_n2: Fraction


@dataclass(frozen=True)
class ZoneStatistics:
    """
    Per-n maxima of z(n), f(n) = z(n)/n and z(n)/n^2, plus the least-squares line
    through (n, max f(n)) whose slope estimates the constant of the quadratic bound.
    """

    rows: Tuple[ZoneStatisticsRow, ...]
    slope: float
    intercept: float

    def row(self, n: int) -> Optional[ZoneStatisticsRow]:
        for row in self.rows:
            if row.n == n:
                return row
        return None

    def growth_ratio(self, low_n: int, high_n: int) -> Fraction:
        """
        max z(high_n)/high_n^2 divided by max z(low_n)/low_n^2.
        """
        low, high = self.row(low_n), self.row(high_n)
        if low is None or high is None:
            raise InsufficientData(f"No observations for n={low_n} and n={high_n}.")
        if low.max_ratio_n2 == 0:
            raise InsufficientData(f"Every zone observed for n={low_n} is empty.")
        return high.max_ratio_n2 / low.max_ratio_n2

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "n": row.n,
                    "trials": row.trials,
                    "max_zone": row.max_zone,
                    "max_f": format_rational(row.max_f),
                    "max_z_over_n2": format_rational(row.max_ratio_n2),
                    "mean_zone_approx": row.mean_zone,
                    "max_f_approx": float(row.max_f),
                    "max_z_over_n2_approx": float(row.max_ratio_n2),
                    "slope_approx": self.slope,
                    "intercept_approx": self.intercept,
                }
                for row in self.rows
            ]
        )


def fit_constants(records: Iterable) -> ZoneStatistics:
    """
    Aggregate zone sizes by n and fit max f(n) = z(n)/n against n.

    Args:
        records (Iterable): Objects with ``n`` and ``zone_size`` attributes, e.g.
            ZoneObservation or RecurrenceRecord.

    Returns:
        ZoneStatistics: The per-n table and the fitted slope (floating point, reporting only).
    """
    grouped: Dict[int, List[int]] = {}
    for record in records:
        grouped.setdefault(record.n, []).append(record.zone_size)
    grouped = {n: sizes for n, sizes in grouped.items() if n > 0}
    if len(grouped) < 2:
        raise InsufficientData(
            f"Need zone sizes for at least 2 distinct n, got {sorted(grouped)}."
        )

    rows = []
    for n in sorted(grouped):
        sizes = grouped[n]
        max_zone = max(sizes)
        rows.append(
            ZoneStatisticsRow(
                n=n,
                trials=len(sizes),
                max_zone=max_zone,
                mean_zone=float(np.mean(sizes)),
                max_f=Fraction(max_zone, n),
                max_ratio_n2=Fraction(max_zone, n * n),
            )
        )

    ns = np.array([row.n for row in rows], dtype=float)
    fs = np.array([float(row.max_f) for row in rows])
    slope, intercept = np.polyfit(ns, fs, 1)
    return ZoneStatistics(rows=tuple(rows), slope=float(slope), intercept=float(intercept))
