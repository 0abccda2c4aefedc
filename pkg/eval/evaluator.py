import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Optional

from tqdm.auto import tqdm

from eval.census import check_arrangement_2d, check_arrangement_3d
from eval.oracles import first_zone_disagreement, sign_vector_census_2d
from eval.statistics import ZoneObservation, ZoneStatistics, fit_constants
from eval.zone_analysis import verify_recurrence, verify_theorem1
from geometry.arrangement2d import build_arrangement_2d, compute_box_half_width_2d, zone_2d
from geometry.arrangement3d import (
    Arrangement3,
    build_arrangement_3d,
    compute_box_half_width,
    zone_3d,
)
from geometry.errors import (
    ConfigError,
    DegenerateInstance,
    GeometryError,
    InsufficientData,
    VerificationError,
    ZoneLabError,
)
from geometry.exact import Line2, Plane, format_rational
from geometry.general_position import general_position_3d
from instances.files import (
    dump_arrangement,
    format_lines,
    format_planes,
    parse_line,
    parse_lines_file,
    parse_plane,
    parse_planes_file,
)
from instances.generation import generate_lines, generate_planes
from instances.random_source import SplitMix64
from zonelab.settings import EvaluatorSettings, ExperimentConfig

logger = logging.getLogger(__name__)

Row = Dict[str, Any]


@dataclass
class Instance:
    n: int
    trial: int
    rng: SplitMix64
    planes: List[Plane] = field(default_factory=list)
    s: Optional[Plane] = None
    lines: List[Line2] = field(default_factory=list)
    s_line: Optional[Line2] = None
    from_fixture: bool = False
    arrangement: Optional[Arrangement3] = None

    def dump(self, seed: int) -> str:
        header = f"seed={seed} n={self.n} trial={self.trial}"
        if self.lines:
            if self.s_line is not None:
                header += f"\nquery line: {self.s_line}"
            return format_lines(self.lines, header)
        if self.s is not None:
            header += f"\nquery plane: {self.s}"
        return format_planes(self.planes, header)


@dataclass
class ExperimentResult:
    mode: str
    rows: List[Row]
    statistics: Optional[ZoneStatistics] = None


def _ratio(numerator: int, denominator: int) -> float:
    return numerator / denominator if denominator else 0.0


class ExperimentEvaluator:
    """
    Runs one experiment mode over generated or fixture instances and collects CSV rows.
    Every exact identity and inequality is asserted; the first failure aborts the run
    with the seed, n, trial and a replayable dump of the instance.
    """

    def __init__(self, config: ExperimentConfig, settings: EvaluatorSettings):
        self.config = config
        self.settings = settings
        self.handlers: Dict[str, Callable[[Instance], List[Row]]] = {
            "euler-checks": self.evaluate_euler,
            "zone2d": self.evaluate_zone2d,
            "zone3d": self.evaluate_zone3d,
            "theorem1": self.evaluate_theorem1,
            "recurrence": self.evaluate_recurrence,
            "sweep": self.evaluate_sweep,
        }
        self._recurrence_records = []

    def run(self) -> ExperimentResult:
        mode = self.config.mode
        handler = self.handlers[mode]
        logger.info(f"--- Starting {mode} experiment (seed={self.config.seed}) ---")

        rows: List[Row] = []
        instances = list(self.instances())
        for instance in tqdm(instances, desc=mode, disable=not self.settings.progress):
            logger.debug(f"Evaluating n={instance.n} trial={instance.trial}")
            try:
                rows.extend(handler(instance))
            except VerificationError as error:
                self._fail(error, instance)
            except GeometryError as error:
                if instance.from_fixture:
                    raise
                # generated instances are validated, so this is a broken invariant
                self._fail(VerificationError(str(error)), instance, cause=error)
            except ZoneLabError as error:
                logger.error(
                    f"{error} (seed={self.config.seed}, n={instance.n}, trial={instance.trial})"
                )
                raise

        statistics = self.summarize(rows)
        logger.info(f"--- {mode} experiment complete: {len(rows)} rows ---")
        return ExperimentResult(mode=mode, rows=rows, statistics=statistics)

    def _fail(
        self,
        error: VerificationError,
        instance: Instance,
        cause: Optional[Exception] = None,
    ) -> None:
        error.annotate(self.config.seed, instance.n, instance.trial, instance.dump(self.config.seed))
        logger.error(f"Check failed: {error}")
        logger.error(f"Offending instance:\n{error.dump}")
        if instance.arrangement is not None:
            logger.error(f"Arrangement:\n{dump_arrangement(instance.arrangement)}")
        raise error from cause

    def instances(self) -> Iterator[Instance]:
        """
        Fixture input when configured, otherwise ``trials_per_n`` random instances for
        every n, each drawn from its own (seed, n, trial) stream.
        """
        config = self.config
        if config.planes_file is not None:
            planes = parse_planes_file(config.planes_file)
            self._check_fixture_size(len(planes))
            s = parse_plane(config.s_plane) if config.s_plane is not None else None
            yield Instance(
                len(planes), 0, SplitMix64.for_trial(config.seed, len(planes), 0),
                planes=planes, s=s, from_fixture=True,
            )
            return
        if config.lines_file is not None:
            lines = parse_lines_file(config.lines_file)
            yield Instance(
                len(lines), 0, SplitMix64.for_trial(config.seed, len(lines), 0),
                lines=lines, s_line=parse_line(config.s_line), from_fixture=True,
            )
            return

        with_query = config.mode != "euler-checks"
        for n in range(config.n_min, config.n_max + 1):
            for trial in range(config.trials_per_n):
                rng = SplitMix64.for_trial(config.seed, n, trial)
                instance = Instance(n, trial, rng)
                if config.mode == "zone2d":
                    instance.lines, instance.s_line = generate_lines(
                        n, rng, config.coefficient_bound, with_query=True
                    )
                else:
                    instance.planes, instance.s = generate_planes(
                        n, rng, config.coefficient_bound, with_query=with_query
                    )
                yield instance

    def _check_fixture_size(self, n: int) -> None:
        if n > self.config.max_n and not self.config.max_n_override:
            raise ConfigError(
                f"Fixture has {n} planes, above the desk-scale ceiling {self.config.max_n}."
            )

    def _arrangement(self, instance: Instance, with_query: bool = True) -> Arrangement3:
        extras = []
        if with_query:
            report = general_position_3d(instance.planes, instance.s)
            if not report:
                raise DegenerateInstance(f"general position violated: {report.describe()}")
            extras = [instance.s]
        half_width = compute_box_half_width(instance.planes, extras)
        instance.arrangement = build_arrangement_3d(instance.planes, half_width)
        return instance.arrangement

    def _base_row(self, instance: Instance) -> Row:
        return {"seed": self.config.seed, "n": instance.n, "trial": instance.trial}

    def evaluate_euler(self, instance: Instance) -> List[Row]:
        arr = self._arrangement(instance, with_query=False)
        half_width = arr.box_half_width
        census = check_arrangement_3d(arr)
        row = self._base_row(instance)
        row.update(
            {
                "box_half_width": format_rational(half_width),
                "cells": census["cells"],
                "generator_vertices": census["generator_vertices"],
                "vertices": census["vertices"],
                "generator_faces": census["generator_faces"],
                "max_cell_faces": max(cell.f_count for cell in arr.cells),
                "identities_ok": True,
            }
        )
        return [row]

    def _zone2d_row(self, lines: List[Line2], s_line: Line2) -> Row:
        n = len(lines)
        half_width = compute_box_half_width_2d(lines, [s_line])
        arr = build_arrangement_2d(lines, half_width)
        census = check_arrangement_2d(arr)
        if self.settings.oracle_checks:
            realized = sign_vector_census_2d(arr.lines, half_width)
            built = {tuple(face.sign_vector[line.id] for line in arr.lines) for face in arr.faces}
            if realized != built:
                raise VerificationError(
                    f"Sign-vector census finds {len(realized)} faces, builder {len(built)}."
                )
        zone = zone_2d(arr, s_line)
        if n >= 1 and zone.zone_size < zone.face_count:
            raise VerificationError(
                f"2D zone size {zone.zone_size} below its face count {zone.face_count}."
            )
        if n >= 1 and zone.zone_size > self.settings.zone2d_factor * n:
            raise VerificationError(
                f"2D zone size {zone.zone_size} exceeds {self.settings.zone2d_factor}*n."
            )
        return {
            "faces": census["faces"],
            "zone2d_faces": zone.face_count,
            "zone2d_size": zone.zone_size,
            "zone2d_vertices": zone.vertex_count,
            "zone2d_per_n_approx": _ratio(zone.zone_size, n),
        }

    def evaluate_zone2d(self, instance: Instance) -> List[Row]:
        row = self._base_row(instance)
        row.update(self._zone2d_row(instance.lines, instance.s_line))
        return [row]

    def _zone3d_row(self, instance: Instance) -> Row:
        n = instance.n
        arr = self._arrangement(instance)
        half_width = arr.box_half_width
        zone = zone_3d(arr, instance.s)
        if n >= 1 and zone.cell_count > zone.zone_size:
            raise VerificationError(
                f"Zone has {zone.cell_count} cells but size {zone.zone_size}."
            )
        if self.settings.oracle_checks:
            check_arrangement_3d(arr)
            disagreement = first_zone_disagreement(
                arr, instance.s, set(zone.cell_ids), instance.rng, self.settings.oracle_samples
            )
            if disagreement is not None:
                raise VerificationError(f"Zone oracle mismatch: {disagreement}.")
        return {
            "box_half_width": format_rational(half_width),
            "cells": len(arr.cells),
            "zone_cells": zone.cell_count,
            "zone_size": zone.zone_size,
            "zone_complexity": zone.complexity,
            "z_over_n_approx": _ratio(zone.zone_size, n),
            "z_over_n2_approx": _ratio(zone.zone_size, n * n),
            "complexity_ratio_approx": _ratio(zone.complexity, zone.zone_size),
        }

    def evaluate_zone3d(self, instance: Instance) -> List[Row]:
        row = self._base_row(instance)
        row.update(self._zone3d_row(instance))
        return [row]

    def evaluate_theorem1(self, instance: Instance) -> List[Row]:
        arr = self._arrangement(instance)
        zone = zone_3d(arr, instance.s)
        rows = []
        for plane in arr.planes:
            record = verify_theorem1(arr.planes, instance.s, plane.id, arr=arr, zone=zone)
            breakdown = record.case_breakdown
            row = self._base_row(instance)
            row.update(
                {
                    "q": record.q_id,
                    "lhs": record.lhs_pairs,
                    "rhs_zone_a_minus_q": record.rhs_zone_a_minus_q,
                    "rhs_zone_lq": record.rhs_zone_lq,
                    "ok": record.ok,
                    "uncut_pairs": breakdown.uncut_pairs,
                    "one_side_pairs": breakdown.one_side_pairs,
                    "both_split_faces": breakdown.both_split_faces,
                    "both_unsplit_pairs": breakdown.both_unsplit_pairs,
                    "lq_faces": record.lq_face_count,
                }
            )
            rows.append(row)
        return rows

    def evaluate_recurrence(self, instance: Instance) -> List[Row]:
        record = verify_recurrence(instance.planes, instance.s, self._arrangement(instance))
        self._recurrence_records.append(record)
        row = self._base_row(instance)
        row.update(
            {
                "zone_size": record.zone_size,
                "lhs": record.lhs,
                "rhs": record.rhs,
                "sum_lhs_pairs": record.sum_lhs_pairs,
                "ok": record.ok,
                "f_value": format_rational(record.f_value),
                "c_estimate": format_rational(record.c_estimate),
                "f_value_approx": float(record.f_value),
                "c_estimate_approx": float(record.c_estimate),
                "f_bound_approx": float(record.f_bound),
            }
        )
        return [row]

    def evaluate_sweep(self, instance: Instance) -> List[Row]:
        row = self._base_row(instance)
        row.update(self._zone3d_row(instance))
        lines, s_line = generate_lines(
            instance.n, instance.rng, self.config.coefficient_bound, with_query=True
        )
        row.update(self._zone2d_row(lines, s_line))
        return [row]

    def summarize(self, rows: List[Row]) -> Optional[ZoneStatistics]:
        """
        Fit the zone constants for sweep and multi-n recurrence runs, and check that
        max z(n)/n^2 stays bounded between n_max/2 and n_max.
        """
        mode = self.config.mode
        if mode == "recurrence" and len({r.n for r in self._recurrence_records}) >= 2:
            statistics = fit_constants(self._recurrence_records)
        elif mode == "sweep" and len({row["n"] for row in rows}) >= 2:
            statistics = fit_constants(
                ZoneObservation(row["n"], row["zone_size"]) for row in rows
            )
        else:
            return None

        logger.info("--- Zone statistics ---")
        for stat_row in statistics.rows:
            logger.info(
                f"n={stat_row.n}: max z={stat_row.max_zone}, max f={float(stat_row.max_f):.3f}, "
                f"max z/n^2={float(stat_row.max_ratio_n2):.3f}"
            )
        logger.info(f"Fitted slope of max f(n) against n: {statistics.slope:.4f}")

        if mode == "sweep":
            high = self.config.n_max
            low = max(self.config.n_min, high // 2)
            if low < high:
                try:
                    growth = statistics.growth_ratio(low, high)
                except InsufficientData as error:
                    logger.warning(f"Skipping growth check: {error}")
                    return statistics
                logger.info(f"Growth of max z(n)/n^2 from n={low} to n={high}: {float(growth):.3f}")
                if growth > Fraction(self.settings.growth_tolerance):
                    raise VerificationError(
                        f"max z(n)/n^2 grew by {float(growth):.3f} from n={low} to n={high}, "
                        f"above the tolerance {self.settings.growth_tolerance}.",
                        seed=self.config.seed,
                    )
        return statistics
