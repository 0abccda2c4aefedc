from dataclasses import dataclass
from typing import Optional

from hydra.utils import to_absolute_path
from omegaconf import DictConfig

from geometry.errors import ConfigError

MODES = ("euler-checks", "zone2d", "zone3d", "theorem1", "recurrence", "sweep")
QUERY_MODES = ("zone3d", "theorem1", "recurrence", "sweep")


def _optional_path(value: Optional[str]) -> Optional[str]:
    if value in (None, ""):
        return None
    return to_absolute_path(str(value))


def _optional_text(value: Optional[str]) -> Optional[str]:
    if value in (None, ""):
        return None
    return str(value)


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Validated experiment parameters.

    Attributes:
        mode (str): One of ``MODES``.
        n_min, n_max (int): Range of generator counts.
        trials_per_n (int): Random instances per n.
        seed (int): 64-bit seed; every trial derives its own stream from it.
        coefficient_bound (int): Numerators in ``[-bound, bound]``, denominators in ``[1, bound]``.
        max_n (int): Desk-scale ceiling on n, lifted by ``max_n_override``.
        planes_file, s_plane, lines_file, s_line: Fixture input replacing generation.
        out (str, optional): CSV destination; stdout when None.
    """

    mode: str
    n_min: int = 3
    n_max: int = 5
    trials_per_n: int = 5
    seed: int = 0
    coefficient_bound: int = 50
    max_n: int = 15
    max_n_override: bool = False
    planes_file: Optional[str] = None
    s_plane: Optional[str] = None
    lines_file: Optional[str] = None
    s_line: Optional[str] = None
    out: Optional[str] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"Unknown mode {self.mode!r}; choose one of {list(MODES)}.")
        if not 1 <= self.n_min <= self.n_max:
            raise ConfigError(f"Need 1 <= n_min <= n_max, got {self.n_min}, {self.n_max}.")
        if self.trials_per_n < 1:
            raise ConfigError(f"trials must be at least 1, got {self.trials_per_n}.")
        if self.coefficient_bound < 2:
            raise ConfigError(f"coeff_bound must be at least 2, got {self.coefficient_bound}.")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}.")
        if self.n_max > self.max_n and not self.max_n_override:
            raise ConfigError(
                f"n_max={self.n_max} exceeds the desk-scale ceiling {self.max_n}; "
                "set experiment.max_n_override=true to run anyway."
            )
        if self.s_plane is not None and self.planes_file is None:
            raise ConfigError("s_plane is only used together with planes_file.")
        if self.planes_file is not None and self.mode in QUERY_MODES and self.s_plane is None:
            raise ConfigError(f"Mode {self.mode} with planes_file also needs s_plane.")
        if self.mode == "sweep" and self.planes_file is not None:
            raise ConfigError("Mode sweep draws its own instances; drop planes_file.")
        if self.mode == "zone2d" and self.planes_file is not None:
            raise ConfigError(
                "Mode zone2d reads lines; use lines_file and s_line instead of planes_file."
            )
        if self.lines_file is not None and self.mode != "zone2d":
            raise ConfigError("lines_file is only used by mode zone2d.")
        if self.lines_file is not None and self.s_line is None:
            raise ConfigError("lines_file also needs s_line.")

    @classmethod
    def from_cfg(cls, cfg: DictConfig) -> "ExperimentConfig":
        experiment = cfg.experiment
        try:
            return cls(
                mode=str(cfg.mode),
                n_min=int(experiment.n_min),
                n_max=int(experiment.n_max),
                trials_per_n=int(experiment.trials),
                seed=int(experiment.seed),
                coefficient_bound=int(experiment.coeff_bound),
                max_n=int(experiment.max_n),
                max_n_override=bool(experiment.max_n_override),
                planes_file=_optional_path(cfg.get("planes_file")),
                s_plane=_optional_text(cfg.get("s_plane")),
                lines_file=_optional_path(cfg.get("lines_file")),
                s_line=_optional_text(cfg.get("s_line")),
                out=_optional_path(cfg.get("out")),
            )
        except (TypeError, ValueError) as error:
            if isinstance(error, ConfigError):
                raise
            raise ConfigError(f"Invalid experiment configuration: {error}") from error


@dataclass(frozen=True)
class EvaluatorSettings:
    """
    Attributes:
        oracle_checks (bool): Cross-check zones and censuses with the brute-force oracles.
        oracle_samples (int): Random points of S used by the point-location oracle.
        zone2d_factor (int): Bound factor c in the 2D check zone_size <= c * n.
        growth_tolerance (float): Allowed growth of max z(n)/n^2 between n_max/2 and n_max.
        progress (bool): Show a tqdm progress bar over trials.
    """

    oracle_checks: bool = False
    oracle_samples: int = 10
    zone2d_factor: int = 10
    growth_tolerance: float = 2.0
    progress: bool = False

    @classmethod
    def from_cfg(cls, cfg: DictConfig) -> "EvaluatorSettings":
        return cls(
            oracle_checks=bool(cfg.oracle_checks),
            oracle_samples=int(cfg.oracle_samples),
            zone2d_factor=int(cfg.zone2d_factor),
            growth_tolerance=float(cfg.growth_tolerance),
            progress=bool(cfg.progress),
        )
