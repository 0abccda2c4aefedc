import logging
import os
import sys
from typing import List, Optional

from hydra import compose, initialize_config_dir
from hydra.errors import HydraException
from omegaconf import DictConfig
from omegaconf.errors import OmegaConfBaseException

from eval.evaluator import ExperimentEvaluator, ExperimentResult
from geometry.errors import (
    ConfigError,
    GenerationExhausted,
    GeometryError,
    InstanceIOError,
    ParseError,
    VerificationError,
)
from instances.files import emit_csv
from zonelab.settings import EvaluatorSettings, ExperimentConfig

ROOT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIG_DIR = os.path.join(ROOT_DIR, "config")

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

INPUT_ERRORS = (ConfigError, ParseError, InstanceIOError, GenerationExhausted, GeometryError)


def summary_path(out: str) -> str:
    stem, _ = os.path.splitext(out)
    return f"{stem}_summary.csv"


def override_error(overrides: List[str]) -> Optional[str]:
    """
    Compose the config with command-line overrides and return the composition error, if
    any. Flags such as ``--multirun`` are left to Hydra.
    """
    overrides = [arg for arg in overrides if not arg.startswith("-")]
    try:
        with initialize_config_dir(config_dir=CONFIG_DIR, version_base=None):
            compose(config_name="config", overrides=overrides, return_hydra_config=True)
    except (HydraException, OmegaConfBaseException) as error:
        return str(error)
    return None


class ExperimentRunner:
    """
    A class to configure and run zone experiments.
    """

    def __init__(
        self,
        mode: Optional[str] = None,
        overrides: Optional[List[str]] = None,
        cfg: Optional[DictConfig] = None,
    ):
        """
        Initialize the runner from an already composed config, or compose one from the
        packaged config directory.

        Args:
            mode (str, optional): Experiment mode, e.g. 'zone3d' or 'sweep'.
            overrides (List[str], optional): Hydra overrides such as 'experiment.seed=7'.
            cfg (DictConfig, optional): A composed config; mode and overrides are ignored.
        """
        self.mode = mode
        self.overrides = list(overrides or [])
        self.cfg = cfg if cfg is not None else self._load_config()
        self.config = ExperimentConfig.from_cfg(self.cfg)
        self.settings = EvaluatorSettings.from_cfg(self.cfg.evaluator)
        self.csv_text: Optional[str] = None

    def _load_config(self) -> DictConfig:
        overrides = ([f"mode={self.mode}"] if self.mode else []) + self.overrides
        with initialize_config_dir(config_dir=CONFIG_DIR, version_base=None):
            cfg = compose(config_name="config", overrides=overrides)
        return cfg

    def run(self) -> ExperimentResult:
        """
        Run the configured experiment and write its CSV and, if any, its summary.
        """
        result = ExperimentEvaluator(self.config, self.settings).run()
        self.csv_text = self.write(result)
        return result

    def write(self, result: ExperimentResult) -> str:
        out = self.config.out
        text = emit_csv(result.rows, out)
        if result.statistics is not None and out is not None:
            emit_csv(result.statistics.to_frame().to_dict("records"), summary_path(out))
        return text


def run_experiment(cfg: DictConfig) -> int:
    """
    Run an experiment from a composed config and map the outcome to an exit code:
    0 when every check passed, 1 on a failed check, 2 on bad configuration or input.
    """
    try:
        runner = ExperimentRunner(cfg=cfg)
        runner.run()
    except VerificationError as error:
        logger.error(f"Verification failed: {error}")
        return EXIT_VERIFICATION_FAILED
    except INPUT_ERRORS as error:
        logger.error(f"Invalid input: {error}")
        return EXIT_USAGE

    if runner.config.out is None:
        sys.stdout.write(runner.csv_text)
    return EXIT_OK
