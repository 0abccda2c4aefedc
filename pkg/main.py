import logging
import sys

import hydra
from omegaconf import DictConfig

from zonelab.experiment import EXIT_USAGE, override_error, run_experiment

logger = logging.getLogger(__name__)


@hydra.main(version_base=None, config_path="config", config_name="config")
def main(cfg: DictConfig):
    sys.exit(run_experiment(cfg))


if __name__ == "__main__":
    # exit code 1 is reserved for failed checks
    error = override_error(sys.argv[1:])
    if error is not None:
        logger.error(f"Invalid override: {error}")
        sys.exit(EXIT_USAGE)
    main()
