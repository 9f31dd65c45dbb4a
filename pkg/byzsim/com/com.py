import logging

import numpy as np

logger = logging.getLogger("byzsim")
logger.addHandler(logging.StreamHandler())
logger.propagate = False


def set_verbosity(level=2):
    """ Set exposure level of detail information. """
    if level == 2:
        logger.setLevel(logging.INFO)
    elif level == 1:
        logger.setLevel(logging.WARN)
    elif level == 0:
        logger.setLevel(logging.ERROR)
    else:
        raise ValueError(
          "Invalid value: %s. Pick from `0`, `1` and `2`. "
          "The larger the value, the more information will be printed." % level
        )


def set_log(log_file):
    """ Set logging file. """
    logger.setLevel(logging.INFO)
    fh = logging.FileHandler(log_file)
    fh.setLevel(logging.INFO)
    logger.addHandler(fh)


def derive_seed(*keys):
    """ Mix integer keys, e.g. (master seed, round, worker id), into one 32-bit seed.

    The derived seed depends only on the keys, never on the order in which
    callers happen to ask for it, so parallel workers stay reproducible.
    """
    keys = [int(key) for key in keys]
    if any(key < 0 for key in keys):
        raise ValueError("Seed keys must be non-negative integers, got %s." % keys)
    return int(np.random.SeedSequence(keys).generate_state(1)[0])
