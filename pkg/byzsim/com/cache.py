import os
import json

from .errors import ConfigurationError, FormatError
from .com import logger

# keys whose string values are file paths, resolved against the config file's directory
PATH_KEYS = ("train_images", "train_labels", "test_images", "test_labels", "out_csv", "out_json")


def restore(from_file, **kwargs):
    """ Read a flat key/value configuration saved in a local JSON file.

    Args:
        from_file: string. The path of configuration file.
        kwargs: values overriding those in the file; `None` values are ignored.
    Returns:
        A dict of configuration values.
    """
    logger.info("Loading configuration from %s", from_file)

    if not os.path.exists(from_file):
        raise ConfigurationError("No file found with `%s`." % from_file)
    try:
        with open(from_file, encoding="utf-8") as from_fp:
            from_json = json.load(from_fp)
    except json.JSONDecodeError as e:
        raise FormatError("Invalid JSON: %s" % e.msg, path=from_file, offset=e.pos)
    if not isinstance(from_json, dict):
        raise FormatError("Expect a flat JSON object at top level.", path=from_file)

    from_dir = os.path.dirname(from_file) or "."
    values = {}
    for key, value in from_json.items():

        # convert from relative path
        if key in PATH_KEYS and isinstance(value, str) and not os.path.isabs(value):
            value = os.path.normpath(os.path.join(from_dir, value))
        values[key] = value

    for key, value in kwargs.items():
        if value is not None:
            values[key] = value
    return values


def localize(values, to_file):
    """ Save a flat configuration to `to_file`, keeping paths relative to its directory. """
    to_dir = os.path.dirname(os.path.abspath(to_file))
    to_json = {}
    for key, value in values.items():
        if key in PATH_KEYS and isinstance(value, str):
            value = get_relative_path(value, to_dir)
        to_json[key] = value

    with open(to_file, "w", encoding="utf-8") as to_fp:
        json.dump(to_json, to_fp, indent=2)
    logger.info("Saving configuration into %s", to_file)


def get_relative_path(path, start):
    """ Path of `path` as seen from directory `start`, with forward slashes. """
    return os.path.relpath(os.path.abspath(path), start).replace("\\", "/")


def restore_config(from_file, **kwargs):
    """ Read an `ExperimentConfig` from a flat JSON file, with optional overrides. """
    from ..core import ExperimentConfig
    return ExperimentConfig.from_flat(restore(from_file, **kwargs))


def localize_config(config, to_file):
    """ Save an `ExperimentConfig` as a flat JSON file. """
    localize(config.to_flat(), to_file)
