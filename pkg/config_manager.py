"""
Configuration Manager for the self-dual code toolkit
Handles validation and management of config.json settings
"""

import copy
import json
import logging
import os
from typing import Dict, Any, Optional

logger = logging.getLogger('selfdual_codes')

SEED_ENV_VAR = "SELFDUAL_SEED"

DEFAULT_CONFIG: Dict[str, Any] = {
    "enumeration": {
        "budget": 2 ** 24,
        "chunk_size": 2 ** 16
    },
    "bounds": {
        "bisection_tolerance": 1e-12,
        "borderline_band": 1e-9,
        "max_iterations": 200,
        "scan_from": 4,
        "scan_to": 1024
    },
    "logging": {
        "log_dir": "./logs",
        "console_level": "WARNING",
        "file_level": "DEBUG"
    },
    "output": {
        "default_format": "json"
    },
    "seed": 0
}

_LEVEL_NAMES = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class ConfigError(Exception):
    """Custom exception for configuration errors"""
    pass


def validate_config(config: Dict[str, Any]) -> Dict[str, Any]:
    """
    Validate complete configuration with detailed error messages.

    Args:
        config: Configuration dictionary (defaults already merged)

    Returns:
        Validated config

    Raises:
        ConfigError: If any setting is missing or invalid
    """
    errors = []

    for section, validator in (
        ("enumeration", validate_enumeration_settings),
        ("bounds", validate_bounds_settings),
        ("logging", validate_logging_settings),
        ("output", validate_output_settings),
    ):
        if section not in config or not isinstance(config[section], dict):
            errors.append(f"缺少 '{section}' 配置节")
        else:
            errors.extend(validator(config[section]))

    seed = config.get("seed")
    if not isinstance(seed, int) or isinstance(seed, bool):
        errors.append("seed: 必须是整数")
    elif seed < 0:
        errors.append(f"seed: 值必须大于等于0，当前: {seed}")

    if errors:
        error_message = "配置验证失败:\n" + "\n".join(f"  - {error}" for error in errors)
        raise ConfigError(error_message)

    return config


def _check_positive_int(settings: Dict[str, Any], section: str, key: str,
                        upper: Optional[int] = None) -> list:
    errors = []
    value = settings.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        errors.append(f"{section}.{key}: 必须是整数")
    elif value <= 0:
        errors.append(f"{section}.{key}: 值必须大于0，当前: {value}")
    elif upper is not None and value > upper:
        errors.append(f"{section}.{key}: 值过大({value})，建议≤{upper}")
    return errors


def validate_enumeration_settings(enumeration: Dict[str, Any]) -> list:
    """
    Validate the minimum-distance enumeration budget.

    Args:
        enumeration: Enumeration settings dictionary

    Returns:
        List of error messages (empty if valid)
    """
    errors = []
    errors.extend(_check_positive_int(enumeration, "enumeration", "budget", upper=2 ** 40))
    errors.extend(_check_positive_int(enumeration, "enumeration", "chunk_size", upper=2 ** 22))
    return errors


def validate_bounds_settings(bounds: Dict[str, Any]) -> list:
    """
    Validate numeric settings of the bound computations.

    Args:
        bounds: Bounds settings dictionary

    Returns:
        List of error messages (empty if valid)
    """
    errors = []

    for key in ("bisection_tolerance", "borderline_band"):
        value = bounds.get(key)
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            errors.append(f"bounds.{key}: 必须是数字")
        elif not 0 < value < 1e-3:
            errors.append(f"bounds.{key}: 值必须在 (0, 1e-3) 之间，当前: {value}")

    errors.extend(_check_positive_int(bounds, "bounds", "max_iterations", upper=10000))
    errors.extend(_check_positive_int(bounds, "bounds", "scan_from"))
    errors.extend(_check_positive_int(bounds, "bounds", "scan_to"))

    scan_from, scan_to = bounds.get("scan_from"), bounds.get("scan_to")
    if isinstance(scan_from, int) and isinstance(scan_to, int) and scan_from > scan_to:
        errors.append(f"bounds.scan_from({scan_from}) 不能大于 bounds.scan_to({scan_to})")

    return errors


def validate_logging_settings(logging_settings: Dict[str, Any]) -> list:
    """
    Validate log directory and level names.

    Args:
        logging_settings: Logging settings dictionary

    Returns:
        List of error messages (empty if valid)
    """
    errors = []
    if not isinstance(logging_settings.get("log_dir"), str):
        errors.append("logging.log_dir: 路径必须是字符串")

    for key in ("console_level", "file_level"):
        level = logging_settings.get(key)
        if not isinstance(level, str) or level.upper() not in _LEVEL_NAMES:
            errors.append(f"logging.{key}: 无效的日志级别: {level}")
    return errors


def validate_output_settings(output: Dict[str, Any]) -> list:
    """Validate the default output format."""
    errors = []
    if output.get("default_format") not in ("json", "csv"):
        errors.append(f"output.default_format: 必须是 'json' 或 'csv'，当前: {output.get('default_format')}")
    return errors


def apply_seed_override(config: Dict[str, Any]) -> Dict[str, Any]:
    """
    Apply the SELFDUAL_SEED environment variable on top of the file setting.

    Raises:
        ConfigError: If the variable is set but is not an unsigned integer
    """
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or raw.strip() == "":
        return config
    try:
        seed = int(raw.strip())
    except ValueError:
        raise ConfigError(f"{SEED_ENV_VAR}: 必须是非负整数，当前: {raw!r}")
    if seed < 0:
        raise ConfigError(f"{SEED_ENV_VAR}: 必须是非负整数，当前: {seed}")
    config["seed"] = seed
    logger.debug(f"seed overridden by {SEED_ENV_VAR}={seed}")
    return config


def merge_defaults(config: Dict[str, Any]) -> Dict[str, Any]:
    """Merge DEFAULT_CONFIG into ``config`` section by section."""
    for section, section_defaults in DEFAULT_CONFIG.items():
        if isinstance(section_defaults, dict):
            # For nested dicts, merge individually
            if section not in config or not isinstance(config[section], dict):
                config[section] = {}
            for key, value in section_defaults.items():
                if key not in config[section]:
                    config[section][key] = value
        else:
            if section not in config:
                config[section] = section_defaults
    return config


def load_and_validate_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load configuration from JSON file and validate it.

    With no explicit path, config.json next to this module is used if it
    exists, and the built-in defaults otherwise.

    Args:
        config_path: Path to config.json file

    Returns:
        Validated configuration dictionary

    Raises:
        ConfigError: If configuration is invalid
        FileNotFoundError: If an explicit config file doesn't exist
    """
    explicit = config_path is not None
    if config_path is None:
        # Default to config.json in same directory
        config_path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.json")

    if not os.path.exists(config_path):
        if explicit:
            raise FileNotFoundError(f"Config file not found: {config_path}")
        logger.debug(f"未找到配置文件 {config_path}，使用默认配置")
        config = copy.deepcopy(DEFAULT_CONFIG)
    else:
        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                config = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"Config file JSON格式错误: {str(e)}")
        except OSError as e:
            raise ConfigError(f"无法读取配置文件: {str(e)}")

        if not isinstance(config, dict):
            raise ConfigError("Config file 顶层必须是JSON对象")
        config = merge_defaults(config)

    config = apply_seed_override(config)

    validated_config = validate_config(config)
    logger.debug(f"配置验证通过: budget={validated_config['enumeration']['budget']}, "
                 f"seed={validated_config['seed']}")

    return validated_config
