#!/usr/bin/env python3
"""
Configuration Manager for polyfunlab
Handles environment-specific configuration loading and validation
"""

import os
import json
import logging
from pathlib import Path
from typing import Dict, Any, Optional
from dotenv import load_dotenv
import jsonschema

logger = logging.getLogger(__name__)

# Environment variables that override configuration keys
ENV_OVERRIDES = {
    'POLYFUN_SEED': 'verification.seed',
    'LOG_LEVEL': 'logging.level',
    'LOG_FORMAT': 'logging.format',
}


class ConfigurationError(Exception):
    """Raised when configuration is invalid or missing"""
    pass


class ConfigManager:
    """Environment-aware configuration manager"""

    def __init__(self, environment: Optional[str] = None):
        load_dotenv()
        self.environment = environment or os.getenv('POLYFUN_ENV', 'development')
        self.config_dir = Path(__file__).parent / 'environments'
        self.schema_path = Path(__file__).parent / 'config_schema.json'
        self._config: Dict[str, Any] = {}

        self._load_config_file()
        self._apply_environment_overrides()
        self._validate_configuration()

    def _load_config_file(self):
        """Load configuration from environment-specific JSON file"""
        config_file = self.config_dir / f"{self.environment}.json"

        if not config_file.exists():
            raise ConfigurationError(f"Configuration file not found: {config_file}")

        try:
            with open(config_file, 'r') as f:
                self._config = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"Invalid JSON in configuration file {config_file}: {e}")
        except OSError as e:
            raise ConfigurationError(f"Failed to load configuration file {config_file}: {e}")

    def _apply_environment_overrides(self):
        """Merge overrides from the process environment (and .env) so they are validated too"""
        for name, key in ENV_OVERRIDES.items():
            raw = os.getenv(name)
            if raw is None:
                continue
            value = self._convert_value(raw)
            if key == 'logging.level' and isinstance(value, str):
                value = value.upper()
            *parents, leaf = key.split('.')
            section = self._config
            for part in parents:
                section = section.setdefault(part, {})
            section[leaf] = value
            logger.debug(f"{name} overrides {key}")

    def _validate_configuration(self):
        """Validate configuration against schema if available"""
        if not self.schema_path.exists():
            logger.warning(f"Configuration schema not found: {self.schema_path}")
            return

        with open(self.schema_path, 'r') as f:
            schema = json.load(f)

        try:
            jsonschema.validate(self._config, schema)
        except jsonschema.ValidationError as e:
            where = '.'.join(str(p) for p in e.absolute_path) or '<root>'
            raise ConfigurationError(f"Configuration validation failed at {where}: {e.message}")
        logger.debug("Configuration validation passed")

    def get(self, key: str, default: Any = None, required: bool = False) -> Any:
        """Get configuration value (environment overrides already merged)"""
        value = self._get_nested(self._config, key.split('.'), default)

        if required and value is None:
            raise ConfigurationError(f"Required configuration key '{key}' not found")

        return value

    def _get_nested(self, config: Dict[str, Any], keys: list, default: Any) -> Any:
        """Get nested configuration value using dot notation"""
        current = config
        for key in keys:
            if isinstance(current, dict) and key in current:
                current = current[key]
            else:
                return default
        return current

    def _convert_value(self, value: str) -> Any:
        """Convert string environment variable to appropriate type"""
        if value.lower() in ('true', 'false'):
            return value.lower() == 'true'

        if value.lstrip('-').isdigit():
            return int(value)

        try:
            return float(value)
        except ValueError:
            pass

        if value.startswith('[') or value.startswith('{'):
            try:
                return json.loads(value)
            except json.JSONDecodeError:
                pass

        return value

    def get_logging_config(self) -> Dict[str, Any]:
        """Get logging configuration"""
        return {
            'level': str(self.get('logging.level', 'INFO')).upper(),
            'format': self.get('logging.format', 'simple'),
        }

    def get_verification_config(self) -> Dict[str, Any]:
        """Get defaults for the oracle-equivalence suites"""
        return {
            'seed': self.get('verification.seed', 20240901),
            'psi_max': self.get('verification.psi_max', 16),
            'group_max': self.get('verification.group_max', 16),
            'deco_samples': self.get('verification.deco_samples', 300),
            'voll_samples': self.get('verification.voll_samples', 200),
            'smarandache_max': self.get('verification.smarandache_max', 5000),
            'null_count_max': self.get('verification.null_count_max', 200),
        }

    def get_limits_config(self) -> Dict[str, Any]:
        """Get guards for the brute-force oracles"""
        return {
            'span_max_modulus': self.get('limits.span_max_modulus', 16),
            'multi_span_max_modulus': self.get('limits.multi_span_max_modulus', 8),
            'multi_span_max_points': self.get('limits.multi_span_max_points', 512),
            'multi_null_max_points': self.get('limits.multi_null_max_points', 1_000_000),
            'multi_index_max_points': self.get('limits.multi_index_max_points', 1_000_000),
            'idempotent_max_modulus': self.get('limits.idempotent_max_modulus', 10_000),
            'polyfunction_scan_max': self.get('limits.polyfunction_scan_max', 200_000),
            'factor_max': self.get('limits.factor_max', 1_000_000_000),
        }

    def __str__(self) -> str:
        return f"ConfigManager(environment={self.environment})"


# Global configuration instance
config_manager: Optional[ConfigManager] = None


def get_config() -> ConfigManager:
    """Get global configuration manager instance"""
    global config_manager
    if config_manager is None:
        config_manager = ConfigManager()
    return config_manager


def init_config(environment: Optional[str] = None) -> ConfigManager:
    """Initialize global configuration manager"""
    global config_manager
    config_manager = ConfigManager(environment)
    return config_manager


def get_limit(name: str) -> int:
    """Shorthand for a single oracle guard"""
    return int(get_config().get_limits_config()[name])
