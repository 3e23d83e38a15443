"""
Configuration package for polyfunlab
Provides environment-aware configuration management
"""

from .config_manager import ConfigManager, get_config, init_config, get_limit, ConfigurationError

__all__ = ['ConfigManager', 'get_config', 'init_config', 'get_limit', 'ConfigurationError']
