#!/usr/bin/env python3
"""
Configuration Management for the LG Witten Class Toolkit
Caps and budgets for every capped computation
"""

import os
import yaml
import logging
from pathlib import Path
from typing import Dict, Any, Optional
from dataclasses import dataclass

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

load_dotenv()

ENV_PREFIX = "LGWITTEN_"
DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config.yaml"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class AppConfig:
    """CLI and report configuration"""
    log_level: str = "INFO"
    log_file: Optional[str] = None
    indent: int = 2


@dataclass
class ArithConfig:
    """Exact arithmetic configuration"""
    enumeration_cap: int = 1_000_000


@dataclass
class GroebnerConfig:
    """Buchberger budget"""
    max_reductions: int = 10_000
    max_degree: int = 40


@dataclass
class SectorConfig:
    """Sector enumeration configuration"""
    enumeration_cap: int = 1_000_000


@dataclass
class GraphConfig:
    """Automorphism search guard"""
    max_vertices: int = 8
    max_edges: int = 12


@dataclass
class ChowConfig:
    """Truncated Chow ring configuration"""
    default_dimension: int = 4


class ConfigManager:
    """Configuration manager with environment overrides"""

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = str(config_path or os.getenv(ENV_PREFIX + "CONFIG", DEFAULT_CONFIG_PATH))
        self._config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from YAML file"""
        try:
            if os.path.exists(self.config_path):
                with open(self.config_path, 'r') as f:
                    loaded = yaml.safe_load(f) or {}
                logger.debug(f"Configuration loaded from {self.config_path}")
                return loaded
            logger.warning(f"Config file {self.config_path} not found, using defaults")
            return self._get_default_config()
        except Exception as e:
            logger.error(f"Failed to load config: {str(e)}")
            return self._get_default_config()

    def reload(self, config_path: Optional[str] = None):
        """Re-read the YAML file, optionally from a new path"""
        if config_path:
            self.config_path = str(config_path)
        self._config = self._load_config()

    def _get_default_config(self) -> Dict[str, Any]:
        """Get default configuration"""
        return {
            'log_level': 'INFO',
            'log_file': '',
            'arith': {'enumeration_cap': 1_000_000},
            'groebner': {'max_reductions': 10_000, 'max_degree': 40},
            'sectors': {'enumeration_cap': 1_000_000},
            'graphs': {'max_vertices': 8, 'max_edges': 12},
            'chow': {'default_dimension': 4},
            'report': {'indent': 2},
        }

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by key (supports dot notation)"""
        env_value = os.getenv(ENV_PREFIX + key.upper().replace('.', '_'))
        if env_value is not None:
            return self._convert_env_value(env_value)

        value: Any = self._config
        for k in key.split('.'):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def _convert_env_value(self, value: str) -> Any:
        """Convert environment variable to appropriate type"""
        if value.lower() in ('true', 'false'):
            return value.lower() == 'true'
        try:
            return int(value)
        except ValueError:
            pass
        try:
            return float(value)
        except ValueError:
            pass
        return value

    def get_app_config(self) -> AppConfig:
        return AppConfig(
            log_level=str(self.get('log_level', 'INFO')).upper(),
            log_file=self.get('log_file') or None,
            indent=self.get('report.indent', 2),
        )

    def get_arith_config(self) -> ArithConfig:
        return ArithConfig(enumeration_cap=self.get('arith.enumeration_cap', 1_000_000))

    def get_groebner_config(self) -> GroebnerConfig:
        return GroebnerConfig(
            max_reductions=self.get('groebner.max_reductions', 10_000),
            max_degree=self.get('groebner.max_degree', 40),
        )

    def get_sector_config(self) -> SectorConfig:
        return SectorConfig(enumeration_cap=self.get('sectors.enumeration_cap', 1_000_000))

    def get_graph_config(self) -> GraphConfig:
        return GraphConfig(
            max_vertices=self.get('graphs.max_vertices', 8),
            max_edges=self.get('graphs.max_edges', 12),
        )

    def get_chow_config(self) -> ChowConfig:
        return ChowConfig(default_dimension=self.get('chow.default_dimension', 4))

    def validate_config(self) -> bool:
        """Validate caps and log level"""
        caps = {
            'arith.enumeration_cap': self.get_arith_config().enumeration_cap,
            'groebner.max_reductions': self.get_groebner_config().max_reductions,
            'groebner.max_degree': self.get_groebner_config().max_degree,
            'sectors.enumeration_cap': self.get_sector_config().enumeration_cap,
            'graphs.max_vertices': self.get_graph_config().max_vertices,
            'graphs.max_edges': self.get_graph_config().max_edges,
        }
        for key, value in caps.items():
            if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
                logger.error(f"Config key {key} must be a positive integer, got {value!r}")
                return False

        dimension = self.get_chow_config().default_dimension
        if not isinstance(dimension, int) or dimension < 0:
            logger.error(f"Config key chow.default_dimension must be >= 0, got {dimension!r}")
            return False

        log_level = self.get_app_config().log_level
        if log_level not in LOG_LEVELS:
            logger.error(f"Unknown log level {log_level}")
            return False

        logger.debug("Configuration validation passed")
        return True


# Global configuration instance
config = ConfigManager()
