"""
Carregador de Configuracao
==========================

Loads and manages the YAML configuration of the fan engine and its CLI
"""

import copy
import logging
import yaml
from pathlib import Path
from typing import Any, Dict, Optional

COEFFICIENTS = ('z', 'q')

DEFAULT_CONFIG: Dict[str, Any] = {
    'logging': {
        'level': 'INFO',
        'file': None,
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    },
    'engine': {
        'threads': 0,
        'validate': True,
        'coeff': 'z',
        'progress': False,
    },
    'corpus': {
        'golden_dir': 'tests/golden',
        'examples': None,
    },
}


class ConfigLoader:
    """Loader and manager of the configuration"""

    def __init__(self, config_file: str = 'config.yml', allow_missing: bool = False):
        """
        Initialize the loader

        Args:
            config_file: Path to the YAML configuration file
            allow_missing: Fall back to the built-in defaults when the file
                does not exist
        """
        self.logger = logging.getLogger(__name__)
        self.config_file = Path(config_file)
        self.from_defaults = False
        if allow_missing and not self.config_file.exists():
            self.from_defaults = True
            self.config = copy.deepcopy(DEFAULT_CONFIG)
        else:
            self.config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """
        Load the YAML configuration file

        Returns:
            Configuration dictionary

        Raises:
            FileNotFoundError: If the file does not exist
            yaml.YAMLError: If the YAML cannot be parsed
        """
        if not self.config_file.exists():
            raise FileNotFoundError(f"Configuration file not found: {self.config_file}")

        try:
            with open(self.config_file, 'r', encoding='utf-8') as f:
                return yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise yaml.YAMLError(f"Error parsing YAML file: {e}")

    def get(self, key: str, default: Optional[Any] = None) -> Any:
        """
        Read a value using dot notation

        Args:
            key: Dotted key (e.g. 'engine.coeff')
            default: Value returned when the key is missing

        Returns:
            Configured value or the default

        Examples:
            >>> config.get('engine.coeff')
            'z'
            >>> config.get('corpus.golden_dir')
            'tests/golden'
        """
        keys = key.split('.')
        value = self.config

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    def set(self, key: str, value: Any) -> None:
        """
        Set a value using dot notation

        Args:
            key: Dotted key
            value: New value
        """
        keys = key.split('.')
        config_ref = self.config

        # create intermediate sections on the way
        for k in keys[:-1]:
            if k not in config_ref:
                config_ref[k] = {}
            config_ref = config_ref[k]

        config_ref[keys[-1]] = value

    def get_logging_config(self) -> Dict[str, Any]:
        return self.get('logging', {})

    def get_engine_config(self) -> Dict[str, Any]:
        """
        Engine settings merged over the defaults

        Returns:
            Dictionary with threads, validate, coeff and progress
        """
        merged = dict(DEFAULT_CONFIG['engine'])
        merged.update(self.get('engine', {}) or {})
        return merged

    def get_corpus_config(self) -> Dict[str, Any]:
        merged = dict(DEFAULT_CONFIG['corpus'])
        merged.update(self.get('corpus', {}) or {})
        return merged

    def validate_config(self) -> bool:
        """
        Check that the essential keys are present and well-formed

        Returns:
            True if valid, False otherwise
        """
        required_keys = [
            'engine.coeff',
            'engine.validate',
            'corpus.golden_dir',
        ]

        missing_keys = []
        for key in required_keys:
            if self.get(key) is None:
                missing_keys.append(key)

        if missing_keys:
            self.logger.error(f"ERROR: Required configuration keys missing: {missing_keys}")
            return False

        coeff = str(self.get('engine.coeff')).lower()
        if coeff not in COEFFICIENTS:
            self.logger.error(f"ERROR: engine.coeff must be one of {list(COEFFICIENTS)}, got {coeff!r}")
            return False

        threads = self.get('engine.threads', 0)
        if threads is not None and (not isinstance(threads, int) or threads < 0):
            self.logger.error(f"ERROR: engine.threads must be a non-negative integer, got {threads!r}")
            return False

        return True

    def save_config(self, output_file: Optional[str] = None) -> None:
        """
        Save the current configuration as YAML

        Args:
            output_file: Output file (default: the file that was loaded)
        """
        output_path = Path(output_file) if output_file else self.config_file

        with open(output_path, 'w', encoding='utf-8') as f:
            yaml.dump(self.config, f, default_flow_style=False,
                      allow_unicode=True, indent=2)

        self.logger.info(f"[INFO] Configuration saved to: {output_path}")

    def __str__(self) -> str:
        return f"ConfigLoader(config_file='{self.config_file}')"

    def __repr__(self) -> str:
        return f"ConfigLoader(config_file='{self.config_file}', keys={list(self.config.keys())})"
