#!/usr/bin/env python3
"""
AlgInt Certify - Configuration File
Manages certifier parameters: default precision, search limits, batch parallelism,
logging and the cyclotomic table cache.
"""

import os
import json
from dataclasses import dataclass
from typing import Optional

from modules.errors import ParseError

CYCLOTOMIC_CACHE_ENV = "ALGINT_CYCLOTOMIC_CACHE"


@dataclass
class Config:
    """Certifier configuration class"""
    # Numerics
    default_precision_bits: int  # Precision of height enclosures
    fatou_nmax_scale: int  # Leading factor of the default Fatou search limit
    max_subsum_terms: int  # Largest k enumerated by the subsum check

    # Field construction
    irreducibility_primes: int  # Primes tried by the mod-p screen
    irreducibility_search_degree: int  # Largest degree for the divisor search

    # Batch runs
    max_parallel_tasks: int

    # Logging and cache
    log_level: str
    log_file: Optional[str]
    cyclotomic_cache_dir: Optional[str]

    def __init__(self, config_file: str = "config.json"):
        """
        Load configuration from config file, use default values if file doesn't exist

        Args:
            config_file: Configuration file path
        """
        # Default configuration
        default_config = {
            "default_precision_bits": 64,
            "fatou_nmax_scale": 64,
            "max_subsum_terms": 20,
            "irreducibility_primes": 25,
            "irreducibility_search_degree": 8,
            "max_parallel_tasks": 4,
            "log_level": "WARNING",
            "log_file": None,
            "cyclotomic_cache_dir": None,
        }

        # Read configuration file
        if config_file and os.path.exists(config_file):
            try:
                with open(config_file, 'r', encoding='utf-8') as f:
                    config_data = json.load(f)
            except json.JSONDecodeError as e:
                raise ParseError(f"{config_file}: invalid JSON ({e.msg})") from e
            if not isinstance(config_data, dict):
                raise ParseError(f"{config_file}: configuration must be a JSON object")
            # Merge default configuration and file configuration
            default_config.update(config_data)

        # Initialize configuration
        self.default_precision_bits = int(default_config["default_precision_bits"])
        self.fatou_nmax_scale = int(default_config["fatou_nmax_scale"])
        self.max_subsum_terms = int(default_config["max_subsum_terms"])
        self.irreducibility_primes = int(default_config["irreducibility_primes"])
        self.irreducibility_search_degree = int(default_config["irreducibility_search_degree"])
        self.max_parallel_tasks = int(default_config["max_parallel_tasks"])
        self.log_level = str(default_config["log_level"]).upper()
        self.log_file = default_config["log_file"] or None

        # The environment wins over the file for the cache location
        cache_dir = os.environ.get(CYCLOTOMIC_CACHE_ENV) or default_config["cyclotomic_cache_dir"]
        self.cyclotomic_cache_dir = os.path.abspath(cache_dir) if cache_dir else None
