"""Python front end to the geocheck proof checker.

Reports come back as plain dictionaries decoded from the JSON the command
line tool prints with ``--format json``.
"""

import json
import os
from pathlib import Path

from . import _geocheck
from ._geocheck import (
    Config,
    GeocheckError,
    Rule,
    evaluate,
    evaluate_term,
    exit_code,
    normalize_formula,
    parse_statement,
    pass_at_k,
    statement_consistent,
)

__all__ = [
    "Config",
    "GeocheckError",
    "Rule",
    "bench",
    "build_lib",
    "check",
    "default_config",
    "evaluate",
    "evaluate_term",
    "exit_code",
    "normalize_formula",
    "parse_statement",
    "pass_at_k",
    "sanity",
    "statement_consistent",
]

__version__ = _geocheck.__version__

_PACKAGED_DATA = Path(__file__).resolve().parent / "data"


def default_config(**overrides):
    """A Config using bundled data when installed and $GEOCHECK_SOLVER if set."""
    cfg = Config()
    if (_PACKAGED_DATA / "theory").is_dir():
        cfg.data_dir = str(_PACKAGED_DATA)
    solver = os.environ.get("GEOCHECK_SOLVER")
    if solver:
        cfg.solver_path = solver
    for key, value in overrides.items():
        setattr(cfg, key, value)
    return cfg


def _cfg(config):
    return config if config is not None else default_config()


def check(path, config=None):
    return json.loads(_geocheck.check(str(path), _cfg(config)))


def build_lib(directory, config=None):
    return json.loads(_geocheck.build_lib(str(directory), _cfg(config)))


def bench(manifest, attempts, ks=(1, 2, 4), config=None):
    return json.loads(_geocheck.bench(str(manifest), str(attempts), list(ks), _cfg(config)))


def sanity(text, config=None, use_solver=True):
    """Counterexample search on the first theorem statement in ``text``."""
    return json.loads(_geocheck.sanity(text, _cfg(config), use_solver))
