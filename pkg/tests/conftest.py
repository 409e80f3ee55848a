#
#  conftest.py
#
"""Make a source checkout importable as ``gaussriesz`` when it is not installed."""

import importlib.util
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

if importlib.util.find_spec('gaussriesz') is None:
    spec = importlib.util.spec_from_file_location('gaussriesz', ROOT / '__init__.py',
                                                  submodule_search_locations=[str(ROOT)])
    module = importlib.util.module_from_spec(spec)
    sys.modules['gaussriesz'] = module
    spec.loader.exec_module(module)
