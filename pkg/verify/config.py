#!/usr/bin/env python3
#
#  config.py
#
"""Experiment configuration, loaded from one JSON document.

Every key is optional::

    {
        "dim": 1,
        "beta": 2.0,
        "exponent": {"id": "decay", "p_inf": 2, "c": 1},
        "seed": 0,
        "samples": 200,
        "suites": ["hermite", "bounds"],
        "format": "json",
        "out": "report.json",
        "budget": {"nodes": 1000000, "panels": 4000, "points_per_axis": 24,
                   "operator_panels": 12, "operator_order": 4},
        "tolerances": {"kernel": 1e-8, "operator": 1e-6, "norm": 1e-9, "tail": 1e-12},
        "theorem": {"max_degree": 6, "families": ["hermite", "bump", "ball"]}
    }

The exponent may also be given in the command-line form ``"decay:p_inf=2,c=1"``.

"""

import json
import logging
from typing import List, Literal, Optional, get_args

from pydantic import (BaseModel, ConfigDict, Field, NonNegativeInt, PositiveInt,
                      ValidationError, field_validator)

from ..varlp.exponents import parse_exponent


log = logging.getLogger(__name__)

SuiteName = Literal['hermite', 'semigroup', 'riesz', 'varlp', 'geometry', 'bounds', 'theorem']
FamilyName = Literal['hermite', 'bump', 'ball']
FormatName = Literal['json', 'csv']

SUITES = get_args(SuiteName)
FAMILIES = get_args(FamilyName)
FORMATS = get_args(FormatName)


class ConfigError(ValueError):
    pass


class _Section(BaseModel):
    model_config = ConfigDict(extra='forbid')


def _tolerance(default):
    return Field(default, gt=0, lt=1, allow_inf_nan=False)


class Budget(_Section):
    nodes: PositiveInt = 10 ** 6
    panels: PositiveInt = 4000
    points_per_axis: PositiveInt = 24
    operator_panels: PositiveInt = 12
    operator_order: PositiveInt = 4


class Tolerances(_Section):
    kernel: float = _tolerance(1e-8)
    operator: float = _tolerance(1e-6)
    norm: float = _tolerance(1e-9)
    tail: float = _tolerance(1e-12)


class TheoremSettings(_Section):
    max_degree: NonNegativeInt = 6
    families: List[FamilyName] = Field(default_factory=lambda: list(FAMILIES), min_length=1)


class ExperimentConfig(_Section):
    dim: Literal[1, 2, 3] = 1
    beta: float = Field(2.0, gt=0, allow_inf_nan=False)
    exponent: str = 'constant'
    seed: NonNegativeInt = 0
    samples: PositiveInt = 200
    suites: List[SuiteName] = Field(default_factory=lambda: list(SUITES))
    format: FormatName = 'json'
    out: Optional[str] = None
    budget: Budget = Field(default_factory=Budget)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    theorem: TheoremSettings = Field(default_factory=TheoremSettings)

    @field_validator('exponent', mode='before')
    @classmethod
    def _exponent_spec(cls, value):
        value = exponent_string(value)
        parse_exponent(value)
        return value

    def exponent_field(self):
        try:
            return parse_exponent(self.exponent)
        except ValueError as exc:
            raise ConfigError(str(exc))

    def as_dict(self):
        return self.model_dump()


def exponent_string(value):
    """Normalize an exponent given as dict or string to the ``id:k=v`` form."""
    if isinstance(value, str):
        return value

    if not isinstance(value, dict) or 'id' not in value:
        raise ConfigError("exponent must be a string or an object with an 'id' key.")

    params = ",".join("%s=%s" % (k, v) for k, v in sorted(value.items()) if k != 'id')
    return "%s:%s" % (value['id'], params) if params else str(value['id'])


def _describe(exc):
    return "; ".join("%s: %s" % (".".join(str(part) for part in err['loc']) or 'config',
                                 err['msg'])
                     for err in exc.errors())


def config_from_dict(data):
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(_describe(exc))


def load_config(path=None, **overrides):
    """Read a config file (or defaults) and apply non-None overrides.

    Validation problems of any kind surface as :class:`ConfigError`.

    """
    data = {}

    if path is not None:
        try:
            with open(path) as fp:
                data = json.load(fp)
        except OSError as exc:
            raise ConfigError("Could not read config file '%s': %s" % (path, exc))
        except ValueError as exc:
            raise ConfigError("Config file '%s' is not valid JSON: %s" % (path, exc))

        if not isinstance(data, dict):
            raise ConfigError("Configuration must be a JSON object.")

        log.debug("Loaded configuration from '%s'.", path)

    budget_nodes = overrides.pop('budget', None)
    data = dict(data, **{k: v for k, v in overrides.items() if v is not None})

    if budget_nodes is not None:
        section = data.get('budget') or {}

        if isinstance(section, dict):
            data['budget'] = dict(section, nodes=budget_nodes)

    return config_from_dict(data)
