#!/usr/bin/env python3
#
#  report.py
#
"""Report records and their JSON / CSV rendering."""

import csv
import io
import json
import logging
import sys
from dataclasses import asdict, dataclass, field, fields
from typing import ClassVar, Dict, List

import numpy as np

from ..bounds.report import STABILITY_FACTOR


log = logging.getLogger(__name__)

SIGNIFICANT = 12
# excluded from the determinism contract
VOLATILE_KEYS = ('timestamp', 'runtime')


@dataclass
class RatioRow:
    function_id: str
    norm_f: float
    norm_if: float
    ratio: float
    failed: bool = False


@dataclass
class SuiteRow:
    suite: str
    check: str
    passed: bool
    value: float


@dataclass
class _Report:
    rows: List = field(default_factory=list)
    summary: Dict[str, object] = field(default_factory=dict)
    config: Dict[str, object] = field(default_factory=dict)

    kind: ClassVar[str] = ''
    row_type: ClassVar[type] = None

    @classmethod
    def columns(cls):
        return [f.name for f in fields(cls.row_type)]

    def as_document(self):
        return {
            'kind': self.kind,
            'config': self.config,
            'rows': [asdict(row) for row in self.rows],
            'summary': self.summary,
        }

    @classmethod
    def from_document(cls, doc):
        if doc.get('kind') != cls.kind:
            raise ValueError("Document of kind %r is not a %s." % (doc.get('kind'), cls.kind))

        return cls([cls.row_type(**row) for row in doc['rows']], dict(doc['summary']),
                   dict(doc.get('config', {})))


@dataclass
class RatioReport(_Report):
    kind: ClassVar[str] = 'ratio'
    row_type: ClassVar[type] = RatioRow

    @classmethod
    def summarize(cls, rows, config=None, **extra):
        """Build the report; the sup is taken over rows that did not fail."""
        ratios = np.array([r.ratio for r in rows if not r.failed], dtype=float)
        half = np.array([r.ratio for r in rows[:len(rows) // 2] if not r.failed], dtype=float)
        sup = float(ratios.max()) if len(ratios) else 0.0
        half_sup = float(half.max()) if len(half) else 0.0

        if sup == 0:
            stability = 1.0
        elif half_sup == 0:
            stability = float('inf')
        else:
            stability = sup / half_sup

        summary = {
            'sup_ratio': sup,
            'half_sup_ratio': half_sup,
            'stability_factor': stability,
            'stable': bool(np.isfinite(sup) and stability <= STABILITY_FACTOR),
            'failures': sum(r.failed for r in rows),
            'functions': len(rows),
        }
        summary.update(extra)
        return cls(list(rows), summary, dict(config or {}))

    @property
    def passed(self):
        return bool(self.summary.get('stable', False))


@dataclass
class SuiteReport(_Report):
    kind: ClassVar[str] = 'suite'
    row_type: ClassVar[type] = SuiteRow

    @classmethod
    def summarize(cls, rows, config=None, **extra):
        summary = {'checks': len(rows), 'failures': sum(not r.passed for r in rows)}
        summary.update(extra)
        return cls(list(rows), summary, dict(config or {}))

    @classmethod
    def merge(cls, reports, config=None, **extra):
        rows = [row for report in reports for row in report.rows]
        return cls.summarize(rows, config, **extra)

    @property
    def passed(self):
        return all(row.passed for row in self.rows)


def round_values(value):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value

    if isinstance(value, (float, np.floating)):
        value = float(value)
        return float('%.*g' % (SIGNIFICANT, value)) if np.isfinite(value) else value

    if isinstance(value, (int, np.integer)):
        return int(value)

    if isinstance(value, dict):
        return {str(k): round_values(v) for k, v in value.items()}

    if isinstance(value, (list, tuple)):
        return [round_values(v) for v in value]

    return str(value)


def _cell(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'

    if isinstance(value, (float, np.floating)):
        return '%.*g' % (SIGNIFICANT, value)

    return str(value)


def render_json(report):
    return json.dumps(round_values(report.as_document()), indent=2, sort_keys=True) + "\n"


def render_csv(report):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(report.columns())

    for row in report.rows:
        writer.writerow([_cell(getattr(row, name)) for name in report.columns()])

    for key in sorted(report.summary):
        out.write("# %s: %s\n" % (key, _cell(report.summary[key])))

    return out.getvalue()


def emit_report(report, fmt='json', path=None):
    """Write ``report`` as JSON or CSV to ``path`` (stdout when None)."""
    try:
        render = {'json': render_json, 'csv': render_csv}[fmt]
    except KeyError:
        raise ValueError("Unknown report format '%s'." % fmt)

    text = render(report)

    if path is None or path == '-':
        sys.stdout.write(text)
    else:
        with open(path, 'w') as fp:
            fp.write(text)

        log.info("Wrote %s report with %i rows to '%s'.", fmt, len(report.rows), path)


def stable_document(doc):
    """Copy of a rendered document without the volatile summary keys."""
    doc = dict(doc)
    doc['summary'] = {k: v for k, v in doc.get('summary', {}).items()
                      if k not in VOLATILE_KEYS}
    return doc
