# -*- coding: utf-8 -*-

'''
Writing reports and plot-ready tables to disk
'''

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from .__version__ import __version__
from .reports import clean_number


def getLogger():
    return logging.getLogger(__name__)


def prepare_output_dir(output_dir='output', mkdir=False):
    output_dir = Path(output_dir)
    if mkdir and not output_dir.exists():
        output_dir.mkdir(parents=True)
    return output_dir


def _skipped(path, overwrite):
    if not overwrite and path.exists():
        getLogger().warning(f"File {path} exists. SKIPPED")
        return True
    prepare_output_dir(path.parent, mkdir=True)
    return False


def write_csv(path, header, rows, overwrite=False):
    ''' Write rows of numbers under a header line such as ``p,logM`` '''
    path = Path(path)
    if _skipped(path, overwrite):
        return False
    data = np.asarray([[float(x) for x in row] for row in rows], dtype=float).reshape(-1, len(header))
    np.savetxt(path, data, delimiter=',', header=','.join(header), comments='', fmt='%.17g')
    getLogger().info(f"Written output to {path}")
    return True


def read_csv(path, header):
    ''' Read a CSV written by :func:`write_csv`, checking its header line '''
    path = Path(path)
    with open(path, encoding='utf-8') as infile:
        first = infile.readline().strip().replace(' ', '')
    if first != ','.join(header):
        from .errors import ConfigError
        raise ConfigError(f"{path} should start with the header {','.join(header)!r} (found {first!r})")
    return np.atleast_2d(np.loadtxt(path, delimiter=',', skiprows=1, dtype=float))


@dataclass
class Report:
    ''' Structured output of one CLI run

    Records are ordered by (anchor, subject, condition) and the JSON text is
    produced with sorted keys, so equal inputs give byte-identical files.
    '''
    command: str
    config: Dict[str, Any] = field(default_factory=dict)
    records: List[Any] = field(default_factory=list)
    gamma: List[Any] = field(default_factory=list)
    tables: Dict[str, Any] = field(default_factory=dict)
    exit_status: int = 0
    timing: Optional[Dict[str, float]] = None

    def add(self, *records):
        self.records.extend(records)

    def to_dict(self):
        out = {
            'tool': 'pyultradiff',
            'tool_version': __version__,
            'command': self.command,
            'config': clean_number(self.config),
            'records': [r.to_dict() for r in sorted(self.records, key=lambda r: r.sort_key())],
            'gamma': [g.to_dict() for g in sorted(self.gamma, key=lambda g: g.subject)],
            'tables': clean_number(self.tables),
            'exit_status': self.exit_status
        }
        if self.timing is not None:
            out['timing'] = clean_number(self.timing, 6)
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)


def write_report(report, path, overwrite=False):
    path = Path(path)
    if _skipped(path, overwrite):
        return False
    path.write_text(report.to_json() + '\n', encoding='utf-8')
    getLogger().info(f"Written output to {path}")
    return True
