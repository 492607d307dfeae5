""" check reports and their text and JSON renderings
"""

from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction
import json
import os
import tempfile

REPORT_VERSION = '1'
PASS, FAIL, SKIPPED = 'pass', 'fail', 'skipped'

# what a check body may return instead of a (passed, residual) tuple
Outcome = namedtuple('Outcome', ['passed', 'residual', 'details'])

def _plain(value):
    """ convert parameter and detail values to JSON-friendly types
    """
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else int(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in sorted(value.items(), key=lambda x: str(x[0]))}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, 'item') and not isinstance(value, (str, bytes)):
        # numpy scalars
        return value.item()
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)

@dataclass
class CheckReport:
    """ outcome of one identity check
    """
    id: str
    anchor: str
    params: dict
    status: str
    residual: str = ''
    ms: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (PASS, FAIL, SKIPPED):
            raise ValueError('unknown check status: {}'.format(self.status))
        if self.status == FAIL and not self.residual:
            raise ValueError('failing check {} has no residual'.format(self.id))

    def to_dict(self):
        return {'id': self.id, 'anchor': self.anchor, 'params': _plain(self.params),
            'status': self.status, 'residual': self.residual, 'ms': round(self.ms, 3),
            'details': _plain(self.details)}

def summarize(reports):
    summary = {'total': len(reports), 'passed': 0, 'failed': 0, 'skipped': 0}
    for report in reports:
        key = {PASS: 'passed', FAIL: 'failed', SKIPPED: 'skipped'}[report.status]
        summary[key] += 1
    return summary

def to_json(reports, config=None):
    reports = sorted(reports, key=lambda x: x.id)
    data = {'version': REPORT_VERSION, 'config': _plain(config or {}),
        'checks': [x.to_dict() for x in reports], 'summary': summarize(reports)}
    return json.dumps(data, indent=2, sort_keys=True)

def to_text(reports):
    """ one line per check, then a summary line
    """
    lines = []
    for report in sorted(reports, key=lambda x: x.id):
        line = '{}\t{}\t{}\t{:.1f}ms'.format(report.status.upper(), report.id,
            report.anchor, report.ms)
        if report.status != PASS and report.residual:
            first = report.residual.splitlines()[0] if report.residual.strip() else report.residual
            line += '\t{}'.format(first)
        lines.append(line)
    summary = summarize(reports)
    lines.append('total {total}, passed {passed}, failed {failed}, skipped {skipped}'.format(**summary))
    return '\n'.join(lines) + '\n'

def atomic_write(path, text):
    """ write text to a temporary file beside path, then move it into place
    """
    folder = os.path.dirname(os.path.abspath(path))
    handle, temp = tempfile.mkstemp(dir=folder, prefix='.shiftops-', suffix='.tmp')
    try:
        with os.fdopen(handle, 'wt') as output:
            output.write(text)
        os.replace(temp, path)
    except OSError:
        if os.path.exists(temp):
            os.remove(temp)
        raise

def emit_report(reports, format='text', path=None, config=None, stream=None):
    """ render the reports and write them out

    Args:
        reports: list of CheckReports
        format: 'text' or 'json'
        path: output file, written atomically. When None the rendering goes to
            stream.
        config: configuration dict embedded in JSON output
        stream: file-like object used when path is None

    Returns:
        the rendered text
    """
    if format == 'json':
        text = to_json(reports, config)
    elif format == 'text':
        text = to_text(reports)
    else:
        raise ValueError('unknown report format: {}'.format(format))
    if path is not None:
        atomic_write(path, text)
    elif stream is not None:
        stream.write(text)
    return text
