"""
The json module introduces the JSON-lines report resource: one diagnostic
object per line, with the keys ``code``, ``severity``, ``subjects``, ``times``
and ``line`` in that order.
"""
import json
from .resource import Resource
from ..utils import dispatch
from ..rules import Diagnostic


KEYS = ('code', 'severity', 'subjects', 'times', 'line')


def diagnostic_to_dict(diagnostic):
    return {
        'code': diagnostic.code,
        'severity': diagnostic.severity.value,
        'subjects': list(diagnostic.subjects),
        'times': [t.label for t in diagnostic.times],
        'line': diagnostic.source_line,
    }


def dumps_report(report):
    return ''.join(json.dumps(diagnostic_to_dict(x)) + '\n'
                   for x in report.diagnostics)


def loads_report(text):
    entries = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        entry = json.loads(line)
        if tuple(entry) != KEYS:
            raise ValueError(f'line {lineno}: expected keys {KEYS}, got '
                             f'{tuple(entry)}')
        entries.append(entry)
    return entries


class ReportResource(Resource):
    """A ``.json`` file holding a report in JSON-lines form.

    Loading gives plain dictionaries (the manifest skeleton); saving accepts
    reports, diagnostics or such dictionaries.
    """

    def load(self):
        self.contents.clear()
        self.extend(loads_report(self.read_text()))

    def save(self, output=None):
        text = ''.join(json.dumps(self.to_dict(x)) + '\n'
                       for root in self.contents
                       for x in self._entries(root))
        self.write_text(text, output)

    @staticmethod
    def _entries(root):
        return getattr(root, 'diagnostics', [root])

    @dispatch
    def to_dict(self, entry):
        raise TypeError(f'Cannot save {entry!r} in a report resource')

    @to_dict.register(dict)
    def _dict_to_dict(self, entry):
        return {key: entry[key] for key in KEYS}

    @to_dict.register(Diagnostic)
    def _diagnostic_to_dict(self, entry):
        return diagnostic_to_dict(entry)
