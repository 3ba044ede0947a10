"""Runs the rule catalog over an elaborated world and gathers the results in
a deterministic ``ValidationReport``.
"""
import hashlib
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from .rules import CATALOG, Severity, rule_catalog
from .resources.bfo import serialize, document_from_world


logger = logging.getLogger(__name__)


class UnknownRuleError(KeyError):
    def __init__(self, code):
        self.code = code
        super().__init__(f'Unknown rule code {code!r}, expected one of '
                         f'{", ".join(CATALOG)}')

    def __str__(self):
        return self.args[0]


@dataclass(frozen=True)
class ValidationReport:
    diagnostics: tuple = ()
    counts: dict = field(default_factory=dict)
    world_digest: str = ''

    @property
    def has_errors(self):
        return self.counts.get(Severity.ERROR.value, 0) > 0

    def by_code(self, code):
        return [x for x in self.diagnostics if x.code == code]

    def codes(self):
        return [x.code for x in self.diagnostics]


def world_digest(world):
    text = serialize(document_from_world(world))
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def _sort_key(diagnostic, positions=None):
    positions = positions or {code: i for i, code in enumerate(CATALOG)}
    first = diagnostic.times[0].index if diagnostic.times else -1
    return (first, positions[diagnostic.code], diagnostic.subjects,
            tuple(t.index for t in diagnostic.times), diagnostic.message)


def validate(world, workers=None):
    """Applies every rule of the catalog to ``world``.

    :param world: an elaborated world
    :param workers: run the rules on a thread pool of that size
    :return: the report, diagnostics ordered by first time point (atemporal
             ones first), catalog position, subjects and times
    :rtype: ValidationReport
    """
    rules = rule_catalog()
    if workers:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(lambda r: r(world), rules))
    else:
        results = [r(world) for r in rules]
    positions = {r.code: i for i, r in enumerate(rules)}
    diagnostics = sorted((x for result in results for x in result),
                         key=lambda x: _sort_key(x, positions))
    counts = {s.value: 0 for s in Severity}
    for x in diagnostics:
        counts[x.severity.value] += 1
    logger.debug('validation: %s', counts)
    return ValidationReport(tuple(diagnostics), counts, world_digest(world))


def explain(report, code):
    try:
        rule = CATALOG[code]
    except KeyError:
        raise UnknownRuleError(code)
    lines = [f'{rule.code} {rule.name} ({rule.severity.value})',
             '',
             rule.prose,
             '',
             f'Reference: {rule.citation}']
    if report is not None:
        matching = report.by_code(code)
        lines.append('')
        if matching:
            lines.append(f'{len(matching)} matching diagnostic(s):')
            lines.extend(f'  {format_diagnostic(x)}' for x in matching)
        else:
            lines.append('No matching diagnostics.')
    return '\n'.join(lines) + '\n'


def format_diagnostic(diagnostic):
    rule = CATALOG[diagnostic.code]
    text = (f'{diagnostic.severity.value}: {diagnostic.code} {rule.name} '
            f'[{", ".join(diagnostic.subjects)}]')
    if diagnostic.times:
        text += f' at {", ".join(str(t) for t in diagnostic.times)}'
    if diagnostic.source_line is not None:
        text += f' (line {diagnostic.source_line})'
    return f'{text}: {diagnostic.message}'


def format_report(report):
    lines = [format_diagnostic(x) for x in report.diagnostics]
    summary = ', '.join(f'{n} {severity}' for severity, n in
                        report.counts.items())
    lines.append(f'{len(report.diagnostics)} diagnostic(s): {summary}')
    return '\n'.join(lines) + '\n'
