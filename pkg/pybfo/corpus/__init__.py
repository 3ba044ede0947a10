"""The worked examples shipped with pybfo.

Each case is a ``.bfo`` document with two siblings: ``<id>.expected.json``,
the JSON-lines report ``validate`` must produce, and ``<id>.inferences.json``,
the grounding candidates expected for every realizable entity.
"""
import json
from dataclasses import dataclass, field
from os import path
from ..resources import ResourceSet
from ..resources.bfo import load_world


CORPUS_DIR = path.dirname(path.abspath(__file__))

CASES = ('case1_nacl',
         'case1_nacl_mutant',
         'case2_university',
         'case3_commensal',
         'hostpathogen_fig3',
         'hostpathogen_fig4')


class UnknownCaseError(KeyError):
    def __init__(self, id):
        self.id = id
        super().__init__(f'Unknown corpus case {id!r}')

    def __str__(self):
        return self.args[0]


@dataclass(frozen=True)
class CorpusCase:
    id: str
    document: str
    expected_report: list = field(default_factory=list)
    expected_inferences: dict = field(default_factory=dict)

    @property
    def world(self):
        return load_world(self.document)

    def expected_codes(self):
        return [x['code'] for x in self.expected_report]


def list_cases():
    return list(CASES)


def case_path(id, suffix='.bfo'):
    if id not in CASES:
        raise UnknownCaseError(id)
    return path.join(CORPUS_DIR, f'{id}{suffix}')


def load_case(id):
    with open(case_path(id), encoding='utf-8') as f:
        document = f.read()
    report = ResourceSet().get_resource(case_path(id, '.expected.json'))
    with open(case_path(id, '.inferences.json'), encoding='utf-8') as f:
        inferences = {x: [tuple(y) for y in candidates]
                      for x, candidates in json.load(f).items()}
    return CorpusCase(id, document, list(report.contents), inferences)
