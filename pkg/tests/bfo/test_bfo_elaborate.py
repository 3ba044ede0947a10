import pytest
from pybfo.taxonomy import load_builtin_taxonomy, add_domain_class
from pybfo.world import RelationKind, RelationAssertion, GroundingKind
from pybfo.resources.bfo import *


SALT = '''\
class "lattice structure" is_a quality
class solubility is_a disposition
timeline t1 < t2
instance nacl1 : object
instance lattice1 : "lattice structure"
instance solubility1 : solubility
at t1: inheres_in(lattice1, nacl1)
at t1: inheres_in(solubility1, nacl1)
grounds(lattice1, solubility1) kind=internal
'''


def failures_of(source, taxonomy=None):
    with pytest.raises(ElaborationFailure) as e:
        load_world(source, taxonomy)
    return e.value.errors


@pytest.fixture(scope='module')
def salt():
    return load_world(SALT)


def test_elaborate_taxonomy(salt):
    assert salt.taxonomy.is_subclass_of('lattice structure', 'quality')
    assert [x.name for x in salt.taxonomy.user_classes()] == [
        'lattice structure', 'solubility']


def test_elaborate_world(salt):
    assert [t.label for t in salt.timeline] == ['t1', 't2']
    assert salt.class_of('lattice1') == 'lattice structure'
    assert salt.snapshot('t1').bearer_of('solubility1') == 'nacl1'
    assert salt.groundings[0].kind is GroundingKind.INTERNAL
    assert salt.groundings[0].line == 9


def test_elaborate_keeps_lines(salt):
    stored = salt.lookup(RelationAssertion(RelationKind.INHERES_IN,
                                           'solubility1', 'nacl1',
                                           salt.time('t1')))
    assert stored.line == 8


def test_elaborate_with_given_taxonomy():
    taxonomy = add_domain_class(load_builtin_taxonomy(), 'salt', 'object')
    world = load_world('instance nacl1 : salt\n', taxonomy)
    assert world.is_a('nacl1', 'material entity')


def test_elaborate_unknown_class():
    errors = failures_of('instance a1 : unicorn\n')
    assert errors == [ElaborationError(1, "Unknown class 'unicorn'")]


def test_elaborate_collects_every_failure():
    errors = failures_of('class x is_a nothing\n'
                         'timeline t1\n'
                         'instance q1 : quality\n'
                         'instance q1 : quality\n'
                         'at t1: inheres_in(q1, ghost)\n'
                         'at t1: member_part_of(q1, q1)\n')
    assert [x.line for x in errors] == [1, 4, 5, 6]


def test_elaborate_class_constraint():
    errors = failures_of('timeline t1\n'
                         'instance o1 : object\n'
                         'instance o2 : object\n'
                         'at t1: inheres_in(o1, o2)\n')
    assert errors[0].line == 4
    assert 'specifically dependent continuant' in errors[0].message


def test_elaborate_bearer_conflict():
    errors = failures_of('timeline t1\n'
                         'instance q1 : quality\n'
                         'instance o1 : object\n'
                         'instance o2 : object\n'
                         'at t1: inheres_in(q1, o1)\n'
                         'at t1: inheres_in(q1, o2)\n')
    assert [x.line for x in errors] == [6]


def test_elaborate_unknown_time_label():
    errors = failures_of('timeline t1\n'
                         'instance o1 : object\n'
                         'at t9: exists(o1, _)\n')
    assert errors[0].line == 3
    assert "'t9'" in errors[0].message


def test_elaborate_bad_grounding():
    errors = failures_of('instance q1 : quality\n'
                         'instance r1 : role\n'
                         'grounds(r1, q1) kind=dependence\n'
                         'mereo_grounds(r1, q1, r1)\n')
    assert [x.line for x in errors] == [3, 4]


def test_elaborate_determination_failures():
    errors = failures_of('class a is_a quality\n'
                         'class d is_a disposition\n'
                         'determines a determinable d\n'
                         'disjoint a quality\n')
    assert sorted(x.line for x in errors) == [3, 4]


def test_elaboration_failure_message():
    failure = ElaborationFailure([ElaborationError(2, 'boom'),
                                  ElaborationError(5, 'bang')])
    assert str(failure) == 'line 2: boom\nline 5: bang'


def test_elaborator_reusable():
    elaborator = Elaborator()
    with pytest.raises(ElaborationFailure):
        elaborator.elaborate(parse('instance a1 : unicorn\n'))
    world = elaborator.elaborate(parse('instance a1 : object\n'))
    assert 'a1' in world.entities
