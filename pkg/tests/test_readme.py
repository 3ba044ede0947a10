import pytest
from pybfo.resources.bfo import load_world
from pybfo.resources import ResourceSet
from pybfo.world import diff_snapshots, GroundingKind
from pybfo.grounding import infer_grounding_candidates
from pybfo.validator import validate
from pybfo.cli import main


SALT = '''
class "lattice structure" is_a quality
class solubility is_a disposition
timeline t1 < t2
instance nacl1 : object
instance lattice1 : "lattice structure"
instance solubility1 : solubility
at t1: inheres_in(lattice1, nacl1)
at t1: inheres_in(solubility1, nacl1)
at t2: exists(nacl1, _)
grounds(lattice1, solubility1) kind=internal
'''


@pytest.fixture(scope='module')
def world():
    return load_world(SALT)


def test_intro(world):
    t1 = world.snapshot('t1')
    assert t1.bearer_of('solubility1') == 'nacl1'
    assert t1.qualities_of('nacl1') == frozenset({'lattice1'})
    changes = diff_snapshots(t1, world.snapshot('t2'))
    assert changes.lost_qualities == {'nacl1': frozenset({'lattice1'})}


def test_grounding_intro(world):
    assert infer_grounding_candidates(world, 'solubility1') == [
        ('lattice1', GroundingKind.INTERNAL)]
    assert not validate(world).has_errors


def test_broken_grounding_intro():
    world = load_world(SALT + 'at t2: inheres_in(solubility1, nacl1)\n')
    assert validate(world).codes() == ['R8']


def test_resource_intro(tmpdir):
    salt = tmpdir.join('salt.bfo')
    salt.write(SALT)
    resource = ResourceSet().get_resource(str(salt))
    assert repr(resource.world) == '<World entities=3 times=2 assertions=6>'


def test_command_line_intro(tmpdir, capsys):
    salt = tmpdir.join('salt.bfo')
    salt.write(SALT)
    assert main(['validate', str(salt)]) == 0
    assert main(['infer', str(salt), '--entity', 'solubility1']) == 0
    assert main(['diff', str(salt), '--from', 't1', '--to', 't2']) == 0
    assert capsys.readouterr().out == (
        '0 diagnostic(s): 0 error, 0 warning, 0 info\n'
        'lattice1 internal\n'
        'diff t1 -> t2\n'
        'lost_qualities nacl1: lattice1\n'
        'lost_realizables nacl1: solubility1\n')
