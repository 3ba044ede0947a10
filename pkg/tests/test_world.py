import pytest
from pybfo.taxonomy import load_builtin_taxonomy, add_domain_class, \
                          UnknownClassError
from pybfo.world import *


@pytest.fixture(scope='module')
def taxonomy():
    t = add_domain_class(load_builtin_taxonomy(), 'salt', 'object')
    t = add_domain_class(t, 'lattice structure', 'quality')
    t = add_domain_class(t, 'solubility', 'disposition')
    t = add_domain_class(t, 'ion', 'object')
    t = add_domain_class(t, 'crystal', 'object aggregate')
    return add_domain_class(t, 'dissolving', 'process')


@pytest.fixture(scope='module')
def world(taxonomy):
    w = declare_timeline(empty_world(taxonomy), ['t1', 't2', 't3'])
    for id, cls in (('nacl1', 'salt'), ('lattice1', 'lattice structure'),
                    ('solubility1', 'solubility'), ('na1', 'ion'),
                    ('crystal1', 'crystal'), ('dissolving1', 'dissolving')):
        w = add_instance(w, id, cls)
    t1, t2, t3 = w.timeline
    for t in (t1, t2):
        w = assert_relation(w, RelationAssertion(
            RelationKind.INHERES_IN, 'lattice1', 'nacl1', t))
    for t in (t1, t2, t3):
        w = assert_relation(w, RelationAssertion(
            RelationKind.INHERES_IN, 'solubility1', 'nacl1', t))
    w = assert_relation(w, RelationAssertion(
        RelationKind.MEMBER_PART_OF, 'na1', 'crystal1', t1))
    w = assert_relation(w, RelationAssertion(
        RelationKind.PARTICIPATES_IN, 'nacl1', 'dissolving1', t3))
    return assert_relation(w, RelationAssertion(
        RelationKind.REALIZES, 'dissolving1', 'solubility1'))


def test_timeline(world):
    assert [str(t) for t in world.timeline] == ['t1', 't2', 't3']
    assert world.time('t2') == TimePoint('t2', 1)
    assert world.time('t1') < world.time('t3')
    assert world.time(world.time('t3')).index == 2
    with pytest.raises(UnknownTimeError):
        world.time('t9')


def test_timeline_declared_once(world):
    with pytest.raises(WorldError):
        declare_timeline(world, ['t4'])
    with pytest.raises(WorldError):
        declare_timeline(empty_world(), ['t1', 't1'])


def test_add_instance_errors(world):
    with pytest.raises(DuplicateEntityError):
        add_instance(world, 'nacl1', 'salt')
    with pytest.raises(UnknownClassError):
        add_instance(world, 'x1', 'unicorn')


def test_builders_return_new_worlds(world):
    other = add_instance(world, 'k1', 'ion')
    assert 'k1' in other.entities
    assert 'k1' not in world.entities
    assert other != world


def test_inherence_implies_existence(world):
    s1 = snapshot(world, world.time('t1'))
    assert s1.exists('nacl1')
    assert s1.exists('lattice1')
    s3 = snapshot(world, world.time('t3'))
    assert not s3.exists('lattice1')
    assert s3.exists('solubility1')


def test_snapshot_queries(world):
    s1 = snapshot(world, world.time('t1'))
    assert bearer_of(s1, 'lattice1') == 'nacl1'
    assert qualities_of(s1, 'nacl1') == {'lattice1'}
    assert realizables_of(s1, 'nacl1') == {'solubility1'}
    assert s1.sdcs_of('nacl1') == {'lattice1', 'solubility1'}
    assert members_of(s1, 'crystal1') == {'na1'}
    assert participants_of(s1, 'dissolving1') == frozenset()


def test_snapshot_at_other_time(world):
    s3 = snapshot(world, world.time('t3'))
    assert bearer_of(s3, 'lattice1') is None
    assert qualities_of(s3, 'nacl1') == frozenset()
    assert members_of(s3, 'crystal1') == frozenset()
    assert participants_of(s3, 'dissolving1') == {'nacl1'}


def test_snapshot_keeps_atemporal_assertions(world):
    for t in world.timeline:
        s = snapshot(world, t)
        assert RelationAssertion(RelationKind.REALIZES, 'dissolving1',
                                 'solubility1') in s.active


def test_bearer_of_requires_sdc(world):
    s1 = world.snapshot('t1')
    with pytest.raises(NotAnSDCError):
        bearer_of(s1, 'nacl1')
    with pytest.raises(UnknownEntityError):
        bearer_of(s1, 'ghost')


def test_inherence_times(world):
    assert [str(t) for t in inherence_times(world, 'lattice1')] == ['t1',
                                                                     't2']
    assert len(inherence_times(world, 'solubility1')) == 3
    assert inherence_times(world, 'nacl1') == []


def test_entities_of_class(world):
    assert set(entities_of_class(world, 'specifically dependent continuant')) \
        == {'lattice1', 'solubility1'}
    assert entities_of_class(world, 'role') == []


def test_assert_relation_class_constraints(world):
    t1 = world.time('t1')
    with pytest.raises(ClassConstraintError):
        assert_relation(world, RelationAssertion(
            RelationKind.INHERES_IN, 'nacl1', 'lattice1', t1))
    with pytest.raises(ClassConstraintError):
        assert_relation(world, RelationAssertion(
            RelationKind.MEMBER_PART_OF, 'na1', 'nacl1', t1))
    with pytest.raises(ClassConstraintError):
        assert_relation(world, RelationAssertion(
            RelationKind.REALIZES, 'dissolving1', 'lattice1'))


def test_assert_relation_time_rules(world):
    with pytest.raises(WorldError):
        assert_relation(world, RelationAssertion(
            RelationKind.INHERES_IN, 'lattice1', 'nacl1'))
    with pytest.raises(WorldError):
        assert_relation(world, RelationAssertion(
            RelationKind.REALIZES, 'dissolving1', 'solubility1',
            world.time('t1')))
    with pytest.raises(UnknownTimeError):
        assert_relation(world, RelationAssertion(
            RelationKind.INHERES_IN, 'lattice1', 'nacl1', TimePoint('t9', 7)))


def test_assert_relation_unknown_entity(world):
    with pytest.raises(UnknownEntityError):
        assert_relation(world, RelationAssertion(
            RelationKind.INHERES_IN, 'ghost1', 'nacl1', world.time('t1')))


def test_bearer_conflict(world):
    world = add_instance(world, 'nacl2', 'salt')
    with pytest.raises(BearerConflictError):
        assert_relation(world, RelationAssertion(
            RelationKind.INHERES_IN, 'lattice1', 'nacl2', world.time('t1')))


def test_assert_relation_is_idempotent(world):
    again = assert_relation(world, RelationAssertion(
        RelationKind.INHERES_IN, 'lattice1', 'nacl1', world.time('t1')))
    assert again == world
    assert len(again.assertions) == len(world.assertions)


def test_lookup_keeps_line():
    w = declare_timeline(empty_world(), ['t1'])
    w = add_instance(w, 'q1', 'quality')
    w = add_instance(w, 'o1', 'object')
    w = assert_relation(w, RelationAssertion(
        RelationKind.INHERES_IN, 'q1', 'o1', w.time('t1'), line=12))
    found = w.lookup(RelationAssertion(RelationKind.INHERES_IN, 'q1', 'o1',
                                       w.time('t1')))
    assert found.line == 12
    assert w.lookup(RelationAssertion(RelationKind.EXISTS_AT, 'zz',
                                      time=w.time('t1'))) is None


def test_groundings(world):
    w = world.add_grounding(GroundingAssertion('lattice1', 'solubility1',
                                               GroundingKind.INTERNAL))
    assert len(w.groundings) == 1
    with pytest.raises(ClassConstraintError):
        world.add_grounding(GroundingAssertion('solubility1', 'lattice1'))
    with pytest.raises(WorldError):
        world.add_grounding(GroundingAssertion('solubility1', 'solubility1'))


def test_mereo_groundings(world):
    w = world.add_mereo_grounding(MereologicalGroundingAssertion(
        'solubility1', 'crystal1', 'na1'))
    assert len(w.mereo_groundings) == 1
    with pytest.raises(ClassConstraintError):
        world.add_mereo_grounding(MereologicalGroundingAssertion(
            'solubility1', 'lattice1', 'na1'))
    with pytest.raises(WorldError):
        world.add_mereo_grounding(MereologicalGroundingAssertion(
            'solubility1', 'crystal1', 'crystal1'))


def test_diff_snapshots(world):
    s1, s2, s3 = (world.snapshot(t) for t in world.timeline)
    changes = diff_snapshots(s1, s2)
    assert changes.lost_parts == {'crystal1': {'na1'}}
    assert changes.lost_qualities == {}
    assert not changes.is_empty()
    changes = diff_snapshots(s2, s3)
    assert changes.lost_qualities == {'nacl1': {'lattice1'}}
    assert changes.lost_realizables == {}
    assert changes.physically_changed('nacl1')
    assert not changes.physically_changed('crystal1')


def test_diff_same_snapshot_is_empty(world):
    s = world.snapshot('t2')
    assert diff_snapshots(s, s).is_empty()


def test_diff_order(world):
    s1, s3 = world.snapshot('t1'), world.snapshot('t3')
    with pytest.raises(SnapshotOrderError):
        diff_snapshots(s3, s1)
    reverse = diff_snapshots(s3, s1, allow_reverse=True)
    assert reverse == diff_snapshots(s1, s3).inverted()


def test_truncate(world):
    short = truncate(world, ['t3', 't1'])
    assert [(t.label, t.index) for t in short.timeline] == [('t1', 0),
                                                            ('t3', 1)]
    assert not short.snapshot('t3').exists('lattice1')
    assert short.snapshot('t1').exists('lattice1')
    assert len(short.entities) == len(world.entities)
    with pytest.raises(UnknownTimeError):
        short.time('t2')
