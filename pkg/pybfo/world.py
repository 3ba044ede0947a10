"""The world model: instances of taxonomy classes and the time-indexed
assertions that relate them.

A ``World`` is an immutable value. Builders (``add_instance``,
``assert_relation``, ...) return a new world, so a world can be handed to any
number of snapshot readers or validation workers without locking.

Snapshots and change sets are derived views:

>>> world = declare_timeline(empty_world(), ['t1', 't2'])
>>> world = add_instance(world, 'nacl1', 'object')
>>> snapshot(world, world.time('t1')).active
frozenset()
"""
import logging
from dataclasses import dataclass, field
from enum import Enum, unique
from functools import total_ordering
from types import MappingProxyType
from ordered_set import OrderedSet
from .taxonomy import load_builtin_taxonomy, UnknownClassError, \
                      SPECIFICALLY_DEPENDENT_CONTINUANT, \
                      INDEPENDENT_CONTINUANT, OBJECT_AGGREGATE, CONTINUANT, \
                      PROCESS, REALIZABLE_ENTITY, RELATIONAL_QUALITY, \
                      QUALITY, MATERIAL_ENTITY


logger = logging.getLogger(__name__)


class WorldError(ValueError):
    pass


class DuplicateEntityError(WorldError):
    def __init__(self, id):
        self.id = id
        super().__init__(f'Entity {id!r} is already declared')


class UnknownEntityError(WorldError):
    def __init__(self, id):
        self.id = id
        super().__init__(f'Unknown entity {id!r}')


class UnknownTimeError(WorldError):
    def __init__(self, label):
        self.label = label
        super().__init__(f'Unknown time point {label!r}')


class ClassConstraintError(WorldError):
    def __init__(self, id, got, expected, role=''):
        self.id = id
        self.got = got
        self.expected = expected
        msg = (f'Expected {id!r} to be a {expected}, but it is '
               f'a {got}')
        if role:
            msg += f' ({role})'
        super().__init__(msg)


class BearerConflictError(WorldError):
    pass


class SnapshotOrderError(WorldError):
    pass


class NotAnSDCError(WorldError):
    def __init__(self, id, class_name):
        self.id = id
        super().__init__(f'{id!r} is a {class_name}, not a specifically '
                         'dependent continuant')


@unique
class RelationKind(Enum):
    INHERES_IN = 'inheres_in'
    MEMBER_PART_OF = 'member_part_of'
    EXISTS_AT = 'exists_at'
    PARTICIPATES_IN = 'participates_in'
    REALIZES = 'realizes'
    TOWARDS = 'towards'

    @property
    def temporal(self):
        return self is not RelationKind.REALIZES


@unique
class GroundingKind(Enum):
    DEPENDENCE = 'dependence'
    INTERNAL = 'internal'
    EXTERNAL = 'external'


@total_ordering
@dataclass(frozen=True)
class TimePoint:
    label: str
    index: int

    def __lt__(self, other):
        if not isinstance(other, TimePoint):
            return NotImplemented
        return self.index < other.index

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class Entity:
    id: str
    class_name: str


@dataclass(frozen=True)
class RelationAssertion:
    kind: RelationKind
    subject: str
    object: str = None
    time: TimePoint = None
    line: int = field(default=None, compare=False, hash=False)

    def __str__(self):
        args = f'{self.subject}, {self.object or "_"}'
        if self.time is None:
            return f'{self.kind.value}({args})'
        return f'at {self.time}: {self.kind.value}({args})'


@dataclass(frozen=True)
class GroundingAssertion:
    ground: str
    realizable: str
    kind: GroundingKind = GroundingKind.DEPENDENCE
    line: int = field(default=None, compare=False, hash=False)


@dataclass(frozen=True)
class MereologicalGroundingAssertion:
    realizable: str
    whole: str
    part: str
    line: int = field(default=None, compare=False, hash=False)


# kind -> (subject superclass, object superclass), None when unconstrained
RELATION_CONSTRAINTS = {
    RelationKind.INHERES_IN: (SPECIFICALLY_DEPENDENT_CONTINUANT,
                              INDEPENDENT_CONTINUANT),
    RelationKind.MEMBER_PART_OF: (INDEPENDENT_CONTINUANT, OBJECT_AGGREGATE),
    RelationKind.EXISTS_AT: (None, None),
    RelationKind.PARTICIPATES_IN: (CONTINUANT, PROCESS),
    RelationKind.REALIZES: (PROCESS, REALIZABLE_ENTITY),
    RelationKind.TOWARDS: (RELATIONAL_QUALITY, None),
}


class World(object):
    def __init__(self, taxonomy=None, timeline=(), entities=None,
                 assertions=(), groundings=(), mereo_groundings=()):
        self.taxonomy = taxonomy or load_builtin_taxonomy()
        self.timeline = tuple(timeline)
        self._times = {t.label: t for t in self.timeline}
        self._entities = dict(entities or {})
        self._assertions = OrderedSet(assertions)
        self._groundings = OrderedSet(groundings)
        self._mereo_groundings = OrderedSet(mereo_groundings)
        self._bearers = {(x.subject, x.time): x.object
                         for x in self._assertions
                         if x.kind is RelationKind.INHERES_IN}
        self._memberships = {(x.subject, x.object, x.time)
                             for x in self._assertions
                             if x.kind is RelationKind.MEMBER_PART_OF}

    @property
    def entities(self):
        return MappingProxyType(self._entities)

    @property
    def assertions(self):
        return tuple(self._assertions)

    @property
    def groundings(self):
        return tuple(self._groundings)

    @property
    def mereo_groundings(self):
        return tuple(self._mereo_groundings)

    def __eq__(self, other):
        if not isinstance(other, World):
            return NotImplemented
        return (self.taxonomy == other.taxonomy
                and self.timeline == other.timeline
                and self._entities == other._entities
                and set(self._assertions) == set(other._assertions)
                and set(self._groundings) == set(other._groundings)
                and set(self._mereo_groundings) ==
                set(other._mereo_groundings))

    __hash__ = None

    def __repr__(self):
        return (f'<{self.__class__.__name__} entities={len(self._entities)} '
                f'times={len(self.timeline)} '
                f'assertions={len(self._assertions)}>')

    def _evolve(self, **changes):
        state = {
            'taxonomy': self.taxonomy,
            'timeline': self.timeline,
            'entities': self._entities,
            'assertions': self._assertions,
            'groundings': self._groundings,
            'mereo_groundings': self._mereo_groundings,
        }
        state.update(changes)
        return self.__class__(**state)

    def time(self, label):
        if isinstance(label, TimePoint):
            label = label.label
        try:
            return self._times[label]
        except KeyError:
            raise UnknownTimeError(label)

    def entity(self, id):
        try:
            return self._entities[id]
        except KeyError:
            raise UnknownEntityError(id)

    def class_of(self, id):
        return self.entity(id).class_name

    def is_a(self, id, class_name):
        return self.taxonomy.is_subclass_of(self.class_of(id), class_name)

    def check_class(self, id, class_name, role=''):
        if class_name is not None and not self.is_a(id, class_name):
            raise ClassConstraintError(id, self.class_of(id), class_name,
                                       role)

    def bearer_at(self, sdc, time):
        return self._bearers.get((sdc, time))

    def member_at(self, part, aggregate, time):
        return (part, aggregate, time) in self._memberships

    def holds(self, assertion):
        return assertion in self._assertions

    def lookup(self, assertion):
        """The stored assertion equal to ``assertion``, with its source
        line, or None.
        """
        try:
            return self._assertions[self._assertions.index(assertion)]
        except KeyError:
            return None

    def with_timeline(self, labels):
        if self.timeline:
            raise WorldError('The timeline is already declared')
        labels = list(labels)
        if len(set(labels)) != len(labels):
            raise WorldError(f'Duplicate labels in timeline {labels}')
        return self._evolve(timeline=[TimePoint(label, i)
                                      for i, label in enumerate(labels)])

    def add_instance(self, id, class_name):
        if id in self._entities:
            raise DuplicateEntityError(id)
        if class_name not in self.taxonomy:
            raise UnknownClassError(class_name)
        entities = dict(self._entities)
        entities[id] = Entity(id, class_name)
        logger.debug('instance %r : %r', id, class_name)
        return self._evolve(entities=entities)

    def _closure(self, assertion):
        yield assertion
        if assertion.kind is RelationKind.INHERES_IN:
            for id in (assertion.subject, assertion.object):
                yield RelationAssertion(RelationKind.EXISTS_AT, id,
                                        time=assertion.time)

    def assert_relation(self, assertion):
        kind = assertion.kind
        self.entity(assertion.subject)
        if kind is RelationKind.EXISTS_AT:
            if assertion.object is not None:
                raise WorldError('exists_at takes no object')
        else:
            self.entity(assertion.object)
        if kind.temporal:
            if assertion.time is None:
                raise WorldError(f'{kind.value} requires a time point')
            if self.time(assertion.time) != assertion.time:
                raise UnknownTimeError(assertion.time.label)
        elif assertion.time is not None:
            raise WorldError(f'{kind.value} is atemporal')
        subject_class, object_class = RELATION_CONSTRAINTS[kind]
        self.check_class(assertion.subject, subject_class,
                         f'subject of {kind.value}')
        if assertion.object is not None:
            self.check_class(assertion.object, object_class,
                             f'object of {kind.value}')
        if assertion.subject == assertion.object:
            raise WorldError(f'{kind.value} cannot relate '
                             f'{assertion.subject!r} to itself')
        if kind is RelationKind.INHERES_IN:
            bearer = self.bearer_at(assertion.subject, assertion.time)
            if bearer is not None and bearer != assertion.object:
                raise BearerConflictError(
                    f'{assertion.subject!r} already inheres in {bearer!r} '
                    f'at {assertion.time}, cannot also inhere in '
                    f'{assertion.object!r}')
        assertions = OrderedSet(self._assertions)
        assertions.update(self._closure(assertion))
        return self._evolve(assertions=assertions)

    def add_grounding(self, grounding):
        self.check_class(grounding.realizable, REALIZABLE_ENTITY,
                         'grounded realizable')
        self.check_class(grounding.ground, SPECIFICALLY_DEPENDENT_CONTINUANT,
                         'ground')
        if grounding.ground == grounding.realizable:
            raise WorldError(f'{grounding.ground!r} cannot ground itself')
        groundings = OrderedSet(self._groundings)
        groundings.add(grounding)
        return self._evolve(groundings=groundings)

    def add_mereo_grounding(self, grounding):
        self.check_class(grounding.realizable, REALIZABLE_ENTITY,
                         'grounded realizable')
        self.check_class(grounding.whole, MATERIAL_ENTITY, 'whole')
        self.entity(grounding.part)
        if grounding.whole == grounding.part:
            raise WorldError(f'{grounding.part!r} cannot be a proper part '
                             'of itself')
        groundings = OrderedSet(self._mereo_groundings)
        groundings.add(grounding)
        return self._evolve(mereo_groundings=groundings)

    def snapshot(self, time):
        time = self.time(time)
        active = frozenset(x for x in self._assertions
                           if x.time is None or x.time == time)
        return Snapshot(time, active, self)

    def inherence_times(self, sdc):
        self.entity(sdc)
        return [t for t in self.timeline
                if self.bearer_at(sdc, t) is not None]

    def entities_of_class(self, class_name):
        self.taxonomy.node(class_name)
        return [x.id for x in self._entities.values()
                if self.taxonomy.is_subclass_of(x.class_name, class_name)]


@dataclass(frozen=True)
class Snapshot:
    time: TimePoint
    active: frozenset
    world: World = field(compare=False, repr=False)

    def _select(self, kind, **kwargs):
        for assertion in self.active:
            if assertion.kind is not kind:
                continue
            if all(getattr(assertion, k) == v for k, v in kwargs.items()):
                yield assertion

    def _sdcs_in(self, bearer, class_name):
        self.world.entity(bearer)
        return frozenset(x.subject for x in
                         self._select(RelationKind.INHERES_IN, object=bearer)
                         if self.world.is_a(x.subject, class_name))

    def bearer_of(self, sdc):
        if not self.world.is_a(sdc, SPECIFICALLY_DEPENDENT_CONTINUANT):
            raise NotAnSDCError(sdc, self.world.class_of(sdc))
        return self.world.bearer_at(sdc, self.time)

    def qualities_of(self, bearer):
        return self._sdcs_in(bearer, QUALITY)

    def realizables_of(self, bearer):
        return self._sdcs_in(bearer, REALIZABLE_ENTITY)

    def sdcs_of(self, bearer):
        return self._sdcs_in(bearer, SPECIFICALLY_DEPENDENT_CONTINUANT)

    def members_of(self, aggregate):
        self.world.entity(aggregate)
        return frozenset(x.subject for x in
                         self._select(RelationKind.MEMBER_PART_OF,
                                      object=aggregate))

    def participants_of(self, process):
        self.world.entity(process)
        return frozenset(x.subject for x in
                         self._select(RelationKind.PARTICIPATES_IN,
                                      object=process))

    def exists(self, id):
        return any(True for _ in self._select(RelationKind.EXISTS_AT,
                                              subject=id))


@dataclass(frozen=True)
class ChangeSet:
    from_time: TimePoint
    to_time: TimePoint
    lost_qualities: dict = field(default_factory=dict)
    gained_qualities: dict = field(default_factory=dict)
    lost_parts: dict = field(default_factory=dict)
    gained_parts: dict = field(default_factory=dict)
    lost_realizables: dict = field(default_factory=dict)
    gained_realizables: dict = field(default_factory=dict)

    CATEGORIES = ('qualities', 'parts', 'realizables')

    def is_empty(self):
        return not any(getattr(self, f'{direction}_{category}')
                       for category in self.CATEGORIES
                       for direction in ('lost', 'gained'))

    def physically_changed(self, bearer):
        """A bearer is physically changed when it lost or gained a quality
        or a member part.
        """
        return any(bearer in getattr(self, f'{direction}_{category}')
                   for category in ('qualities', 'parts')
                   for direction in ('lost', 'gained'))

    def inverted(self):
        return ChangeSet(self.to_time, self.from_time,
                         lost_qualities=self.gained_qualities,
                         gained_qualities=self.lost_qualities,
                         lost_parts=self.gained_parts,
                         gained_parts=self.lost_parts,
                         lost_realizables=self.gained_realizables,
                         gained_realizables=self.lost_realizables)


def _by_bearer(snapshot, class_name):
    world = snapshot.world
    result = {}
    for x in snapshot._select(RelationKind.INHERES_IN):
        if world.is_a(x.subject, class_name):
            result.setdefault(x.object, set()).add(x.subject)
    return result


def _by_aggregate(snapshot):
    result = {}
    for x in snapshot._select(RelationKind.MEMBER_PART_OF):
        result.setdefault(x.object, set()).add(x.subject)
    return result


def _subtract(a, b):
    result = {}
    for key, values in a.items():
        remaining = frozenset(values - b.get(key, set()))
        if remaining:
            result[key] = remaining
    return result


def diff_snapshots(s1, s2, allow_reverse=False):
    """Categorized gains and losses between two snapshots.

    :param s1: the earlier snapshot
    :param s2: the later snapshot
    :param allow_reverse: accept ``s2`` preceding ``s1``
    :return: the ``ChangeSet`` from ``s1`` to ``s2``
    :rtype: ChangeSet
    :raises SnapshotOrderError: if ``s2`` precedes ``s1`` and
        ``allow_reverse`` is False
    """
    if s2.time < s1.time and not allow_reverse:
        raise SnapshotOrderError(f'Snapshot at {s1.time} does not precede '
                                 f'snapshot at {s2.time}')
    changes = {}
    for category, extract in (
            ('qualities', lambda s: _by_bearer(s, QUALITY)),
            ('parts', _by_aggregate),
            ('realizables', lambda s: _by_bearer(s, REALIZABLE_ENTITY))):
        before, after = extract(s1), extract(s2)
        changes[f'lost_{category}'] = _subtract(before, after)
        changes[f'gained_{category}'] = _subtract(after, before)
    return ChangeSet(s1.time, s2.time, **changes)


def empty_world(taxonomy=None):
    return World(taxonomy)


def declare_timeline(world, labels):
    return world.with_timeline(labels)


def add_instance(world, id, class_name):
    return world.add_instance(id, class_name)


def assert_relation(world, assertion):
    return world.assert_relation(assertion)


def snapshot(world, t):
    return world.snapshot(t)


def bearer_of(snapshot, sdc):
    return snapshot.bearer_of(sdc)


def qualities_of(snapshot, bearer):
    return snapshot.qualities_of(bearer)


def realizables_of(snapshot, bearer):
    return snapshot.realizables_of(bearer)


def members_of(snapshot, aggregate):
    return snapshot.members_of(aggregate)


def participants_of(snapshot, process):
    return snapshot.participants_of(process)


def inherence_times(world, sdc):
    return world.inherence_times(sdc)


def entities_of_class(world, class_name):
    return world.entities_of_class(class_name)


def truncate(world, labels):
    """Restricts ``world`` to the given time points, keeping their relative
    order and reindexing them from 0.
    """
    kept = sorted((world.time(x) for x in set(labels)), key=lambda t: t.index)
    mapping = {t: TimePoint(t.label, i) for i, t in enumerate(kept)}
    assertions = []
    for x in world.assertions:
        if x.time is None:
            assertions.append(x)
        elif x.time in mapping:
            assertions.append(RelationAssertion(x.kind, x.subject, x.object,
                                                mapping[x.time], line=x.line))
    return World(world.taxonomy, list(mapping.values()), world.entities,
                 assertions, world.groundings, world.mereo_groundings)
