"""The rules module holds the validation rule catalog.

Each rule is a generator function registered with the ``rule`` decorator. It
receives the ``Rule`` record and an elaborated ``World`` and yields
``Diagnostic`` values:

.. code-block:: python

    @rule('R2', 'DISP-MATERIAL-BEARER', Severity.ERROR,
          citation='...')
    def disposition_material_bearer(rule, world):
        '''Prose shown by ``explain``.'''
        yield rule.diagnostic(['d1', 'b1'], [t1], 'not material')

Registration order is the catalog order used to sort reports.
"""
import inspect
from dataclasses import dataclass, field
from enum import Enum, unique
from .taxonomy import DISPOSITION, ROLE, REALIZABLE_ENTITY, \
                      MATERIAL_ENTITY, IMMATERIAL_ENTITY, RELATIONAL_QUALITY
from .world import RelationAssertion, RelationKind, GroundingKind, \
                   diff_snapshots
from .grounding import check_dependence_grounding, \
                       check_mereological_grounding, \
                       infer_grounding_candidates, VerdictStatus


@unique
class Severity(Enum):
    ERROR = 'error'
    WARNING = 'warning'
    INFO = 'info'


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: Severity
    subjects: tuple
    times: tuple
    message: str
    source_line: int = None

    def __post_init__(self):
        if not self.subjects:
            raise ValueError(f'Diagnostic {self.code} needs a subject')


@dataclass(frozen=True)
class Rule:
    code: str
    name: str
    severity: Severity
    prose: str
    citation: str
    check: object = field(compare=False, repr=False)

    def __call__(self, world):
        return list(self.check(self, world))

    def diagnostic(self, subjects, times, message, line=None, severity=None):
        return Diagnostic(self.code, severity or self.severity,
                          tuple(subjects), tuple(times), message, line)


CATALOG = {}


def rule(code, name, severity, citation):
    def inner_decorator(fun):
        CATALOG[code] = Rule(code, name, severity,
                             inspect.cleandoc(fun.__doc__ or ''), citation,
                             fun)
        return fun
    return inner_decorator


def rule_catalog():
    return list(CATALOG.values())


def _inherence(world, sdc, bearer, time):
    stored = world.lookup(RelationAssertion(RelationKind.INHERES_IN, sdc,
                                            bearer, time))
    return stored.line if stored else None


def _first_line(lines):
    lines = [x for x in lines if x is not None]
    return min(lines) if lines else None


def _adjacent(world):
    return zip(world.timeline, world.timeline[1:])


@rule('R1', 'TYPE-DISJOINT', Severity.ERROR,
      citation='Role is a disjoint sibling class of disposition: no '
               'realizable entity is both.')
def type_disjoint(rule, world):
    """A ``grounds`` statement of kind internal treats its realizable as a
    disposition, one of kind external as a role. The realizable's class must
    not be disjoint with that reading, and no realizable is read both ways.
    """
    categories = {GroundingKind.INTERNAL: DISPOSITION,
                  GroundingKind.EXTERNAL: ROLE}
    asserted = {}
    for g in world.groundings:
        if g.kind in categories:
            asserted.setdefault(g.realizable, {}).setdefault(g.kind, g.line)
    for x, kinds in asserted.items():
        if len(kinds) > 1:
            yield rule.diagnostic(
                [x], [], f'{x} is grounded both internally (as a '
                'disposition) and externally (as a role)',
                _first_line(kinds.values()))
            continue
        for kind, line in kinds.items():
            category = categories[kind]
            if world.taxonomy.are_disjoint(world.class_of(x), category):
                yield rule.diagnostic(
                    [x], [], f'{x} is a {world.class_of(x)}, disjoint with '
                    f'{category}, but is grounded {kind.value}ly', line)


def _disposition_bearers(world):
    for d in sorted(world.entities_of_class(DISPOSITION)):
        bearers = {}
        for t in world.inherence_times(d):
            bearers.setdefault(world.bearer_at(d, t), []).append(t)
        for bearer, times in sorted(bearers.items()):
            yield d, bearer, times


@rule('R2', 'DISP-MATERIAL-BEARER', Severity.ERROR,
      citation='Disposition, condition (ii): the bearer of a disposition is '
               'some material entity.')
def disposition_material_bearer(rule, world):
    """Every disposition inheres, whenever it inheres, in a material entity.
    """
    for d, bearer, times in _disposition_bearers(world):
        if (world.is_a(bearer, MATERIAL_ENTITY)
                or world.is_a(bearer, IMMATERIAL_ENTITY)):
            continue
        yield rule.diagnostic(
            [d, bearer], times, f'disposition {d} inheres in {bearer}, a '
            f'{world.class_of(bearer)} that is not a material entity',
            _inherence(world, d, bearer, times[0]))


@rule('R3', 'DISP-IMMATERIAL', Severity.ERROR,
      citation='Dispositions cannot be borne by immaterial entities; roles '
               'can.')
def disposition_immaterial(rule, world):
    """A disposition inheres in an immaterial entity such as a site. Roles
    borne by immaterial entities are fine.
    """
    for d, bearer, times in _disposition_bearers(world):
        if world.is_a(bearer, IMMATERIAL_ENTITY):
            yield rule.diagnostic(
                [d, bearer], times, f'disposition {d} inheres in immaterial '
                f'{bearer} ({world.class_of(bearer)})',
                _inherence(world, d, bearer, times[0]))


def _cessations(world):
    """Realizable entities that stop inhering in a bearer between two
    adjacent time points, with the change set of the pair.
    """
    for t1, t2 in _adjacent(world):
        s1 = world.snapshot(t1)
        changes = diff_snapshots(s1, world.snapshot(t2))
        ceased = sorted((x.subject, x.object) for x in s1.active
                        if x.kind is RelationKind.INHERES_IN
                        and world.is_a(x.subject, REALIZABLE_ENTITY)
                        and world.bearer_at(x.subject, t2) != x.object)
        for x, bearer in ceased:
            yield x, bearer, t1, t2, changes


@rule('R4', 'DISP-LOSS-NO-CHANGE', Severity.ERROR,
      citation='Disposition, condition (iii): if a disposition ceases to '
               'exist, its bearer is physically changed.')
def disposition_loss_without_change(rule, world):
    """A disposition ceases in its bearer between adjacent time points while
    the bearer neither loses nor gains a quality or a member part.
    """
    for x, bearer, t1, t2, changes in _cessations(world):
        if world.is_a(x, DISPOSITION) and \
                not changes.physically_changed(bearer):
            yield rule.diagnostic(
                [x, bearer], [t1, t2], f'disposition {x} ceases in {bearer} '
                'although its bearer is not physically changed',
                _inherence(world, x, bearer, t1))


@rule('R5', 'ROLE-LOSS-INFO', Severity.INFO,
      citation='Role, condition (iii): a role can cease without any change '
               'in the physical make-up of the bearer.')
def role_loss_without_change(rule, world):
    """A role ceases with no physical change of its bearer. This is how roles
    behave; the diagnostic only reports it.
    """
    for x, bearer, t1, t2, changes in _cessations(world):
        if world.is_a(x, ROLE) and not changes.physically_changed(bearer):
            yield rule.diagnostic(
                [x, bearer], [t1, t2], f'role {x} ceases in {bearer} with no '
                'physical change of its bearer',
                _inherence(world, x, bearer, t1))


@rule('R6', 'GR-DISP-RELATIONAL', Severity.ERROR,
      citation='Internal grounding: the ground is not a relational quality.')
def disposition_relational_ground(rule, world):
    """An internal grounding, or any grounding of a disposition, rests on a
    relational quality.
    """
    for g in world.groundings:
        if not (g.kind is GroundingKind.INTERNAL
                or world.is_a(g.realizable, DISPOSITION)):
            continue
        if world.is_a(g.ground, RELATIONAL_QUALITY):
            yield rule.diagnostic(
                [g.ground, g.realizable], [], f'{g.realizable} is grounded '
                f'internally in relational quality {g.ground}', g.line)


@rule('R7', 'GR-ROLE-NONRELATIONAL', Severity.ERROR,
      citation='External grounding: the ground is some relational quality.')
def role_nonrelational_ground(rule, world):
    """A grounding of a role, or any external grounding, rests on something
    other than a relational quality.
    """
    for g in world.groundings:
        if not (g.kind is GroundingKind.EXTERNAL
                or world.is_a(g.realizable, ROLE)):
            continue
        if not world.is_a(g.ground, RELATIONAL_QUALITY):
            yield rule.diagnostic(
                [g.ground, g.realizable], [], f'{g.realizable} is grounded '
                f'in {g.ground}, a {world.class_of(g.ground)} that is not a '
                'relational quality', g.line)


@rule('R8', 'GR-COINHERE', Severity.ERROR,
      citation='Dependence grounding: whenever the realizable inheres in its '
               'bearer, determinates of the ground inhere in it too.')
def grounding_coinherence(rule, world):
    """An asserted grounding fails its structural conditions: at some time
    the realizable inheres while the ground (or a determinate of it) does
    not, or inheres in an unrelated bearer.
    """
    for g in world.groundings:
        verdict = check_dependence_grounding(world, g.realizable, g.ground)
        if verdict.status is VerdictStatus.VIOLATED:
            times = verdict.failing_times
            labels = ', '.join(str(t) for t in times)
            yield rule.diagnostic(
                [g.ground, g.realizable], times, f'{g.realizable} inheres '
                f'without its ground {g.ground} at {labels}', g.line)


@rule('R9', 'DETERMINATE-DETERMINABLE', Severity.ERROR,
      citation='A bearer has at most one determinate of a determinable at a '
               'time, as an object bears different colors only over time.')
def one_determinate_at_a_time(rule, world):
    """Two instances of determinates of one determinable inhere in one
    bearer at one time.
    """
    taxonomy = world.taxonomy
    determinables = sorted({x.determinable_class
                            for x in taxonomy.determination_links()})
    for determinable in determinables:
        determinates = taxonomy.direct_determinates_of(determinable)
        instances = [e.id for e in world.entities.values()
                     if any(taxonomy.is_subclass_of(e.class_name, d)
                            for d in determinates)]
        for t in world.timeline:
            by_bearer = {}
            for x in instances:
                bearer = world.bearer_at(x, t)
                if bearer is not None:
                    by_bearer.setdefault(bearer, []).append(x)
            for bearer, found in sorted(by_bearer.items()):
                if len(found) < 2:
                    continue
                found.sort()
                yield rule.diagnostic(
                    [bearer] + found, [t], f'{bearer} bears '
                    f'{len(found)} determinates of {determinable} at {t}: '
                    f'{", ".join(found)}',
                    _first_line(_inherence(world, x, bearer, t)
                                for x in found))


@rule('R10', 'MEREO-UNSUPPORTED', Severity.WARNING,
      citation='Mereological grounding: were the whole to lose the part, the '
               'realizable would cease to inhere in it.')
def mereological_unsupported(rule, world):
    """A ``mereo_grounds`` statement is contradicted by the timeline (the
    realizable survives the loss of the part, reported as an error) or has
    no separation event to rest on (a warning).
    """
    for g in world.mereo_groundings:
        verdict = check_mereological_grounding(world, g.realizable, g.whole,
                                               g.part)
        subjects = [g.realizable, g.whole, g.part]
        if verdict.status is VerdictStatus.REFUTED:
            times = sorted({t for e in verdict.evidence
                            if e.realizable_persists for t in (e.t1, e.t2)})
            yield rule.diagnostic(subjects, times, verdict.notes, g.line,
                                  severity=Severity.ERROR)
        elif verdict.status is VerdictStatus.UNDETERMINED:
            yield rule.diagnostic(subjects, [], verdict.notes, g.line)


@rule('R11', 'REALIZATION-PARTICIPATION', Severity.ERROR,
      citation='Realizable entities are realized in processes in which '
               'their bearers participate.')
def realization_participation(rule, world):
    """``realizes(p, x)`` holds while the bearer of ``x`` never participates
    in ``p`` at a time ``x`` inheres.
    """
    for r in world.assertions:
        if r.kind is not RelationKind.REALIZES:
            continue
        p, x = r.subject, r.object
        if any(world.holds(RelationAssertion(RelationKind.PARTICIPATES_IN,
                                             world.bearer_at(x, t), p, t))
               for t in world.inherence_times(x)):
            continue
        yield rule.diagnostic([p, x], [], f'{p} realizes {x} but no bearer '
                              f'of {x} participates in {p}', r.line)


@rule('W1', 'DISP-UNGROUNDED', Severity.WARNING,
      citation='One would be hard-pressed to come up with a disposition '
               'that has no quality ground at all.')
def disposition_ungrounded(rule, world):
    """A disposition has neither an asserted ground nor any inferred
    candidate.
    """
    grounded = {g.realizable for g in world.groundings}
    for d in sorted(world.entities_of_class(DISPOSITION)):
        if d in grounded or infer_grounding_candidates(world, d):
            continue
        times = world.inherence_times(d)
        line = _inherence(world, d, world.bearer_at(d, times[0]),
                          times[0]) if times else None
        yield rule.diagnostic([d], [], f'disposition {d} has no ground',
                              line)


@rule('W2', 'ROLE-PERSISTS-GROUND-LOST', Severity.WARNING,
      citation='When the relation between a bearer and its context is '
               'eliminated, the role grounded in it is expected to go too.')
def role_persists_ground_lost(rule, world):
    """A role still inheres after the relational quality it is grounded in
    has ceased.
    """
    for g in world.groundings:
        if not (world.is_a(g.realizable, ROLE)
                and world.is_a(g.ground, RELATIONAL_QUALITY)):
            continue
        for t1, t2 in _adjacent(world):
            if (world.bearer_at(g.ground, t1) is not None
                    and world.bearer_at(g.ground, t2) is None
                    and world.bearer_at(g.realizable, t2) is not None):
                yield rule.diagnostic(
                    [g.realizable, g.ground], [t1, t2], f'role '
                    f'{g.realizable} persists after its ground {g.ground} '
                    'ceased', g.line)
