"""Structural checks of grounding between specifically dependent continuants.

A realizable entity ``x`` is *dependence grounded* in ``y`` when, at every
time ``x`` inheres in some bearer ``b``, ``y`` (or an instance of one of its
determinates) inheres too, in ``b`` or, for a relational quality, in an
aggregate ``b`` is a member part of. The explanatory "because" of grounding
cannot be read off assertions: the checks below only test its necessary
conditions, and a ``grounds`` statement is taken as the claim itself.

Grounding is *internal* when ``y`` is not a relational quality and *external*
when it is. *Mereological* grounding is read evidentially over the timeline:
a realizable borne by a whole should go when the whole loses a member part.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum, unique
from itertools import combinations
from .taxonomy import REALIZABLE_ENTITY, SPECIFICALLY_DEPENDENT_CONTINUANT, \
                      RELATIONAL_QUALITY, MATERIAL_ENTITY, OBJECT_AGGREGATE, \
                      QUALITY
from .world import GroundingKind, TimePoint


logger = logging.getLogger(__name__)

CO_INHERENCE = 'c1'
BEARER_COMPATIBILITY = 'c2'
MATERIAL_BEARER = 'c3'
RELATIONAL_GROUND = 'c4'
QUALITY_GROUND = 'c5'

CONDITIONS = {
    CO_INHERENCE: 'the ground or one of its determinates inheres',
    BEARER_COMPATIBILITY: 'the ground inheres in the same bearer, or in an '
                          'aggregate the bearer is a member part of',
    MATERIAL_BEARER: 'the bearer is a material entity',
    RELATIONAL_GROUND: 'the ground is a relational quality exactly when '
                       'the grounding is external',
    QUALITY_GROUND: 'the ground of an internal grounding is a quality',
}


class GroundingError(ValueError):
    pass


@unique
class VerdictStatus(Enum):
    SATISFIED = 'satisfied'
    VIOLATED = 'violated'
    UNDETERMINED = 'undetermined'
    SUPPORTED = 'supported'
    REFUTED = 'refuted'


@dataclass(frozen=True)
class Evidence:
    time: TimePoint
    condition: str
    passed: bool


@dataclass(frozen=True)
class MereologicalEvidence:
    t1: TimePoint
    t2: TimePoint
    whole: str
    part: str
    realizable: str
    realizable_persists: bool = False


@dataclass(frozen=True)
class GroundingVerdict:
    status: VerdictStatus
    evidence: tuple = field(default_factory=tuple)
    notes: str = ''

    @property
    def failing_times(self):
        times = []
        for x in self.evidence:
            if isinstance(x, Evidence) and not x.passed:
                if x.time not in times:
                    times.append(x.time)
        return times


def _require(world, id, class_name, what):
    if not world.is_a(id, class_name):
        raise GroundingError(f'{id!r} ({world.class_of(id)}) must be a '
                             f'{class_name} to be {what}')


def _check_pair(world, x, y):
    _require(world, x, REALIZABLE_ENTITY, 'grounded')
    _require(world, y, SPECIFICALLY_DEPENDENT_CONTINUANT, 'a ground')
    if x == y:
        raise GroundingError(f'{x!r} cannot ground itself')


def _witnesses(world, y):
    """``y`` followed by the instances of the determinates of its class."""
    determinates = world.taxonomy.determinates_of(world.class_of(y))
    others = sorted(e.id for e in world.entities.values()
                    if e.class_name in determinates and e.id != y)
    return [y] + others


def _compatible(world, witness, bearer, time):
    witness_bearer = world.bearer_at(witness, time)
    if witness_bearer == bearer:
        return True
    return (world.is_a(witness, RELATIONAL_QUALITY)
            and world.is_a(witness_bearer, OBJECT_AGGREGATE)
            and world.member_at(bearer, witness_bearer, time))


def _status(evidence):
    if not evidence:
        return VerdictStatus.UNDETERMINED
    if all(x.passed for x in evidence):
        return VerdictStatus.SATISFIED
    return VerdictStatus.VIOLATED


def _dependence_evidence(world, x, y):
    witnesses = _witnesses(world, y)
    for t in world.timeline:
        bearer = world.bearer_at(x, t)
        if bearer is None:
            continue
        inhering = [w for w in witnesses if world.bearer_at(w, t) is not None]
        yield Evidence(t, CO_INHERENCE, bool(inhering))
        yield Evidence(t, BEARER_COMPATIBILITY,
                       any(_compatible(world, w, bearer, t)
                           for w in inhering))


def check_dependence_grounding(world, x, y):
    """Checks the structural conditions of ``x`` being dependence grounded
    in ``y`` at every time ``x`` inheres.

    :param world: the world to inspect
    :param x: the realizable entity id
    :param y: the ground id, a specifically dependent continuant
    :return: SATISFIED, VIOLATED, or UNDETERMINED when ``x`` never inheres
    :rtype: GroundingVerdict
    :raises GroundingError: if the classes do not fit or ``x == y``
    """
    _check_pair(world, x, y)
    evidence = tuple(_dependence_evidence(world, x, y))
    notes = '' if evidence else f'{x} never inheres in a bearer'
    return GroundingVerdict(_status(evidence), evidence, notes)


def classify_grounding(world, x, y):
    _check_pair(world, x, y)
    if world.is_a(y, RELATIONAL_QUALITY):
        return GroundingKind.EXTERNAL
    return GroundingKind.INTERNAL


def check_internal_grounding(world, x, y):
    verdict = check_dependence_grounding(world, x, y)
    relational = world.is_a(y, RELATIONAL_QUALITY)
    quality = world.is_a(y, QUALITY)
    evidence = list(verdict.evidence)
    for t in world.inherence_times(x):
        evidence.append(Evidence(t, MATERIAL_BEARER,
                                 world.is_a(world.bearer_at(x, t),
                                            MATERIAL_ENTITY)))
        evidence.append(Evidence(t, RELATIONAL_GROUND, not relational))
        evidence.append(Evidence(t, QUALITY_GROUND, quality))
    return GroundingVerdict(_status(evidence), tuple(evidence), verdict.notes)


def check_external_grounding(world, x, y):
    verdict = check_dependence_grounding(world, x, y)
    relational = world.is_a(y, RELATIONAL_QUALITY)
    evidence = list(verdict.evidence)
    evidence.extend(Evidence(t, RELATIONAL_GROUND, relational)
                    for t in world.inherence_times(x))
    return GroundingVerdict(_status(evidence), tuple(evidence), verdict.notes)


CHECKS = {
    GroundingKind.DEPENDENCE: check_dependence_grounding,
    GroundingKind.INTERNAL: check_internal_grounding,
    GroundingKind.EXTERNAL: check_external_grounding,
}


def check_asserted_grounding(world, assertion):
    return CHECKS[assertion.kind](world, assertion.realizable,
                                  assertion.ground)


def _separations(world, x, whole, part):
    for t1, t2 in combinations(world.timeline, 2):
        if (world.bearer_at(x, t1) == whole
                and world.member_at(part, whole, t1)
                and not world.member_at(part, whole, t2)):
            yield MereologicalEvidence(
                t1, t2, whole, part, x,
                realizable_persists=world.bearer_at(x, t2) == whole)


def check_mereological_grounding(world, x, whole, part):
    """Evidential reading of "x would cease were ``whole`` to lose
    ``part``" over every pair t1 < t2 of the timeline.

    Each pair where ``x`` inheres in ``whole`` and ``part`` stops being a
    member of it is a witness. The verdict is REFUTED if ``x`` survives one
    of these separations, SUPPORTED if it never does, and UNDETERMINED
    without any separation.
    """
    _require(world, x, REALIZABLE_ENTITY, 'grounded')
    _require(world, whole, MATERIAL_ENTITY, 'a whole')
    world.entity(part)
    evidence = tuple(_separations(world, x, whole, part))
    if not evidence:
        return GroundingVerdict(VerdictStatus.UNDETERMINED, evidence,
                                f'{part} never separates from {whole} while '
                                f'{x} inheres in it')
    if any(e.realizable_persists for e in evidence):
        return GroundingVerdict(VerdictStatus.REFUTED, evidence,
                                f'{x} survives the loss of {part}')
    return GroundingVerdict(VerdictStatus.SUPPORTED, evidence)


def _sdc_ids(world):
    return sorted(world.entities_of_class(SPECIFICALLY_DEPENDENT_CONTINUANT))


def infer_grounding_candidates(world, x):
    """Every SDC satisfying the dependence conditions for ``x``, tagged with
    its grounding kind and ordered by id.
    """
    _require(world, x, REALIZABLE_ENTITY, 'grounded')
    candidates = []
    for y in _sdc_ids(world):
        if y == x:
            continue
        verdict = check_dependence_grounding(world, x, y)
        if verdict.status is VerdictStatus.SATISFIED:
            candidates.append((y, classify_grounding(world, x, y)))
    return candidates


def infer_all_candidates(world, workers=None):
    """Candidates of every realizable entity of ``world``, keyed by id in
    id order. With ``workers`` the searches run on a thread pool.
    """
    realizables = sorted(world.entities_of_class(REALIZABLE_ENTITY))
    if workers:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = executor.map(
                lambda x: infer_grounding_candidates(world, x), realizables)
            return dict(zip(realizables, results))
    return {x: infer_grounding_candidates(world, x) for x in realizables}


def reduce_mereological_to_dependence(world, x, whole, part):
    verdict = check_mereological_grounding(world, x, whole, part)
    if verdict.status is not VerdictStatus.SUPPORTED:
        raise GroundingError(f'Mereological grounding of {x!r} in {whole!r} '
                             f'through {part!r} is {verdict.status.value}, '
                             'not supported')
    times = [t for t in world.timeline if world.bearer_at(x, t) == whole]
    separations = [e.t2 for e in verdict.evidence]
    for y in _sdc_ids(world):
        if y == x:
            continue
        if (all(world.bearer_at(y, t) == whole for t in times)
                and all(world.bearer_at(y, t) != whole for t in separations)):
            logger.debug('%s reduces to dependence on %s', x, y)
            return y
    return None
