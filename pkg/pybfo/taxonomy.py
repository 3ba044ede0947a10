"""This module is the heart of pybfo. It defines the class hierarchy every
world is typed against:

* the built-in BFO tree (``load_builtin_taxonomy``),
* user-declared domain subclasses (``add_domain_class``),
* disjointness axioms, inherited along parent chains (``are_disjoint``),
* determinable/determinate links between quality or realizable classes
  (``declare_determination``).

A ``Taxonomy`` is immutable: every declaration returns a new value, so the
same taxonomy can be shared by any number of worlds and validation workers.
"""
import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from types import MappingProxyType
from ordered_set import OrderedSet


logger = logging.getLogger(__name__)

ENTITY = 'entity'
CONTINUANT = 'continuant'
OCCURRENT = 'occurrent'
INDEPENDENT_CONTINUANT = 'independent continuant'
SPECIFICALLY_DEPENDENT_CONTINUANT = 'specifically dependent continuant'
GENERICALLY_DEPENDENT_CONTINUANT = 'generically dependent continuant'
MATERIAL_ENTITY = 'material entity'
IMMATERIAL_ENTITY = 'immaterial entity'
OBJECT = 'object'
OBJECT_AGGREGATE = 'object aggregate'
FIAT_OBJECT_PART = 'fiat object part'
SITE = 'site'
QUALITY = 'quality'
RELATIONAL_QUALITY = 'relational quality'
REALIZABLE_ENTITY = 'realizable entity'
DISPOSITION = 'disposition'
FUNCTION = 'function'
ROLE = 'role'
PROCESS = 'process'

# (name, parent) in tree order, parents always first
BUILTIN_HIERARCHY = (
    (ENTITY, None),
    (CONTINUANT, ENTITY),
    (INDEPENDENT_CONTINUANT, CONTINUANT),
    (MATERIAL_ENTITY, INDEPENDENT_CONTINUANT),
    (OBJECT, MATERIAL_ENTITY),
    (OBJECT_AGGREGATE, MATERIAL_ENTITY),
    (FIAT_OBJECT_PART, MATERIAL_ENTITY),
    (IMMATERIAL_ENTITY, INDEPENDENT_CONTINUANT),
    (SITE, IMMATERIAL_ENTITY),
    ('continuant fiat boundary', IMMATERIAL_ENTITY),
    ('fiat point', 'continuant fiat boundary'),
    ('fiat line', 'continuant fiat boundary'),
    ('fiat surface', 'continuant fiat boundary'),
    ('spatial region', IMMATERIAL_ENTITY),
    ('zero-dimensional spatial region', 'spatial region'),
    ('one-dimensional spatial region', 'spatial region'),
    ('two-dimensional spatial region', 'spatial region'),
    ('three-dimensional spatial region', 'spatial region'),
    (SPECIFICALLY_DEPENDENT_CONTINUANT, CONTINUANT),
    (QUALITY, SPECIFICALLY_DEPENDENT_CONTINUANT),
    (RELATIONAL_QUALITY, QUALITY),
    (REALIZABLE_ENTITY, SPECIFICALLY_DEPENDENT_CONTINUANT),
    (DISPOSITION, REALIZABLE_ENTITY),
    (FUNCTION, DISPOSITION),
    (ROLE, REALIZABLE_ENTITY),
    (GENERICALLY_DEPENDENT_CONTINUANT, CONTINUANT),
    (OCCURRENT, ENTITY),
    (PROCESS, OCCURRENT),
    ('history', PROCESS),
    ('process boundary', OCCURRENT),
    ('temporal region', OCCURRENT),
    ('zero-dimensional temporal region', 'temporal region'),
    ('temporal instant', 'zero-dimensional temporal region'),
    ('one-dimensional temporal region', 'temporal region'),
    ('temporal interval', 'one-dimensional temporal region'),
    ('spatiotemporal region', OCCURRENT),
)

BUILTIN_DISJOINT = (
    (CONTINUANT, OCCURRENT),
    (DISPOSITION, ROLE),
    (QUALITY, REALIZABLE_ENTITY),
    (MATERIAL_ENTITY, IMMATERIAL_ENTITY),
    (INDEPENDENT_CONTINUANT, SPECIFICALLY_DEPENDENT_CONTINUANT),
    (INDEPENDENT_CONTINUANT, GENERICALLY_DEPENDENT_CONTINUANT),
    (SPECIFICALLY_DEPENDENT_CONTINUANT, GENERICALLY_DEPENDENT_CONTINUANT),
)


class TaxonomyError(ValueError):
    pass


class DuplicateClassError(TaxonomyError):
    def __init__(self, name):
        self.name = name
        super().__init__(f'Class {name!r} is already declared')


class UnknownClassError(TaxonomyError):
    def __init__(self, name):
        self.name = name
        super().__init__(f'Unknown class {name!r}')


class DeterminationError(TaxonomyError):
    pass


class DisjointnessError(TaxonomyError):
    pass


@dataclass(frozen=True)
class ClassNode:
    name: str
    parent: str = None
    disjoint_with: frozenset = field(default_factory=frozenset)
    builtin: bool = False


@dataclass(frozen=True)
class DeterminationLink:
    determinate_class: str
    determinable_class: str


class Taxonomy(object):
    """A single-inheritance class tree rooted at ``entity``.

    Instances are never modified in place; ``add_class``,
    ``declare_disjoint`` and ``declare_determination`` build new taxonomies.
    Declaration order is preserved so that documents can be regenerated
    parent-first.
    """

    def __init__(self, nodes=None, declared_disjoint=(), determinations=()):
        self._nodes = dict(nodes or {})
        self._declared_disjoint = tuple(declared_disjoint)
        self._determinations = OrderedSet(determinations)

    @property
    def nodes(self):
        return MappingProxyType(self._nodes)

    @property
    def determinations(self):
        return frozenset(self._determinations)

    @property
    def root(self):
        return ENTITY

    def __contains__(self, name):
        return name in self._nodes

    def __iter__(self):
        return iter(self._nodes)

    def __len__(self):
        return len(self._nodes)

    def __eq__(self, other):
        if not isinstance(other, Taxonomy):
            return NotImplemented
        return (self._nodes == other._nodes
                and self.determinations == other.determinations)

    def __hash__(self):
        return hash((frozenset(self._nodes.items()), self.determinations))

    def __repr__(self):
        return (f'<{self.__class__.__name__} classes={len(self._nodes)} '
                f'determinations={len(self._determinations)}>')

    def node(self, name):
        try:
            return self._nodes[name]
        except KeyError:
            raise UnknownClassError(name)

    def parent(self, name):
        return self.node(name).parent

    def _ancestors_gen(self, name):
        node = self.node(name)
        yield node.name
        while node.parent is not None:
            node = self._nodes[node.parent]
            yield node.name

    def ancestors(self, name):
        """Returns the ancestor-or-self chain of ``name``, self first and
        the root last.
        """
        return OrderedSet(self._ancestors_gen(name))

    def descendants(self, name):
        self.node(name)
        return OrderedSet(x for x in self._nodes
                          if x != name and name in self._ancestors_gen(x))

    def is_subclass_of(self, a, b):
        """Reflexive, transitive subclass test.

        :param a: the candidate subclass name
        :param b: the candidate superclass name
        :return: True if ``b`` is on the parent chain of ``a`` or ``a == b``
        :raises UnknownClassError: if either name is not declared
        """
        self.node(b)
        return b in self._ancestors_gen(a)

    def are_disjoint(self, a, b):
        if a == b:
            self.node(a)
            return False
        ancestors_b = self.ancestors(b)
        return any(not self._nodes[x].disjoint_with.isdisjoint(ancestors_b)
                   for x in self._ancestors_gen(a))

    def category_of(self, name):
        """Top category used by determination links: ``quality``,
        ``realizable entity`` or None.
        """
        for category in (QUALITY, REALIZABLE_ENTITY):
            if self.is_subclass_of(name, category):
                return category
        return None

    def user_classes(self):
        return [x for x in self._nodes.values() if not x.builtin]

    def declared_disjoint(self):
        return self._declared_disjoint

    def determination_links(self):
        return tuple(self._determinations)

    def _linked_determinables(self, name):
        return (link.determinable_class for link in self._determinations
                if link.determinate_class == name)

    def determinables_of(self, name):
        """Transitive closure of the determinables linked from ``name``."""
        self.node(name)
        seen = OrderedSet()
        pending = [name]
        while pending:
            for determinable in self._linked_determinables(pending.pop()):
                if determinable not in seen:
                    seen.add(determinable)
                    pending.append(determinable)
        return frozenset(seen)

    def is_determinate_of(self, a, b):
        self.node(b)
        return any(b in self.determinables_of(x)
                   for x in self._ancestors_gen(a))

    def determinates_of(self, name):
        self.node(name)
        return frozenset(x for x in self._nodes
                         if self.is_determinate_of(x, name))

    def direct_determinates_of(self, name):
        self.node(name)
        return frozenset(link.determinate_class
                         for link in self._determinations
                         if link.determinable_class == name)

    def add_class(self, name, parent):
        if not isinstance(name, str) or not name:
            raise TaxonomyError(f'Class name must be a non-empty string, '
                                f'got {name!r}')
        if name in self._nodes:
            raise DuplicateClassError(name)
        self.node(parent)
        nodes = dict(self._nodes)
        nodes[name] = ClassNode(name, parent)
        logger.debug('class %r declared under %r', name, parent)
        return Taxonomy(nodes, self._declared_disjoint, self._determinations)

    def declare_disjoint(self, a, b):
        node_a, node_b = self.node(a), self.node(b)
        if a == b or self.is_subclass_of(a, b) or self.is_subclass_of(b, a):
            raise DisjointnessError(f'Cannot declare {a!r} disjoint with '
                                    f'{b!r}: one is a subclass of the other')
        if b in node_a.disjoint_with:
            return self
        nodes = dict(self._nodes)
        nodes[a] = replace(node_a, disjoint_with=node_a.disjoint_with | {b})
        nodes[b] = replace(node_b, disjoint_with=node_b.disjoint_with | {a})
        return Taxonomy(nodes, self._declared_disjoint + ((a, b),),
                        self._determinations)

    def declare_determination(self, determinate, determinable):
        categories = (self.category_of(determinate),
                      self.category_of(determinable))
        if None in categories or categories[0] != categories[1]:
            raise DeterminationError(
                f'{determinate!r} and {determinable!r} must both be '
                'subclasses of quality or both of realizable entity')
        if (determinate == determinable
                or determinate in self.determinables_of(determinable)):
            raise DeterminationError(
                f'Declaring {determinate!r} a determinate of '
                f'{determinable!r} introduces a cycle')
        link = DeterminationLink(determinate, determinable)
        if link in self._determinations:
            return self
        determinations = OrderedSet(self._determinations)
        determinations.add(link)
        return Taxonomy(self._nodes, self._declared_disjoint, determinations)


@lru_cache(maxsize=None)
def load_builtin_taxonomy():
    nodes = {name: ClassNode(name, parent, builtin=True)
             for name, parent in BUILTIN_HIERARCHY}
    for a, b in BUILTIN_DISJOINT:
        for x, y in ((a, b), (b, a)):
            nodes[x] = replace(nodes[x],
                               disjoint_with=nodes[x].disjoint_with | {y})
    return Taxonomy(nodes)


def add_domain_class(taxonomy, name, parent):
    return taxonomy.add_class(name, parent)


def is_subclass_of(taxonomy, a, b):
    return taxonomy.is_subclass_of(a, b)


def are_disjoint(taxonomy, a, b):
    return taxonomy.are_disjoint(a, b)


def declare_determination(taxonomy, determinate, determinable):
    return taxonomy.declare_determination(determinate, determinable)


def declare_disjoint(taxonomy, a, b):
    return taxonomy.declare_disjoint(a, b)


__all__ = ['Taxonomy', 'ClassNode', 'DeterminationLink', 'TaxonomyError',
           'DuplicateClassError', 'UnknownClassError', 'DeterminationError',
           'DisjointnessError', 'load_builtin_taxonomy', 'add_domain_class',
           'is_subclass_of', 'are_disjoint', 'declare_determination',
           'declare_disjoint']
