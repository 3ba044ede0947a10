"""
The bfo module introduces the ``.bfo`` document format: a line-oriented
language in which taxonomies, timelines, worlds and grounding assertions are
authored.

Three stages are exposed:

* ``parse(source)`` builds a ``Document`` or raises ``ParseFailure`` holding
  every positioned ``ParseError`` of the source,
* ``serialize(document)`` writes the canonical text of a document,
* ``elaborate(document, taxonomy=None)`` binds the parsed names and builds a
  ``World`` or raises ``ElaborationFailure``.
"""
import logging
import re
from contextlib import contextmanager
from dataclasses import dataclass, field
from .resource import Resource
from ..innerutils import quote
from ..utils import dispatch
from ..taxonomy import load_builtin_taxonomy, TaxonomyError
from ..world import World, WorldError, RelationAssertion, RelationKind, \
                    GroundingAssertion, GroundingKind, \
                    MereologicalGroundingAssertion


logger = logging.getLogger(__name__)

TOKEN = re.compile(r'''
    (?P<space>[\ \t\r]+)
  | (?P<comment>\#.*)
  | (?P<quoted>"[^"\n]*")
  | (?P<ident>[A-Za-z_][A-Za-z0-9_-]*)
  | (?P<punct>[():,<=])
''', re.VERBOSE)

TEMPORAL_RELATIONS = {
    'inheres_in': RelationKind.INHERES_IN,
    'member_part_of': RelationKind.MEMBER_PART_OF,
    'exists': RelationKind.EXISTS_AT,
    'participates_in': RelationKind.PARTICIPATES_IN,
    'towards': RelationKind.TOWARDS,
}
RELATION_KEYWORDS = {v: k for k, v in TEMPORAL_RELATIONS.items()}
KIND_ORDER = {kind: i for i, kind in enumerate(TEMPORAL_RELATIONS.values())}

GROUNDING_KINDS = {x.value: x for x in GroundingKind}


@dataclass(frozen=True)
class ParseError:
    line: int
    column: int
    message: str
    expected: str

    def __str__(self):
        return (f'line {self.line}, column {self.column}: {self.message} '
                f'(expected {self.expected})')


@dataclass(frozen=True)
class ElaborationError:
    line: int
    message: str

    def __str__(self):
        return f'line {self.line}: {self.message}'


class ParseFailure(ValueError):
    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__('\n'.join(str(x) for x in self.errors))


class ElaborationFailure(ValueError):
    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__('\n'.join(str(x) for x in self.errors))


@dataclass(frozen=True)
class ClassDecl:
    name: str
    parent: str
    line: int = field(default=None, compare=False)


@dataclass(frozen=True)
class DisjointDecl:
    first: str
    second: str
    line: int = field(default=None, compare=False)


@dataclass(frozen=True)
class DeterminationDecl:
    determinate: str
    determinable: str
    line: int = field(default=None, compare=False)


@dataclass(frozen=True)
class TimelineDecl:
    labels: tuple
    line: int = field(default=None, compare=False)


@dataclass(frozen=True)
class InstanceDecl:
    id: str
    class_name: str
    line: int = field(default=None, compare=False)


@dataclass(frozen=True)
class AssertionStmt:
    kind: RelationKind
    subject: str
    object: str
    time: str
    line: int = field(default=None, compare=False)


@dataclass(frozen=True)
class RealizesStmt:
    process: str
    realizable: str
    line: int = field(default=None, compare=False)


@dataclass(frozen=True)
class GroundingStmt:
    ground: str
    realizable: str
    kind: GroundingKind
    line: int = field(default=None, compare=False)


@dataclass(frozen=True)
class MereoStmt:
    realizable: str
    whole: str
    part: str
    line: int = field(default=None, compare=False)


@dataclass(eq=False)
class Document:
    class_decls: list = field(default_factory=list)
    disjoint_decls: list = field(default_factory=list)
    determination_decls: list = field(default_factory=list)
    timeline_decl: TimelineDecl = None
    instance_decls: list = field(default_factory=list)
    assertion_stmts: list = field(default_factory=list)
    realizes_stmts: list = field(default_factory=list)
    grounding_stmts: list = field(default_factory=list)
    mereo_stmts: list = field(default_factory=list)

    def sorted_assertions(self):
        """Temporal assertions by timeline position, then relation kind,
        then declaration order.
        """
        labels = self.timeline_decl.labels if self.timeline_decl else ()
        positions = {label: i for i, label in enumerate(labels)}

        def key(stmt):
            return (positions.get(stmt.time, len(labels)),
                    stmt.time if stmt.time not in positions else '',
                    KIND_ORDER[stmt.kind])
        return sorted(self.assertion_stmts, key=key)

    def statements(self):
        yield from self.class_decls
        yield from self.disjoint_decls
        yield from self.determination_decls
        if self.timeline_decl is not None:
            yield self.timeline_decl
        yield from self.instance_decls
        yield from self.sorted_assertions()
        yield from self.realizes_stmts
        yield from self.grounding_stmts
        yield from self.mereo_stmts

    def __len__(self):
        return sum(1 for _ in self.statements())

    def __eq__(self, other):
        if not isinstance(other, Document):
            return NotImplemented
        return tuple(self.statements()) == tuple(other.statements())

    __hash__ = None


class _Mismatch(Exception):
    def __init__(self, column, message, expected):
        self.column = column
        self.message = message
        self.expected = expected


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    column: int


def tokenize(text):
    tokens = []
    position = 0
    while position < len(text):
        match = TOKEN.match(text, position)
        if match is None:
            char = text[position]
            if char == '"':
                raise _Mismatch(position + 1, 'unterminated quoted name',
                                'closing \'"\'')
            raise _Mismatch(position + 1, f'unexpected character {char!r}',
                            'name or punctuation')
        kind = match.lastgroup
        if kind not in ('space', 'comment'):
            tokens.append(Token(kind, match.group(), position + 1))
        position = match.end()
    return tokens


class _LineParser(object):
    def __init__(self, tokens, end_column):
        self.tokens = tokens
        self.position = 0
        self.end_column = end_column

    def peek(self):
        if self.position < len(self.tokens):
            return self.tokens[self.position]
        return None

    def fail(self, expected):
        token = self.peek()
        if token is None:
            raise _Mismatch(self.end_column, 'unexpected end of line',
                            expected)
        raise _Mismatch(token.column, f'unexpected {token.value!r}',
                        expected)

    def keyword(self, *values):
        token = self.peek()
        if token is None or token.kind != 'ident' or token.value not in values:
            self.fail(' or '.join(repr(x) for x in values))
        self.position += 1
        return token.value

    def punct(self, value):
        token = self.peek()
        if token is None or token.kind != 'punct' or token.value != value:
            self.fail(repr(value))
        self.position += 1

    def name(self, what='name'):
        token = self.peek()
        if token is None or token.kind not in ('ident', 'quoted'):
            self.fail(what)
        self.position += 1
        if token.kind == 'quoted':
            value = token.value[1:-1]
            if not value.strip():
                raise _Mismatch(token.column, 'empty quoted name', what)
            return value
        return token.value

    def arguments(self, count):
        self.punct('(')
        values = [self.name()]
        for _ in range(count - 1):
            self.punct(',')
            values.append(self.name())
        self.punct(')')
        return values

    def end(self):
        if self.peek() is not None:
            self.fail('end of line')


class BfoParser(object):
    """Parses ``.bfo`` sources line by line.

    A malformed line produces one ``ParseError`` and parsing resumes at the
    next line, so every independent fault of a source is reported.
    """

    keywords = ('class', 'disjoint', 'determines', 'timeline', 'instance',
                'at', 'realizes', 'grounds', 'mereo_grounds')

    def parse(self, source):
        self.document = Document()
        self.errors = []
        self.timeline_line = None
        for lineno, text in enumerate(source.split('\n'), start=1):
            try:
                tokens = tokenize(text)
                if not tokens:
                    continue
                parser = _LineParser(tokens, len(text.rstrip()) + 1)
                self._statement(parser, lineno)
                parser.end()
            except _Mismatch as e:
                self.errors.append(ParseError(lineno, e.column, e.message,
                                              e.expected))
        if self.errors:
            raise ParseFailure(self.errors)
        logger.debug('parsed %d statements', len(self.document))
        return self.document

    def _statement(self, parser, lineno):
        keyword = parser.keyword(*self.keywords)
        getattr(self, f'_parse_{keyword}')(parser, lineno)

    def _parse_class(self, parser, lineno):
        name = parser.name('class name')
        parser.keyword('is_a')
        parent = parser.name('parent class name')
        parser.end()
        self.document.class_decls.append(ClassDecl(name, parent, lineno))

    def _parse_disjoint(self, parser, lineno):
        first = parser.name('class name')
        second = parser.name('class name')
        parser.end()
        self.document.disjoint_decls.append(DisjointDecl(first, second,
                                                         lineno))

    def _parse_determines(self, parser, lineno):
        determinate = parser.name('determinate class name')
        parser.keyword('determinable')
        determinable = parser.name('determinable class name')
        parser.end()
        self.document.determination_decls.append(
            DeterminationDecl(determinate, determinable, lineno))

    def _parse_timeline(self, parser, lineno):
        labels = [parser.name('time point label')]
        while parser.peek() is not None:
            parser.punct('<')
            labels.append(parser.name('time point label'))
        if self.timeline_line is not None:
            raise _Mismatch(1, 'duplicate timeline declaration (first '
                            f'declared line {self.timeline_line})',
                            'a single timeline statement')
        if len(set(labels)) != len(labels):
            raise _Mismatch(1, 'duplicate time point label in timeline',
                            'distinct labels')
        self.timeline_line = lineno
        self.document.timeline_decl = TimelineDecl(tuple(labels), lineno)

    def _parse_instance(self, parser, lineno):
        id = parser.name('instance name')
        parser.punct(':')
        class_name = parser.name('class name')
        parser.end()
        self.document.instance_decls.append(InstanceDecl(id, class_name,
                                                         lineno))

    def _parse_at(self, parser, lineno):
        if self.timeline_line is None:
            raise _Mismatch(1, '"at" statement before the timeline '
                            'declaration', 'timeline statement first')
        time = parser.name('time point label')
        parser.punct(':')
        relation = parser.keyword(*TEMPORAL_RELATIONS)
        kind = TEMPORAL_RELATIONS[relation]
        parser.punct('(')
        subject = parser.name()
        parser.punct(',')
        if kind is RelationKind.EXISTS_AT:
            parser.keyword('_')
            object = None
        else:
            object = parser.name()
        parser.punct(')')
        parser.end()
        self.document.assertion_stmts.append(
            AssertionStmt(kind, subject, object, time, lineno))

    def _parse_realizes(self, parser, lineno):
        process, realizable = parser.arguments(2)
        parser.end()
        self.document.realizes_stmts.append(RealizesStmt(process, realizable,
                                                         lineno))

    def _parse_grounds(self, parser, lineno):
        ground, realizable = parser.arguments(2)
        parser.keyword('kind')
        parser.punct('=')
        kind = GROUNDING_KINDS[parser.keyword(*GROUNDING_KINDS)]
        parser.end()
        self.document.grounding_stmts.append(
            GroundingStmt(ground, realizable, kind, lineno))

    def _parse_mereo_grounds(self, parser, lineno):
        realizable, whole, part = parser.arguments(3)
        parser.end()
        self.document.mereo_stmts.append(MereoStmt(realizable, whole, part,
                                                   lineno))


class BfoSerializer(object):
    def serialize(self, document):
        return ''.join(f'{self.statement(x)}\n' for x in document.statements())

    @dispatch
    def statement(self, stmt):
        raise TypeError(f'Cannot serialize {stmt!r}')

    @statement.register(ClassDecl)
    def _class(self, stmt):
        return f'class {quote(stmt.name)} is_a {quote(stmt.parent)}'

    @statement.register(DisjointDecl)
    def _disjoint(self, stmt):
        return f'disjoint {quote(stmt.first)} {quote(stmt.second)}'

    @statement.register(DeterminationDecl)
    def _determines(self, stmt):
        return (f'determines {quote(stmt.determinate)} '
                f'determinable {quote(stmt.determinable)}')

    @statement.register(TimelineDecl)
    def _timeline(self, stmt):
        return 'timeline ' + ' < '.join(quote(x) for x in stmt.labels)

    @statement.register(InstanceDecl)
    def _instance(self, stmt):
        return f'instance {quote(stmt.id)} : {quote(stmt.class_name)}'

    @statement.register(AssertionStmt)
    def _at(self, stmt):
        second = '_' if stmt.object is None else quote(stmt.object)
        return (f'at {quote(stmt.time)}: {RELATION_KEYWORDS[stmt.kind]}'
                f'({quote(stmt.subject)}, {second})')

    @statement.register(RealizesStmt)
    def _realizes(self, stmt):
        return f'realizes({quote(stmt.process)}, {quote(stmt.realizable)})'

    @statement.register(GroundingStmt)
    def _grounds(self, stmt):
        return (f'grounds({quote(stmt.ground)}, {quote(stmt.realizable)}) '
                f'kind={stmt.kind.value}')

    @statement.register(MereoStmt)
    def _mereo(self, stmt):
        return (f'mereo_grounds({quote(stmt.realizable)}, '
                f'{quote(stmt.whole)}, {quote(stmt.part)})')


class Elaborator(object):
    """Binds a parsed ``Document`` to a taxonomy and builds its ``World``.

    Every statement is attempted; failures are collected with the line of
    the statement that caused them.
    """

    def __init__(self, taxonomy=None):
        self.taxonomy = taxonomy or load_builtin_taxonomy()
        self.errors = []

    @contextmanager
    def _attributed(self, stmt):
        try:
            yield
        except (TaxonomyError, WorldError) as e:
            self.errors.append(ElaborationError(stmt.line, str(e)))

    def elaborate_taxonomy(self, document):
        taxonomy = self.taxonomy
        for decl in document.class_decls:
            with self._attributed(decl):
                taxonomy = taxonomy.add_class(decl.name, decl.parent)
        for decl in document.disjoint_decls:
            with self._attributed(decl):
                taxonomy = taxonomy.declare_disjoint(decl.first, decl.second)
        for decl in document.determination_decls:
            with self._attributed(decl):
                taxonomy = taxonomy.declare_determination(decl.determinate,
                                                          decl.determinable)
        return taxonomy

    def elaborate(self, document):
        self.errors = []
        world = World(self.elaborate_taxonomy(document))
        if document.timeline_decl is not None:
            with self._attributed(document.timeline_decl):
                world = world.with_timeline(document.timeline_decl.labels)
        for decl in document.instance_decls:
            with self._attributed(decl):
                world = world.add_instance(decl.id, decl.class_name)
        for stmt in document.assertion_stmts:
            with self._attributed(stmt):
                world = world.assert_relation(RelationAssertion(
                    stmt.kind, stmt.subject, stmt.object,
                    world.time(stmt.time), line=stmt.line))
        for stmt in document.realizes_stmts:
            with self._attributed(stmt):
                world = world.assert_relation(RelationAssertion(
                    RelationKind.REALIZES, stmt.process, stmt.realizable,
                    line=stmt.line))
        for stmt in document.grounding_stmts:
            with self._attributed(stmt):
                world = world.add_grounding(GroundingAssertion(
                    stmt.ground, stmt.realizable, stmt.kind, line=stmt.line))
        for stmt in document.mereo_stmts:
            with self._attributed(stmt):
                world = world.add_mereo_grounding(
                    MereologicalGroundingAssertion(stmt.realizable,
                                                   stmt.whole, stmt.part,
                                                   line=stmt.line))
        if self.errors:
            raise ElaborationFailure(self.errors)
        logger.debug('elaborated %r', world)
        return world


def _classes_parent_first(taxonomy):
    children = {}
    for node in taxonomy.user_classes():
        children.setdefault(node.parent, []).append(node.name)
    pending = sorted((x.name for x in taxonomy.user_classes()
                      if taxonomy.node(x.parent).builtin), reverse=True)
    while pending:
        name = pending.pop()
        yield ClassDecl(name, taxonomy.parent(name))
        pending.extend(sorted(children.get(name, ()), reverse=True))


def document_from_world(world):
    """Builds the canonical document of ``world``.

    Derived facts (existence closure) are written out, and every category
    is sorted so that structurally equal worlds give identical documents.
    """
    taxonomy = world.taxonomy
    document = Document()
    document.class_decls.extend(_classes_parent_first(taxonomy))
    pairs = {tuple(sorted(x)) for x in taxonomy.declared_disjoint()}
    document.disjoint_decls.extend(DisjointDecl(a, b)
                                   for a, b in sorted(pairs))
    document.determination_decls.extend(
        DeterminationDecl(x.determinate_class, x.determinable_class)
        for x in sorted(taxonomy.determination_links(),
                        key=lambda x: (x.determinable_class,
                                       x.determinate_class)))
    if world.timeline:
        document.timeline_decl = TimelineDecl(tuple(t.label
                                                    for t in world.timeline))
    document.instance_decls.extend(InstanceDecl(x.id, x.class_name)
                                   for x in sorted(world.entities.values(),
                                                   key=lambda x: x.id))
    temporal = [x for x in world.assertions if x.kind.temporal]
    temporal.sort(key=lambda x: (x.subject, x.object or ''))
    document.assertion_stmts.extend(AssertionStmt(x.kind, x.subject, x.object,
                                                  x.time.label)
                                    for x in temporal)
    document.realizes_stmts.extend(
        RealizesStmt(x.subject, x.object)
        for x in sorted(world.assertions, key=lambda x: (x.subject, x.object))
        if x.kind is RelationKind.REALIZES)
    document.grounding_stmts.extend(
        GroundingStmt(x.ground, x.realizable, x.kind)
        for x in sorted(world.groundings,
                        key=lambda x: (x.realizable, x.ground, x.kind.value)))
    document.mereo_stmts.extend(
        MereoStmt(x.realizable, x.whole, x.part)
        for x in sorted(world.mereo_groundings,
                        key=lambda x: (x.realizable, x.whole, x.part)))
    # stable sort: assertions end up ordered by time, kind, subject, object
    document.assertion_stmts = document.sorted_assertions()
    return document


def parse(source):
    return BfoParser().parse(source)


def serialize(document):
    return BfoSerializer().serialize(document)


def elaborate(document, taxonomy=None):
    return Elaborator(taxonomy).elaborate(document)


def load_world(source, taxonomy=None):
    return elaborate(parse(source), taxonomy)


class BfoResource(Resource):
    """A ``.bfo`` file. Its single root is the parsed ``Document``; the
    elaborated ``World`` is computed on first access of ``world``.
    """

    def __init__(self, uri=None):
        super().__init__(uri)
        self._world = None

    def load(self):
        self.contents.clear()
        self._world = None
        self.append(parse(self.read_text()))

    @property
    def document(self):
        return self.contents[0] if self.contents else Document()

    @property
    def world(self):
        if self._world is None:
            self._world = elaborate(self.document, self.taxonomy)
        return self._world

    def save(self, output=None):
        text = ''.join(serialize(self._as_document(x)) for x in self.contents)
        self.write_text(text, output)

    @dispatch
    def _as_document(self, root):
        raise TypeError(f'Cannot save {root!r} in a .bfo resource')

    @_as_document.register(Document)
    def _document(self, root):
        return root

    @_as_document.register(World)
    def _world_document(self, root):
        return document_from_world(root)
