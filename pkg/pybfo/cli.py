"""Command line front end of pybfo.

::

    pybfo validate corpus/case1_nacl.bfo --format json-lines
    pybfo infer case2.bfo --entity student_role1
    pybfo diff case2.bfo --from t1 --to t2
    pybfo explain --code R2
    pybfo fmt case3.bfo

Results go to stdout, error text to stderr through ``logging``. Exit codes:
0 success, 1 validation errors, 2 parse or elaboration failure, 3 bad usage.
"""
import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from . import __version__
from .utils import dispatch
from .taxonomy import TaxonomyError
from .world import WorldError, ChangeSet, diff_snapshots
from .grounding import GroundingError, infer_grounding_candidates
from .validator import ValidationReport, UnknownRuleError, validate, \
                       explain, format_report
from .resources.bfo import ParseFailure, ElaborationFailure, parse, \
                           serialize, elaborate, load_world
from .resources.json import dumps_report


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION_ERRORS = 1
EXIT_INPUT_FAILURE = 2
EXIT_USAGE = 3

COMMANDS = ('validate', 'infer', 'diff', 'explain', 'fmt')
FORMATS = ('text', 'json-lines')


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class CliConfig:
    command: str
    inputs: tuple = ()
    output_format: str = 'text'
    entity: str = None
    from_time: str = None
    to_time: str = None
    code: str = None
    verbosity: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f'unknown command {self.command!r}')
        if self.output_format not in FORMATS:
            raise UsageError(f'unknown format {self.output_format!r}')


def build_parser():
    parser = ArgumentParser(prog='pybfo', description='Validate grounding '
                            'of realizable entities in .bfo documents.')
    parser.add_argument('--version', action='version',
                        version=f'%(prog)s {__version__}')
    common = ArgumentParser(add_help=False)
    common.add_argument('--format', dest='output_format', choices=FORMATS,
                        default='text')
    common.add_argument('-v', '--verbose', dest='verbosity', action='count',
                        default=0)
    commands = parser.add_subparsers(dest='command', required=True,
                                     parser_class=ArgumentParser)
    validate_parser = commands.add_parser('validate', parents=[common],
                                          help='run the rule catalog')
    validate_parser.add_argument('inputs', nargs='+', metavar='FILE')
    infer_parser = commands.add_parser('infer', parents=[common],
                                       help='list grounding candidates')
    infer_parser.add_argument('inputs', nargs=1, metavar='FILE')
    infer_parser.add_argument('--entity', required=True)
    diff_parser = commands.add_parser('diff', parents=[common],
                                      help='compare two snapshots')
    diff_parser.add_argument('inputs', nargs=1, metavar='FILE')
    diff_parser.add_argument('--from', dest='from_time', required=True)
    diff_parser.add_argument('--to', dest='to_time', required=True)
    explain_parser = commands.add_parser('explain', parents=[common],
                                         help='describe a rule')
    explain_parser.add_argument('inputs', nargs='?', metavar='FILE')
    explain_parser.add_argument('--code', required=True)
    fmt_parser = commands.add_parser('fmt', parents=[common],
                                     help='print the canonical document')
    fmt_parser.add_argument('inputs', nargs=1, metavar='FILE')
    return parser


def parse_arguments(argv):
    namespace = build_parser().parse_args(argv)
    inputs = namespace.inputs
    if inputs is None:
        inputs = ()
    elif isinstance(inputs, str):
        inputs = (inputs,)
    return CliConfig(namespace.command, tuple(inputs),
                     namespace.output_format,
                     entity=getattr(namespace, 'entity', None),
                     from_time=getattr(namespace, 'from_time', None),
                     to_time=getattr(namespace, 'to_time', None),
                     code=getattr(namespace, 'code', None),
                     verbosity=namespace.verbosity)


class TextRenderer(object):
    @dispatch
    def render(self, result):
        return f'{result}\n'

    @render.register(ValidationReport)
    def _report(self, result):
        return format_report(result)

    @render.register(list)
    def _candidates(self, result):
        if not result:
            return 'no grounding candidate\n'
        return ''.join(f'{ground} {kind.value}\n' for ground, kind in result)

    @render.register(ChangeSet)
    def _changes(self, result):
        lines = [f'diff {result.from_time} -> {result.to_time}']
        for category, bearer, ids in _change_entries(result):
            lines.append(f'{category} {bearer}: {", ".join(ids)}')
        if result.is_empty():
            lines.append('no change')
        return '\n'.join(lines) + '\n'


class JsonLinesRenderer(object):
    @dispatch
    def render(self, result):
        return json.dumps(result) + '\n'

    @render.register(ValidationReport)
    def _report(self, result):
        return dumps_report(result)

    @render.register(list)
    def _candidates(self, result):
        return ''.join(json.dumps({'ground': ground, 'kind': kind.value}) +
                       '\n' for ground, kind in result)

    @render.register(ChangeSet)
    def _changes(self, result):
        return ''.join(json.dumps({'category': category, 'bearer': bearer,
                                   'ids': ids}) + '\n'
                       for category, bearer, ids in _change_entries(result))


RENDERERS = {'text': TextRenderer(), 'json-lines': JsonLinesRenderer()}


def _change_entries(changes):
    for category in ChangeSet.CATEGORIES:
        for direction in ('lost', 'gained'):
            name = f'{direction}_{category}'
            entries = getattr(changes, name)
            for bearer in sorted(entries):
                yield name, bearer, sorted(entries[bearer])


def _validate(config, world):
    report = validate(world)
    code = EXIT_VALIDATION_ERRORS if report.has_errors else EXIT_OK
    return code, report


def _infer(config, world):
    return EXIT_OK, infer_grounding_candidates(world, config.entity)


def _diff(config, world):
    return EXIT_OK, diff_snapshots(world.snapshot(config.from_time),
                                   world.snapshot(config.to_time))


HANDLERS = {'validate': _validate, 'infer': _infer, 'diff': _diff}


def run(config, source):
    """Runs one command over the text of one input file.

    :param config: the command line configuration
    :param source: the content of the input file, None for ``explain``
                   without a file
    :return: the exit code and the text to print on stdout
    :rtype: tuple
    """
    renderer = RENDERERS[config.output_format]
    try:
        if config.command == 'explain':
            report = validate(load_world(source)) if source is not None \
                     else None
            return EXIT_OK, explain(report, config.code)
        document = parse(source)
        if config.command == 'fmt':
            return EXIT_OK, serialize(document)
        world = elaborate(document)
        code, result = HANDLERS[config.command](config, world)
        return code, renderer.render(result)
    except (ParseFailure, ElaborationFailure) as e:
        for error in e.errors:
            logger.error('%s', error)
        return EXIT_INPUT_FAILURE, ''
    except UnknownRuleError as e:
        logger.error('%s', e)
        return EXIT_USAGE, ''
    except (TaxonomyError, WorldError, GroundingError) as e:
        logger.error('%s', e)
        return EXIT_USAGE, ''


def _read(filename):
    with open(filename, encoding='utf-8') as f:
        return f.read()


def run_files(config, workers=None):
    """Runs ``config`` over its input files, concurrently for several
    ``validate`` inputs. Outputs are joined in argument order and the worst
    exit code wins.
    """
    sources = []
    for filename in config.inputs:
        try:
            sources.append(_read(filename))
        except OSError as e:
            logger.error('cannot read %s: %s', e.filename, e.strerror)
            return EXIT_USAGE, ''
        except UnicodeDecodeError as e:
            logger.error('cannot decode %s: %s', filename, e.reason)
            return EXIT_INPUT_FAILURE, ''
    if not sources:
        return run(config, None)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        results = list(executor.map(lambda x: run(config, x), sources))
    if len(results) == 1:
        return results[0]
    outputs = []
    for filename, (_, output) in zip(config.inputs, results):
        if config.output_format == 'text':
            outputs.append(f'== {filename}\n')
        outputs.append(output)
    return max(code for code, _ in results), ''.join(outputs)


def configure_logging(verbosity=0):
    levels = {0: logging.WARNING, 1: logging.INFO}
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
    package_logger = logging.getLogger('pybfo')
    package_logger.handlers[:] = [handler]
    package_logger.setLevel(levels.get(verbosity, logging.DEBUG))


def main(argv=None):
    configure_logging()
    try:
        config = parse_arguments(sys.argv[1:] if argv is None else argv)
    except UsageError as e:
        logger.error('%s', e)
        return EXIT_USAGE
    except SystemExit as e:
        return e.code
    configure_logging(config.verbosity)
    logger.info('%s %s', config.command, ' '.join(config.inputs))
    code, output = run_files(config)
    sys.stdout.write(output)
    return code


if __name__ == '__main__':
    sys.exit(main())
