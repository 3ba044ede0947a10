import pytest
from pybfo.taxonomy import load_builtin_taxonomy, add_domain_class
from pybfo.validator import validate
from pybfo.resources import ResourceSet, URI, Resource
from pybfo.resources.bfo import BfoResource, Document, ParseFailure, \
                                ElaborationFailure, parse, serialize
from pybfo.resources.json import ReportResource, loads_report, KEYS
from pybfo.corpus import case_path
from os import path


@pytest.fixture(scope='module')
def salt_source():
    return ('class solubility is_a disposition\n'
            'timeline t1\n'
            'instance nacl1 : salt\n'
            'instance solubility1 : solubility\n'
            'at t1: inheres_in(solubility1, nacl1)\n')


def test_resourceset_default_factories():
    assert ResourceSet.resource_factory['bfo'] is BfoResource
    assert ResourceSet.resource_factory['json'] is ReportResource
    assert '*' in ResourceSet.resource_factory


def test_uri_empty():
    uri = URI('')
    assert uri.extension is None
    assert uri.plain == ''


def test_uri_none():
    with pytest.raises(TypeError):
        URI(None)


def test_uri_extension():
    uri = URI(path.join('corpus', 'case1.expected.json'))
    assert uri.extension == 'json'
    assert uri.last_segment == 'case1.expected.json'
    assert uri.segments[0] == 'corpus'
    assert uri.normalize() == path.abspath(uri.plain)


def test_resourceset_create_resource():
    rset = ResourceSet()
    resource = rset.create_resource('unknown.bfo')
    assert isinstance(resource, BfoResource)
    assert resource.resource_set is rset
    assert rset.resources[path.abspath('unknown.bfo')] is resource
    assert resource.document == Document()
    assert isinstance(rset.create_resource('r.json'), ReportResource)
    assert isinstance(rset.create_resource('other.txt'), BfoResource)


def test_resourceset_remove_resource():
    rset = ResourceSet()
    resource = rset.create_resource('unknown.bfo')
    rset.remove_resource(resource)
    assert rset.resources == {}
    rset.remove_resource(None)


def test_resourceset_get_resource_is_cached():
    rset = ResourceSet()
    resource = rset.get_resource(case_path('case1_nacl'))
    assert rset.get_resource(case_path('case1_nacl')) is resource
    assert len(rset.resources) == 1


def test_get_resource_load_failure(tmpdir):
    broken = tmpdir.join('broken.bfo')
    broken.write('class a\n')
    rset = ResourceSet()
    with pytest.raises(ParseFailure):
        rset.get_resource(str(broken))
    assert rset.resources == {}


def test_get_resource_missing_file(tmpdir):
    rset = ResourceSet()
    with pytest.raises(OSError):
        rset.get_resource(str(tmpdir.join('missing.bfo')))
    assert rset.resources == {}


def test_bfo_resource_world():
    resource = ResourceSet().get_resource(case_path('case2_university'))
    world = resource.world
    assert world is resource.world
    assert 'uni1' in world.entities


def test_bfo_resource_uses_set_taxonomy(tmpdir, salt_source):
    source = tmpdir.join('salt.bfo')
    source.write(salt_source)
    resource = ResourceSet().get_resource(str(source))
    with pytest.raises(ElaborationFailure):
        resource.world
    taxonomy = add_domain_class(load_builtin_taxonomy(), 'salt', 'object')
    resource = ResourceSet(taxonomy).get_resource(str(source))
    assert resource.world.class_of('nacl1') == 'salt'


def test_bfo_resource_save_document(tmpdir):
    resource = ResourceSet().get_resource(case_path('case3_commensal'))
    output = tmpdir.join('commensal.bfo')
    resource.save(output=str(output))
    assert output.read() == serialize(resource.document)
    assert parse(output.read()) == resource.document


def test_bfo_resource_save_world(tmpdir):
    world = ResourceSet().get_resource(case_path('case1_nacl')).world
    rset = ResourceSet()
    output = str(tmpdir.join('world.bfo'))
    resource = rset.create_resource(output)
    resource.append(world)
    resource.save()
    again = ResourceSet().get_resource(output)
    assert again.world == world


def test_bfo_resource_save_rejects_other_roots(tmpdir):
    resource = ResourceSet().create_resource(str(tmpdir.join('x.bfo')))
    resource.append(42)
    with pytest.raises(TypeError):
        resource.save()


def test_bfo_resource_uri_change(tmpdir):
    rset = ResourceSet()
    resource = rset.create_resource(str(tmpdir.join('a.bfo')))
    resource.uri = str(tmpdir.join('b.bfo'))
    assert list(rset.resources) == [path.abspath(str(tmpdir.join('b.bfo')))]


def test_report_resource_load():
    rset = ResourceSet()
    report = rset.get_resource(case_path('case3_commensal', '.expected.json'))
    assert [x['code'] for x in report.contents] == ['R5', 'R5']
    assert tuple(report.contents[0]) == KEYS


def test_report_resource_save_report(tmpdir):
    world = ResourceSet().get_resource(case_path('case1_nacl_mutant')).world
    output = str(tmpdir.join('mutant.json'))
    resource = ResourceSet().create_resource(output)
    resource.append(validate(world))
    resource.save()
    with open(output) as f:
        saved = f.read()
    with open(case_path('case1_nacl_mutant', '.expected.json')) as f:
        assert saved == f.read()


def test_report_resource_save_entries(tmpdir):
    output = tmpdir.join('entries.json')
    resource = ResourceSet().create_resource(str(output))
    entry = {'line': 3, 'times': [], 'subjects': ['x1'], 'severity': 'error',
             'code': 'R1'}
    resource.append(entry)
    resource.save()
    assert output.read() == ('{"code": "R1", "severity": "error", '
                             '"subjects": ["x1"], "times": [], '
                             '"line": 3}\n')
    resource.append('R1')
    with pytest.raises(TypeError):
        resource.save()


def test_loads_report_checks_keys():
    with pytest.raises(ValueError):
        loads_report('{"severity": "error", "code": "R1", "subjects": [], '
                     '"times": [], "line": null}\n')
    assert loads_report('\n\n') == []


def test_resource_is_abstract():
    resource = Resource(URI('x.bfo'))
    with pytest.raises(NotImplementedError):
        resource.load()
    with pytest.raises(NotImplementedError):
        resource.save()
