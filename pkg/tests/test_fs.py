import pytest
from hypothesis import given, settings

from corpus import CLERGYMAN_FS, CLERGYMAN_MIXED, CORPUS, listing
from lexicrosswalk.components import resource_to_component
from lexicrosswalk.errors import DialectError, StructureError
from lexicrosswalk.fs import emit_fs, emit_mixed, parse_fs, parse_mixed
from lexicrosswalk.xmlcore import canonical_equal, parse_xml, serialize_xml, tei
from strategies import resources


def through(emit, parse, resource):
    return parse(parse_xml(serialize_xml(emit(resource), indent=2)))


def test_parse_clergyman_fs_listing():
    resource, findings = parse_fs(parse_xml(listing('clergyman.fs.xml')))
    assert findings == []
    assert resource == CLERGYMAN_FS


def test_parse_clergyman_mixed_listing():
    resource, findings = parse_mixed(parse_xml(listing('clergyman.mixed.xml')))
    assert findings == []
    assert resource == CLERGYMAN_MIXED


def test_emit_matches_listings():
    assert canonical_equal(emit_fs(CLERGYMAN_FS), parse_xml(listing('clergyman.fs.xml')))
    assert canonical_equal(emit_mixed(CLERGYMAN_MIXED), parse_xml(listing('clergyman.mixed.xml')))


def test_lexicon_root_only_when_nothing_is_lost():
    assert emit_fs(CLERGYMAN_FS).get('type') == 'Lexicon'
    assert emit_fs(CLERGYMAN_MIXED).get('type') == 'LexicalResource'
    assert emit_fs(CORPUS['multi-lexicon']).get('type') == 'LexicalResource'


@pytest.mark.parametrize('name', sorted(CORPUS))
@pytest.mark.parametrize('emit, parse', [(emit_fs, parse_fs), (emit_mixed, parse_mixed)],
                         ids=['fs', 'mixed'])
def test_roundtrip(name, emit, parse):
    back, findings = through(emit, parse, CORPUS[name])
    assert findings == []
    assert back == CORPUS[name]


@pytest.mark.parametrize('name', sorted(CORPUS))
def test_descriptor_count_preserved(name):
    resource = CORPUS[name]
    expected = resource_to_component(resource).count_descriptors()
    mixed = sum(1 for n in emit_mixed(resource).iter() if n.name == tei('f') and not any(n.elements()))
    pure = sum(1 for n in emit_fs(resource).iter() if n.name == tei('f') and not any(n.elements()))
    assert mixed == expected
    assert pure == expected


def test_dcr_attributes_written_when_present():
    out = serialize_xml(emit_fs(CORPUS['registry-ids']))
    assert b'dcr:datcat="http://www.isocat.org/datcat/DC-396"' in out
    assert b'dcr:valueDatcat="http://www.isocat.org/datcat/DC-1256"' in out


@pytest.mark.parametrize('doc', [
    b'<fs xmlns="http://www.tei-c.org/ns/1.0" type="Entry"/>',
    b'<fs type="Lexicon"/>',
    b'<LexicalResource/>',
])
def test_fs_root_checked(doc):
    with pytest.raises(DialectError):
        parse_fs(parse_xml(doc))


def test_mixed_content_in_f_is_a_structure_error():
    doc = (b'<fs xmlns="http://www.tei-c.org/ns/1.0" type="Lexicon"><f name="language">en</f>'
           b'<f name="LexicalEntry">x<fs/></f></fs>')
    with pytest.raises(StructureError):
        parse_fs(parse_xml(doc))


@pytest.mark.parametrize('body, rule', [
    (b'<f>x</f>', 'F-BAD-FEATURE'),
    (b'<f name="x"><string>y</string></f>', 'F-BAD-FEATURE'),
    (b'<g/>', 'F-BAD-FEATURE'),
    (b'<f name="LexicalEntry"><fs><f name="Lemma"><fs><f name="writtenForm">a</f></fs></f>'
     b'<f name="Thing"><fs><f name="colour">red</f></fs></f></fs></f>', 'F-UNKNOWN-COMPONENT'),
])
def test_fs_findings(body, rule):
    doc = (b'<fs xmlns="http://www.tei-c.org/ns/1.0" type="Lexicon"><f name="language">en</f>'
           + body + b'</fs>')
    _, findings = parse_fs(parse_xml(doc))
    assert [f.rule_id for f in findings] == [rule]


def test_fs_salvages_unknown_component_descriptors():
    doc = (b'<fs xmlns="http://www.tei-c.org/ns/1.0" type="Lexicon"><f name="language">en</f>'
           b'<f name="LexicalEntry"><fs><f name="Lemma"><fs><f name="writtenForm">a</f></fs></f>'
           b'<f name="Thing"><fs><f name="colour">red</f></fs></f></fs></f></fs>')
    resource, _ = parse_fs(parse_xml(doc))
    assert [(f.name, f.value) for f in resource.lexicons[0].entries[0].entry_grammar] == \
        [('colour', 'red')]


def test_mixed_findings():
    doc = (b'<LexicalResource xmlns:t="http://www.tei-c.org/ns/1.0" xmlns:o="urn:other">'
           b'<Lexicon><f name="language">en</f><o:Thing/></Lexicon></LexicalResource>')
    resource, findings = parse_mixed(parse_xml(doc))
    assert [f.rule_id for f in findings] == ['X-F-NAMESPACE', 'X-UNKNOWN-COMPONENT']
    assert resource.lexicons[0].language == 'en'


def test_mixed_root_checked():
    with pytest.raises(DialectError):
        parse_mixed(parse_xml(b'<LexicalResource xmlns="urn:x"/>'))


@settings(max_examples=60, deadline=None)
@given(resources())
def test_roundtrip_property(resource):
    for emit, parse in [(emit_fs, parse_fs), (emit_mixed, parse_mixed)]:
        back, findings = through(emit, parse, resource)
        assert findings == []
        assert back == resource
