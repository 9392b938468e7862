import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import listing
from lexicrosswalk.findings import Severity, registered_ids
from lexicrosswalk.validator import rule_catalogue, validate_tei_document
from lexicrosswalk.xmlcore import parse_xml
from validator_cases import CASES, doc


@pytest.mark.parametrize('rule', sorted(CASES))
def test_violation(rule):
    bad, path, _ = CASES[rule]
    findings = validate_tei_document(parse_xml(bad))
    assert [(f.rule_id, f.path) for f in findings] == [(rule, path)]


@pytest.mark.parametrize('rule', sorted(CASES))
def test_compliant_twin(rule):
    _, _, good = CASES[rule]
    assert validate_tei_document(parse_xml(good)) == []


def test_catalogue():
    rules = rule_catalogue()
    assert [r.id for r in rules] == sorted(CASES)
    assert {r.id for r in rules} <= registered_ids()
    assert all(r.description and r.paper_anchor for r in rules)
    severities = {r.id: r.severity for r in rules}
    assert severities['R2-NO-VOID-GRAMGRP'] is Severity.WARNING
    assert severities['R8-HOM-SUPERENTRY'] is Severity.INFO
    assert severities['R1-SENSE-REQUIRED'] is Severity.ERROR


def test_fs_grammar_host_is_accepted():
    good = doc('<sense><fs type="grammar"><f name="pos"><symbol value="n"/></f></fs></sense>')
    assert validate_tei_document(parse_xml(good)) == []
    bad = doc('<sense><fs type="other"><pos>n</pos></fs></sense>')
    assert [f.rule_id for f in validate_tei_document(parse_xml(bad))] == ['R4-FORM-WRAPPER']


def test_orth_outside_form():
    bad = doc('<sense><orth>x</orth></sense>')
    assert [(f.rule_id, f.path) for f in validate_tei_document(parse_xml(bad))] == [
        ('R4-FORM-WRAPPER', '/entry[1]/sense[1]/orth[1]')]


def test_unknown_lmf_element():
    bad = doc('<sense><lmf:somethingElse/></sense>')
    assert [f.rule_id for f in validate_tei_document(parse_xml(bad))] == ['R6-LMF-ANCHOR']


def test_corenet_listing_and_its_mutation():
    sense = listing('corenet.sense.xml')
    wrapped = b'<entry xmlns="http://www.tei-c.org/ns/1.0">' + sense + b'</entry>'
    assert validate_tei_document(parse_xml(wrapped)) == []
    # lift the behaviour out of <sense> and into <entry>
    moved = (b'<entry xmlns="http://www.tei-c.org/ns/1.0" xmlns:lmf="http://www.iso.org/ns/LMF">'
             b'<lmf:syntacticBehaviour><lmf:subcategorizationFrame><lmf:syntacticArgument>'
             b'<lmf:syntacticFunction>N1</lmf:syntacticFunction></lmf:syntacticArgument>'
             b'</lmf:subcategorizationFrame></lmf:syntacticBehaviour></entry>')
    findings = validate_tei_document(parse_xml(moved))
    assert [(f.rule_id, f.path) for f in findings] == [
        ('R6-LMF-ANCHOR', '/entry[1]/lmf:syntacticBehaviour[1]')]


@pytest.mark.parametrize('name', ['clergyman.tei.xml', 'clergyman.tei-fs.xml', 'chida.form.xml',
                                  'horrifier.cit.xml', 'habilleur.cit.xml', 'horrified.cit.xml',
                                  'corenet.entry.xml'])
def test_listings_are_compliant(name):
    assert validate_tei_document(parse_xml(listing(name))) == []


def test_rule_filter():
    bad = doc('<def>x</def><gramGrp/>')
    assert {f.rule_id for f in validate_tei_document(parse_xml(bad))} == {
        'R1-SENSE-REQUIRED', 'R2-NO-VOID-GRAMGRP'}
    assert [f.rule_id for f in validate_tei_document(parse_xml(bad), ['R2-NO-VOID-GRAMGRP'])] == [
        'R2-NO-VOID-GRAMGRP']


@settings(max_examples=60)
@given(st.lists(st.sampled_from(sorted(CASES)), unique=True),
       st.permutations([bad for bad, _, _ in CASES.values()]))
def test_filtering_is_monotone_and_deterministic(enabled, docs):
    for data in docs:
        node = parse_xml(data)
        everything = validate_tei_document(node)
        subset = validate_tei_document(node, enabled)
        assert subset == [f for f in everything if f.rule_id in enabled]
        assert validate_tei_document(node) == everything
