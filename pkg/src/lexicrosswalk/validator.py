"""Compliance rules for TEI dictionary documents meant to carry LMF data.

The checks run on the parsed XML, before any conversion, and never modify
it. Each rule has a stable id; findings are sorted by path, then rule id.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .findings import Finding, Severity, make_finding, register, sort_findings
from .mapping import extension, extension_parents, grammar_elements
from .xmlcore import TEI_NS, XML_ID, XmlNode, child_paths, root_path, tei


@dataclass(frozen=True)
class Rule:
    id: str
    severity: Severity
    description: str
    paper_anchor: str


_E, _W, _I = Severity.ERROR, Severity.WARNING, Severity.INFO

_CATALOGUE = (
    Rule('R1-SENSE-REQUIRED', _E,
         'no <def>, <cit> or <usg> directly under <entry>; semantic content goes in <sense>',
         'TEI P5 Dictionaries, <sense> as the only carrier of semantic content'),
    Rule('R2-NO-VOID-GRAMGRP', _W,
         '<gramGrp> must have at least one element child',
         'TEI encoding practice, no void grammar groups'),
    Rule('R3-ENTRY-ONLY', _W,
         '<entryFree> and <dictScrap> are workflow constructs, not LexicalEntry',
         'TEI P5 Dictionaries, <entry> as the LexicalEntry implementation'),
    Rule('R4-FORM-WRAPPER', _E,
         '<orth> sits inside <form>; grammar elements sit inside <gramGrp> or <fs type="grammar">',
         'LMF Form / FormRepresentation mapped to <form> and <gramGrp>'),
    Rule('R5-CIT-QUOTE', _E,
         'every <cit> holds exactly one <quote> (or <q>)',
         'TEI P5 <cit> content model'),
    Rule('R6-LMF-ANCHOR', _E,
         'LMF-namespace elements occur only as <lmf:syntacticBehaviour> in <sense> and its declared descendants',
         'LMF syntax extension anchored on <sense>'),
    Rule('R7-ENTRY-ID-UNIQUE', _E,
         '@xml:id values are unique in the document',
         'XML ID uniqueness for xml:id'),
    Rule('R8-HOM-SUPERENTRY', _I,
         '<hom> and <superEntry> are valid TEI but outside the LMF mapping',
         'TEI P5 Dictionaries, homograph grouping'),
)

for _rule in _CATALOGUE:
    register(_rule.id, _rule.severity)

_GRAMMAR_HOSTS = ('grammar', 'formGrammar')


def rule_catalogue() -> list[Rule]:
    return list(_CATALOGUE)


class _Check:

    def __init__(self, enabled: Optional[frozenset]):
        self.enabled = enabled
        self.findings: list[Finding] = []
        self.ids: set[str] = set()
        self.lmf_ns = extension()['ns']
        self.parents = extension_parents()
        self.grammar = grammar_elements()

    def add(self, rule_id, path, message):
        if self.enabled is None or rule_id in self.enabled:
            self.findings.append(make_finding(rule_id, path, message))

    def visit(self, node: XmlNode, path: str, ancestors: tuple):
        name = node.name
        parent = ancestors[-1] if ancestors else None

        xml_id = node.get(XML_ID)
        if xml_id is not None:
            if xml_id in self.ids:
                self.add('R7-ENTRY-ID-UNIQUE', path, f'xml:id {xml_id!r} already used')
            self.ids.add(xml_id)

        if name.ns == self.lmf_ns:
            allowed = self.parents.get(name.local)
            if allowed is None:
                self.add('R6-LMF-ANCHOR', path, f'<lmf:{name.local}> is not part of the extension')
            elif parent is None or parent.name not in allowed:
                where = f'<{parent.name.local}>' if parent is not None else 'the root'
                self.add('R6-LMF-ANCHOR', path, f'<lmf:{name.local}> not allowed in {where}')
        elif name.ns == TEI_NS:
            self.tei(node, path, parent, ancestors)

        for child, cpath in child_paths(node, path):
            self.visit(child, cpath, ancestors + (node,))

    def tei(self, node, path, parent, ancestors):
        local = node.name.local
        if parent is not None and parent.name == tei('entry') and local in ('def', 'cit', 'usg'):
            self.add('R1-SENSE-REQUIRED', path, f'<{local}> directly under <entry>; wrap it in <sense>')
        if local == 'gramGrp' and not any(True for _ in node.elements()):
            self.add('R2-NO-VOID-GRAMGRP', path, 'empty <gramGrp>')
        if local in ('entryFree', 'dictScrap'):
            self.add('R3-ENTRY-ONLY', path, f'<{local}> is not converted; use <entry>')
        if local in ('hom', 'superEntry'):
            self.add('R8-HOM-SUPERENTRY', path, f'<{local}> is outside the LMF mapping')
        if local == 'orth' and not any(a.name == tei('form') for a in ancestors):
            self.add('R4-FORM-WRAPPER', path, '<orth> outside <form>')
        if local in self.grammar and not any(_is_grammar_host(a) for a in ancestors):
            self.add('R4-FORM-WRAPPER', path,
                     f'<{local}> outside <gramGrp> or <fs type="grammar">')
        if local == 'cit':
            quotes = sum(1 for c in node.elements() if c.name in (tei('quote'), tei('q')))
            if quotes != 1:
                self.add('R5-CIT-QUOTE', path, f'<cit> holds {quotes} <quote> elements, expected 1')


def _is_grammar_host(node: XmlNode) -> bool:
    return node.name == tei('gramGrp') or (
        node.name == tei('fs') and node.get('type') in _GRAMMAR_HOSTS)


def validate_tei_document(doc: XmlNode, enabled: Optional[Iterable[str]] = None) -> list[Finding]:
    """Findings for every enabled rule (all by default)."""
    check = _Check(frozenset(enabled) if enabled is not None else None)
    check.visit(doc, root_path(doc), ())
    return sort_findings(check.findings)
