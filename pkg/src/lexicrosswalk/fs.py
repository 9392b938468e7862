"""Feature-structure serializations.

Two dialects live here. The pure one encodes every component as a feature
whose value is a complex feature structure and every descriptor as an
elementary feature with plain text content (the untyped form)::

    <fs type="Lexicon">
      <f name="language">en</f>
      <f name="LexicalEntry"><fs> ... </fs></f>
    </fs>

The mixed one keeps the LMF element skeleton and only borrows TEI ``<f>``
for descriptors::

    <LexicalResource>
      <GlobalInformation><tei:f name="languageCoding">ISO 639-3</tei:f></GlobalInformation>
      <Lexicon><tei:f name="language">eng</tei:f> ... </Lexicon>
    </LexicalResource>

When a data category carries a registry identifier it is written as
``dcr:datcat`` (and ``dcr:valueDatcat`` for the value) on the ``<f>``.
"""

from __future__ import annotations

from . import model as m
from .components import (Component, Descriptor, component_to_resource,
                         lexicon_to_component, resource_to_component)
from .errors import DialectError, StructureError
from .findings import Finding, make_finding
from .xmlcore import (DCR_NS, E, QName, TEI_NS, XML_ID, XmlNode, child_paths,
                      plain, root_path, tei)

DATCAT = QName(DCR_NS, 'datcat')
VALUE_DATCAT = QName(DCR_NS, 'valueDatcat')

F = tei('f')
FS = tei('fs')


def _f(d: Descriptor) -> XmlNode:
    return E(F, {'name': d.name, DATCAT: d.datcat, VALUE_DATCAT: d.value_datcat}, d.value)


# -- pure feature structures -------------------------------------------------

def _fs_body(comp: Component):
    return [_f(d) for d in comp.descriptors] + [
        E(F, {'name': c.name}, E(FS, {XML_ID: c.id}, _fs_body(c))) for c in comp.children]


def emit_fs(resource: m.LexicalResource) -> XmlNode:
    """Root is ``<fs type="Lexicon">`` for a single lexicon without global
    information, otherwise ``<fs type="LexicalResource">``."""
    if len(resource.lexicons) == 1 and not resource.global_info:
        comp = lexicon_to_component(resource.lexicons[0])
        return E(FS, {'type': 'Lexicon'}, _fs_body(comp))
    comp = resource_to_component(resource)
    comp.children = [c for c in comp.children
                     if c.name != 'GlobalInformation' or c.descriptors]
    return E(FS, {'type': 'LexicalResource'}, _fs_body(comp))


def _read_fs(node: XmlNode, name: str, path: str, findings: list[Finding]) -> Component:
    comp = Component(name, id=node.get(XML_ID), path=path)
    if node.has_text():
        findings.append(make_finding('F-STRAY-TEXT', path, 'text inside <fs> ignored'))
    for child, cpath in child_paths(node, path):
        if child.name != F:
            findings.append(make_finding('F-BAD-FEATURE', cpath,
                                         f'<{child.name.local}> is not a feature'))
            continue
        fname = child.get('name')
        if not fname:
            findings.append(make_finding('F-BAD-FEATURE', cpath, '<f> without @name'))
            continue
        elements = list(child_paths(child, cpath))
        if not elements:
            comp.descriptors.append(Descriptor(fname, child.text(), child.get(DATCAT),
                                               child.get(VALUE_DATCAT), cpath))
            continue
        if child.has_text():
            raise StructureError(f'{cpath}: <f name="{fname}"> mixes text and element content')
        if len(elements) != 1 or elements[0][0].name != FS:
            findings.append(make_finding(
                'F-BAD-FEATURE', cpath,
                f'<f name="{fname}"> must hold text or a single <fs>; typed values unsupported'))
            continue
        comp.children.append(_read_fs(elements[0][0], fname, elements[0][1], findings))
    return comp


def parse_fs(doc: XmlNode) -> tuple[m.LexicalResource, list[Finding]]:
    kind = doc.get('type')
    if doc.name != FS or kind not in ('Lexicon', 'LexicalResource'):
        raise DialectError('feature-structure root must be a TEI <fs> typed '
                           f'Lexicon or LexicalResource, not <{doc.name.local}> {kind!r}')
    findings: list[Finding] = []
    path = root_path(doc)
    comp = _read_fs(doc, kind, path, findings)
    if kind == 'Lexicon':
        comp = Component('LexicalResource', children=[comp], path=path)
    resource, more = component_to_resource(comp, 'F', salvage=True)
    return resource, findings + more


# -- mixed skeleton ----------------------------------------------------------

def _mixed(comp: Component) -> XmlNode:
    return E(plain(comp.name), {'id': comp.id},
             [_f(d) for d in comp.descriptors], [_mixed(c) for c in comp.children])


def emit_mixed(resource: m.LexicalResource) -> XmlNode:
    return _mixed(resource_to_component(resource))


def _read_mixed(node: XmlNode, path: str, findings: list[Finding]) -> Component:
    comp = Component(node.name.local, id=node.get('id'), path=path)
    if node.has_text():
        findings.append(make_finding('X-STRAY-TEXT', path,
                                     f'text inside <{node.name.local}> ignored'))
    for child, cpath in child_paths(node, path):
        if child.name.local == 'f':
            if child.name.ns != TEI_NS:
                findings.append(make_finding('X-F-NAMESPACE', cpath,
                                             '<f> outside the TEI namespace accepted'))
            comp.descriptors.append(Descriptor(child.get('name', ''), child.text(),
                                               child.get(DATCAT), child.get(VALUE_DATCAT),
                                               cpath))
        elif child.name.ns:
            findings.append(make_finding('X-UNKNOWN-COMPONENT', cpath,
                                         f'skeleton element {child.name} is namespaced'))
        else:
            comp.children.append(_read_mixed(child, cpath, findings))
    return comp


def parse_mixed(doc: XmlNode) -> tuple[m.LexicalResource, list[Finding]]:
    if doc.name != plain('LexicalResource'):
        raise DialectError(f'mixed root must be an un-namespaced LexicalResource, not {doc.name}')
    findings: list[Finding] = []
    comp = _read_mixed(doc, root_path(doc), findings)
    resource, more = component_to_resource(comp, 'X')
    return resource, findings + more
