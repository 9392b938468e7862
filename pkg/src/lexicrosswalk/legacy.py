"""The annex-style LMF XML dialect: components as elements, ``<feat att val/>``.

Conventions this module adopts where the annex leaves room:

* sense labels travel as ``<feat att="senseNumber">``;
* entry identifiers use a plain ``id`` attribute;
* quotations are flat ``<Quotation>`` statements; a quotation that nests
  another one has no legacy counterpart and raises UnrepresentableError;
* inline annotations of definitions are dropped (only the text survives).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import model as m
from .components import (Component, Descriptor, component_to_resource,
                         resource_to_component)
from .errors import DialectError, UnrepresentableError
from .findings import Finding, make_finding
from .xmlcore import DCR_NS, E, QName, XmlNode, child_paths, plain, root_path

DATCAT = QName(DCR_NS, 'datcat')
VALUE_DATCAT = QName(DCR_NS, 'valueDatcat')


@dataclass(frozen=True)
class LegacyDialectOptions:
    emit_dcr_attrs: bool = False


def _read(node: XmlNode, path: str, findings: list[Finding]) -> Component:
    comp = Component(node.name.local, id=node.get('id'), path=path)
    if node.has_text():
        findings.append(make_finding('L-STRAY-TEXT', path, f'text inside <{node.name.local}> ignored'))
    for child, cpath in child_paths(node, path):
        if child.name.local == 'feat':
            att, val = child.get('att'), child.get('val')
            if att is None or val is None:
                findings.append(make_finding('L-BAD-FEAT', cpath, '<feat> needs both att and val'))
                continue
            comp.descriptors.append(
                Descriptor(att, val, child.get(DATCAT), child.get(VALUE_DATCAT), cpath))
        else:
            comp.children.append(_read(child, cpath, findings))
    return comp


def parse_legacy_lmf(doc: XmlNode) -> tuple[m.LexicalResource, list[Finding]]:
    if doc.name.local != 'LexicalResource':
        raise DialectError(f'legacy LMF root must be LexicalResource, not {doc.name.local}')
    path = root_path(doc)
    findings: list[Finding] = []
    if doc.name.ns:
        findings.append(make_finding('L-NS', path, f'namespace {doc.name.ns} ignored'))
    root = _read(doc, path, findings)
    resource, more = component_to_resource(root, 'L')
    return resource, findings + more


def _check_representable(resource: m.LexicalResource):
    def sense(s, path):
        for i, q in enumerate(s.quotations, 1):
            if q.sub_quotations:
                raise UnrepresentableError(
                    f'{path}/quotations[{i}]',
                    'nested quotations have no legacy LMF counterpart')
        for i, sub in enumerate(s.subsenses, 1):
            sense(sub, f'{path}/subsenses[{i}]')

    for i, lexicon in enumerate(resource.lexicons, 1):
        for j, entry in enumerate(lexicon.entries, 1):
            for k, s in enumerate(entry.senses, 1):
                sense(s, f'/lexicons[{i}]/entries[{j}]/senses[{k}]')


def _write(comp: Component, opts: LegacyDialectOptions) -> XmlNode:
    feats = []
    for d in comp.descriptors:
        attrs = {'att': d.name, 'val': d.value}
        if opts.emit_dcr_attrs:
            attrs[DATCAT] = d.datcat
            attrs[VALUE_DATCAT] = d.value_datcat
        feats.append(E(plain('feat'), attrs))
    children = [_write(c, opts) for c in comp.children if c.name != 'Span']
    return E(plain(comp.name), {'id': comp.id}, feats, children)


def emit_legacy_lmf(resource: m.LexicalResource,
                    opts: LegacyDialectOptions = LegacyDialectOptions()) -> XmlNode:
    _check_representable(resource)
    return _write(resource_to_component(resource), opts)
