"""LMF descriptor <-> TEI element crosswalk, and the LMF syntax extension.

Both tables are read from the manifest shipped in ``data/``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Optional

from .errors import MappingError
from .model import DataCategoryRef
from .xmlcore import QName, TEI_NS


@lru_cache(maxsize=None)
def manifest() -> dict:
    text = resources.files(__package__).joinpath('data/tei_lmf_manifest.json').read_text('utf-8')
    return json.loads(text)


@dataclass(frozen=True)
class DescriptorMapping:
    category_name: str
    tei_element: str
    is_generic: bool


@dataclass(frozen=True)
class ComponentMapping:
    component: str
    tei_element: str
    type: Optional[str]


def _rows():
    return manifest()['descriptorMappings']


@lru_cache(maxsize=None)
def _by_category() -> dict[str, str]:
    table = {row['category']: row['element'] for row in _rows()}
    if len(set(table.values())) != len(table):
        raise RuntimeError('descriptor mapping table is not bijective')
    return table


@lru_cache(maxsize=None)
def _by_element() -> dict[str, str]:
    return {v: k for k, v in _by_category().items()}


GENERIC = 'gram'


def grammar_elements() -> frozenset[str]:
    """Local names that may only appear inside a grammar block."""
    return frozenset([GENERIC] + [r['element'] for r in _rows() if r['grammar']])


def component_mappings() -> list[ComponentMapping]:
    return [ComponentMapping(r['component'], r['element'], r['type'])
            for r in manifest()['componentMappings']]


def map_descriptor_to_tei(category: DataCategoryRef | str) -> DescriptorMapping:
    name = category if isinstance(category, str) else category.name
    element = _by_category().get(name)
    if element is None:
        return DescriptorMapping(name, GENERIC, True)
    return DescriptorMapping(name, element, False)


def map_tei_to_descriptor(element_local: str, type_attr: Optional[str] = None) -> DataCategoryRef:
    if element_local == GENERIC:
        if not type_attr:
            raise MappingError('<gram> without @type names no data category')
        return DataCategoryRef(type_attr)
    # elements outside the table name their own category
    return DataCategoryRef(_by_element().get(element_local, element_local))


def grammar_mapping(name: str) -> DescriptorMapping:
    """Like map_descriptor_to_tei, but never yields a non-grammar element."""
    mapping = map_descriptor_to_tei(name)
    if mapping.tei_element not in grammar_elements():
        return DescriptorMapping(name, GENERIC, True)
    return mapping


# In <fs type="grammar"> blocks a dedicated category is named after its TEI
# element (<f name="pos">). Generic names that would read back as a dedicated
# element, or that start with the escape, get the escape prefix.
_ESCAPE = 'gram:'


def fs_feature_name(category_name: str) -> str:
    mapping = grammar_mapping(category_name)
    if not mapping.is_generic:
        return mapping.tei_element
    if category_name in grammar_elements() or category_name.startswith(_ESCAPE):
        return _ESCAPE + category_name
    return category_name


def category_from_fs_name(fname: str) -> str:
    if fname.startswith(_ESCAPE):
        return fname[len(_ESCAPE):]
    if fname in grammar_elements() and fname != GENERIC:
        return _by_element()[fname]
    return fname


# -- syntax extension --------------------------------------------------------

def extension() -> dict:
    return manifest()['extension']


@lru_cache(maxsize=None)
def extension_parents() -> dict[str, frozenset[QName]]:
    """For each extension element, the element names allowed as its parent."""
    ext = extension()
    ns = ext['ns']
    hosts_by_class: dict[str, set[QName]] = {}
    for anchor in ext['anchors']:
        hosts_by_class.setdefault(anchor['class'], set()).add(
            QName(anchor['hostNs'], anchor['host']))
    for spec in ext['elementSpecs']:
        cls = spec['content'].get('oneOrMore')
        if cls:
            hosts_by_class.setdefault(cls, set()).add(QName(ns, spec['ident']))
    return {spec['ident']: frozenset(h for c in spec['memberOf'] for h in hosts_by_class.get(c, ()))
            for spec in ext['elementSpecs']}


@lru_cache(maxsize=None)
def argument_children() -> frozenset[QName]:
    """Element names admitted inside an extension syntacticArgument."""
    ext = extension()
    cls = next(s['content']['oneOrMore'] for s in ext['elementSpecs']
               if s['ident'] == 'syntacticArgument')
    names = {QName(ext['ns'], s['ident']) for s in ext['elementSpecs'] if cls in s['memberOf']}
    names.update(QName(TEI_NS, local) for local in ext['teiClassMembers'].get(cls, ()))
    return frozenset(names)
