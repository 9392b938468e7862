"""Namespace-resolved XML trees: parsing, deterministic output, comparison.

Comments, processing instructions and the DOCTYPE are dropped on parse.
Entity declarations and references other than the five XML built-ins are
rejected, so no DTD machinery is ever consulted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Union
from xml.parsers import expat

from .errors import EncodingError, ParseError, PrefixError

TEI_NS = 'http://www.tei-c.org/ns/1.0'
LMF_NS = 'http://www.iso.org/ns/LMF'
DCR_NS = 'http://www.isocat.org/ns/dcr'
XML_NS = 'http://www.w3.org/XML/1998/namespace'

DEFAULT_PREFIXES = {TEI_NS: 'tei', LMF_NS: 'lmf', DCR_NS: 'dcr'}


class QName(NamedTuple):
    ns: str
    local: str

    def __str__(self):
        return f'{{{self.ns}}}{self.local}' if self.ns else self.local


XML_LANG = QName(XML_NS, 'lang')
XML_ID = QName(XML_NS, 'id')


def tei(local: str) -> QName:
    return QName(TEI_NS, local)


def lmf(local: str) -> QName:
    return QName(LMF_NS, local)


def plain(local: str) -> QName:
    return QName('', local)


@dataclass(frozen=True)
class XmlNode:
    name: QName
    attrs: tuple[tuple[QName, str], ...] = ()
    children: tuple[Union['XmlNode', str], ...] = ()

    def get(self, name, default=None):
        if isinstance(name, str):
            name = QName('', name)
        for key, value in self.attrs:
            if key == name:
                return value
        return default

    def elements(self) -> Iterator['XmlNode']:
        return (c for c in self.children if isinstance(c, XmlNode))

    def texts(self) -> Iterator[str]:
        return (c for c in self.children if isinstance(c, str))

    def text(self) -> str:
        """All descendant text, concatenated."""
        return ''.join(_itertext(self))

    def has_text(self) -> bool:
        """True if some direct text child is not whitespace-only."""
        return any(t.strip() for t in self.texts())

    def iter(self) -> Iterator['XmlNode']:
        yield self
        for child in self.elements():
            yield from child.iter()


def _itertext(node):
    for child in node.children:
        if isinstance(child, str):
            yield child
        else:
            yield from _itertext(child)


def E(name: QName, attrs=None, *children) -> XmlNode:
    """Build a node; ``attrs`` is a mapping or pair list, None values skipped.

    Children may be nodes, strings, None (skipped) or nested lists.
    """
    pairs = attrs.items() if isinstance(attrs, dict) else (attrs or ())
    attr_tuple = tuple((QName('', k) if isinstance(k, str) else k, v)
                       for k, v in pairs if v is not None)
    if len({k for k, _ in attr_tuple}) != len(attr_tuple):
        raise ValueError(f'duplicate attribute on {name}')
    flat = []
    _flatten(children, flat)
    return XmlNode(name, attr_tuple, tuple(flat))


def _flatten(items, out):
    for item in items:
        if item is None or item == '':
            continue
        if isinstance(item, (list, tuple)):
            _flatten(item, out)
        elif isinstance(item, str) and out and isinstance(out[-1], str):
            out[-1] += item
        else:
            out.append(item)


# -- parsing -----------------------------------------------------------------

_SEP = '\x1f'


def _qname(raw: str) -> QName:
    ns, sep, local = raw.rpartition(_SEP)
    return QName(ns, local) if sep else QName('', raw)


class _Builder:

    def __init__(self, parser):
        self.parser = parser
        self.stack: list[tuple[QName, tuple, list]] = []
        self.root: Optional[XmlNode] = None

    def start(self, name, attrs):
        pairs = tuple((_qname(attrs[i]), attrs[i + 1]) for i in range(0, len(attrs), 2))
        self.stack.append((_qname(name), pairs, []))

    def end(self, name):
        qname, attrs, children = self.stack.pop()
        node = XmlNode(qname, attrs, tuple(children))
        if self.stack:
            self.stack[-1][2].append(node)
        else:
            self.root = node

    def chars(self, data):
        if not self.stack or not data:
            return
        children = self.stack[-1][2]
        if children and isinstance(children[-1], str):
            children[-1] += data
        else:
            children.append(data)

    def reject_entity_decl(self, name, *_):
        raise self._error(f'entity declaration {name!r} is not supported')

    def reject_skipped_entity(self, name, is_param):
        raise self._error(f'undefined entity {name!r}')

    def _error(self, message):
        return ParseError(self.parser.CurrentLineNumber,
                          self.parser.CurrentColumnNumber + 1, message)


def parse_xml(data: bytes) -> XmlNode:
    """Parse a complete UTF-8 document and return its root element."""
    if isinstance(data, str):
        data = data.encode('utf-8')
    try:
        data.decode('utf-8')
    except UnicodeDecodeError as exc:
        line = data.count(b'\n', 0, exc.start) + 1
        column = exc.start - (data.rfind(b'\n', 0, exc.start) + 1) + 1
        raise EncodingError(line, column, f'invalid UTF-8: {exc.reason}') from None
    parser = expat.ParserCreate('utf-8', _SEP)
    parser.ordered_attributes = True
    parser.buffer_text = True
    parser.SetParamEntityParsing(expat.XML_PARAM_ENTITY_PARSING_NEVER)
    builder = _Builder(parser)
    parser.StartElementHandler = builder.start
    parser.EndElementHandler = builder.end
    parser.CharacterDataHandler = builder.chars
    parser.EntityDeclHandler = builder.reject_entity_decl
    parser.SkippedEntityHandler = builder.reject_skipped_entity
    try:
        parser.Parse(data, True)
    except expat.ExpatError as exc:
        raise ParseError(exc.lineno, exc.offset + 1, expat.ErrorString(exc.code)) from None
    if builder.root is None:
        raise ParseError(parser.CurrentLineNumber, parser.CurrentColumnNumber + 1,
                         'no root element')
    return builder.root


# -- serialization -----------------------------------------------------------

def _escape_text(s):
    return (s.replace('&', '&amp;').replace('<', '&lt;').replace('>', '&gt;')
             .replace('\r', '&#13;'))


def _escape_attr(s):
    return (s.replace('&', '&amp;').replace('<', '&lt;').replace('"', '&quot;')
             .replace('\t', '&#9;').replace('\n', '&#10;').replace('\r', '&#13;'))


def _collect(node, element_ns, attr_ns):
    element_ns.add(node.name.ns)
    for key, _ in node.attrs:
        if key.ns:
            attr_ns.add(key.ns)
    for child in node.elements():
        _collect(child, element_ns, attr_ns)


def _assign_prefixes(root, prefixes, auto):
    element_ns, attr_ns = set(), set()
    _collect(root, element_ns, attr_ns)
    attr_ns.discard(XML_NS)
    if XML_NS in element_ns:
        raise PrefixError('elements may not be in the XML namespace')
    has_unqualified = '' in element_ns
    element_ns.discard('')
    explicit = dict(prefixes or {})
    table = {**DEFAULT_PREFIXES, **explicit}

    elem_prefix: dict[str, str] = {}
    attr_prefix: dict[str, str] = {}
    used = set()
    # the root's namespace becomes the default one unless it would shadow
    # unqualified elements, or the caller bound it to a prefix explicitly
    default_uri = None
    for uri, prefix in explicit.items():
        if prefix == '' and uri in element_ns:
            default_uri = uri
    if default_uri is None and root.name.ns and not has_unqualified \
            and explicit.get(root.name.ns, '') == '':
        default_uri = root.name.ns
    if default_uri is not None and has_unqualified:
        raise PrefixError(f'{default_uri} cannot be the default namespace: '
                          'the tree has elements in no namespace')
    if default_uri is not None:
        elem_prefix[default_uri] = ''
        used.add('')

    counter = 0
    for uri in sorted(element_ns | attr_ns):
        need_elem = uri in element_ns and uri not in elem_prefix
        need_attr = uri in attr_ns
        if not (need_elem or need_attr):
            continue
        prefix = table.get(uri) or None
        if prefix is None or prefix in used:
            if not auto:
                raise PrefixError(f'no prefix declared for namespace {uri}')
            while f'ns{counter}' in used or f'ns{counter}' in table.values():
                counter += 1
            prefix = f'ns{counter}'
        used.add(prefix)
        if need_elem:
            elem_prefix[uri] = prefix
        if need_attr:
            attr_prefix[uri] = prefix
    return elem_prefix, attr_prefix


def serialize_xml(node: XmlNode, indent: int = 0, prefixes: Optional[dict] = None,
                  auto_prefixes: bool = True, xml_declaration: bool = False,
                  verbatim: frozenset = frozenset()) -> bytes:
    """Deterministic UTF-8 output.

    Attributes are sorted by (namespace, local name); all namespace
    declarations sit on the root. With ``indent`` > 0, elements with
    element-only content are pretty-printed and whitespace-only text inside
    them is replaced; anything with real text is written verbatim, as is
    the whole subtree of any element named in ``verbatim``.
    """
    elem_prefix, attr_prefix = _assign_prefixes(node, prefixes, auto_prefixes)
    decls = []
    for uri, prefix in elem_prefix.items():
        decls.append((prefix, uri))
    for uri, prefix in attr_prefix.items():
        if elem_prefix.get(uri) != prefix:
            decls.append((prefix, uri))
    decls = sorted(set(decls))

    def qual(name, prefix_map):
        prefix = prefix_map.get(name.ns, '') if name.ns else ''
        return f'{prefix}:{name.local}' if prefix else name.local

    def attr_name(name):
        if name.ns == XML_NS:
            return f'xml:{name.local}'
        if name.ns:
            return f'{attr_prefix[name.ns]}:{name.local}'
        return name.local

    out: list[str] = []
    if xml_declaration:
        out.append('<?xml version="1.0" encoding="UTF-8"?>\n')

    def write(n, depth, extra, keep=False):
        keep = keep or n.name in verbatim
        tag = qual(n.name, elem_prefix)
        out.append(f'<{tag}')
        for prefix, uri in extra:
            out.append(f' xmlns:{prefix}="{_escape_attr(uri)}"' if prefix
                       else f' xmlns="{_escape_attr(uri)}"')
        for key, value in sorted(n.attrs, key=lambda kv: (kv[0].ns, kv[0].local)):
            out.append(f' {attr_name(key)}="{_escape_attr(value)}"')
        if not n.children:
            out.append('/>')
            return
        out.append('>')
        pretty = (indent > 0 and not keep and any(isinstance(c, XmlNode) for c in n.children)
                  and not n.has_text())
        for child in n.children:
            if isinstance(child, str):
                if not pretty:
                    out.append(_escape_text(child))
                continue
            if pretty:
                out.append('\n' + ' ' * (indent * (depth + 1)))
            write(child, depth + 1, (), keep)
        if pretty:
            out.append('\n' + ' ' * (indent * depth))
        out.append(f'</{tag}>')

    write(node, 0, decls)
    return ''.join(out).encode('utf-8')


# -- comparison --------------------------------------------------------------

def canonicalize(node: XmlNode) -> XmlNode:
    """Drop ignorable whitespace and sort attributes."""
    if any(isinstance(c, XmlNode) for c in node.children) and not node.has_text():
        children = tuple(canonicalize(c) for c in node.elements())
    else:
        children = tuple(canonicalize(c) if isinstance(c, XmlNode) else c
                         for c in node.children)
    return XmlNode(node.name, tuple(sorted(node.attrs)), children)


def canonical_equal(a: XmlNode, b: XmlNode) -> bool:
    return canonicalize(a) == canonicalize(b)


def canonical_diff(a: XmlNode, b: XmlNode) -> Optional[str]:
    """Human-readable location of the first canonical difference, or None."""
    return _diff(canonicalize(a), canonicalize(b), '')


def _diff(a, b, path):
    if isinstance(a, str) or isinstance(b, str):
        return None if a == b else f'{path}: text {a!r} != {b!r}'
    path = f'{path}/{a.name}'
    if a.name != b.name:
        return f'{path}: element {a.name} != {b.name}'
    if a.attrs != b.attrs:
        return f'{path}: attributes {dict(a.attrs)} != {dict(b.attrs)}'
    for x, y in zip(a.children, b.children):
        d = _diff(x, y, path)
        if d:
            return d
    if len(a.children) != len(b.children):
        return f'{path}: {len(a.children)} children != {len(b.children)}'
    return None


# -- paths -------------------------------------------------------------------

def step_name(name: QName) -> str:
    if name.ns in ('', TEI_NS):
        return name.local
    prefix = DEFAULT_PREFIXES.get(name.ns)
    return f'{prefix}:{name.local}' if prefix else str(name)


def child_paths(node: XmlNode, path: str) -> Iterator[tuple[XmlNode, str]]:
    """Yield element children with XPath-like paths (1-based per name)."""
    counts: dict[QName, int] = {}
    for child in node.elements():
        counts[child.name] = counts.get(child.name, 0) + 1
        yield child, f'{path}/{step_name(child.name)}[{counts[child.name]}]'


def root_path(node: XmlNode) -> str:
    return f'/{step_name(node.name)}[1]'
