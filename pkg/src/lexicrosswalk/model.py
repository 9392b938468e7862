"""Dialect-independent lexicon model.

The model is LMF-shaped: every serializer reads from and writes into these
types, so dialect quirks (where TEI puts the part of speech, how the legacy
annex spells a sense number) stay in the serializers.

All values are frozen dataclasses. Sequence fields accept any iterable and
are stored as tuples, so ``==`` is an order-sensitive structural comparison.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, fields, is_dataclass
from typing import Optional, Union

from .findings import Finding, make_finding

LEMMA = 'Lemma'
WORD_FORM = 'WordForm'
FORM = 'Form'  # a form of no particular subtype

EXAMPLE = 'example'
TRANSLATION = 'translation'

DEFAULT_MAX_SENSE_DEPTH = 8

_WS = re.compile(r'\s')


def _freeze(obj, *names):
    for name in names:
        value = getattr(obj, name)
        if not isinstance(value, tuple):
            object.__setattr__(obj, name, tuple(value))


@dataclass(frozen=True)
class DataCategoryRef:
    name: str
    registry_id: Optional[str] = None


@dataclass(frozen=True)
class Feature:
    """An elementary descriptor. ``category`` may be given as a plain name."""

    category: Union[DataCategoryRef, str]
    value: str
    value_registry_id: Optional[str] = None

    def __post_init__(self):
        if isinstance(self.category, str):
            object.__setattr__(self, 'category', DataCategoryRef(self.category))

    @property
    def name(self) -> str:
        return self.category.name


@dataclass(frozen=True)
class FormRepresentation:
    written_form: str
    lang_tag: Optional[str] = None
    orth_label: Optional[str] = None


@dataclass(frozen=True)
class Form:
    """``role`` is LEMMA, WORD_FORM, FORM (no subtype), or any other label."""

    role: str
    representations: tuple[FormRepresentation, ...] = ()
    grammar: tuple[Feature, ...] = ()

    def __post_init__(self):
        _freeze(self, 'representations', 'grammar')


@dataclass(frozen=True)
class LocalizedText:
    text: str
    lang_tag: Optional[str] = None


@dataclass(frozen=True)
class ExternalRef:
    scheme: str
    idno: str
    gloss: Optional[LocalizedText] = None


@dataclass(frozen=True)
class Span:
    start: int
    end: int
    kind: str
    attrs: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        attrs = self.attrs.items() if isinstance(self.attrs, dict) else self.attrs
        object.__setattr__(self, 'attrs', tuple(sorted(tuple(a) for a in attrs)))


@dataclass(frozen=True)
class AnnotatedText:
    """Text with inline annotations; spans are kept in document (pre-)order."""

    text: str
    spans: tuple[Span, ...] = ()

    def __post_init__(self):
        _freeze(self, 'spans')


@dataclass(frozen=True)
class Quotation:
    """``kind`` is EXAMPLE, TRANSLATION, another label, or None when untyped."""

    kind: Optional[str]
    quote: LocalizedText
    refinements: tuple[Feature, ...] = ()
    sub_quotations: tuple['Quotation', ...] = ()
    source_ref: Optional[str] = None

    def __post_init__(self):
        _freeze(self, 'refinements', 'sub_quotations')


@dataclass(frozen=True)
class Collocate:
    text: str
    kind: str
    lang_tag: Optional[str] = None


@dataclass(frozen=True)
class SyntacticArgument:
    function: str
    collocates: tuple[Collocate, ...] = ()
    glosses: tuple[LocalizedText, ...] = ()
    semantic_ref: Optional[ExternalRef] = None

    def __post_init__(self):
        _freeze(self, 'collocates', 'glosses')


@dataclass(frozen=True)
class SubcategorizationFrame:
    arguments: tuple[SyntacticArgument, ...] = ()

    def __post_init__(self):
        _freeze(self, 'arguments')


@dataclass(frozen=True)
class SyntacticBehaviour:
    frames: tuple[SubcategorizationFrame, ...] = ()

    def __post_init__(self):
        _freeze(self, 'frames')


@dataclass(frozen=True)
class Sense:
    label: Optional[str] = None
    grammar: tuple[Feature, ...] = ()
    definitions: tuple[AnnotatedText, ...] = ()
    glosses: tuple[LocalizedText, ...] = ()
    external_refs: tuple[ExternalRef, ...] = ()
    quotations: tuple[Quotation, ...] = ()
    subsenses: tuple['Sense', ...] = ()
    syntactic_behaviours: tuple[SyntacticBehaviour, ...] = ()

    def __post_init__(self):
        _freeze(self, 'grammar', 'definitions', 'glosses', 'external_refs',
                'quotations', 'subsenses', 'syntactic_behaviours')


@dataclass(frozen=True)
class LexicalEntry:
    id: Optional[str] = None
    entry_grammar: tuple[Feature, ...] = ()
    lemma: Optional[Form] = None
    other_forms: tuple[Form, ...] = ()
    senses: tuple[Sense, ...] = ()

    def __post_init__(self):
        _freeze(self, 'entry_grammar', 'other_forms', 'senses')


@dataclass(frozen=True)
class Lexicon:
    language: str
    entries: tuple[LexicalEntry, ...] = ()

    def __post_init__(self):
        _freeze(self, 'entries')


@dataclass(frozen=True)
class LexicalResource:
    global_info: tuple[Feature, ...] = ()
    lexicons: tuple[Lexicon, ...] = field(default_factory=tuple)

    def __post_init__(self):
        _freeze(self, 'global_info', 'lexicons')


def equal_structural(a, b) -> bool:
    """True iff both trees have the same field values in the same order."""
    return a == b


def first_divergence(a, b, path: str = '') -> Optional[str]:
    """Path of the first model node where ``a`` and ``b`` differ, or None."""
    if a == b:
        return None
    if type(a) is not type(b):
        return path or '/'
    if isinstance(a, tuple):
        for i, (x, y) in enumerate(zip(a, b), 1):
            sub = first_divergence(x, y, f'{path}[{i}]')
            if sub is not None:
                return sub
        return f'{path}[{min(len(a), len(b)) + 1}]'
    if is_dataclass(a):
        for f in fields(a):
            sub = first_divergence(getattr(a, f.name), getattr(b, f.name),
                                   f'{path}/{f.name}')
            if sub is not None:
                return sub
    return path or '/'


# descriptor names that dialects route to dedicated model fields, by context;
# a plain Feature with one of these names would be rerouted on re-parse
RESERVED_NAMES = {
    'form': {'writtenForm', 'formType'},
    'sense': {'senseNumber'},
    'quotation': {'quotationType', 'text', 'language', 'source'},
}


class _Validator:

    def __init__(self, max_sense_depth):
        self.max_sense_depth = max_sense_depth
        self.findings: list[Finding] = []
        self.ids: set[str] = set()

    def add(self, rule_id, path, message):
        self.findings.append(make_finding(rule_id, path, message))

    def features(self, features, path, context=None):
        reserved = RESERVED_NAMES.get(context, ())
        for i, feat in enumerate(features, 1):
            p = f'{path}[{i}]'
            name = feat.category.name
            if not name or _WS.search(name):
                self.add('M-BAD-CATEGORY', p, f'invalid data category name {name!r}')
            if not feat.value:
                self.add('M-EMPTY-VALUE', p, f'feature {name!r} has an empty value')
            if name in reserved:
                self.add('M-RESERVED-CATEGORY', p,
                         f'feature name {name!r} is reserved in {context} context')

    def text(self, text, path):
        if not text.text:
            self.add('M-EMPTY-TEXT', path, 'text is empty')

    def form(self, form, path, lemma_slot):
        if lemma_slot and form.role != LEMMA:
            self.add('M-FORM-ROLE', f'{path}/role', f'lemma slot holds a {form.role!r} form')
        if not lemma_slot and form.role == LEMMA:
            self.add('M-LEMMA-IN-OTHER-FORMS', f'{path}/role', 'only one lemma per entry')
        if not form.role:
            self.add('M-FORM-ROLE', f'{path}/role', 'form role is empty')
        elif form.role not in (LEMMA, WORD_FORM) and form.role in ('lemma', 'inflected'):
            self.add('M-FORM-ROLE', f'{path}/role',
                     f'label {form.role!r} collides with a TEI form type')
        if not form.representations:
            self.add('M-EMPTY-FORM', path, 'form has no representation')
        for i, rep in enumerate(form.representations, 1):
            if not rep.written_form:
                self.add('M-EMPTY-FORM', f'{path}/representations[{i}]', 'written form is empty')
        self.features(form.grammar, f'{path}/grammar', 'form')

    def annotated(self, text, path):
        if not text.text:
            self.add('M-EMPTY-TEXT', path, 'definition is empty')
        stack = []
        prev = None
        for i, span in enumerate(text.spans, 1):
            p = f'{path}/spans[{i}]'
            if not (0 <= span.start < span.end <= len(text.text)):
                self.add('M-BAD-SPAN', p, f'span [{span.start}, {span.end}) out of bounds')
                continue
            if not span.kind:
                self.add('M-BAD-SPAN', p, 'span kind is empty')
            if prev is not None and (span.start, -span.end) < (prev.start, -prev.end):
                self.add('M-BAD-SPAN', p, 'spans are not in document order')
            while stack and span.start >= stack[-1].end:
                stack.pop()
            if stack and span.end > stack[-1].end:
                self.add('M-BAD-SPAN', p, 'span overlaps a preceding span')
            stack.append(span)
            prev = span

    def ext_ref(self, ref, path):
        if not ref.idno:
            self.add('M-EMPTY-IDNO', path, 'external reference has no idno')
        if not ref.scheme:
            self.add('M-EMPTY-TEXT', f'{path}/scheme', 'external reference scheme is empty')
        if ref.gloss is not None:
            self.text(ref.gloss, f'{path}/gloss')

    def quotation(self, quote, path, seen):
        if id(quote) in seen:
            return
        seen = seen | {id(quote)}
        if quote.kind == '':
            self.add('M-EMPTY-TEXT', f'{path}/kind', 'quotation kind is empty')
        self.text(quote.quote, f'{path}/quote')
        self.features(quote.refinements, f'{path}/refinements', 'quotation')
        for i, sub in enumerate(quote.sub_quotations, 1):
            self.quotation(sub, f'{path}/sub_quotations[{i}]', seen)

    def behaviour(self, behaviour, path):
        if not behaviour.frames:
            self.add('M-EMPTY-BEHAVIOUR', path, 'syntactic behaviour has no frame')
        for i, frame in enumerate(behaviour.frames, 1):
            fp = f'{path}/frames[{i}]'
            if not frame.arguments:
                self.add('M-EMPTY-FRAME', fp, 'subcategorization frame has no argument')
            for j, arg in enumerate(frame.arguments, 1):
                ap = f'{fp}/arguments[{j}]'
                if not arg.function:
                    self.add('M-EMPTY-FUNCTION', ap, 'syntactic function is empty')
                for k, col in enumerate(arg.collocates, 1):
                    if not col.text:
                        self.add('M-EMPTY-TEXT', f'{ap}/collocates[{k}]', 'collocate is empty')
                for k, gloss in enumerate(arg.glosses, 1):
                    self.text(gloss, f'{ap}/glosses[{k}]')
                if arg.semantic_ref is not None:
                    self.ext_ref(arg.semantic_ref, f'{ap}/semantic_ref')

    def sense(self, sense, path, depth):
        if depth > self.max_sense_depth:
            self.add('M-SENSE-DEPTH', path,
                     f'sense nesting exceeds {self.max_sense_depth} levels')
            return
        self.features(sense.grammar, f'{path}/grammar', 'sense')
        for i, d in enumerate(sense.definitions, 1):
            self.annotated(d, f'{path}/definitions[{i}]')
        for i, g in enumerate(sense.glosses, 1):
            self.text(g, f'{path}/glosses[{i}]')
        for i, r in enumerate(sense.external_refs, 1):
            self.ext_ref(r, f'{path}/external_refs[{i}]')
        for i, q in enumerate(sense.quotations, 1):
            self.quotation(q, f'{path}/quotations[{i}]', frozenset())
        for i, b in enumerate(sense.syntactic_behaviours, 1):
            self.behaviour(b, f'{path}/syntactic_behaviours[{i}]')
        for i, s in enumerate(sense.subsenses, 1):
            self.sense(s, f'{path}/subsenses[{i}]', depth + 1)

    def entry(self, entry, path):
        if entry.id is not None:
            if not entry.id or _WS.search(entry.id):
                self.add('M-BAD-ID', f'{path}/id', f'invalid entry id {entry.id!r}')
            elif entry.id in self.ids:
                self.add('M-DUPLICATE-ID', f'{path}/id', f'duplicate entry id {entry.id!r}')
            self.ids.add(entry.id)
        self.features(entry.entry_grammar, f'{path}/entry_grammar')
        if entry.lemma is None:
            self.add('M-LEMMA-MISSING', path, 'lexical entry has no lemma')
        else:
            self.form(entry.lemma, f'{path}/lemma', True)
        for i, form in enumerate(entry.other_forms, 1):
            self.form(form, f'{path}/other_forms[{i}]', False)
        for i, sense in enumerate(entry.senses, 1):
            self.sense(sense, f'{path}/senses[{i}]', 1)

    def resource(self, resource):
        self.features(resource.global_info, '/global_info')
        if not resource.lexicons:
            self.add('M-NO-LEXICON', '/', 'resource has no lexicon')
        for i, lexicon in enumerate(resource.lexicons, 1):
            path = f'/lexicons[{i}]'
            if not lexicon.language:
                self.add('M-EMPTY-LANGUAGE', path, 'lexicon language is empty')
            for j, entry in enumerate(lexicon.entries, 1):
                self.entry(entry, f'{path}/entries[{j}]')


def validate_model(resource: LexicalResource,
                   max_sense_depth: int = DEFAULT_MAX_SENSE_DEPTH) -> list[Finding]:
    """Report every violated model invariant; an empty list means model-valid."""
    v = _Validator(max_sense_depth)
    v.resource(resource)
    return v.findings


def walk(obj):
    """Yield every model value in the tree, depth first."""
    if isinstance(obj, tuple):
        for item in obj:
            yield from walk(item)
    elif is_dataclass(obj):
        yield obj
        for f in fields(obj):
            yield from walk(getattr(obj, f.name))


def has_registry_ids(resource: LexicalResource) -> bool:
    for node in walk(resource):
        if isinstance(node, DataCategoryRef) and node.registry_id is not None:
            return True
        if isinstance(node, Feature) and node.value_registry_id is not None:
            return True
    return False


def has_spans(resource: LexicalResource) -> bool:
    return any(isinstance(node, AnnotatedText) and node.spans for node in walk(resource))
