"""The LMF component skeleton shared by the legacy, fs and mixed dialects.

Those three serializations differ only in syntax: a component is an element
named after its meta-model class (or an ``<f>`` holding an ``<fs>``), and a
descriptor is a ``<feat att val/>`` (or an ``<f name>value</f>``). They all
go through this intermediate tree, so the routing of descriptors to model
fields is written once.

Component inventory (descriptors, then sub-components):

    LexicalResource          GlobalInformation, Lexicon*
    GlobalInformation        <features>
    Lexicon                  language; LexicalEntry*
    LexicalEntry [id]        <features>; Lemma?, WordForm*, Form*, Sense*
    Lemma|WordForm|Form      formType (labelled Form only), writtenForm?, <features>;
                             FormRepresentation*
    FormRepresentation       writtenForm, language?, orthographyName?
    Sense                    senseNumber?, <features>; Definition*, Gloss*,
                             MonolingualExternalRef*, Quotation*,
                             SyntacticBehaviour*, Sense*
    Definition               text; Span*
    Span                     start, end, kind; SpanAttribute*
    SpanAttribute            name, value
    Gloss                    text, language?
    MonolingualExternalRef   externalSystem, externalReference; Gloss?
    Quotation                quotationType?, text, language?, source?,
                             <features>; Quotation*
    SyntacticBehaviour       SubcategorizationFrame*
    SubcategorizationFrame   SyntacticArgument*
    SyntacticArgument        syntacticFunction; Collocate*, Gloss*,
                             MonolingualExternalRef?
    Collocate                text, collocateType, language?

A form with a single plain representation carries ``writtenForm`` directly;
anything richer uses FormRepresentation children.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import model as m
from .findings import Finding, make_finding

FORM_COMPONENTS = (m.LEMMA, m.WORD_FORM, 'Form')


@dataclass
class Descriptor:
    name: str
    value: str
    datcat: Optional[str] = None
    value_datcat: Optional[str] = None
    path: str = ''


@dataclass
class Component:
    name: str
    descriptors: list[Descriptor] = field(default_factory=list)
    children: list['Component'] = field(default_factory=list)
    id: Optional[str] = None
    path: str = ''

    def add(self, name, value, *, when=True):
        if when and value is not None:
            self.descriptors.append(Descriptor(name, value))
        return self

    def count_descriptors(self) -> int:
        return len(self.descriptors) + sum(c.count_descriptors() for c in self.children)


# -- model -> components -----------------------------------------------------

def _features(comp, features):
    for f in features:
        comp.descriptors.append(Descriptor(f.category.name, f.value,
                                           f.category.registry_id, f.value_registry_id))


def _text_component(name, text: m.LocalizedText):
    return Component(name).add('text', text.text).add('language', text.lang_tag)


def _ext_ref(ref: m.ExternalRef):
    comp = Component('MonolingualExternalRef')
    comp.add('externalSystem', ref.scheme).add('externalReference', ref.idno)
    if ref.gloss is not None:
        comp.children.append(_text_component('Gloss', ref.gloss))
    return comp


def _form(form: m.Form):
    name = form.role if form.role in (m.LEMMA, m.WORD_FORM) else 'Form'
    comp = Component(name)
    comp.add('formType', form.role, when=form.role not in (m.LEMMA, m.WORD_FORM, m.FORM))
    reps = form.representations
    flat = len(reps) == 1 and reps[0].lang_tag is None and reps[0].orth_label is None
    if flat:
        comp.add('writtenForm', reps[0].written_form)
    _features(comp, form.grammar)
    if not flat:
        for rep in reps:
            comp.children.append(
                Component('FormRepresentation')
                .add('writtenForm', rep.written_form)
                .add('language', rep.lang_tag)
                .add('orthographyName', rep.orth_label))
    return comp


def _definition(d: m.AnnotatedText):
    comp = Component('Definition').add('text', d.text)
    for span in d.spans:
        sc = Component('Span').add('start', str(span.start)).add('end', str(span.end))
        sc.add('kind', span.kind)
        for key, value in span.attrs:
            sc.children.append(Component('SpanAttribute').add('name', key).add('value', value))
        comp.children.append(sc)
    return comp


def _quotation(q: m.Quotation):
    comp = Component('Quotation')
    comp.add('quotationType', q.kind).add('text', q.quote.text)
    comp.add('language', q.quote.lang_tag).add('source', q.source_ref)
    _features(comp, q.refinements)
    comp.children.extend(_quotation(sub) for sub in q.sub_quotations)
    return comp


def _behaviour(b: m.SyntacticBehaviour):
    comp = Component('SyntacticBehaviour')
    for frame in b.frames:
        fc = Component('SubcategorizationFrame')
        for arg in frame.arguments:
            ac = Component('SyntacticArgument').add('syntacticFunction', arg.function)
            for col in arg.collocates:
                ac.children.append(Component('Collocate').add('text', col.text)
                                   .add('collocateType', col.kind)
                                   .add('language', col.lang_tag))
            ac.children.extend(_text_component('Gloss', g) for g in arg.glosses)
            if arg.semantic_ref is not None:
                ac.children.append(_ext_ref(arg.semantic_ref))
            fc.children.append(ac)
        comp.children.append(fc)
    return comp


def _sense(s: m.Sense):
    comp = Component('Sense').add('senseNumber', s.label)
    _features(comp, s.grammar)
    comp.children.extend(_definition(d) for d in s.definitions)
    comp.children.extend(_text_component('Gloss', g) for g in s.glosses)
    comp.children.extend(_ext_ref(r) for r in s.external_refs)
    comp.children.extend(_quotation(q) for q in s.quotations)
    comp.children.extend(_behaviour(b) for b in s.syntactic_behaviours)
    comp.children.extend(_sense(sub) for sub in s.subsenses)
    return comp


def _entry(e: m.LexicalEntry):
    comp = Component('LexicalEntry', id=e.id)
    _features(comp, e.entry_grammar)
    if e.lemma is not None:
        comp.children.append(_form(e.lemma))
    comp.children.extend(_form(f) for f in e.other_forms)
    comp.children.extend(_sense(s) for s in e.senses)
    return comp


def lexicon_to_component(lexicon: m.Lexicon) -> Component:
    comp = Component('Lexicon').add('language', lexicon.language)
    comp.children.extend(_entry(e) for e in lexicon.entries)
    return comp


def resource_to_component(resource: m.LexicalResource) -> Component:
    root = Component('LexicalResource')
    info = Component('GlobalInformation')
    _features(info, resource.global_info)
    root.children.append(info)
    root.children.extend(lexicon_to_component(lx) for lx in resource.lexicons)
    return root


# -- components -> model -----------------------------------------------------

class TreeReader:
    """Converts a component tree to the model, collecting findings.

    ``prefix`` is the dialect letter used in rule ids (L, F or X). With
    ``salvage`` set, descriptors of unknown components are kept as features
    of the enclosing component when it has a feature list.
    """

    def __init__(self, prefix: str, salvage: bool = False):
        self.prefix = prefix
        self.salvage = salvage
        self.findings: list[Finding] = []

    def report(self, suffix, path, message):
        self.findings.append(make_finding(f'{self.prefix}-{suffix}', path, message))

    def _split(self, comp, dedicated, multi=(), has_features=True):
        """Route descriptors: single-valued dedicated, multi-valued, rest."""
        single: dict[str, str] = {}
        many: dict[str, list[str]] = {name: [] for name in multi}
        features: list[m.Feature] = []
        for d in comp.descriptors:
            if d.name in many:
                many[d.name].append(d.value)
            elif d.name in dedicated:
                if d.name in single:
                    self.report('DUPLICATE-DESCRIPTOR', d.path,
                                f'{comp.name} repeats {d.name!r}; first value kept')
                else:
                    single[d.name] = d.value
            elif has_features:
                features.append(m.Feature(m.DataCategoryRef(d.name, d.datcat), d.value,
                                          d.value_datcat))
            else:
                self.report('UNSUPPORTED-DESCRIPTOR', d.path,
                            f'{comp.name} has no place for descriptor {d.name!r}')
        return single, many, features

    def _unknown(self, comp, parent_name, features=None):
        self.report('UNKNOWN-COMPONENT', comp.path,
                    f'unexpected component {comp.name!r} in {parent_name}')
        if self.salvage and features is not None:
            for d in comp.descriptors:
                features.append(m.Feature(m.DataCategoryRef(d.name, d.datcat), d.value,
                                          d.value_datcat))

    def _children(self, comp, allowed, features=None):
        for child in comp.children:
            if child.name in allowed:
                yield child
            else:
                self._unknown(child, comp.name, features)

    def _text(self, comp) -> m.LocalizedText:
        single, _, _ = self._split(comp, ('text', 'language'), has_features=False)
        for c in comp.children:
            self._unknown(c, comp.name)
        return m.LocalizedText(single.get('text', ''), single.get('language'))

    def _ext_ref(self, comp) -> m.ExternalRef:
        single, _, _ = self._split(comp, ('externalSystem', 'externalReference'),
                                   has_features=False)
        gloss = None
        for child in self._children(comp, ('Gloss',)):
            if gloss is not None:
                self.report('UNKNOWN-COMPONENT', child.path, 'external reference has a second gloss')
                continue
            gloss = self._text(child)
        return m.ExternalRef(single.get('externalSystem', ''),
                             single.get('externalReference', ''), gloss)

    def _form(self, comp) -> m.Form:
        dedicated = ('formType',) if comp.name == 'Form' else ()
        single, many, features = self._split(comp, dedicated, multi=('writtenForm',))
        reps = [m.FormRepresentation(w) for w in many['writtenForm']]
        for child in self._children(comp, ('FormRepresentation',), features):
            s, _, _ = self._split(child, ('writtenForm', 'language', 'orthographyName'),
                                  has_features=False)
            for c in child.children:
                self._unknown(c, child.name)
            reps.append(m.FormRepresentation(s.get('writtenForm', ''), s.get('language'),
                                             s.get('orthographyName')))
        role = comp.name if comp.name != 'Form' else single.get('formType', m.FORM)
        return m.Form(role, reps, features)

    def _int(self, value, path):
        try:
            return int(value)
        except (TypeError, ValueError):
            self.report('BAD-NUMBER', path, f'{value!r} is not an integer offset')
            return None

    def _definition(self, comp) -> m.AnnotatedText:
        single, _, _ = self._split(comp, ('text',), has_features=False)
        spans = []
        for child in self._children(comp, ('Span',)):
            s, _, _ = self._split(child, ('start', 'end', 'kind'), has_features=False)
            attrs = []
            for attr in self._children(child, ('SpanAttribute',)):
                a, _, _ = self._split(attr, ('name', 'value'), has_features=False)
                attrs.append((a.get('name', ''), a.get('value', '')))
            start = self._int(s.get('start'), child.path)
            end = self._int(s.get('end'), child.path)
            if start is not None and end is not None:
                spans.append(m.Span(start, end, s.get('kind', ''), attrs))
        return m.AnnotatedText(single.get('text', ''), spans)

    def _quotation(self, comp) -> m.Quotation:
        single, _, features = self._split(
            comp, ('quotationType', 'text', 'language', 'source'))
        subs = [self._quotation(c) for c in self._children(comp, ('Quotation',), features)]
        return m.Quotation(single.get('quotationType'),
                           m.LocalizedText(single.get('text', ''), single.get('language')),
                           features, subs, single.get('source'))

    def _collocate(self, comp) -> m.Collocate:
        single, _, _ = self._split(comp, ('text', 'collocateType', 'language'),
                                   has_features=False)
        for c in comp.children:
            self._unknown(c, comp.name)
        return m.Collocate(single.get('text', ''), single.get('collocateType', ''),
                           single.get('language'))

    def _argument(self, comp) -> m.SyntacticArgument:
        single, _, _ = self._split(comp, ('syntacticFunction',), has_features=False)
        collocates, glosses, ref = [], [], None
        for child in self._children(comp, ('Collocate', 'Gloss', 'MonolingualExternalRef')):
            if child.name == 'Collocate':
                collocates.append(self._collocate(child))
            elif child.name == 'Gloss':
                glosses.append(self._text(child))
            elif ref is None:
                ref = self._ext_ref(child)
            else:
                self.report('UNKNOWN-COMPONENT', child.path,
                            'syntactic argument has a second semantic reference')
        return m.SyntacticArgument(single.get('syntacticFunction', ''), collocates,
                                   glosses, ref)

    def _behaviour(self, comp) -> m.SyntacticBehaviour:
        self._split(comp, (), has_features=False)
        frames = []
        for fc in self._children(comp, ('SubcategorizationFrame',)):
            self._split(fc, (), has_features=False)
            frames.append(m.SubcategorizationFrame(
                [self._argument(a) for a in self._children(fc, ('SyntacticArgument',))]))
        return m.SyntacticBehaviour(frames)

    def _sense(self, comp) -> m.Sense:
        single, _, features = self._split(comp, ('senseNumber',))
        parts = {name: [] for name in ('Definition', 'Gloss', 'MonolingualExternalRef',
                                       'Quotation', 'SyntacticBehaviour', 'Sense')}
        for child in self._children(comp, parts, features):
            parts[child.name].append(child)
        return m.Sense(
            label=single.get('senseNumber'),
            grammar=features,
            definitions=[self._definition(c) for c in parts['Definition']],
            glosses=[self._text(c) for c in parts['Gloss']],
            external_refs=[self._ext_ref(c) for c in parts['MonolingualExternalRef']],
            quotations=[self._quotation(c) for c in parts['Quotation']],
            subsenses=[self._sense(c) for c in parts['Sense']],
            syntactic_behaviours=[self._behaviour(c) for c in parts['SyntacticBehaviour']],
        )

    def _entry(self, comp) -> m.LexicalEntry:
        _, _, features = self._split(comp, ())
        lemma, forms, senses = None, [], []
        for child in self._children(comp, FORM_COMPONENTS + ('Sense',), features):
            if child.name == 'Sense':
                senses.append(self._sense(child))
            elif child.name == m.LEMMA and lemma is None:
                lemma = self._form(child)
            else:
                # a second Lemma lands in other_forms and fails validation there
                forms.append(self._form(child))
        return m.LexicalEntry(comp.id, features, lemma, forms, senses)

    def lexicon(self, comp) -> m.Lexicon:
        single, _, _ = self._split(comp, ('language',), has_features=False)
        if 'language' not in single:
            self.report('NO-LANGUAGE', comp.path, 'lexicon declares no language')
        entries = [self._entry(c) for c in self._children(comp, ('LexicalEntry',))]
        return m.Lexicon(single.get('language', ''), entries)

    def resource(self, comp) -> m.LexicalResource:
        self._split(comp, (), has_features=False)
        info, lexicons = [], []
        for child in self._children(comp, ('GlobalInformation', 'Lexicon')):
            if child.name == 'Lexicon':
                lexicons.append(self.lexicon(child))
            else:
                _, _, features = self._split(child, ())
                for c in child.children:
                    self._unknown(c, child.name, features)
                info.extend(features)
        return m.LexicalResource(info, lexicons)


def component_to_resource(root: Component, prefix: str,
                          salvage: bool = False) -> tuple[m.LexicalResource, list[Finding]]:
    reader = TreeReader(prefix, salvage)
    resource = reader.resource(root)
    return resource, reader.findings
