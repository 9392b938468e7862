"""TEI *Dictionaries* serialization with the LMF syntax extension.

Emission rules worth knowing before reading the code:

* ``<form type="lemma">`` carries the entry-level grammar (part of speech) in
  its untyped grammar block; parsing moves it back to the entry. Grammar that
  belongs to the lemma form itself goes in a block typed ``form``
  (``<gramGrp type="form">`` or ``<fs type="formGrammar">``).
* Empty grammar is never written as an empty ``<gramGrp>``.
* Every semantic element sits inside ``<sense>``, even for a single sense.
* ``usageDomain`` features of senses and quotations become ``<usg>``.
* Syntactic behaviour lives in the LMF namespace, anchored inside ``<sense>``.

By default a resource with one entry is written as a bare ``<entry>``, and
larger ones as ``<div type="lexicon" xml:lang="...">`` fragments; neither
carries global information. ``wrap=True`` writes a full ``<TEI>`` document
that holds everything.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from . import model as m
from .errors import DialectError, MappingError
from .findings import Finding, make_finding
from .mapping import (argument_children, category_from_fs_name, fs_feature_name,
                      grammar_elements, grammar_mapping, map_tei_to_descriptor)
from .xmlcore import (DCR_NS, E, QName, TEI_NS, XML_ID, XML_LANG, XML_NS, XmlNode,
                      child_paths, lmf, root_path, tei)

DATCAT = QName(DCR_NS, 'datcat')
VALUE_DATCAT = QName(DCR_NS, 'valueDatcat')

USAGE_DOMAIN = 'usageDomain'
UNDETERMINED = 'und'

FORM_TYPES = {m.LEMMA: 'lemma', m.WORD_FORM: 'inflected'}
ROLES = {v: k for k, v in FORM_TYPES.items()}
TRANSIENT = {'entryFree', 'dictScrap', 'superEntry', 'hom'}
SENSE_CONTENT = {'def', 'cit', 'usg'}

# mixed content: never re-indent inside these
VERBATIM = frozenset({tei('def'), tei('quote'), tei('q')})

GRAMGRP = tei('gramGrp')
FS = tei('fs')
F = tei('f')
USG = tei('usg')


class GrammarStyle(str, Enum):
    GRAM_GRP = 'gramgrp'
    FEATURE_STRUCTURE = 'fs'


@dataclass(frozen=True)
class TeiEmitOptions:
    grammar_style: GrammarStyle = GrammarStyle.GRAM_GRP
    emit_dcr_attrs: bool = False
    wrap: bool = False
    title: str = 'Lexical resource'


def _span_attr_name(key: str) -> QName:
    if key.startswith('xml:'):
        return QName(XML_NS, key[4:])
    if key.startswith('{'):
        ns, _, local = key[1:].partition('}')
        return QName(ns, local)
    return QName('', key)


def _span_attr_key(name: QName) -> str:
    if name.ns == XML_NS:
        return f'xml:{name.local}'
    return str(name)


class _Emitter:

    def __init__(self, opts: TeiEmitOptions):
        self.opts = opts

    def dcr(self, feat: m.Feature):
        if not self.opts.emit_dcr_attrs:
            return {}
        return {DATCAT: feat.category.registry_id, VALUE_DATCAT: feat.value_registry_id}

    def grammar_item(self, feat: m.Feature) -> XmlNode:
        if self.opts.grammar_style is GrammarStyle.FEATURE_STRUCTURE:
            return E(F, {'name': fs_feature_name(feat.name), **self.dcr(feat)}, feat.value)
        mapping = grammar_mapping(feat.name)
        attrs = {'type': feat.name} if mapping.is_generic else {}
        return E(tei(mapping.tei_element), {**attrs, **self.dcr(feat)}, feat.value)

    def block(self, features, usg=False, form_typed=False) -> list[XmlNode]:
        """Grammar blocks for ``features``; with ``usg``, usage domains break
        the run and become ``<usg>`` so that source order survives."""
        out, run = [], []

        def flush():
            if not run:
                return
            if self.opts.grammar_style is GrammarStyle.FEATURE_STRUCTURE:
                kind = 'formGrammar' if form_typed else 'grammar'
                out.append(E(FS, {'type': kind}, list(run)))
            else:
                out.append(E(GRAMGRP, {'type': 'form' if form_typed else None}, list(run)))
            run.clear()

        for feat in features:
            if usg and feat.name == USAGE_DOMAIN:
                flush()
                out.append(E(USG, self.dcr(feat), feat.value))
            else:
                run.append(self.grammar_item(feat))
        flush()
        return out

    def form(self, form: m.Form, entry_grammar=()) -> XmlNode:
        orths = [E(tei('orth'), {'type': r.orth_label, XML_LANG: r.lang_tag}, r.written_form)
                 for r in form.representations]
        if form.role == m.LEMMA:
            blocks = self.block(entry_grammar) + self.block(form.grammar, form_typed=True)
        else:
            blocks = self.block(form.grammar)
        kind = None if form.role == m.FORM else FORM_TYPES.get(form.role, form.role)
        return E(tei('form'), {'type': kind}, orths, blocks)

    def annotated(self, name: QName, text: m.AnnotatedText) -> XmlNode:
        spans = text.spans

        def inline(start, end, i):
            out, pos = [], start
            while i < len(spans) and spans[i].start >= pos and spans[i].end <= end:
                span = spans[i]
                out.append(text.text[pos:span.start])
                inner, i = inline(span.start, span.end, i + 1)
                attrs = [(_span_attr_name(k), v) for k, v in span.attrs]
                out.append(E(tei(span.kind), attrs, inner))
                pos = span.end
            out.append(text.text[pos:end])
            return out, i

        children, _ = inline(0, len(text.text), 0)
        return E(name, None, children)

    def gloss(self, text: m.LocalizedText) -> XmlNode:
        return E(tei('gloss'), {XML_LANG: text.lang_tag}, text.text)

    def ref(self, ref: m.ExternalRef) -> XmlNode:
        return E(tei('ref'), {'type': ref.scheme}, E(tei('idno'), None, ref.idno),
                 self.gloss(ref.gloss) if ref.gloss is not None else None)

    def cit(self, q: m.Quotation) -> XmlNode:
        return E(tei('cit'), {'type': q.kind, XML_LANG: q.quote.lang_tag},
                 E(tei('quote'), None, q.quote.text),
                 self.block(q.refinements, usg=True),
                 E(tei('bibl'), None, q.source_ref) if q.source_ref is not None else None,
                 [self.cit(sub) for sub in q.sub_quotations])

    def argument(self, arg: m.SyntacticArgument) -> XmlNode:
        return E(lmf('syntacticArgument'), None,
                 E(lmf('syntacticFunction'), None, arg.function),
                 [E(tei('colloc'), {'type': c.kind, XML_LANG: c.lang_tag}, c.text)
                  for c in arg.collocates],
                 [self.gloss(g) for g in arg.glosses],
                 self.ref(arg.semantic_ref) if arg.semantic_ref is not None else None)

    def behaviour(self, b: m.SyntacticBehaviour) -> XmlNode:
        return E(lmf('syntacticBehaviour'), None,
                 [E(lmf('subcategorizationFrame'), None, [self.argument(a) for a in f.arguments])
                  for f in b.frames])

    def sense(self, s: m.Sense) -> XmlNode:
        return E(tei('sense'), {'n': s.label},
                 self.block(s.grammar, usg=True),
                 [self.annotated(tei('def'), d) for d in s.definitions],
                 [self.gloss(g) for g in s.glosses],
                 [self.ref(r) for r in s.external_refs],
                 [self.cit(q) for q in s.quotations],
                 [self.behaviour(b) for b in s.syntactic_behaviours],
                 [self.sense(sub) for sub in s.subsenses])

    def entry(self, e: m.LexicalEntry) -> XmlNode:
        if e.lemma is not None:
            head = [self.form(e.lemma, e.entry_grammar)]
        else:
            head = self.block(e.entry_grammar)
        return E(tei('entry'), {XML_ID: e.id}, head,
                 [self.form(f) for f in e.other_forms],
                 [self.sense(s) for s in e.senses])

    def lexicon(self, lexicon: m.Lexicon) -> XmlNode:
        return E(tei('div'), {'type': 'lexicon', XML_LANG: lexicon.language},
                 [self.entry(e) for e in lexicon.entries])

    def header(self, resource: m.LexicalResource) -> XmlNode:
        info = None
        if resource.global_info:
            info = E(tei('encodingDesc'), None,
                     E(FS, {'type': 'GlobalInformation'},
                       [E(F, {'name': f.name, **self.dcr(f)}, f.value)
                        for f in resource.global_info]))
        return E(tei('teiHeader'), None,
                 E(tei('fileDesc'), None,
                   E(tei('titleStmt'), None, E(tei('title'), None, self.opts.title)),
                   E(tei('publicationStmt'), None, E(tei('p'), None, 'Unpublished.')),
                   E(tei('sourceDesc'), None,
                     E(tei('p'), None, 'Converted from an LMF lexical resource.'))),
                 info)

    def document(self, resource: m.LexicalResource) -> XmlNode:
        return E(tei('TEI'), None, self.header(resource),
                 E(tei('text'), None,
                   E(tei('body'), None, [self.lexicon(lx) for lx in resource.lexicons])))


def emit_tei(resource: m.LexicalResource, opts: TeiEmitOptions = TeiEmitOptions()) -> XmlNode:
    em = _Emitter(opts)
    if opts.wrap:
        return em.document(resource)
    entries = [e for lx in resource.lexicons for e in lx.entries]
    if len(resource.lexicons) == 1 and len(entries) == 1:
        return em.entry(entries[0])
    divs = [em.lexicon(lx) for lx in resource.lexicons]
    return divs[0] if len(divs) == 1 else E(tei('body'), None, divs)


def emit_entry(entry: m.LexicalEntry, opts: TeiEmitOptions = TeiEmitOptions()) -> XmlNode:
    return _Emitter(opts).entry(entry)


def emit_form(form: m.Form, opts: TeiEmitOptions = TeiEmitOptions()) -> XmlNode:
    return _Emitter(opts).form(form)


def emit_sense(sense: m.Sense, opts: TeiEmitOptions = TeiEmitOptions()) -> XmlNode:
    return _Emitter(opts).sense(sense)


def emit_quotation(quotation: m.Quotation, opts: TeiEmitOptions = TeiEmitOptions()) -> XmlNode:
    return _Emitter(opts).cit(quotation)


def loss_notes(resource: m.LexicalResource, opts: TeiEmitOptions = TeiEmitOptions()) -> list[str]:
    """What ``emit_tei`` with ``opts`` cannot carry for this resource."""
    notes = []
    if not opts.wrap:
        if resource.global_info:
            notes.append('global information is not carried by a TEI fragment (use wrapping)')
        entries = sum(len(lx.entries) for lx in resource.lexicons)
        if len(resource.lexicons) == 1 and entries == 1 \
                and resource.lexicons[0].language != UNDETERMINED:
            notes.append(f'lexicon language {resource.lexicons[0].language!r} is not carried '
                         'by a bare <entry> (use wrapping)')
    if not opts.emit_dcr_attrs and m.has_registry_ids(resource):
        notes.append('data category registry identifiers dropped (enable dcr attributes)')
    return notes


# -- parsing -----------------------------------------------------------------

def _is_block(node: XmlNode) -> bool:
    return node.name == GRAMGRP or (node.name == FS and node.get('type') in ('grammar', 'formGrammar'))


def _is_form_typed(node: XmlNode) -> bool:
    return node.get('type') == ('form' if node.name == GRAMGRP else 'formGrammar')


def _is_grammar_element(node: XmlNode) -> bool:
    return node.name.ns == TEI_NS and node.name.local in grammar_elements()


class _Parser:

    def __init__(self, gloss_as_translation: bool):
        self.gloss_as_translation = gloss_as_translation
        self.findings: list[Finding] = []
        self.global_info: list[m.Feature] = []
        self.lexicons: list[list] = []   # [language, entries]
        self.implicit: Optional[list] = None
        self.seen_lexicon = False

    def report(self, rule_id, path, message):
        self.findings.append(make_finding(rule_id, path, message))

    def unsupported(self, node, path, where):
        self.report('T-UNSUPPORTED-ELEMENT', path, f'<{node.name.local}> in {where} is not converted')

    # grammar

    def feature(self, node: XmlNode, path: str) -> Optional[m.Feature]:
        if node.name == F:
            name = category_from_fs_name(node.get('name', ''))
        elif node.name == USG:
            name = USAGE_DOMAIN
        else:
            try:
                name = map_tei_to_descriptor(node.name.local, node.get('type')).name
            except MappingError as exc:
                self.report('T-BAD-GRAMMAR', path, str(exc))
                return None
        return m.Feature(m.DataCategoryRef(name, node.get(DATCAT)), node.text(),
                         node.get(VALUE_DATCAT))

    def block(self, node: XmlNode, path: str) -> list[m.Feature]:
        out = []
        for child, cpath in child_paths(node, path):
            if child.name == GRAMGRP:
                out.extend(self.block(child, cpath))
                continue
            feat = self.feature(child, cpath)
            if feat is not None:
                out.append(feat)
        return out

    # text-bearing elements

    def annotated(self, node: XmlNode, path: str) -> m.AnnotatedText:
        parts: list[str] = []
        spans: list = []
        pos = 0

        def visit(n, npath):
            nonlocal pos
            counts: dict = {}
            for child in n.children:
                if isinstance(child, str):
                    parts.append(child)
                    pos += len(child)
                    continue
                counts[child.name] = counts.get(child.name, 0) + 1
                cpath = f'{npath}/{child.name.local}[{counts[child.name]}]'
                start, slot = pos, len(spans)
                spans.append(None)
                visit(child, cpath)
                if pos == start:
                    self.report('T-EMPTY-INLINE', cpath,
                                f'empty <{child.name.local}> cannot be kept as a span')
                    continue
                spans[slot] = m.Span(start, pos, child.name.local,
                                     [(_span_attr_key(k), v) for k, v in child.attrs])

        visit(node, path)
        return m.AnnotatedText(''.join(parts), [s for s in spans if s is not None])

    def localized(self, node: XmlNode) -> m.LocalizedText:
        return m.LocalizedText(node.text(), node.get(XML_LANG))

    def ref(self, node: XmlNode, path: str) -> m.ExternalRef:
        idno, gloss = None, None
        for child, cpath in child_paths(node, path):
            if child.name == tei('idno') and idno is None:
                idno = child.text()
            elif child.name == tei('gloss') and gloss is None:
                gloss = self.localized(child)
            else:
                self.unsupported(child, cpath, '<ref>')
        return m.ExternalRef(node.get('type', ''), idno or '', gloss)

    def cit(self, node: XmlNode, path: str) -> m.Quotation:
        lang = node.get(XML_LANG)
        quote, source = None, None
        refinements, subs = [], []
        for child, cpath in child_paths(node, path):
            if child.name in (tei('quote'), tei('q')) and quote is None:
                quote = child.text()
                if lang is None:
                    lang = child.get(XML_LANG)
            elif _is_block(child):
                refinements.extend(self.block(child, cpath))
            elif child.name == USG or _is_grammar_element(child):
                feat = self.feature(child, cpath)
                if feat is not None:
                    refinements.append(feat)
            elif child.name == tei('bibl') and source is None:
                source = child.text()
            elif child.name == tei('cit'):
                subs.append(self.cit(child, cpath))
            else:
                self.unsupported(child, cpath, '<cit>')
        if quote is None:
            self.report('T-MISSING-QUOTE', path, '<cit> has no <quote>')
        return m.Quotation(node.get('type'), m.LocalizedText(quote or '', lang),
                           refinements, subs, source)

    # syntax extension

    def argument(self, node: XmlNode, path: str) -> m.SyntacticArgument:
        allowed = argument_children()
        function, ref = None, None
        collocates, glosses = [], []
        for child, cpath in child_paths(node, path):
            if child.name not in allowed:
                self.report('T-UNKNOWN-ARG-CHILD', cpath,
                            f'<{child.name.local}> is not admitted in a syntactic argument')
            elif child.name == lmf('syntacticFunction') and function is None:
                function = child.text()
            elif child.name == tei('colloc'):
                collocates.append(m.Collocate(child.text(), child.get('type', ''),
                                              child.get(XML_LANG)))
            elif child.name == tei('gloss'):
                glosses.append(self.localized(child))
            elif child.name == tei('ref') and ref is None:
                ref = self.ref(child, cpath)
            else:
                self.report('T-UNKNOWN-ARG-CHILD', cpath,
                            f'repeated <{child.name.local}> in a syntactic argument')
        return m.SyntacticArgument(function or '', collocates, glosses, ref)

    def behaviour(self, node: XmlNode, path: str) -> m.SyntacticBehaviour:
        frames = []
        for child, cpath in child_paths(node, path):
            if child.name != lmf('subcategorizationFrame'):
                self.unsupported(child, cpath, '<lmf:syntacticBehaviour>')
                continue
            args = []
            for arg, apath in child_paths(child, cpath):
                if arg.name == lmf('syntacticArgument'):
                    args.append(self.argument(arg, apath))
                else:
                    self.unsupported(arg, apath, '<lmf:subcategorizationFrame>')
            frames.append(m.SubcategorizationFrame(args))
        return m.SyntacticBehaviour(frames)

    # structure

    def sense(self, node: XmlNode, path: str, lexicon_lang: str) -> m.Sense:
        grammar, defs, glosses, refs, quotes, subs, behaviours = [], [], [], [], [], [], []
        for child, cpath in child_paths(node, path):
            name = child.name
            if _is_block(child):
                grammar.extend(self.block(child, cpath))
            elif name == USG or _is_grammar_element(child):
                feat = self.feature(child, cpath)
                if feat is not None:
                    grammar.append(feat)
            elif name == tei('def'):
                defs.append(self.annotated(child, cpath))
            elif name == tei('gloss'):
                text = self.localized(child)
                if (self.gloss_as_translation and text.lang_tag
                        and lexicon_lang not in ('', UNDETERMINED)
                        and text.lang_tag != lexicon_lang):
                    self.report('T-GLOSS-AS-TRANSLATION', cpath,
                                f'gloss in {text.lang_tag!r} read as a translation')
                    quotes.append(m.Quotation(m.TRANSLATION, text))
                else:
                    glosses.append(text)
            elif name == tei('ref'):
                refs.append(self.ref(child, cpath))
            elif name == tei('cit'):
                quotes.append(self.cit(child, cpath))
            elif name == lmf('syntacticBehaviour'):
                behaviours.append(self.behaviour(child, cpath))
            elif name == tei('sense'):
                subs.append(self.sense(child, cpath, lexicon_lang))
            else:
                self.unsupported(child, cpath, '<sense>')
        return m.Sense(node.get('n'), grammar, defs, glosses, refs, quotes, subs, behaviours)

    def form(self, node: XmlNode, path: str, role: str, entry_grammar: Optional[list]) -> m.Form:
        """``entry_grammar`` is given for the lemma: its untyped grammar
        blocks belong to the entry."""
        reps, grammar = [], []
        for child, cpath in child_paths(node, path):
            if child.name == tei('orth'):
                reps.append(m.FormRepresentation(child.text(), child.get(XML_LANG),
                                                 child.get('type')))
            elif _is_block(child) or _is_grammar_element(child):
                feats = (self.block(child, cpath) if _is_block(child)
                         else [f for f in [self.feature(child, cpath)] if f is not None])
                relocated = entry_grammar is not None and not (_is_block(child) and _is_form_typed(child))
                (entry_grammar if relocated else grammar).extend(feats)
            else:
                self.unsupported(child, cpath, '<form>')
        return m.Form(role, reps, grammar)

    def entry(self, node: XmlNode, path: str, lexicon_lang: str) -> m.LexicalEntry:
        entry_grammar, forms, senses, adopted = [], [], [], []
        lemma = None
        typed_lemma = any(c.name == tei('form') and c.get('type') == 'lemma'
                          for c in node.elements())
        for child, cpath in child_paths(node, path):
            name = child.name
            if name == tei('form'):
                kind = child.get('type')
                if kind is None:
                    if lemma is None and not typed_lemma:
                        role = m.LEMMA
                        self.report('T-UNTYPED-FORM', cpath, 'untyped <form> taken as the lemma')
                    else:
                        role = m.FORM
                else:
                    role = ROLES.get(kind, kind)
                primary = role == m.LEMMA and lemma is None
                form = self.form(child, cpath, role, entry_grammar if primary else None)
                if primary:
                    lemma = form
                else:
                    forms.append(form)
            elif _is_block(child):
                entry_grammar.extend(self.block(child, cpath))
            elif _is_grammar_element(child):
                feat = self.feature(child, cpath)
                if feat is not None:
                    entry_grammar.append(feat)
            elif name == tei('sense'):
                senses.append(self.sense(child, cpath, lexicon_lang))
            elif name.ns == TEI_NS and name.local in SENSE_CONTENT:
                adopted.append((child, cpath))
            else:
                self.unsupported(child, cpath, '<entry>')
        if adopted:
            self.report('T-IMPLICIT-SENSE', adopted[0][1],
                        'sense content directly under <entry> adopted into a new <sense>')
            synthetic = XmlNode(tei('sense'), (), tuple(c for c, _ in adopted))
            senses.insert(0, self.sense(synthetic, f'{path}/sense[0]', lexicon_lang))
        return m.LexicalEntry(node.get(XML_ID), entry_grammar, lemma, forms, senses)

    def header(self, node: XmlNode, path: str):
        for n in node.iter():
            if n.name == FS and n.get('type') == 'GlobalInformation':
                for f in n.elements():
                    if f.name == F:
                        self.global_info.append(m.Feature(
                            m.DataCategoryRef(f.get('name', ''), f.get(DATCAT)), f.text(),
                            f.get(VALUE_DATCAT)))

    def walk(self, node: XmlNode, path: str, lang: Optional[str], lexicon: Optional[list]):
        lang = node.get(XML_LANG, lang)
        name = node.name
        if name.ns == TEI_NS and name.local in TRANSIENT:
            self.report('T-TRANSIENT-CONSTRUCT', path,
                        f'<{name.local}> is not converted; only <entry> maps to LexicalEntry')
            return
        if name == tei('entry'):
            if lexicon is None:
                if self.implicit is None:
                    self.implicit = [lang or UNDETERMINED, []]
                    self.lexicons.append(self.implicit)
                lexicon = self.implicit
            lexicon[1].append(self.entry(node, path, lexicon[0]))
            return
        if name == tei('teiHeader'):
            self.header(node, path)
            return
        if name == tei('div') and node.get('type') == 'lexicon':
            self.seen_lexicon = True
            lexicon = [lang or UNDETERMINED, []]
            self.lexicons.append(lexicon)
        for child, cpath in child_paths(node, path):
            self.walk(child, cpath, lang, lexicon)


def parse_tei(doc: XmlNode, gloss_as_translation: bool = False
              ) -> tuple[m.LexicalResource, list[Finding]]:
    """Read entries anywhere under ``doc`` (a bare ``<entry>``, a lexicon
    ``<div>``, or a full ``<TEI>`` document).

    With ``gloss_as_translation``, a bare ``<gloss>`` directly in ``<sense>``
    whose language differs from a known lexicon language is read as a
    translation quotation.
    """
    if doc.name.ns != TEI_NS:
        raise DialectError(f'TEI root must be in the TEI namespace, not {doc.name}')
    parser = _Parser(gloss_as_translation)
    parser.walk(doc, root_path(doc), None, None)
    if not parser.lexicons:
        raise DialectError('no <entry> found in TEI document')
    lexicons = [m.Lexicon(lang, entries) for lang, entries in parser.lexicons]
    return m.LexicalResource(parser.global_info, lexicons), parser.findings
