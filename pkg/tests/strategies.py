"""Hypothesis strategies for model-valid lexical resources."""

from hypothesis import strategies as st

from lexicrosswalk.model import (EXAMPLE, FORM, LEMMA, RESERVED_NAMES, TRANSLATION, WORD_FORM,
                                 AnnotatedText, Collocate, DataCategoryRef, ExternalRef, Feature,
                                 Form, FormRepresentation, LexicalEntry, LexicalResource, Lexicon,
                                 LocalizedText, Quotation, Sense, Span, SubcategorizationFrame,
                                 SyntacticArgument, SyntacticBehaviour)

_RESERVED = set().union(*RESERVED_NAMES.values())

# characters XML 1.0 can carry, tab/newline/CR included
xml_char = st.characters(blacklist_categories=('Cs', 'Cc', 'Cn'), whitelist_characters='\t\n\r')
text = st.text(xml_char, min_size=1, max_size=12)
opt_text = st.none() | text

identifier = st.from_regex(r'[A-Za-z][A-Za-z0-9]{0,8}', fullmatch=True)

# names that exercise the dedicated elements, the generic fallback and its escape
category_name = (st.sampled_from(['partOfSpeech', 'grammaticalNumber', 'grammaticalGender',
                                  'subcategorization', 'usageDomain', 'pos', 'number', 'gram',
                                  'gram:pos', 'writtenForm', 'mood'])
                 | identifier).filter(lambda n: n not in _RESERVED)

registry_id = st.none() | st.from_regex(r'http://www\.isocat\.org/datcat/DC-[0-9]{1,5}',
                                        fullmatch=True)

feature = st.builds(Feature, st.builds(DataCategoryRef, category_name, registry_id), text,
                    registry_id)
features = st.lists(feature, max_size=3)

lang = st.none() | st.sampled_from(['en', 'fr', 'ko', 'ko-Latn', 'ja', 'de-CH'])
localized = st.builds(LocalizedText, text, lang)

representation = st.builds(FormRepresentation, text, lang, st.none() | identifier)
other_role = st.sampled_from([WORD_FORM, FORM]) | identifier.filter(
    lambda r: r not in (LEMMA, 'lemma', 'inflected'))


def forms(role):
    return st.builds(Form, role, st.lists(representation, min_size=1, max_size=3), features)


@st.composite
def annotated_text(draw):
    """Text with properly nested, non-empty spans in document order."""
    parts, spans = [], []
    pos = 0

    def fill(depth):
        nonlocal pos
        for _ in range(draw(st.integers(1, 3))):
            if depth < 3 and draw(st.booleans()):
                start, slot = pos, len(spans)
                spans.append(None)
                fill(depth + 1)
                attrs = draw(st.dictionaries(st.sampled_from(['rend', 'ref', 'xml:lang']),
                                             text, max_size=2))
                spans[slot] = Span(start, pos, draw(identifier), attrs)
            else:
                chunk = draw(text)
                parts.append(chunk)
                pos += len(chunk)

    fill(0)
    return AnnotatedText(''.join(parts), spans)


external_ref = st.builds(ExternalRef, identifier, st.from_regex(r'[0-9]{1,10}', fullmatch=True),
                         st.none() | localized)

quotation = st.recursive(
    st.builds(Quotation, st.sampled_from([EXAMPLE, TRANSLATION, None, 'proverb']), localized,
              features, st.just(()), st.none() | text),
    lambda inner: st.builds(Quotation, st.sampled_from([EXAMPLE, TRANSLATION, None]), localized,
                            features, st.lists(inner, min_size=1, max_size=2), st.none() | text),
    max_leaves=3)

argument = st.builds(SyntacticArgument, text,
                     st.lists(st.builds(Collocate, text, identifier, lang), max_size=2),
                     st.lists(localized, max_size=2), st.none() | external_ref)
behaviour = st.builds(SyntacticBehaviour, st.lists(
    st.builds(SubcategorizationFrame, st.lists(argument, min_size=1, max_size=2)),
    min_size=1, max_size=2))

sense = st.recursive(
    st.builds(Sense, st.none() | text, features, st.lists(annotated_text(), max_size=2),
              st.lists(localized, max_size=2), st.lists(external_ref, max_size=2),
              st.lists(quotation, max_size=2), st.just(()), st.lists(behaviour, max_size=1)),
    lambda inner: st.builds(Sense, st.none() | text, features, st.just(()), st.just(()),
                            st.just(()), st.just(()), st.lists(inner, min_size=1, max_size=2)),
    max_leaves=4)


@st.composite
def entry(draw, entry_id=None):
    return LexicalEntry(entry_id, draw(features), draw(forms(st.just(LEMMA))),
                        draw(st.lists(forms(other_role), max_size=2)),
                        draw(st.lists(sense, max_size=2)))


@st.composite
def resources(draw):
    n_lexicons = draw(st.integers(1, 3))
    counter = iter(range(1000))
    lexicons = []
    for _ in range(n_lexicons):
        entries = [draw(entry(f'e{next(counter)}' if draw(st.booleans()) else None))
                   for _ in range(draw(st.integers(0, 2)))]
        lexicons.append(Lexicon(draw(st.sampled_from(['en', 'fr', 'ko', 'und'])), entries))
    return LexicalResource(draw(features), lexicons)
