"""Crosswalks between LMF lexicon serializations and TEI dictionaries.

Every dialect is read into and written from one model
(:mod:`lexicrosswalk.model`); :func:`convert` chains a reader and a writer.
"""

from .crosswalk import (ConversionReport, ConvertOptions, Dialect, RoundtripResult,
                        convert, emit_document, parse_document, roundtrip_check)
from .errors import (CrosswalkError, DialectError, EncodingError, MappingError, ParseError,
                     PrefixError, StructureError, UnrepresentableError)
from .findings import Finding, Severity
from .tei import GrammarStyle, TeiEmitOptions, emit_tei, parse_tei
from .validator import rule_catalogue, validate_tei_document
from .xmlcore import canonical_equal, parse_xml, serialize_xml

__version__ = '0.1.0'
