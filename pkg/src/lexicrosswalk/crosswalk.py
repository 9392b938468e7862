"""Dialect-to-dialect conversion through the lexicon model."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from . import model as m
from .errors import UnrepresentableError
from .findings import Finding, has_errors, sort_findings
from .fs import emit_fs, emit_mixed, parse_fs, parse_mixed
from .legacy import LegacyDialectOptions, emit_legacy_lmf, parse_legacy_lmf
from .tei import GrammarStyle, TeiEmitOptions, VERBATIM, emit_tei, loss_notes, parse_tei
from .xmlcore import XmlNode, parse_xml, serialize_xml


class Dialect(str, Enum):
    LEGACY_LMF = 'legacy-lmf'
    FS = 'fs'
    MIXED = 'mixed'
    TEI = 'tei'


@dataclass(frozen=True)
class ConvertOptions:
    grammar_style: GrammarStyle = GrammarStyle.GRAM_GRP
    emit_dcr_attrs: bool = False
    wrap_tei: bool = False
    indent: int = 2
    prefixes: Optional[dict] = None

    def tei(self) -> TeiEmitOptions:
        return TeiEmitOptions(self.grammar_style, self.emit_dcr_attrs, self.wrap_tei)


# what the round-trip harness uses: nothing that a dialect can carry is dropped
LOSSLESS = ConvertOptions(emit_dcr_attrs=True, wrap_tei=True, indent=0)


@dataclass
class ConversionReport:
    input: Dialect
    output: Dialect
    parse_findings: list[Finding] = field(default_factory=list)
    emit_loss_notes: list[str] = field(default_factory=list)
    ok: bool = True
    error: Optional[str] = None


@dataclass(frozen=True)
class RoundtripResult:
    ok: bool
    diagnosis: Optional[str] = None


def parse_document(doc: XmlNode, dialect: Dialect) -> tuple[m.LexicalResource, list[Finding]]:
    dialect = Dialect(dialect)
    if dialect is Dialect.LEGACY_LMF:
        return parse_legacy_lmf(doc)
    if dialect is Dialect.FS:
        return parse_fs(doc)
    if dialect is Dialect.MIXED:
        return parse_mixed(doc)
    return parse_tei(doc)


def emit_document(resource: m.LexicalResource, dialect: Dialect,
                  opts: ConvertOptions = ConvertOptions()) -> XmlNode:
    dialect = Dialect(dialect)
    if dialect is Dialect.LEGACY_LMF:
        return emit_legacy_lmf(resource, LegacyDialectOptions(opts.emit_dcr_attrs))
    if dialect is Dialect.FS:
        return emit_fs(resource)
    if dialect is Dialect.MIXED:
        return emit_mixed(resource)
    return emit_tei(resource, opts.tei())


def emit_loss_notes(resource: m.LexicalResource, dialect: Dialect,
                    opts: ConvertOptions = ConvertOptions()) -> list[str]:
    dialect = Dialect(dialect)
    if dialect is Dialect.TEI:
        return loss_notes(resource, opts.tei())
    notes = []
    if dialect is Dialect.LEGACY_LMF:
        if m.has_spans(resource):
            notes.append('inline annotations of definitions dropped (legacy LMF keeps plain text)')
        if not opts.emit_dcr_attrs and m.has_registry_ids(resource):
            notes.append('data category registry identifiers dropped (enable dcr attributes)')
    return notes


def serialize(node: XmlNode, opts: ConvertOptions = ConvertOptions()) -> bytes:
    return serialize_xml(node, indent=opts.indent, prefixes=opts.prefixes,
                         xml_declaration=True, verbatim=VERBATIM) + b'\n'


def convert(doc: bytes, source: Dialect, target: Dialect,
            opts: ConvertOptions = ConvertOptions()) -> tuple[Optional[bytes], ConversionReport]:
    """Parse, check and re-emit. Parse and dialect errors propagate; a model
    the target cannot represent yields no output and ``ok=False``."""
    source, target = Dialect(source), Dialect(target)
    report = ConversionReport(source, target)
    resource, findings = parse_document(parse_xml(doc), source)
    report.parse_findings = sort_findings(findings + m.validate_model(resource))
    report.emit_loss_notes = emit_loss_notes(resource, target, opts)
    try:
        out = serialize(emit_document(resource, target, opts), opts)
    except UnrepresentableError as exc:
        report.ok = False
        report.error = f'unrepresentable in {target.value}: {exc}'
        return None, report
    report.ok = not has_errors(report.parse_findings)
    return out, report


def _through(resource: m.LexicalResource, dialect: Dialect) -> m.LexicalResource:
    data = serialize(emit_document(resource, dialect, LOSSLESS), LOSSLESS)
    return parse_document(parse_xml(data), dialect)[0]


def roundtrip_check(doc: bytes, source: Dialect, via: Dialect) -> RoundtripResult:
    """Does ``via`` preserve the model read from ``doc``?"""
    source, via = Dialect(source), Dialect(via)
    original, _ = parse_document(parse_xml(doc), source)
    try:
        back = _through(_through(original, via), source)
    except UnrepresentableError as exc:
        return RoundtripResult(False, f'unrepresentable in {via.value}: {exc}')
    where = m.first_divergence(original, back)
    if where is None:
        return RoundtripResult(True)
    return RoundtripResult(False, f'model diverges at {where}')
