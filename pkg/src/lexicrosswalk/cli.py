"""Command-line front end: ``lexicrosswalk convert|validate|roundtrip``.

Exit codes: 0 success, 1 error findings or unrepresentable content,
2 usage or I/O error, 3 malformed input. A batch exits with the highest code
of its files; per-file reports follow argument order.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .crosswalk import ConvertOptions, Dialect, convert, roundtrip_check
from .errors import CrosswalkError, DialectError, ParseError, PrefixError, StructureError
from .findings import format_text, has_errors
from .tei import GrammarStyle
from .validator import rule_catalogue, validate_tei_document
from .xmlcore import parse_xml

OK, FINDINGS, USAGE, MALFORMED = 0, 1, 2, 3

PREFIXES_ENV = 'LEXICROSSWALK_PREFIXES'

DIALECTS = [d.value for d in Dialect]


class UsageError(Exception):
    pass


def env_prefixes(environ=os.environ) -> dict:
    """``nsUri=prefix`` pairs separated by whitespace or commas."""
    out = {}
    for item in re.split(r'[\s,]+', environ.get(PREFIXES_ENV, '').strip()):
        if not item:
            continue
        uri, sep, prefix = item.rpartition('=')
        if not sep or not uri or not re.fullmatch(r'[A-Za-z_][\w.-]*', prefix):
            raise UsageError(f'{PREFIXES_ENV}: bad entry {item!r} (want nsUri=prefix)')
        out[uri] = prefix
    return out


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f'{path}: {exc.strerror or exc}') from None


def _output_path(path: str, target: str) -> Path:
    p = Path(path)
    stem = p.name[:-4] if p.name.endswith('.xml') else p.name
    return p.with_name(f'{stem}.{target}.xml')


def _guard(path, job):
    """Run ``job`` and turn failures into (code, stdout text, stderr text)."""
    try:
        return job()
    except UsageError as exc:
        return USAGE, '', f'{exc}\n'
    except (ParseError, DialectError, StructureError) as exc:
        return MALFORMED, '', f'{path}: {type(exc).__name__}: {exc}\n'
    except PrefixError as exc:
        return USAGE, '', f'{path}: {exc}\n'
    except CrosswalkError as exc:
        return FINDINGS, '', f'{path}: {type(exc).__name__}: {exc}\n'


def _batch(inputs, job):
    with ThreadPoolExecutor(max_workers=min(8, len(inputs)) or 1) as pool:
        results = list(pool.map(lambda p: _guard(p, lambda: job(p)), inputs))
    code = OK
    for status, out, err in results:
        sys.stdout.write(out)
        sys.stderr.write(err)
        code = max(code, status)
    return code


# -- convert -----------------------------------------------------------------

def cmd_convert(args) -> int:
    if args.out is not None and len(args.inputs) > 1:
        raise UsageError('--out needs a single input')
    opts = ConvertOptions(
        grammar_style=GrammarStyle(args.grammar_style),
        emit_dcr_attrs=args.dcr,
        wrap_tei=args.wrap_tei,
        prefixes=env_prefixes() or None,
    )
    to_stdout = args.out == '-'

    def job(path):
        data, report = convert(_read(path), args.source, args.target, opts)
        err = [f'{path}: {f}\n' for f in report.parse_findings]
        err += [f'{path}: note: {n}\n' for n in report.emit_loss_notes]
        if data is None:
            err.append(f'{path}: {report.error}\n')
            return FINDINGS, '', ''.join(err)
        out = ''
        if to_stdout:
            out = data.decode('utf-8')
        else:
            target = Path(args.out) if args.out else _output_path(path, args.target)
            try:
                target.write_bytes(data)
            except OSError as exc:
                raise UsageError(f'{target}: {exc.strerror or exc}') from None
            err.append(f'{path}: wrote {target}\n')
        return (OK if report.ok else FINDINGS), out, ''.join(err)

    return _batch(args.inputs, job)


# -- validate ----------------------------------------------------------------

def cmd_validate(args) -> int:
    enabled = None
    if args.rules:
        enabled = {r.strip() for r in args.rules.split(',') if r.strip()}
        known = {r.id for r in rule_catalogue()}
        unknown = sorted(enabled - known)
        if unknown:
            raise UsageError(f'unknown rule id(s): {", ".join(unknown)}')
    several = len(args.inputs) > 1

    def job(path):
        doc = parse_xml(_read(path))
        findings = validate_tei_document(doc, enabled)
        status = FINDINGS if has_errors(findings) else OK
        if args.format == 'json':
            return status, findings, ''
        text = format_text(findings)
        if several:
            text = f'# {path}\n{text}'
        return status, text, ''

    if args.format == 'text':
        return _batch(args.inputs, job)

    # one JSON array for the whole batch
    collected = []

    def json_job(path):
        status, findings, err = job(path)
        collected.append((path, findings))
        return status, '', err

    code = _batch(args.inputs, json_job)
    order = {p: i for i, p in enumerate(args.inputs)}
    items = []
    for path, findings in sorted(collected, key=lambda pf: order[pf[0]]):
        items.extend([dict(d, file=path) if several else d
                      for d in [f.to_dict() for f in findings]])
    sys.stdout.write(json.dumps(items, ensure_ascii=False, indent=2) + '\n')
    return code


# -- roundtrip ---------------------------------------------------------------

def cmd_roundtrip(args) -> int:
    def job(path):
        result = roundtrip_check(_read(path), args.source, args.via)
        if result.ok:
            return OK, f'OK {path}\n', ''
        return FINDINGS, f'FAIL {path}: {result.diagnosis}\n', ''

    return _batch(args.inputs, job)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='lexicrosswalk',
                                     description='Convert and check LMF/TEI lexical resources.')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('convert', help='convert between dialects')
    p.add_argument('--from', dest='source', required=True, choices=DIALECTS)
    p.add_argument('--to', dest='target', required=True, choices=DIALECTS)
    p.add_argument('--grammar-style', choices=[s.value for s in GrammarStyle],
                   default=GrammarStyle.GRAM_GRP.value)
    p.add_argument('--dcr', action='store_true', help='write dcr:datcat attributes')
    p.add_argument('--wrap-tei', action='store_true', help='write a full <TEI> document')
    p.add_argument('--out', help='output file, or - for stdout (single input only)')
    p.add_argument('inputs', nargs='+', metavar='INPUT')
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser('validate', help='check TEI documents against the compliance rules')
    p.add_argument('--rules', help='comma-separated rule ids (default: all)')
    p.add_argument('--format', choices=['text', 'json'], default='text')
    p.add_argument('inputs', nargs='+', metavar='INPUT')
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser('roundtrip', help='check that a dialect preserves the model')
    p.add_argument('--from', dest='source', required=True, choices=DIALECTS)
    p.add_argument('--via', required=True, choices=DIALECTS)
    p.add_argument('inputs', nargs='+', metavar='INPUT')
    p.set_defaults(func=cmd_roundtrip)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f'lexicrosswalk: {exc}', file=sys.stderr)
        return USAGE
