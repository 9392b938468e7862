"""Diagnostics reported by parsers, model validation and the TEI validator.

Every finding carries a rule id from a single registry so that reports from
different stages can be merged, sorted and serialized the same way.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum


class Severity(str, Enum):
    ERROR = 'error'
    WARNING = 'warning'
    INFO = 'info'


@dataclass(frozen=True)
class Finding:
    rule_id: str
    severity: Severity
    path: str
    message: str

    def __str__(self):
        return f'{self.severity.value.upper()} {self.rule_id} {self.path}: {self.message}'

    def to_dict(self):
        return {
            'ruleId': self.rule_id,
            'severity': self.severity.value,
            'path': self.path,
            'message': self.message,
        }


# rule id -> default severity; validator rules are added by validator.py
_REGISTRY: dict[str, Severity] = {}


def register(rule_id: str, severity: Severity) -> None:
    if rule_id in _REGISTRY and _REGISTRY[rule_id] is not severity:
        raise ValueError(f'rule {rule_id} registered twice with different severities')
    _REGISTRY[rule_id] = severity


def registered_ids() -> frozenset[str]:
    return frozenset(_REGISTRY)


def make_finding(rule_id: str, path: str, message: str,
                 severity: Severity | None = None) -> Finding:
    try:
        default = _REGISTRY[rule_id]
    except KeyError:
        raise ValueError(f'unregistered rule id: {rule_id}') from None
    return Finding(rule_id, severity or default, path, message)


_E, _W, _I = Severity.ERROR, Severity.WARNING, Severity.INFO

# model validation
for _id, _sev in [
    ('M-LEMMA-MISSING', _E),
    ('M-LEMMA-IN-OTHER-FORMS', _E),
    ('M-EMPTY-FORM', _E),
    ('M-FORM-ROLE', _E),
    ('M-BAD-CATEGORY', _E),
    ('M-EMPTY-VALUE', _E),
    ('M-RESERVED-CATEGORY', _W),
    ('M-EMPTY-LANGUAGE', _E),
    ('M-NO-LEXICON', _E),
    ('M-EMPTY-TEXT', _E),
    ('M-BAD-SPAN', _E),
    ('M-EMPTY-IDNO', _E),
    ('M-EMPTY-FUNCTION', _E),
    ('M-EMPTY-FRAME', _E),
    ('M-EMPTY-BEHAVIOUR', _E),
    ('M-SENSE-DEPTH', _E),
    ('M-DUPLICATE-ID', _E),
    ('M-BAD-ID', _E),
]:
    register(_id, _sev)

# component-tree dialects share these codes under their own prefix:
# L = legacy LMF, F = pure feature structures, X = mixed
for _prefix in 'LFX':
    for _suffix, _sev in [
        ('UNKNOWN-COMPONENT', _W),
        ('NO-LANGUAGE', _E),
        ('DUPLICATE-DESCRIPTOR', _W),
        ('UNSUPPORTED-DESCRIPTOR', _W),
        ('BAD-NUMBER', _E),
        ('STRAY-TEXT', _W),
    ]:
        register(f'{_prefix}-{_suffix}', _sev)
register('L-NS', _W)
register('L-BAD-FEAT', _E)
register('F-BAD-FEATURE', _E)
register('X-F-NAMESPACE', _W)

# TEI dictionary parser
for _id, _sev in [
    ('T-TRANSIENT-CONSTRUCT', _W),
    ('T-IMPLICIT-SENSE', _W),
    ('T-GLOSS-AS-TRANSLATION', _I),
    ('T-UNKNOWN-ARG-CHILD', _W),
    ('T-UNTYPED-FORM', _I),
    ('T-UNSUPPORTED-ELEMENT', _W),
    ('T-EMPTY-INLINE', _W),
    ('T-MISSING-QUOTE', _E),
    ('T-BAD-GRAMMAR', _E),
]:
    register(_id, _sev)


_STEP = re.compile(r'([^/\[]+)(?:\[(\d+)\])?')


def _path_key(path: str):
    key = []
    for step in path.split('/'):
        if not step:
            continue
        m = _STEP.fullmatch(step)
        if m is None:
            key.append((step, 0))
        else:
            key.append((m.group(1), int(m.group(2) or 0)))
    return key


def sort_findings(findings):
    """Order by path (numeric on sibling indices), then rule id."""
    return sorted(findings, key=lambda f: (_path_key(f.path), f.rule_id, f.message))


def has_errors(findings) -> bool:
    return any(f.severity is Severity.ERROR for f in findings)


def format_text(findings) -> str:
    return ''.join(f'{f}\n' for f in findings)


def format_json(findings, extra: dict | None = None) -> str:
    items = []
    for f in findings:
        item = f.to_dict()
        if extra:
            item.update(extra)
        items.append(item)
    return json.dumps(items, ensure_ascii=False, indent=2)
