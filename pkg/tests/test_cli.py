import json
import os
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from lexicrosswalk.cli import PREFIXES_ENV, UsageError, env_prefixes, main
from lexicrosswalk.xmlcore import canonical_equal, parse_xml

FIXTURES = Path(__file__).parent / 'fixtures'


@pytest.fixture
def files(tmp_path):
    for src in ['listings/clergyman.mixed.xml', 'listings/clergyman.tei.xml',
                'listings/clergyman.fs.xml', 'samples/nested-quote.tei.xml',
                'samples/direct-def.tei.xml']:
        shutil.copy(FIXTURES / src, tmp_path)
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


# -- convert -------------------------------------------------------------------

def test_convert_mixed_to_tei(files, capsys):
    code, out, err = run(capsys, 'convert', '--from', 'mixed', '--to', 'tei',
                         files / 'clergyman.mixed.xml')
    assert code == 0
    assert out == ''
    written = files / 'clergyman.mixed.tei.xml'
    assert f'wrote {written}' in err
    assert canonical_equal(parse_xml(written.read_bytes()),
                           parse_xml((files / 'clergyman.tei.xml').read_bytes()))


def test_convert_tei_to_tei_is_a_fixpoint(files, capsys):
    source = files / 'clergyman.tei.xml'
    code, out, _ = run(capsys, 'convert', '--from', 'tei', '--to', 'tei', '--out', '-', source)
    assert code == 0
    assert canonical_equal(parse_xml(out.encode()), parse_xml(source.read_bytes()))


def test_convert_nested_quotation_to_legacy(files, capsys):
    code, out, err = run(capsys, 'convert', '--from', 'tei', '--to', 'legacy-lmf',
                         files / 'nested-quote.tei.xml')
    assert code == 1
    assert out == ''
    assert 'unrepresentable' in err
    assert '/lexicons[1]/entries[1]/senses[1]/quotations[2]' in err
    assert not (files / 'nested-quote.tei.legacy-lmf.xml').exists()


def test_convert_batch_keeps_argument_order(files, capsys):
    inputs = [files / 'nested-quote.tei.xml', files / 'clergyman.tei.xml']
    code, _, err = run(capsys, 'convert', '--from', 'tei', '--to', 'fs', *inputs)
    assert code == 0
    lines = [line for line in err.splitlines() if 'wrote' in line]
    assert [line.split(':')[0] for line in lines] == [str(p) for p in inputs]
    assert (files / 'clergyman.tei.fs.xml').exists()


def test_convert_options(files, capsys):
    code, out, _ = run(capsys, 'convert', '--from', 'mixed', '--to', 'tei', '--wrap-tei',
                       '--grammar-style', 'fs', '--dcr', '--out', '-',
                       files / 'clergyman.mixed.xml')
    assert code == 0
    assert '<TEI xmlns="http://www.tei-c.org/ns/1.0">' in out
    assert '<fs type="grammar">' in out


@pytest.mark.parametrize('argv', [
    ['convert', '--from', 'tei', '--to', 'klingon', 'x.xml'],
    ['convert', '--to', 'tei', 'x.xml'],
    ['convert', '--from', 'tei', '--to', 'fs', 'does-not-exist.xml'],
    ['convert', '--from', 'tei', '--to', 'fs', '--out', 'o.xml', 'a.xml', 'b.xml'],
    ['validate', '--rules', 'R99', 'x.xml'],
    [],
])
def test_usage_errors(argv, capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(capsys, *argv)[0] == 2


def test_malformed_input(tmp_path, capsys):
    bad = tmp_path / 'bad.xml'
    bad.write_bytes(b'<entry><form></entry>')
    assert run(capsys, 'convert', '--from', 'tei', '--to', 'fs', bad)[0] == 3
    assert run(capsys, 'validate', bad)[0] == 3
    assert run(capsys, 'roundtrip', '--from', 'tei', '--via', 'fs', bad)[0] == 3


def test_wrong_dialect_is_malformed(files, capsys):
    code, _, err = run(capsys, 'convert', '--from', 'fs', '--to', 'tei',
                       files / 'clergyman.tei.xml')
    assert code == 3
    assert 'DialectError' in err


def test_prefix_environment(files, capsys, monkeypatch):
    monkeypatch.setenv(PREFIXES_ENV, 'http://www.tei-c.org/ns/1.0=t')
    code, out, _ = run(capsys, 'convert', '--from', 'mixed', '--to', 'mixed', '--out', '-',
                       files / 'clergyman.mixed.xml')
    assert code == 0
    assert 'xmlns:t="http://www.tei-c.org/ns/1.0"' in out
    monkeypatch.setenv(PREFIXES_ENV, 'nonsense')
    assert run(capsys, 'convert', '--from', 'mixed', '--to', 'tei',
               files / 'clergyman.mixed.xml')[0] == 2


def test_env_prefixes_parsing():
    env = {PREFIXES_ENV: 'urn:a=a, http://x.org/ns?q=1=x\nurn:b=b'}
    assert env_prefixes(env) == {'urn:a': 'a', 'http://x.org/ns?q=1': 'x', 'urn:b': 'b'}
    assert env_prefixes({}) == {}
    with pytest.raises(UsageError):
        env_prefixes({PREFIXES_ENV: 'urn:a=1bad'})


# -- validate ------------------------------------------------------------------

def test_validate_clean(files, capsys):
    assert run(capsys, 'validate', files / 'clergyman.tei.xml') == (0, '', '')


def test_validate_direct_def(files, capsys):
    code, out, _ = run(capsys, 'validate', files / 'direct-def.tei.xml')
    assert code == 1
    assert out.startswith('ERROR R1-SENSE-REQUIRED /entry[1]/def[1]: ')
    assert len(out.splitlines()) == 1


def test_validate_json(files, capsys):
    code, out, _ = run(capsys, 'validate', '--format', 'json', files / 'direct-def.tei.xml')
    assert code == 1
    (item,) = json.loads(out)
    assert item['ruleId'] == 'R1-SENSE-REQUIRED'
    assert item['severity'] == 'error'
    assert item['path'] == '/entry[1]/def[1]'
    assert item['message']


def test_validate_json_batch(files, capsys):
    inputs = [files / 'direct-def.tei.xml', files / 'clergyman.tei.xml',
              files / 'direct-def.tei.xml']
    code, out, _ = run(capsys, 'validate', '--format', 'json', *inputs)
    assert code == 1
    assert [item['file'] for item in json.loads(out)] == [str(inputs[0]), str(inputs[2])]


def test_validate_rule_filter(files, capsys):
    code, out, _ = run(capsys, 'validate', '--rules', 'R2-NO-VOID-GRAMGRP',
                       files / 'direct-def.tei.xml')
    assert (code, out) == (0, '')


# -- roundtrip -----------------------------------------------------------------

@pytest.mark.parametrize('via', ['fs', 'mixed'])
def test_roundtrip_clergyman(files, capsys, via):
    code, out, _ = run(capsys, 'roundtrip', '--from', 'tei', '--via', via,
                       files / 'clergyman.tei.xml')
    assert code == 0
    assert out == f'OK {files / "clergyman.tei.xml"}\n'


def test_roundtrip_nested_quotation(files, capsys):
    path = files / 'nested-quote.tei.xml'
    code, out, _ = run(capsys, 'roundtrip', '--from', 'tei', '--via', 'legacy-lmf', path)
    assert code == 1
    assert out.startswith(f'FAIL {path}: unrepresentable in legacy-lmf')


def test_roundtrip_batch(files, capsys):
    inputs = [files / 'clergyman.tei.xml', files / 'nested-quote.tei.xml']
    code, out, _ = run(capsys, 'roundtrip', '--from', 'tei', '--via', 'legacy-lmf', *inputs)
    assert code == 1
    assert [line.split()[0] for line in out.splitlines()] == ['OK', 'FAIL']


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, '-m', 'lexicrosswalk', 'roundtrip', '--from', 'tei',
                           '--via', 'fs', str(files / 'clergyman.tei.xml')],
                          capture_output=True, text=True, env=dict(os.environ))
    assert proc.returncode == 0
    assert proc.stdout.startswith('OK ')
