import sys


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get('test_acceptance')
    results = getattr(acceptance, 'RESULTS', None)
    if not results:
        return
    terminalreporter.section('acceptance criteria')
    for number in sorted(results):
        terminalreporter.write_line(results[number])
    missing = [n for n in range(1, 11) if n not in results]
    if missing:
        terminalreporter.write_line(f'not run: {", ".join(map(str, missing))}')
