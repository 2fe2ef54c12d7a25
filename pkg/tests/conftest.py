import functools

import pytest

from asymcomp import parse_rule, signature
from asymcomp.errors import AsymcompError
from asymcomp.tables import load_fixtures

FIBONACCI = "[ab,a]"
TRIBONACCI = "[c,ca,cb]"
PLASTIC = "[bc,a,b]"
KOLAKOSKI = "[aca,a,b]"

EXAMPLE_RULES = [FIBONACCI, "[aab,ba]", "[baa,ab]", TRIBONACCI, "[c,ac,bc]", PLASTIC, "[cb,a,b]",
                 "[ba,bc,a]", "[ab,cb,a]", KOLAKOSKI, "[caa,a,b]", "[aac,a,b]"]


@functools.lru_cache(maxsize=None)
def sig_of(text: str):
    return signature(parse_rule(text))


@functools.lru_cache(maxsize=None)
def _corpus():
    rules = list(EXAMPLE_RULES)
    for t in load_fixtures():
        for r in t.rows:
            if r.repr not in rules:
                rules.append(r.repr)
    out = []
    for text in rules:
        try:
            out.append((text, sig_of(text)))
        except AsymcompError:
            pass  # representatives outside their table family
    return tuple(out)


@pytest.fixture(scope="session")
def corpus():
    return _corpus()


@pytest.fixture(scope="session")
def fixtures():
    return load_fixtures()


def fixture_row(fixtures, table: str, nr: int):
    for t in fixtures:
        if t.id == table:
            return t.rows[nr - 1]
    raise KeyError(table)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, note = RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {note}")
