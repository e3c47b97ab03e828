import pytest

import og4
from og4 import parse_permutation as P


@pytest.fixture(scope="session")
def alt5():
    return og4.alternating_group(5)


@pytest.fixture(scope="session")
def sym5():
    return og4.symmetric_group(5)


@pytest.fixture(scope="session")
def lex_pairs():
    return {r: og4.lexicographic_cycle(r) for r in range(3, 9)}


@pytest.fixture(scope="session")
def sc_pair(alt5):
    return og4.simple_cayley(alt5, P("(1 2 3)", 5), P("(1 4)(2 5)", 5))


@pytest.fixture(scope="session")
def cs_pair(alt5):
    return og4.coset_simple(alt5, P("(1 4)(2 5)", 5), P("(1 2 3)", 5))


@pytest.fixture(scope="session")
def sym5_pair():
    return og4.sym_bigstab(5)


@pytest.fixture(scope="session")
def sym7_pair():
    return og4.sym_bigstab(7)


@pytest.fixture(scope="session")
def tw_pair(alt5, sym5):
    return og4.tw_cayley(
        alt5, P("(1 2 3)", 5), P("(1 2 3 4 5)", 5), og4.conjugation_inventory(sym5)
    )


@pytest.fixture(scope="session")
def pa_pair(alt5, sym5):
    return og4.pa_construction(
        alt5, P("(1 2)(3 4)", 5), P("(1 5 4 3 2)", 5), og4.conjugation_inventory(sym5)
    )


@pytest.fixture(scope="session")
def all_pairs(lex_pairs, sc_pair, cs_pair, sym5_pair, sym7_pair, tw_pair, pa_pair):
    pairs = [(f"lex_cycle({r})", p) for r, p in lex_pairs.items()]
    pairs += [
        ("simple_cayley", sc_pair),
        ("coset_simple", cs_pair),
        ("sym_bigstab(5)", sym5_pair),
        ("sym_bigstab(7)", sym7_pair),
        ("tw_cayley", tw_pair),
        ("pa", pa_pair),
    ]
    return pairs


# ---------------------------------------------------------------------------
# acceptance reporting: one PASS/FAIL line per criterion, printed in the
# terminal summary so it survives output capture

_acceptance_results: dict[int, bool] = {}


def record_acceptance(criterion: int, ok: bool) -> None:
    _acceptance_results[criterion] = _acceptance_results.get(criterion, True) and ok


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.write_line("")
    for n in sorted(_acceptance_results):
        verdict = "PASS" if _acceptance_results[n] else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {n}: {verdict}")
