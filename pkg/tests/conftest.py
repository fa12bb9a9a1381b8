from functools import lru_cache

from tilehom import catalog, homology, singular


@lru_cache(maxsize=None)
def complex_for(name: str, symmetry: bool = True):
    scheme = catalog.get(name)
    if not symmetry:
        scheme = scheme.without_symmetry()
    return singular.generate(scheme)


@lru_cache(maxsize=None)
def result_for(name: str):
    """Full homology (default primes) of a catalog scheme, computed once per session."""
    scheme = catalog.get(name)
    return homology.compute(scheme, complex_for(name))


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
