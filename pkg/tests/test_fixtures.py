import pytest

from gammalaws.fixtures import CATALOG, fixture_names, run_fixture


def test_catalog_names_unique():
    names = fixture_names()
    assert len(names) == len(set(names)) == len(CATALOG)


@pytest.mark.parametrize("name", fixture_names())
@pytest.mark.parametrize("seed", [0, 11])
def test_fixture_passes(name, seed):
    res = run_fixture(name, seed)
    assert res.passed, res.details


def test_errors_become_failures(monkeypatch):
    from gammalaws import fixtures

    def boom(seed):
        raise RuntimeError("kaboom")

    monkeypatch.setattr(fixtures, "CATALOG", [fixtures.FixtureSpec("boom", "raises", boom)])
    res = fixtures.run_fixture("boom", 0)
    assert not res.passed and "kaboom" in str(res.details)
