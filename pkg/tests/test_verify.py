import pytest

from foulkes.verify import LEVELS, SUITE, run_suite


@pytest.mark.parametrize("level", sorted(LEVELS))
def test_suite_passes(level):
    checks = run_suite(level)
    assert len(checks) == len(SUITE)
    assert [c.name for c in checks if not c.passed] == []


def test_unknown_level():
    with pytest.raises(ValueError):
        run_suite("exhaustive")
