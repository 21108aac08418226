import pytest

from cubefill.acceptance import LIMITS, TITLES, run_criterion

KNOWN_RED = {
    8: "stabilizer invariance and the alpha bijection fail on corpus items with "
       "nontrivial vertex stabilizers; see the decisions ledger",
}


def _params():
    for k in range(1, 11):
        marks = [pytest.mark.xfail(strict=True, reason=KNOWN_RED[k])] if k in KNOWN_RED else []
        yield pytest.param(k, marks=marks, id=f"criterion-{k}")


@pytest.mark.parametrize("k", list(_params()))
def test_criterion(k, items, capsys):
    r = run_criterion(k, seed=0, items=items)
    with capsys.disabled():
        print("\n" + r.line())
    assert r.elapsed < LIMITS[k], f"{TITLES[k]} took {r.elapsed:.1f}s"
    assert r.ok, r.detail


def test_criterion_8_failures_are_only_the_known_ones(items):
    r = run_criterion(8, seed=0, items=items)
    assert set(r.detail["by_check"]) <= {"stabC", "alpha"}
    assert r.elapsed < LIMITS[8]
