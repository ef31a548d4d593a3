import pytest

from fibchain.verify import SUITES, enumerate_representations, run_suite

SMALL = {
    "facts22": dict(nmax=40),
    "lemma27": dict(limit=5000),
    "thm28": dict(limit=5000),
    "lemma32": dict(mmax=30),
    "thm33": dict(pmax=13),
    "cor34": dict(pmax=60),
    "thm35": dict(pmax=60),
    "lemma42": dict(kmax=20),
    "thm43": dict(limit=5000),
    "thm44": dict(limit=5000),
    "thm45": dict(limit=5000),
    "remark15": dict(limit=2000),
    "zeckendorf-uniqueness": dict(nmax=300, limit=3000),
    "limsup": dict(pmax=300, limit=3000),
}


@pytest.mark.parametrize("name", list(SUITES))
def test_suite_passes_at_small_scale(name):
    rep = run_suite(name, **SMALL[name])
    assert rep.checks
    assert rep.passed, "\n".join(rep.lines())


def test_report_lines_are_marked():
    lines = list(run_suite("thm44", limit=100).lines())
    assert all(line.startswith("PASS  thm44: ") for line in lines)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_enumerator_covers_small_values():
    # sanity check of the enumerator itself: values up to 40 each appear once
    reps = enumerate_representations(3, 40)
    assert sorted(reps) == list(range(1, 41))
    assert all(len(v) == 1 for v in reps.values())
