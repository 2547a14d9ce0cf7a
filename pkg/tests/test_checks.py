import json

import pytest

import sortstat.matchings as M
from sortstat import checks
from sortstat.checks import CATALOGUE, CheckSpec, UnknownCheck, run_check, run_checks

EXPECTED_IDS = [
    "DYCK-HEIGHTS", "DYCK-RESTRICTION", "DYCK-CATALAN", "DYCK-WEIGHTS",
    "VARPHI1-BIJ", "PHI1-BIJ", "THM1", "PROP1", "THM2", "EQHM", "MULTISET", "SORT-TYPE",
    "THMSIGNED", "CORB", "VARPHI2-BIJ", "PHI2", "ODDEVEN-M", "SOR-ALLRED", "DMIX-M", "DSOR-M",
    "TRANSPORT-A", "SORR-TRANSPORT", "RLMIN-R", "SORR-ID", "PERMCOR", "TRIPLES", "LASTHM", "ROOK",
    "SN", "BW", "SORFACT", "TRANSPORT-B", "SORRB-ID", "ODDEVEN", "NMIN-B", "SORMIX-B", "PETB",
    "PRLMIN-B", "PETD", "D-INV", "D-SOR", "DFULL", "TRANSPORT-D", "SPECIALIZE", "WORKED",
]
MODULES = {"dyck-core", "matchings", "bicolored-matchings", "permutations", "polynomials"}


def test_catalogue_is_complete():
    assert list(CATALOGUE) == EXPECTED_IDS
    for c in CATALOGUE.values():
        assert c.module in MODULES
        assert c.statement and c.default_max_n >= 1


@pytest.mark.parametrize("check_id", [c for c in EXPECTED_IDS if CATALOGUE[c].default_max_n >= 3])
def test_every_check_passes_small(check_id):
    res = run_check(CheckSpec(check_id, max_n=3))
    assert res.status == "pass", res.counterexample
    assert res.instances > 0


def test_canonical_bases_run_fewer_instances():
    full = run_check(CheckSpec("EQHM", max_n=3))
    canon = run_check(CheckSpec("EQHM", max_n=3, bases="canonical"))
    assert canon.status == "pass"
    assert canon.instances < full.instances


def test_unknown_check():
    with pytest.raises(UnknownCheck):
        run_checks([CheckSpec("NOPE")])
    with pytest.raises(KeyError):
        run_check(CheckSpec("NOPE"))


def test_invalid_check_parameters():
    with pytest.raises(ValueError):
        CheckSpec("EQHM", max_n=0)
    with pytest.raises(ValueError):
        CheckSpec("EQHM", bases="some")


def test_report_json_is_deterministic():
    specs = [CheckSpec("THM1", max_n=4), CheckSpec("LASTHM", max_n=3), CheckSpec("PETB", max_n=3)]
    a = json.dumps(run_checks(specs).to_dict(), sort_keys=True)
    b = json.dumps(run_checks(specs).to_dict(), sort_keys=True)
    assert a == b
    assert "timing" not in json.loads(a)
    assert "timing" in run_checks(specs).to_dict(timing=True)


def test_env_override(monkeypatch):
    monkeypatch.setenv("SORTSTAT_MAX_N", "2")
    assert run_check(CheckSpec("THM1")).max_n == 2
    assert run_check(CheckSpec("THM1", max_n=3)).max_n == 3
    monkeypatch.delenv("SORTSTAT_MAX_N")
    assert run_check(CheckSpec("WORKED")).max_n == CATALOGUE["WORKED"].default_max_n


def test_petd_counts_whole_group():
    res = run_check(CheckSpec("PETD", max_n=5))
    assert res.status == "pass"
    assert res.to_dict()["instances_by_n"]["5"] == 1920


def test_lasthm_records_the_closure_witness():
    res = run_check(CheckSpec("LASTHM", max_n=2))
    assert res.status == "pass"
    assert 6 in res.instances_by_n


def test_mutation_is_caught(monkeypatch):
    orig = M.sort_step_count
    monkeypatch.setattr(M, "sort_step_count", lambda *a: orig(*a) + 1)
    res = run_check(CheckSpec("EQHM", max_n=3))
    assert res.status == "fail"
    ce = res.to_dict()["counterexample"]
    assert json.loads(json.dumps(ce)) == ce
    assert ce["lhs"] != ce["rhs"]


def test_first_failure_stops_the_check(monkeypatch):
    orig = M.sort_step_count
    monkeypatch.setattr(M, "sort_step_count", lambda *a: orig(*a) + 1)
    report = run_checks([CheckSpec("EQHM", max_n=3), CheckSpec("DYCK-CATALAN", max_n=3)])
    assert not report.passed
    assert report["EQHM"].status == "fail"
    assert report["DYCK-CATALAN"].status == "pass"


def test_jsonify_values():
    from sortstat.permutations import parse_perm
    assert checks.jsonify(frozenset({3, 1})) == [1, 3]
    assert checks.jsonify(parse_perm("-2,1")) == [-2, 1]
    assert checks.jsonify((1, (2, 3))) == [1, [2, 3]]
