from fractions import Fraction
from pathlib import Path

import pytest

import rangectl as rc

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def first_table():
    return rc.parse_election((CORPUS / "first-table.txt").read_text())


def test_tally_rv_and_nrv():
    e = first_table()
    assert rc.tally(e, rc.VotingSystem.RV) == {"a": 14, "b": 20, "c": 5}
    assert rc.winners(e, rc.VotingSystem.RV) == ["b"]
    shift = rc.parse_election((CORPUS / "winner-shift.txt").read_text())
    assert rc.tally(shift) == {"a": 14, "b": 12, "c": 8}
    assert rc.tally(shift.project(["a", "b"])) == {"a": 14, "b": 16}


def test_fractions_and_normalization():
    e = rc.Election(4, ["a", "b", "c"], [([1, 2, 4], 1)])
    assert rc.tally(e)["b"] == Fraction(4, 3)
    assert rc.normalize_ballot([1, 1], 3) is None
    assert rc.normalize_ballot([1, 3], 3) == [0, 3]


def test_validation_errors():
    with pytest.raises(ValueError):
        rc.Election(2, ["a"], [([3], 1)])
    with pytest.raises(ValueError):
        rc.parse_election("range: 2\ncandidates: a\nballots:\n1 | 3\n")


def test_control_solve_and_replay():
    inst = rc.parse_instance((CORPUS / "add-candidates-destructive.txt").read_text())
    out = rc.solve(inst, threads=2)
    assert out.decision == rc.Decision.YES
    assert out.witness.candidates == ["d"]
    assert rc.replay_witness(inst, out.witness)
    tight = rc.parse_instance((CORPUS / "partition-voters-te.txt").read_text())
    assert rc.solve(tight, budget=2).decision == rc.Decision.BUDGET_EXCEEDED


def test_oracles():
    hs = rc.HittingSetInstance(["b1", "b2"], [[0], [1]], 1)
    assert rc.solve_hitting_set(hs) == (False, 2, None)
    assert rc.HittingSetInstance.decode(hs.encode()).sets == [[0], [1]]
    x = rc.X3CInstance(["b1", "b2", "b3"], [[0, 1, 2]])
    assert rc.solve_x3c(x) == (True, [0])


def test_gadget_instances_match_oracle():
    hs = rc.HittingSetInstance(["b1", "b2", "b3"], [[0], [0, 1]], 1)
    g = rc.gadget_hs_candidates(hs)
    assert set(g.instances) == {"add-constructive-w", "add-destructive-c", "delete-destructive-c"}
    yes = rc.solve_hitting_set(hs)[0]
    for inst in g.instances.values():
        assert (rc.solve(inst).decision == rc.Decision.YES) == yes
    assert all(holds for _, holds, must in g.identities if must)


def test_audit_and_cli():
    r = rc.audit("hs-candidates", "n<=3,m=2..3,k<=2")
    assert r["agreement"] and r["disagree"] == 0
    d = rc.audit("hs-delete-constructive", "n<=3,m<=2,k=1")
    assert "n=2 m=2 k=1 S={b1}{b2}" in d["counterexamples"]
    code, out, _ = rc.run_cli(["tally", str(CORPUS / "first-table.txt")])
    assert code == 0 and out.endswith("winner: b\n")
