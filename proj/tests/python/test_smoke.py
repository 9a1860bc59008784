import json
from fractions import Fraction

import pytest

import shadowlab as sl


def test_ladder_points_and_distances():
    lad = sl.System.ladder()
    s0 = sl.Point.s(0)
    assert str(lad.eval(s0)) == "s(1)"
    assert lad.dist(s0, sl.Point.fixed_zero()) == Fraction(1, 2)
    assert lad.dist(lad.point("t(1)"), sl.Point.fixed_two()) == Fraction(1, 3)
    assert lad.inverse(lad.eval(sl.Point.t(-3))) == sl.Point.t(-3)


def test_odometer_metric():
    odo = sl.System.odometer(depth=3)
    assert odo.id == "odometer[2,4,8]"
    assert odo.is_isometry
    assert odo.dist(sl.Point.residue(0), sl.Point.residue(4)) == Fraction(1, 8)
    assert odo.dist(sl.Point.residue(0), sl.Point.residue(2)) == Fraction(1, 4)
    assert len(odo.candidates()) == 8
    assert sl.odometer_shadow_modulus("1/4", depth=8) == Fraction(1, 4)


def test_pointed_counterexample():
    gamma = sl.pointed_gamma(K=2, window=32)
    assert gamma.errors[0] == Fraction(1, 4)
    assert gamma.is_delta(Fraction(1, 4))
    cands = gamma.system.candidates()
    assert sl.find_shadows(gamma, 1, cands) == [sl.Point.extra()]
    assert sl.slimit_counterexample(K=3, window=64).passed()


def test_chains_and_no_shadow():
    lad = sl.System.ladder()
    g = sl.ChainGraph(lad, lad.candidates(16), "1/16")
    chain = sl.find_chain(g, sl.Point.fixed_zero(), sl.Point.fixed_two())
    assert chain is not None and chain[0] == sl.Point.fixed_zero()
    po = sl.PseudoOrbit(lad, chain)
    assert po.max_error() <= Fraction(1, 16)
    assert sl.verify_no_shadow(po, "1/4", 16).passed()
    bound, _, count = sl.cr_localization(sl.ChainGraph(lad, lad.candidates(8), "1/64"))
    assert bound == Fraction(1, 33) and count > 0
    fine = sl.scc(sl.ChainGraph(lad, lad.candidates(4), 0))
    coarse = sl.scc(sl.ChainGraph(lad, lad.candidates(4), 1))
    assert sl.refinement_check(fine, coarse).passed()


def test_limit_and_thick():
    odo = sl.System.odometer(depth=4)
    pts = list(sl.from_orbit(odo, sl.Point.residue(0), 16).points)
    # one jump at index 5 to residue 13, exact afterwards
    jumped = pts[:5] + list(sl.from_orbit(odo, sl.Point.residue(13), 11).points)
    po = sl.PseudoOrbit(odo, jumped)
    sched = sl.derive_limit_schedule(po, 5)
    assert sched[0] == (0, Fraction(1, 2))
    limit, report = sl.limit_shadow_construct(po.with_schedule(sched))
    assert report.passed() and limit == sl.Point.residue(8)
    t = sl.thick_shadow_report(sl.PseudoOrbit(odo, pts), "1/4", odo.candidates())
    assert t["density"] == 1 and t["run_length"] == 16


def test_serialize_roundtrip():
    po = sl.pointed_gamma(K=2, window=8)
    back = sl.PseudoOrbit.parse(po.serialize())
    assert back.points == po.points and back.errors == po.errors


def test_run_experiment_machine_output_is_deterministic():
    a = sl.run_experiment("odometer", mode="shadow", depth=6, trials=20, length=40, seed=3)
    b = sl.run_experiment("odometer", mode="shadow", depth=6, trials=20, length=40, seed=3)
    assert a.status == "pass"
    assert a.to_machine() == b.to_machine()
    records = [json.loads(line) for line in a.to_machine().splitlines()]
    assert all("status" in r for r in records)


def test_config_errors():
    with pytest.raises(ValueError):
        sl.run_experiment("ex41", K=9, depth=6)
    with pytest.raises(TypeError):
        sl.run_experiment("ex41", colour="red")
