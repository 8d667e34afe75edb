"""Smoke tests for the python bindings: the module imports, runs, and the
metric helpers agree with hand-computed values. Algorithmic depth lives in
the C++ test suite."""

import math

import pytest

import asbec


def small_config(seed=1, budget=200):
    cfg = asbec.ColonyConfig()
    cfg.sn = 8
    cfg.on = 8
    cfg.limit = 10
    cfg.budget = budget
    cfg.seed = seed
    return cfg


def test_suite_listing():
    names = asbec.list_functions()
    assert len(names) == 10
    assert "sphere" in names
    assert "rastrigin" in names
    assert len(set(names)) == 10


def test_function_info_and_evaluate():
    info = asbec.function_info("sphere")
    assert info["dim"] == len(info["lower"]) == len(info["upper"])
    assert all(lo < hi for lo, hi in zip(info["lower"], info["upper"]))

    mid = [(lo + hi) / 2 for lo, hi in zip(info["lower"], info["upper"])]
    assert asbec.evaluate("sphere", mid) >= 0.0

    with pytest.raises(ValueError):
        asbec.function_info("nessie")


def test_fitness_transform():
    assert asbec.fitness(0.0) == 1.0
    assert asbec.fitness(3.0) == 0.25
    assert asbec.fitness(-2.0) == 3.0


def test_serial_run_is_deterministic_and_monotone():
    cfg = small_config(seed=7)
    a = asbec.run_serial("rastrigin", cfg)
    b = asbec.run_serial("rastrigin", cfg)
    assert len(a) == cfg.budget
    assert [p.best for p in a.points] == [p.best for p in b.points]

    bests = a.bests()
    assert all(y <= x for x, y in zip(bests, bests[1:]))
    assert a.final_best() == bests[-1]

    cfg.seed = 8
    c = asbec.run_serial("rastrigin", cfg)
    assert c.bests() != bests


def test_technology_presets_change_the_run():
    cfg = small_config(seed=3, budget=400)
    plain = asbec.run_serial("levy", cfg)
    cfg.tech = asbec.TechnologySet.asbec()
    assert cfg.tech.check == 3
    enhanced = asbec.run_serial("levy", cfg)
    assert enhanced.bests() != plain.bests()


def test_run_dispatches_parallel_modes():
    cfg = small_config(seed=5, budget=160)
    plan = asbec.ParallelPlan()
    plan.mode = asbec.ExecMode.MULTI_START
    plan.workers = 4
    plan.per_colony_budget = 160
    combined = asbec.run("sphere", cfg, plan)
    assert combined.points[-1].evals == 4 * 160

    plan.mode = asbec.ExecMode.BEE_BY_BEE
    plan.workers = 8
    bbb = asbec.run("sphere", cfg, plan)
    assert len(bbb) == 160
    assert bbb.points[-1].time < 160


def test_run_defaults_to_serial_plan():
    cfg = small_config(seed=2, budget=64)
    assert asbec.run("ackley", cfg).bests() == asbec.run_serial("ackley", cfg).bests()


def test_metric_helpers():
    cfg = small_config(seed=1)
    ref = [asbec.run_serial("sphere", small_config(seed=s)) for s in (1, 2, 3)]
    assert asbec.median_best(ref, "evals", cfg.budget) > 0.0

    assert asbec.gain(ref, ref, "evals", 100.0) == 1.0
    assert asbec.mean_log10([1.0, 10.0]) == pytest.approx(0.5)
    assert asbec.mean_log10([100.0]) == pytest.approx(2.0)
    assert math.isinf(asbec.median_best(ref, "evals", 0.0))


def test_config_validation_raises():
    cfg = small_config()
    cfg.sn = 1
    with pytest.raises(ValueError):
        asbec.run_serial("sphere", cfg)

    cfg = small_config()
    tech = asbec.TechnologySet()
    tech.interpolation = True  # requires opposition
    cfg.tech = tech
    with pytest.raises(ValueError):
        asbec.run_serial("sphere", cfg)
