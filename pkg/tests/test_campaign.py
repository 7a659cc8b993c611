import json

from rank3hecke.campaign import (DEFAULT_BATTERY, SCHEMA, BatteryEntry, dumps, format_summary,
                                 run_campaign)

from systems import C2, C4

SMALL = {"bound": 3, "word": 4, "hecke": 3, "lambda": 3, "witness": 4, "cells": 3}


def test_empty_battery_passes():
    rep = run_campaign([], SMALL)
    assert rep["configs"] == [] and rep["summary"]["pass"]
    assert rep["schema"] == SCHEMA


def test_corrupted_bound_fails_with_witness():
    rep = run_campaign([BatteryEntry("c2", C2, 5)], SMALL, bound_hook=lambda S, N: N - 1)
    cfg = rep["configs"][0]
    assert not rep["summary"]["pass"] and not cfg["pass"]
    assert ["s", "s", "s"] in cfg["bound"]["bound_violations"]


def test_expected_N_mismatch_fails():
    rep = run_campaign([BatteryEntry("c2", C2, 4)], SMALL)
    assert not rep["summary"]["pass"]


def test_deterministic_across_threads():
    battery = [BatteryEntry("c2", C2, 5), BatteryEntry("c4", C4, 10)]
    a = dumps(run_campaign(battery, SMALL, threads=1))
    b = dumps(run_campaign(battery, SMALL, threads=4))
    assert a == b
    assert json.loads(a)["summary"] == {"configs": 2, "passed": 2, "pass": True}


def test_timings_stay_out_of_json():
    t = {}
    rep = run_campaign([BatteryEntry("c2", C2, 5)], SMALL, timings=t)
    assert set(t) == {"c2"}
    assert "elapsed" not in dumps(rep)
    text = format_summary(rep, t)
    assert "1/1 configurations pass" in text and "(" in text.splitlines()[2]


def test_default_battery_shapes():
    kinds = [e.name for e in DEFAULT_BATTERY]
    assert len(kinds) == 8 and len(set(kinds)) == 8
