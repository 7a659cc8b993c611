"""
Battery driver: bound, lemma suites and lowest-cell checks per configuration.

Reports contain no timings and are assembled in battery order, so the JSON is
byte-identical across runs and thread counts.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .cells import check_prop_7_4, check_thm_7_5_and_prop_7_6
from .config import DEFAULT_RADII, Config
from .coxeter import CoxeterSystem, classify_case
from .hecke import compute_bound, verify_bound
from .lemmas import run_section

SCHEMA = "rank3hecke.campaign/1"


@dataclass(frozen=True)
class BatteryEntry:
    name: str
    system: CoxeterSystem
    expected_N: int


def _sys(msr, mst, mrt, w):
    return CoxeterSystem(m_sr=msr, m_st=mst, m_rt=mrt, weights=w)


# one configuration per case shape, a finite group and the two affine
# shapes the case analysis leaves to other arguments
DEFAULT_BATTERY = (
    BatteryEntry("case1", _sys(0, 2, 2, (1, 3, 2)), 5),
    BatteryEntry("case2", _sys(0, 0, 2, (1, 5, 2)), 5),
    BatteryEntry("case3", _sys(0, 4, 2, (1, 2, 3)), 10),
    BatteryEntry("case4", _sys(5, 4, 2, (2, 2, 1)), 10),
    BatteryEntry("case5", _sys(8, 3, 2, (2, 1, 1)), 12),
    BatteryEntry("finite_a3", _sys(3, 3, 2, (1, 1, 1)), 6),
    BatteryEntry("affine_g2", _sys(6, 3, 2, (2, 1, 1)), 9),
    BatteryEntry("affine_b2", _sys(4, 4, 2, (2, 1, 3)), 8),
)


def entries_from_configs(cfgs: list[Config]) -> list[BatteryEntry]:
    return [BatteryEntry(c.name or f"config{i + 1}", c.system, -1) for i, c in enumerate(cfgs)]


def run_config(entry: BatteryEntry, radii: dict, *, inner_threads: int = 1,
               bound_hook: Callable[[CoxeterSystem, int], int] | None = None,
               backend: str | None = None) -> dict:
    S = entry.system
    shape = classify_case(S)
    N = compute_bound(S).N
    override = bound_hook(S, N) if bound_hook else None
    bound = verify_bound(S, radii["bound"], radii["bound"], threads=inner_threads,
                         bound_override=override, backend=backend)
    suites = [r.to_json() for r in run_section(S, word_ball=radii["word"],
                                               hecke_ball=radii["hecke"], backend=backend)]
    p74 = check_prop_7_4(S, radii["lambda"], radii["witness"], threads=inner_threads,
                         backend=backend)
    t75 = check_thm_7_5_and_prop_7_6(S, radii["cells"], backend=backend)
    lemmas_ok = all(s["status"] != "FAIL" for s in suites)
    res = {
        "name": entry.name,
        "config": S.to_json(),
        "case": shape.to_json(),
        "N": N,
        "expected_N": entry.expected_N if entry.expected_N >= 0 else None,
        "bound": bound,
        "lemmas": suites,
        "prop_7_4": p74,
        "thm_7_5_prop_7_6": t75,
    }
    res["pass"] = bool(bound["pass"] and lemmas_ok and p74["pass"] and t75["pass"]
                       and (entry.expected_N < 0 or entry.expected_N == N))
    return res


def run_campaign(battery=DEFAULT_BATTERY, radii: dict | None = None, *, threads: int = 1,
                 bound_hook=None, backend: str | None = None, timings: dict | None = None) -> dict:
    """Run every check on every configuration; ``timings`` (if given) collects seconds per name."""
    radii = {**DEFAULT_RADII, **(radii or {})}
    battery = list(battery)

    def one(entry):
        t0 = time.perf_counter()
        out = run_config(entry, radii, bound_hook=bound_hook, backend=backend)
        if timings is not None:
            timings[entry.name] = time.perf_counter() - t0
        return out

    if threads > 1 and len(battery) > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(one, battery))
    else:
        results = [one(e) for e in battery]
    passed = sum(r["pass"] for r in results)
    return {
        "schema": SCHEMA,
        "radii": dict(sorted(radii.items())),
        "configs": results,
        "summary": {"configs": len(results), "passed": passed, "pass": passed == len(results)},
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def format_summary(report: dict, timings: dict | None = None) -> str:
    head = f"{'name':<12} {'case':<15} {'N':>3} {'max':>4} {'bound':>5} {'lemmas':>14} {'lambda':>6} {'cell':>5}  result"
    lines = [head, "-" * len(head)]
    for r in report["configs"]:
        stat = [s["status"] for s in r["lemmas"]]
        lem = "n/a" if all(s == "NOT_APPLICABLE" for s in stat) else (
            "FAIL" if "FAIL" in stat else f"{stat.count('PASS')} pass")
        row = (f"{r['name']:<12} {r['case']['kind']:<15} {r['N']:>3} "
               f"{r['bound']['max_degree']:>4} {'ok' if r['bound']['pass'] else 'FAIL':>5} "
               f"{lem:>14} {'ok' if r['prop_7_4']['pass'] else 'FAIL':>6} "
               f"{'ok' if r['thm_7_5_prop_7_6']['pass'] else 'FAIL':>5}  "
               f"{'PASS' if r['pass'] else 'FAIL'}")
        if timings and r["name"] in timings:
            row += f"  ({timings[r['name']]:.1f}s)"
        lines.append(row)
    s = report["summary"]
    lines.append(f"{s['passed']}/{s['configs']} configurations pass")
    return "\n".join(lines)
