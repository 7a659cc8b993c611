"""JSON configuration: bonds (0 means infinity), weights, radii, caps."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .coxeter import DEFAULT_BALL_CAP, CoxeterSystem, InvalidSystem

DEFAULT_RADII = {
    "bound": 6,        # x and y balls for verify_bound
    "word": 10,        # word and length lemma suites
    "hecke": 7,        # Hecke lemma suites
    "lambda": 5,       # Lambda ball for the a-function check
    "witness": 8,      # search ball for the a-function check
    "cells": 5,        # ball for the w_J witness and coset checks
}


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    system: CoxeterSystem
    radii: dict = field(default_factory=lambda: dict(DEFAULT_RADII))
    cap: int = DEFAULT_BALL_CAP
    output: str | None = None
    name: str = ""


def _int(v, what):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{what} must be an integer, got {v!r}")
    return v


def system_from_dict(d: dict) -> CoxeterSystem:
    try:
        b, w = d["bonds"], d["weights"]
        bonds = {k: _int(b[k], k) for k in ("m_sr", "m_st", "m_rt")}
        weights = tuple(_int(w[g], f"weight {g}") for g in "rst")
    except KeyError as exc:
        raise ConfigError(f"missing field {exc}") from None
    for k, m in bonds.items():
        if m != 0 and m < 2:
            raise ConfigError(f"{k}={m}: bond orders are >= 2, or 0 for infinity")
    try:
        return CoxeterSystem(bonds["m_sr"], bonds["m_st"], bonds["m_rt"], weights)
    except InvalidSystem as exc:
        raise ConfigError(str(exc)) from None


def config_from_dict(d: dict) -> Config:
    system = system_from_dict(d)
    radii = dict(DEFAULT_RADII)
    for k, v in (d.get("radii") or {}).items():
        if k not in DEFAULT_RADII:
            raise ConfigError(f"unknown radius {k!r}; known: {sorted(DEFAULT_RADII)}")
        if _int(v, f"radius {k}") < 0:
            raise ConfigError(f"radius {k} must be >= 0")
        radii[k] = v
    cap = _int(d.get("cap", DEFAULT_BALL_CAP), "cap")
    return Config(system, radii, cap, d.get("output"), d.get("name", ""))


def load_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None


def load_battery(d: dict) -> list[Config]:
    if "battery" not in d:
        return [config_from_dict(d)]
    out = []
    for i, entry in enumerate(d["battery"]):
        cfg = config_from_dict({**{k: v for k, v in d.items() if k != "battery"}, **entry})
        cfg.name = cfg.name or f"config{i + 1}"
        out.append(cfg)
    return out
