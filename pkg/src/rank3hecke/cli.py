"""Command-line entry point. JSON to stdout unless ``--pretty``.

Exit status: 0 pass, 1 a check failed, 2 invalid configuration or input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import Config, ConfigError, config_from_dict, load_battery, load_json

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class InputError(ValueError):
    pass


def _element(text: str) -> str:
    word = "" if text in ("e", "''", '""') else text
    bad = sorted(set(word) - set("rst"))
    if bad:
        raise InputError(f"malformed element {text!r}: unknown letters {bad} (use r, s, t or e)")
    return word


def _build_config(args) -> Config:
    d: dict = {}
    if args.config:
        raw = load_json(args.config)
        if "battery" in raw:
            raw = {k: v for k, v in raw.items() if k != "battery"} | raw["battery"][0]
        d = raw
    bonds = dict(d.get("bonds", {}))
    weights = dict(d.get("weights", {}))
    for flag, key in (("m_sr", "m_sr"), ("m_st", "m_st"), ("m_rt", "m_rt")):
        v = getattr(args, flag)
        if v is not None:
            bonds[key] = v
    for g in "rst":
        v = getattr(args, f"w_{g}")
        if v is not None:
            weights[g] = v
    bonds.setdefault("m_rt", 2)
    for g in "rst":
        weights.setdefault(g, 1)
    missing = [k for k in ("m_sr", "m_st") if k not in bonds]
    if missing:
        raise ConfigError(f"bond(s) {missing} not given (use --config or --m-sr/--m-st)")
    return config_from_dict({**d, "bonds": bonds, "weights": weights})


def _emit(args, payload: dict, text: str | None = None):
    if args.pretty:
        print(text if text is not None else _pretty(payload))
    else:
        print(json.dumps(payload, sort_keys=True, indent=None if args.compact else 2))


def _pretty(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return pad + ", ".join(str(v) for v in obj)
        return "\n".join(_pretty(v, indent) + ("\n" + pad + "-" if i < len(obj) - 1 else "")
                         for i, v in enumerate(obj))
    return f"{pad}{obj}"


# --- subcommands


def cmd_classify(args, cfg):
    from .coxeter import classify_case
    shape = classify_case(cfg.system)
    _emit(args, {"config": cfg.system.to_json(), "case": shape.to_json()},
          f"{shape.kind}" + (f" ({shape.note})" if shape.note else ""))
    return EXIT_OK


def cmd_ball(args, cfg):
    from .coxeter import ball_levels
    n = args.max_len if args.max_len is not None else 4
    levels = ball_levels(cfg.system, n)
    payload = {"config": cfg.system.to_json(), "max_len": n,
               "counts": [len(lv) for lv in levels],
               "elements": [x.word for lv in levels for x in lv]}
    _emit(args, payload, "\n".join(f"{k}: " + " ".join(x.word or "e" for x in lv)
                                   for k, lv in enumerate(levels)))
    return EXIT_OK


def cmd_mult(args, cfg):
    from .coxeter import normal_form
    from .hecke import t_mult
    x, y = normal_form(cfg.system, args.x), normal_form(cfg.system, args.y)
    h = t_mult(cfg.system, x, y)
    _emit(args, {"x": x.word, "y": y.word, "product": h.to_json(), "text": str(h)}, str(h))
    return EXIT_OK


def cmd_f(args, cfg):
    from .coxeter import normal_form
    from .hecke import f_coeff
    x, y, z = (normal_form(cfg.system, w) for w in (args.x, args.y, args.z))
    c = f_coeff(cfg.system, x, y, z)
    d = c.deg()
    _emit(args, {"x": x.word, "y": y.word, "z": z.word, "f": str(c),
                 "degree": None if c.is_zero() else d}, str(c))
    return EXIT_OK


def cmd_bound(args, cfg):
    from .hecke import compute_bound
    info = compute_bound(cfg.system)
    _emit(args, {"config": cfg.system.to_json(), **info.to_json()}, f"N = {info.N}")
    return EXIT_OK


def cmd_verify(args, cfg):
    from .hecke import verify_bound
    n = args.max_len if args.max_len is not None else cfg.radii["bound"]
    rep = verify_bound(cfg.system, n, n, threads=args.threads)
    _emit(args, rep)
    return EXIT_OK if rep["pass"] else EXIT_FAIL


def cmd_cw(args, cfg):
    from .coxeter import normal_form
    from .kl import kl_element
    w = normal_form(cfg.system, args.w)
    c = kl_element(cfg.system, w)
    _emit(args, {"w": w.word, "c_w": c.to_json(), "text": str(c)}, str(c))
    return EXIT_OK


def cmd_h(args, cfg):
    from .coxeter import normal_form
    from .kl import h_coeff
    x, y, z = (normal_form(cfg.system, w) for w in (args.x, args.y, args.z))
    c = h_coeff(cfg.system, x, y, z)
    _emit(args, {"x": x.word, "y": y.word, "z": z.word, "h": str(c),
                 "degree": None if c.is_zero() else c.deg()}, str(c))
    return EXIT_OK


def cmd_afn(args, cfg):
    from .coxeter import normal_form
    from .kl import a_truncated
    w = normal_form(cfg.system, args.w)
    b = args.max_len if args.max_len is not None else 3
    a = a_truncated(cfg.system, w, b)
    a = None if a == float("-inf") else a
    _emit(args, {"w": w.word, "search_ball": b, "a_truncated": a}, f"a({w.word or 'e'}) >= {a}")
    return EXIT_OK


def cmd_lambda(args, cfg):
    from .cells import lowest_cell_sets
    from .hecke import compute_bound
    b = args.max_len if args.max_len is not None else cfg.radii["lambda"]
    M, lam = lowest_cell_sets(cfg.system, b)
    _emit(args, {"config": cfg.system.to_json(), "N": compute_bound(cfg.system).N, "ball": b,
                 "M": [u.word for u in M], "lambda": [w.word for w in lam]})
    return EXIT_OK


def cmd_cells(args, cfg):
    from .cells import cell_graph
    b = args.max_len if args.max_len is not None else 4
    cg = cell_graph(cfg.system, b)
    if args.edges:
        with open(args.edges, "w") as fh:
            fh.write(cg.to_edgelist())
    _emit(args, {"config": cfg.system.to_json(), "ball": b, **cg.to_json()})
    return EXIT_OK


def cmd_lemmas(args, cfg):
    from .lemmas import run_section
    section = None if args.section == "auto" else args.section
    reps = run_section(cfg.system, section, word_ball=args.word_ball or cfg.radii["word"],
                       hecke_ball=args.hecke_ball or cfg.radii["hecke"])
    payload = {"suites": [r.to_json() for r in reps]}
    text = "\n".join(f"{r.suite:<20} {r.status}" + (f"  {r.note}" if r.note else "") for r in reps)
    _emit(args, payload, text)
    return EXIT_FAIL if any(r.status == "FAIL" for r in reps) else EXIT_OK


def cmd_campaign(args, cfg_unused):
    from .campaign import DEFAULT_BATTERY, dumps, entries_from_configs, format_summary, run_campaign
    radii = {}
    if args.config:
        cfgs = load_battery(load_json(args.config))
        battery = entries_from_configs(cfgs)
        radii = cfgs[0].radii if cfgs else {}
    else:
        battery = DEFAULT_BATTERY
    if args.max_len is not None:
        radii = {**radii, "bound": args.max_len}
    timings = {} if args.timings else None
    rep = run_campaign(battery, radii, threads=args.threads, timings=timings)
    text = dumps(rep)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    if args.pretty or args.out:
        print(format_summary(rep, timings))
    else:
        sys.stdout.write(text)
        if timings is not None:
            print(format_summary(rep, timings), file=sys.stderr)
    return EXIT_OK if rep["summary"]["pass"] else EXIT_FAIL


# --- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--m-sr", dest="m_sr", type=int, help="bond order m_sr (0 = infinity)")
    common.add_argument("--m-st", dest="m_st", type=int, help="bond order m_st (0 = infinity)")
    common.add_argument("--m-rt", dest="m_rt", type=int, help="bond order m_rt (default 2)")
    common.add_argument("--w-r", dest="w_r", type=int, help="weight L(r)")
    common.add_argument("--w-s", dest="w_s", type=int, help="weight L(s)")
    common.add_argument("--w-t", dest="w_t", type=int, help="weight L(t)")
    common.add_argument("--max-len", dest="max_len", type=int, help="ball radius for the command")
    common.add_argument("--pretty", action="store_true", help="human readable output")
    common.add_argument("--compact", action="store_true", help="single-line JSON")
    common.add_argument("--threads", type=int, default=1)

    p = argparse.ArgumentParser(prog="rank3hecke", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)
    commands = {
        "classify": ([], cmd_classify, "case shape and relabeling"),
        "ball": ([], cmd_ball, "enumerate the ball of radius --max-len"),
        "mult": (["x", "y"], cmd_mult, "T_x T_y in the T-basis"),
        "f": (["x", "y", "z"], cmd_f, "structure constant f_{x,y,z}"),
        "bound": ([], cmd_bound, "the bound N and its breakdown"),
        "verify": ([], cmd_verify, "exhaustive bound check over a ball"),
        "cw": (["w"], cmd_cw, "Kazhdan-Lusztig element c_w"),
        "h": (["x", "y", "z"], cmd_h, "structure constant h_{x,y,z}"),
        "afn": (["w"], cmd_afn, "truncated a-function"),
        "lambda": ([], cmd_lambda, "the sets M and Lambda on a ball"),
        "cells": ([], cmd_cells, "cell preorder graphs and their SCCs"),
        "lemmas": ([], cmd_lemmas, "case lemma suites"),
        "campaign": ([], cmd_campaign, "run the configuration battery"),
    }
    for name, (pos, fn, help_) in commands.items():
        sp = sub.add_parser(name, parents=[common], help=help_)
        for a in pos:
            sp.add_argument(a, type=_element_arg)
        sp.set_defaults(fn=fn)
        if name == "lemmas":
            sp.add_argument("section", nargs="?", default="auto", choices=["4", "5", "6", "auto"])
            sp.add_argument("--word-ball", type=int)
            sp.add_argument("--hecke-ball", type=int)
        if name == "cells":
            sp.add_argument("--edges", help="write the edge list here")
        if name == "campaign":
            sp.add_argument("--out", help="write the JSON report here")
            sp.add_argument("--timings", action="store_true", help="per-config seconds in the summary")
    return p


def _element_arg(text: str) -> str:
    try:
        return _element(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = None if args.cmd == "campaign" else _build_config(args)
        return args.fn(args, cfg)
    except (ConfigError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main_exit():  # console script
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()
