"""
Exhaustive checks of the case-by-case lemmas on length-bounded balls.

Each section (4, 5, 6) splits into three suites: descent statements about
single elements (``word``), length-additivity statements about triples
``x w y`` (``length``) and shifted H_<=0 memberships (``hecke``). Statements
are in the normalized labelling of :func:`classify_case`; a system given in
other labels is relabelled first and counterexamples are reported in the
normalized labels.

Notation inside clauses: ``x = x1 . ab`` means ``x`` ends in ``ab``
length-additively; any other juxtaposition is the plain group product.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _kernels
from .coxeter import INF, CoxeterSystem, classify_case, group_for
from .hecke import ProductSweeper, f_coeff

R_, S_, T_ = 1, 2, 4
_MASK = {"r": R_, "s": S_, "t": T_}
CEX_LIMIT = 20
INF_MENU_MAX = 6  # longest W_J element tried when m_J is infinite


@dataclass
class ClauseResult:
    id: str
    statement: str
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    count: int = 0

    def fail(self, **info):
        self.count += 1
        if len(self.counterexamples) < CEX_LIMIT:
            self.counterexamples.append(info)

    def to_json(self) -> dict:
        return {"id": self.id, "statement": self.statement, "checked": self.checked,
                "counterexample_count": self.count, "counterexamples": self.counterexamples}


@dataclass
class SuiteReport:
    config: dict
    suite: str
    universe: dict
    status: str  # PASS | FAIL | NOT_APPLICABLE
    clauses: list[ClauseResult] = field(default_factory=list)
    note: str = ""
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    @property
    def counterexamples(self) -> list:
        return [c for cl in self.clauses for c in cl.counterexamples]

    def to_json(self, timing: bool = False) -> dict:
        out = {"config": self.config, "suite": self.suite, "universe": self.universe,
               "status": self.status, "note": self.note,
               "clauses": [c.to_json() for c in self.clauses]}
        if timing:
            out["elapsed_s"] = round(self.elapsed, 3)
        return out


# --- shared context


class _Ctx:
    def __init__(self, system: CoxeterSystem, ball: int):
        self.S = system
        self.g = group_for(system)
        self.ball = ball
        self.n = self.g.size(ball)
        self.rd = self.g.rdesc
        self.ld = [self.g.ldesc(i) for i in range(self.n)]

    def el(self, word: str) -> int:
        return self.g.reduce(word)

    def w(self, i: int) -> str:
        return self.g.words[i]

    def prod(self, *idx: int) -> int:
        cur = idx[0]
        for j in idx[1:]:
            cur = self.g.product(cur, j)
        return cur

    def R(self, i: int) -> int:
        return self.g.rdesc[i]

    def L(self, i: int) -> int:
        return self.g.ldesc(i)

    def suffix(self, i: int, word: str) -> int:
        return self.g.has_suffix(i, word)

    def xs_with_R(self, allowed: int) -> list[int]:
        return [i for i in range(self.n) if not self.rd[i] & ~allowed]

    def ys_with_L(self, allowed: int) -> list[int]:
        return [i for i in range(self.n) if not self.ld[i] & ~allowed]

    def dihedral(self, a: str, b: str, min_len: int) -> list[int]:
        """Elements of ``W_ab`` of length >= ``min_len`` (capped for infinite bonds)."""
        m = self.S.m(a, b)
        top = INF_MENU_MAX if m == INF else m
        out = set()
        for k in range(min_len, top + 1):
            for first, second in ((a, b), (b, a)):
                out.add(self.el("".join(first if i % 2 == 0 else second for i in range(k))))
        return sorted(out)

    def w_J(self, a: str, b: str) -> int:
        m = self.S.m(a, b)
        return self.el("".join(a if i % 2 == 0 else b for i in range(m)))

    def weight(self, word: str) -> int:
        return sum(self.S.weight(c) for c in word)


def _fmt(mask: int) -> str:
    return "{" + ",".join(g for g, m in _MASK.items() if mask & m) + "}"


# --- word lemmas


def _word_clauses(ctx: _Ctx, table) -> list[ClauseResult]:
    out = []
    for cid, statement, pred in table:
        cl = ClauseResult(cid, statement)
        for i in range(ctx.n):
            res = pred(ctx, i)
            if res is None:
                continue
            cl.checked += 1
            if not res:
                cl.fail(w=ctx.w(i), R=_fmt(ctx.R(i)), L=_fmt(ctx.L(i)))
        out.append(cl)
    return out


def _if(cond, then):
    return then if cond else None


def _suffix_then(word, mask_absent):
    return lambda c, i: _if(c.suffix(i, word) >= 0, not c.R(i) & mask_absent)


WORD_4_1 = [
    ("L4.1(1)", "s in R(x) => r not in R(x)", lambda c, i: _if(c.R(i) & S_, not c.R(i) & R_)),
    ("L4.1(2)", "s in L(x) => r not in L(x)", lambda c, i: _if(c.L(i) & S_, not c.L(i) & R_)),
    ("L4.1(3)", "x = x1.st => r not in R(x)", _suffix_then("st", R_)),
    ("L4.1(4)", "x = ts.x1 => r not in L(x)",
     lambda c, i: _if(c.g.has_prefix(i, "ts") >= 0, not c.L(i) & R_)),
    ("L4.1(5)", "x = x1.rs => R(x) = {s}",
     lambda c, i: _if(c.suffix(i, "rs") >= 0, c.R(i) == S_)),
    ("L4.1(6)", "x = sr.x1 => L(x) = {s}",
     lambda c, i: _if(c.g.has_prefix(i, "sr") >= 0, c.L(i) == S_)),
]


def _tail_R(c, i, word, tail_mask):
    """``w = w1 . word`` with ``R(w1 s) = {s}``; ``w1 s`` is ``w`` minus its last letter."""
    if c.suffix(i, word) < 0:
        return False
    return c.R(c.g.rmul[i]["rst".index(word[-1])]) == tail_mask


WORD_5_1 = [
    ("L5.1(1)", "w = w1.ts => r not in R(w)", _suffix_then("ts", R_)),
    ("L5.1(2)", "w = w1.rs => t not in R(w)", _suffix_then("rs", T_)),
    ("L5.1(3)", "w = w1.st, R(w1 s) = {s} => r not in R(w)",
     lambda c, i: _if(_tail_R(c, i, "st", S_), not c.R(i) & R_)),
    ("L5.1(4)", "w = w1.sr, R(w1 s) = {s} => t not in R(w)",
     lambda c, i: _if(_tail_R(c, i, "sr", S_), not c.R(i) & T_)),
    ("L5.1(5)", "w = w1.tst => r not in R(w)", _suffix_then("tst", R_)),
    ("L5.1(6)", "w = w1.rsr => t not in R(w)", _suffix_then("rsr", T_)),
    ("L5.1(7)", "no w = w1.st = w2.sr",
     lambda c, i: not (c.suffix(i, "st") >= 0 and c.suffix(i, "sr") >= 0)),
    ("L5.1(8)", "L(w) in {r} => L(rt w_st w) = {r}",
     lambda c, i: _if(not c.L(i) & ~R_, c.L(c.prod(c.el("rt"), c.w_J("s", "t"), i)) == R_)),
    ("L5.1(9)", "L(w) in {t} => L(tr w_sr w) = {t}",
     lambda c, i: _if(not c.L(i) & ~T_, c.L(c.prod(c.el("tr"), c.w_J("s", "r"), i)) == T_)),
]

WORD_6_1 = [
    ("L6.1(1)", "no w = w1.st = w2.sr",
     lambda c, i: not (c.suffix(i, "st") >= 0 and c.suffix(i, "sr") >= 0)),
    ("L6.1(2)", "w = w1.srs => t not in R(w)", _suffix_then("srs", T_)),
    ("L6.1(3)", "w = w1.srsr => t not in R(w)", _suffix_then("srsr", T_)),
    ("L6.1(4)", "w = w1.ts => r not in R(w)", _suffix_then("ts", R_)),
    ("L6.1(5)", "w = w1.tsr => s not in R(w)", _suffix_then("tsr", S_)),
]


# --- length lemmas


class _Folder:
    """Length-additivity of ``x . word`` for many ``x`` at once."""

    def __init__(self, ctx: _Ctx, radius: int, backend=None):
        self.rmul, self.rdesc, _, _ = ctx.g.arrays(radius)
        self.backend = backend

    def __call__(self, xs, word: str) -> np.ndarray:
        letters = ["rst".index(ch) for ch in word]
        return _kernels.fold_additive(np.asarray(xs, dtype=np.int64), letters,
                                      self.rmul, self.rdesc, self.backend)


def _length_triples(ctx: _Ctx, cl: ClauseResult, fold: _Folder, xs, ws, ys, extra=None):
    """``l(x w y) = l(x) + l(w) + l(y)`` for all triples; ``extra`` checks more."""
    xs = list(xs)
    if not xs:
        return
    for w in ws:
        for y in ys:
            word = ctx.w(w) + ctx.w(y)
            ends = fold(xs, word)
            cl.checked += len(xs)
            for x, z in zip(xs, ends.tolist()):
                if z < 0:
                    cl.fail(x=ctx.w(x), w=ctx.w(w), y=ctx.w(y), reason="not length-additive")
                elif extra is not None:
                    why = extra(x, w, y, z)
                    if why:
                        cl.fail(x=ctx.w(x), w=ctx.w(w), y=ctx.w(y), reason=why)


def _length_4_2(ctx, fold):
    c1 = ClauseResult("L4.2(1)", "w in W_sr, l(w) >= 4, R(x), L(y) in {t} => l(xwy) additive")
    _length_triples(ctx, c1, fold, ctx.xs_with_R(T_), ctx.dihedral("s", "r", 4), ctx.ys_with_L(T_))
    c2 = ClauseResult("L4.2(2)", "R(x), L(y) in {s} => l(xtry) = l(xrty) = l(x)+l(y)+2")
    xs, ys = ctx.xs_with_R(S_), ctx.ys_with_L(S_)
    _length_triples(ctx, c2, fold, xs, [ctx.el("tr")], ys)
    c2b = ClauseResult("L4.2(2')", "same with the letters in the order rt")
    # tr = rt as elements, so fold the word rt explicitly
    for y in ys:
        ends = fold(xs, "rt" + ctx.w(y))
        c2b.checked += len(xs)
        for x, z in zip(xs, ends.tolist()):
            if z < 0:
                c2b.fail(x=ctx.w(x), y=ctx.w(y))
    c2.checked += c2b.checked
    c2.count += c2b.count
    c2.counterexamples += c2b.counterexamples[:CEX_LIMIT]
    c3 = ClauseResult("L4.2(3)", "w in W_st, l(w) >= 2, R(x), L(y) in {r} => l(xwy) additive")
    _length_triples(ctx, c3, fold, ctx.xs_with_R(R_), ctx.dihedral("s", "t", 2), ctx.ys_with_L(R_))
    return [c1, c2, c3]


def _length_5_2(ctx, fold):
    out = []
    c = ClauseResult("L5.2(1)", "w in W_st, l(w) >= 4, R(x), L(y) in {r} => l(xwy) additive")
    _length_triples(ctx, c, fold, ctx.xs_with_R(R_), ctx.dihedral("s", "t", 4), ctx.ys_with_L(R_))
    out.append(c)
    c = ClauseResult("L5.2(2)", "w in W_sr, l(w) >= 4, R(x), L(y) in {t} => l(xwy) additive")
    _length_triples(ctx, c, fold, ctx.xs_with_R(T_), ctx.dihedral("s", "r", 4), ctx.ys_with_L(T_))
    out.append(c)
    g = ctx.g
    r, s, t = 0, 1, 2
    c = ClauseResult("L5.2(3)", "R(x), L(y) in {s}, R(xt) = {t}, R(xr) = {r} => l(xtry) = l(x)+l(y)+2")
    xs = [x for x in ctx.xs_with_R(S_) if ctx.R(g.rmul_(x, t)) == T_ and ctx.R(g.rmul_(x, r)) == R_]
    _length_triples(ctx, c, fold, xs, [ctx.el("tr")], ctx.ys_with_L(S_))
    out.append(c)
    c = ClauseResult("L5.2(4)", "R(x), L(y) in {r}, R(xs) = {s} => l(xstsy) = l(x)+l(y)+3")
    xs = [x for x in ctx.xs_with_R(R_) if ctx.R(g.rmul_(x, s)) == S_]
    _length_triples(ctx, c, fold, xs, [ctx.el("sts")], ctx.ys_with_L(R_))
    out.append(c)
    c = ClauseResult("L5.2(5)", "R(x), L(y) in {t}, R(xs) = {s} => l(xsrsy) = l(x)+l(y)+3")
    xs = [x for x in ctx.xs_with_R(T_) if ctx.R(g.rmul_(x, s)) == S_]
    _length_triples(ctx, c, fold, xs, [ctx.el("srs")], ctx.ys_with_L(T_))
    out.append(c)
    c = ClauseResult("L5.2(7)", "R(x), L(y) in {r} => l(xtsty) = l(x)+l(y)+3")
    _length_triples(ctx, c, fold, ctx.xs_with_R(R_), [ctx.el("tst")], ctx.ys_with_L(R_))
    out.append(c)
    return out


def _length_6_2(ctx, fold):
    g = ctx.g
    ws = sorted(set(ctx.dihedral("s", "r", 6)) | {ctx.el("srsrs")})

    def descents(x, w, y, z):
        wy, xw = ctx.prod(w, y), ctx.prod(x, w)
        if g.rdesc[z] != g.rdesc[wy]:
            return f"R(xwy)={_fmt(g.rdesc[z])} != R(wy)={_fmt(g.rdesc[wy])}"
        if g.ldesc(z) != g.ldesc(xw):
            return f"L(xwy)={_fmt(g.ldesc(z))} != L(xw)={_fmt(g.ldesc(xw))}"
        return None

    c = ClauseResult("L6.2", "R(x), L(y) in {t}, w in W_sr with l(w) >= 6 or w = srsrs => "
                     "l(xwy) additive, R(xwy) = R(wy), L(xwy) = L(xw)")
    _length_triples(ctx, c, fold, ctx.xs_with_R(T_), ws, ctx.ys_with_L(T_), descents)
    return [c]


# --- hecke lemmas


class _Shifted:
    """Check ``v^-k T_X T_Y in H_<=0`` (or exact equality) over qualifying pairs."""

    def __init__(self, ctx: _Ctx, backend=None):
        self.ctx = ctx
        self.backend = backend

    def run(self, cl: ClauseResult, pairs: list[tuple[int, int, int, int]],
            shift: int | None, exact: Callable[[int, int], int] | None = None):
        """``pairs`` holds ``(x, y, X, Y)``; with ``exact`` the product must be
        the single term ``T_exact(x, y)``."""
        if not pairs:
            return
        ctx = self.ctx
        g = ctx.g
        radius = max(g.lengths[X] for _, _, X, _ in pairs) + max(g.lengths[Y] for *_, Y in pairs)
        sw = ProductSweeper(ctx.S, radius, self.backend)
        by_X: dict[int, list] = {}
        for x, y, X, Y in pairs:
            by_X.setdefault(X, []).append((x, y, Y))
        for X in sorted(by_X):
            items = by_X[X]
            off, prods = sw.products(X, [Y for *_, Y in items])
            for x, y, Y in items:
                sup, coef = prods[Y]
                cl.checked += 1
                if exact is not None:
                    want = exact(x, y)
                    ok = (len(sup) == 1 and sup[0] == want and coef[0, off] == 1
                          and np.count_nonzero(coef[0]) == 1)
                    if not ok:
                        cl.fail(x=ctx.w(x), y=ctx.w(y), reason="product is not a single T-term")
                    continue
                d = int(_kernels.row_degrees(coef, self.backend).max()) - off
                if d > shift:
                    cl.fail(x=ctx.w(x), y=ctx.w(y), degree=d, allowed=shift)


def _pairs(ctx: _Ctx, xs, ys, left, right):
    """``(x, y, x*left, right*y)`` for all combinations."""
    out = []
    for x in xs:
        X = ctx.prod(x, left)
        for y in ys:
            out.append((x, y, X, ctx.prod(right, y)))
    return out


def _hecke_5(ctx: _Ctx, backend):
    g, W = ctx.g, ctx.weight
    chk = _Shifted(ctx, backend)
    e = ctx.el("")
    out = []
    wst, wsr = ctx.w_J("s", "t"), ctx.w_J("s", "r")

    c = ClauseResult("L5.2(6)", "R(x), L(y) in {r} => v_r^-1 T_xsts T_y in H<=0")
    chk.run(c, _pairs(ctx, ctx.xs_with_R(R_), ctx.ys_with_L(R_), ctx.el("sts"), e), W("r"))
    out.append(c)
    c = ClauseResult("L5.3", "R(x), L(y) in {s} => v_s^-1 T_xtr T_y in H<=0")
    chk.run(c, _pairs(ctx, ctx.xs_with_R(S_), ctx.ys_with_L(S_), ctx.el("tr"), e), W("s"))
    out.append(c)
    c = ClauseResult("L5.4", "R(x) in {t}, L(y) in {s} => v_sr^-1 T_x.w_sr T_try in H<=0")
    chk.run(c, _pairs(ctx, ctx.xs_with_R(T_), ctx.ys_with_L(S_), wsr, ctx.el("tr")), W("sr"))
    out.append(c)
    pairs = _pairs(ctx, ctx.xs_with_R(R_), ctx.ys_with_L(S_), wst, ctx.el("tr"))
    c = ClauseResult("L5.5(a)", "R(x) in {r}, L(y) in {s} => v^-max(L(st),L(sr)) T_x.w_st T_try in H<=0")
    chk.run(c, pairs, max(W("st"), W("sr")))
    out.append(c)
    c = ClauseResult("L5.5(b)", "additionally L(ry) = {r} => v^-max(L(t),L(r)) T_x.w_st T_try in H<=0")
    sub = [p for p in pairs if ctx.L(g.lmul_(p[1], 0)) == R_]
    chk.run(c, sub, max(W("t"), W("r")))
    out.append(c)

    c = ClauseResult("L5.6", "c in W_st with l(c) <= m_st-2 or c = s w_st => degree bounds on "
                     "f_{w_st,c,st}, f_{w_st,c,ts} (L(t)), f_{w_st,c,tst} (2L(t)), f_{w_st,c,sts} (L(st))")
    m = ctx.S.m_st
    cs = [i for i in [ctx.el("")] + ctx.dihedral("s", "t", 1) if g.lengths[i] <= m - 2]
    cs.append(ctx.prod(ctx.el("s"), wst))
    bounds = {"st": W("t"), "ts": W("t"), "tst": 2 * W("t"), "sts": W("st")}
    for cc in sorted(set(cs)):
        for z, k in bounds.items():
            c.checked += 1
            d = f_coeff(ctx.S, wst, cc, ctx.el(z)).deg()
            if d > k:
                c.fail(c=ctx.w(cc), z=z, degree=d, allowed=k)
    out.append(c)
    return out


def _hecke_6(ctx: _Ctx, backend):
    g, W = ctx.g, ctx.weight
    chk = _Shifted(ctx, backend)
    e = ctx.el("")
    r, s, t = 0, 1, 2
    wst, wsr = ctx.w_J("s", "t"), ctx.w_J("s", "r")
    out = []

    xr, yr = ctx.xs_with_R(R_), ctx.ys_with_L(R_)
    sts = ctx.el("sts")
    c = ClauseResult("L6.3(1)", "R(x), L(y) in {r}, R(xs) = {s} => T_xsts T_y = T_xstsy")
    xs = [x for x in xr if ctx.R(g.rmul_(x, s)) == S_]
    chk.run(c, _pairs(ctx, xs, yr, sts, e), None, exact=lambda x, y: ctx.prod(x, sts, y))
    out.append(c)
    c = ClauseResult("L6.3(2)", "R(x), L(y) in {r}, R(xs) = {r,s} => v_r^-1 T_xsts T_y in H<=0")
    xs = [x for x in xr if ctx.R(g.rmul_(x, s)) == R_ | S_]
    chk.run(c, _pairs(ctx, xs, yr, sts, e), W("r"))
    out.append(c)

    xs_s, ys_s = ctx.xs_with_R(S_), ctx.ys_with_L(S_)
    tr = ctx.el("tr")
    Rxr = {x: ctx.R(g.rmul_(x, r)) for x in xs_s}
    Rxt = {x: ctx.R(g.rmul_(x, t)) for x in xs_s}
    Rxrs = {x: ctx.R(g.rmul_(g.rmul_(x, r), s)) for x in xs_s}
    c = ClauseResult("L6.4(1)", "R(x), L(y) in {s}, R(xr) != {s,r}, R(xt) != {s,t}, "
                     "R(xrs) != {s,r} => T_xtr T_y = T_xtry")
    xs = [x for x in xs_s if Rxr[x] != S_ | R_ and Rxt[x] != S_ | T_ and Rxrs[x] != S_ | R_]
    chk.run(c, _pairs(ctx, xs, ys_s, tr, e), None, exact=lambda x, y: ctx.prod(x, tr, y))
    out.append(c)
    for cid, cond, shift, text in (
            ("L6.4(2)", lambda x: Rxr[x] == S_ | R_, W("sr"), "R(xr) = {s,r} => v_sr^-1"),
            ("L6.4(3)", lambda x: Rxt[x] == S_ | T_, W("sr"), "R(xt) = {s,t} => v_sr^-1"),
            ("L6.4(4)", lambda x: Rxrs[x] == S_ | R_, W("r"), "R(xrs) = {s,r} => v_r^-1")):
        c = ClauseResult(cid, f"R(x), L(y) in {{s}}, {text} T_xtr T_y in H<=0")
        chk.run(c, _pairs(ctx, [x for x in xs_s if cond(x)], ys_s, tr, e), shift)
        out.append(c)

    c = ClauseResult("L6.5", "R(x) in {r}, L(y) in {t} => v_sr^-1 T_x.w_st T_w_sr.y in H<=0")
    chk.run(c, _pairs(ctx, xr, ctx.ys_with_L(T_), wst, wsr), W("sr"))
    out.append(c)
    c = ClauseResult("L6.6(1)", "R(x) in {s}, L(y) in {t} => v_rsr^-1 T_xtr T_w_sr.y in H<=0")
    chk.run(c, _pairs(ctx, xs_s, ctx.ys_with_L(T_), tr, wsr), W("rsr"))
    out.append(c)
    c = ClauseResult("L6.6(2)", "R(x) in {t}, L(y) in {s} => v_rsr^-1 T_x.w_sr T_try in H<=0")
    chk.run(c, _pairs(ctx, ctx.xs_with_R(T_), ys_s, wsr, tr), W("rsr"))
    out.append(c)
    c = ClauseResult("L6.7(1)", "R(x) in {s}, L(y) in {r} => v_srsr^-1 T_xtr T_w_st.y in H<=0")
    chk.run(c, _pairs(ctx, xs_s, yr, tr, wst), W("srsr"))
    out.append(c)
    c = ClauseResult("L6.7(2)", "R(x) in {r}, L(y) in {s} => v_srsr^-1 T_x.w_st T_try in H<=0")
    chk.run(c, _pairs(ctx, xr, ys_s, wst, tr), W("srsr"))
    out.append(c)
    return out


# --- applicability and runners


SECTIONS = {
    "4": {"case": "CASE3", "word": "L4.1", "length": "L4.2", "hecke": None},
    "5": {"case": "CASE4", "word": "L5.1", "length": "L5.2", "hecke": "L5.2(6),L5.3-L5.6"},
    "6": {"case": "CASE5", "word": "L6.1", "length": "L6.2", "hecke": "L6.3-L6.7"},
}


def _normalize(system: CoxeterSystem, section: str):
    shape = classify_case(system)
    want = SECTIONS[section]["case"]
    if shape.kind != want:
        return None, shape, f"needs {want}, system is {shape.kind}"
    norm = system.relabel(shape.relabeling)
    if section == "5" and norm.m_sr < 5:
        return None, shape, "needs m_sr >= 5"
    if section == "6" and norm.m_sr < 8:
        return None, shape, "needs m_sr >= 8"
    return norm, shape, ""


def _run(system, section, kind, ball, body) -> SuiteReport:
    suite = SECTIONS[section][kind]
    t0 = time.perf_counter()
    norm, shape, why = _normalize(system, section)
    universe = {"ball": ball, "relabeling": dict(sorted(shape.relabeling.items()))}
    if kind in ("length",):
        universe["infinite_bond_menu_max_len"] = INF_MENU_MAX
    if norm is None or suite is None:
        return SuiteReport(system.to_json(), suite or f"section {section} {kind}", universe,
                           "NOT_APPLICABLE", note=why or "no statements of this kind")
    clauses = body(_Ctx(norm, ball))
    status = "PASS" if all(c.count == 0 for c in clauses) else "FAIL"
    return SuiteReport(system.to_json(), suite, universe, status, clauses,
                       elapsed=time.perf_counter() - t0)


def _section_of(system: CoxeterSystem) -> str | None:
    kind = classify_case(system).kind
    for sec, info in SECTIONS.items():
        if info["case"] == kind:
            return sec
    return None


def suite_word_lemmas(system: CoxeterSystem, ball: int = 10, section: str | None = None) -> SuiteReport:
    section = section or _section_of(system) or "4"
    table = {"4": WORD_4_1, "5": WORD_5_1, "6": WORD_6_1}[section]

    def body(ctx):
        ctx.g.ensure(ball + 2 + 8)
        return _word_clauses(ctx, table)
    return _run(system, section, "word", ball, body)


def suite_length_lemmas(system: CoxeterSystem, ball: int = 10, section: str | None = None,
                        backend: str | None = None) -> SuiteReport:
    section = section or _section_of(system) or "4"
    fn = {"4": _length_4_2, "5": _length_5_2, "6": _length_6_2}[section]

    def body(ctx):
        menu = max(ctx.S.m_sr if ctx.S.m_sr != INF else INF_MENU_MAX,
                   ctx.S.m_st if ctx.S.m_st != INF else INF_MENU_MAX)
        return fn(ctx, _Folder(ctx, 2 * ball + menu, backend))
    return _run(system, section, "length", ball, body)


def suite_hecke_lemmas(system: CoxeterSystem, ball: int = 7, section: str | None = None,
                       backend: str | None = None) -> SuiteReport:
    section = section or _section_of(system) or "5"
    fn = {"4": None, "5": _hecke_5, "6": _hecke_6}[section]
    return _run(system, section, "hecke", ball, lambda ctx: fn(ctx, backend))


def run_section(system: CoxeterSystem, section: str | None = None, word_ball: int = 10,
                hecke_ball: int = 7, backend: str | None = None) -> list[SuiteReport]:
    """All three suites of a section; NOT_APPLICABLE where the case does not match."""
    section = section or _section_of(system)
    if section is None:
        return [SuiteReport(system.to_json(), "lemmas", {}, "NOT_APPLICABLE",
                            note=f"no case lemmas for {classify_case(system).kind}")]
    return [suite_word_lemmas(system, word_ball, section),
            suite_length_lemmas(system, word_ball, section, backend),
            suite_hecke_lemmas(system, hecke_ball, section, backend)]


def lemma_status(reports: list[SuiteReport]) -> dict[str, bool]:
    """Pass flag per lemma id (``L5.2(6)`` counts toward ``L5.2``)."""
    out: dict[str, bool] = {}
    for rep in reports:
        for cl in rep.clauses:
            lem = cl.id.split("(")[0]
            out[lem] = out.get(lem, True) and cl.count == 0
    return dict(sorted(out.items()))
