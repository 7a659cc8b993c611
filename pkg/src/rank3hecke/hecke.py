"""
The Hecke algebra in its T-basis.

Two evaluation paths share one algebra:

* the exact path keeps coefficients as :class:`LaurentPoly` and multiplies
  one generator at a time (:func:`t_mult_gen`, :func:`t_mult`, :func:`hmul`);
* :class:`ProductSweeper` computes ``T_x T_y`` for many ``y`` at once over a
  prepared ball, extending the product of the prefix of ``y`` by its last
  letter, with int64 array kernels.

The exact path is the reference; tests hold the two paths equal.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _kernels
from .coxeter import (GENS, CoxeterGroup, CoxeterSystem, Element, Side,
                      group_for, longest_element)
from .laurent import ONE, ZERO, LaurentPoly, quad

_GI = {g: i for i, g in enumerate(GENS)}


class HeckeElement:
    """A finite T-basis combination ``sum c_w T_w``.

    ``terms`` maps element indices of ``group_for(system)`` to nonzero
    coefficients and is never mutated after construction.
    """
    __slots__ = ("system", "terms")

    def __init__(self, system: CoxeterSystem, terms: dict[int, LaurentPoly] | None = None):
        self.system = system
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def T(cls, system: CoxeterSystem, w: Element | str) -> HeckeElement:
        """``T_w``; a plain string is read as a (possibly non-reduced) word."""
        g = group_for(system)
        return cls(system, {g.reduce(w) if isinstance(w, str) else g.idx(w): ONE})

    @property
    def group(self) -> CoxeterGroup:
        return group_for(self.system)

    @property
    def support(self) -> dict[Element, LaurentPoly]:
        g = self.group
        return {g.element(w): self.terms[w] for w in sorted(self.terms)}

    def coeff(self, w: Element | str | int) -> LaurentPoly:
        return self.terms.get(self.group.idx(w), ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def max_degree(self):
        return max((c.deg() for c in self.terms.values()), default=float("-inf"))

    def __add__(self, other: HeckeElement) -> HeckeElement:
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return HeckeElement(self.system, out)

    def __sub__(self, other: HeckeElement) -> HeckeElement:
        return self + other.scale(-1)

    def scale(self, c: LaurentPoly | int) -> HeckeElement:
        return HeckeElement(self.system, {w: a * c for w, a in self.terms.items()})

    def bar_coeffs(self) -> HeckeElement:
        return HeckeElement(self.system, {w: a.bar() for w, a in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.system == other.system and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        g = self.group
        parts = []
        for w in sorted(self.terms, reverse=True):
            parts.append(f"({self.terms[w]})*T_{g.words[w] or 'e'}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self) -> list[dict]:
        g = self.group
        return [{"w": g.words[w], "coeff": str(self.terms[w])}
                for w in sorted(self.terms, reverse=True)]


# --- exact path


def _gen(a) -> int:
    if isinstance(a, int):
        return a
    if a not in _GI:
        raise ValueError(f"unknown generator {a!r}")
    return _GI[a]


def _rmul_vec(g: CoxeterGroup, vec: dict[int, LaurentPoly], a: int) -> dict[int, LaurentPoly]:
    q = quad(g.system.weight(a))
    out: dict[int, LaurentPoly] = {}
    for w, c in vec.items():
        wa = g.rmul_(w, a)
        out[wa] = out.get(wa, ZERO) + c
        if g.rdesc[w] >> a & 1:
            out[w] = out.get(w, ZERO) + c * q
    return {w: c for w, c in out.items() if c}


def _lmul_vec(g: CoxeterGroup, vec: dict[int, LaurentPoly], a: int) -> dict[int, LaurentPoly]:
    q = quad(g.system.weight(a))
    out: dict[int, LaurentPoly] = {}
    for w, c in vec.items():
        aw = g.lmul_(w, a)
        out[aw] = out.get(aw, ZERO) + c
        if g.ldesc(w) >> a & 1:
            out[w] = out.get(w, ZERO) + c * q
    return {w: c for w, c in out.items() if c}


def t_mult_gen(system: CoxeterSystem, h: HeckeElement, a, side: Side | str = Side.RIGHT) -> HeckeElement:
    g = group_for(system)
    a = _gen(a)
    if Side(side) is Side.RIGHT:
        return HeckeElement(system, _rmul_vec(g, h.terms, a))
    return HeckeElement(system, _lmul_vec(g, h.terms, a))


def _product_vec(g: CoxeterGroup, left: dict[int, LaurentPoly], y: int,
                 memo: dict[int, dict] | None = None) -> dict[int, LaurentPoly]:
    """``left * T_y``, memoized along the prefix chain of ``y``."""
    if y == 0:
        return left
    if memo is not None and y in memo:
        return memo[y]
    chain = []
    cur = y
    while cur != 0 and (memo is None or cur not in memo):
        chain.append(cur)
        cur = g.parent[cur]
    vec = left if cur == 0 else memo[cur]
    for node in reversed(chain):
        vec = _rmul_vec(g, vec, g.last[node])
        if memo is not None:
            memo[node] = vec
    return vec


def t_mult(system: CoxeterSystem, x: Element | str, y: Element | str) -> HeckeElement:
    """``T_x T_y``, folding generator multiplications over the word of ``y``."""
    g = group_for(system)
    return HeckeElement(system, _product_vec(g, {g.idx(x): ONE}, g.idx(y)))


def hmul(h1: HeckeElement, h2: HeckeElement) -> HeckeElement:
    """Product of two arbitrary T-basis combinations."""
    system = h1.system
    g = group_for(system)
    memo: dict[int, dict] = {}
    out: dict[int, LaurentPoly] = {}
    for y in sorted(h2.terms):
        c = h2.terms[y]
        for w, a in _product_vec(g, h1.terms, y, memo).items():
            out[w] = out.get(w, ZERO) + a * c
    return HeckeElement(system, out)


def f_coeff(system: CoxeterSystem, x, y, z) -> LaurentPoly:
    """Structure constant: coefficient of ``T_z`` in ``T_x T_y``."""
    return t_mult(system, x, y).coeff(z)


def in_H_leq0(h: HeckeElement) -> bool:
    return all(c.deg() <= 0 for c in h.terms.values())


def in_H_leq0_shifted(h: HeckeElement, k: int) -> bool:
    """Whether ``v^-k h`` lies in the Z[v^-1]-span of the T-basis."""
    return all(c.deg() <= k for c in h.terms.values())


def in_H_lt0(h: HeckeElement) -> bool:
    return all(c.deg() <= -1 for c in h.terms.values())


# --- the bound


@dataclass(frozen=True)
class BoundInfo:
    N: int
    breakdown: tuple[tuple[str, str, int], ...]  # (J, w_J, L(w_J)) for finite W_J
    M: tuple[Element, ...]

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "breakdown": [{"J": J, "w_J": w, "L": L} for J, w, L in self.breakdown],
            "M": [u.word for u in self.M],
        }


def compute_bound(system: CoxeterSystem) -> BoundInfo:
    """Max of ``L(w_J)`` over nonempty ``J`` with ``W_J`` finite."""
    rows = []
    for k in (1, 2, 3):
        for J in combinations(GENS, k):
            hit = longest_element(system, J)
            if hit is not None:
                rows.append(("".join(J), hit[0].word, hit[1]))
    N = max(L for _, _, L in rows)
    M = sorted({Element(w) for _, w, L in rows if L == N})
    return BoundInfo(N, tuple(rows), tuple(M))


# --- array sweep


class ProductSweeper:
    """``T_x T_y`` for a fixed ``x`` and many ``y`` over a prepared ball.

    ``radius`` must bound ``l(x) + l(y)`` for every product requested.
    """

    def __init__(self, system: CoxeterSystem, radius: int, backend: str | None = None):
        self.system = system
        self.g = group_for(system)
        self.rmul, self.rdesc, self.lengths, self.wts = self.g.arrays(radius)
        self.radius = radius
        self.backend = backend
        self._local = threading.local()
        self.weights = system.weights

    def _scratch(self):
        s = getattr(self._local, "s", None)
        if s is None:
            s = self._local.s = _kernels.Scratch(self.rmul.shape[0])
        return s

    def products(self, x: int, ys) -> tuple[int, dict[int, tuple[np.ndarray, np.ndarray]]]:
        """Returns ``(off, {y: (sup, coef)})``; column ``k`` holds ``v^(k - off)``."""
        g = self.g
        ys = sorted(set(int(y) for y in ys))
        if not ys:
            return 0, {}
        need = set()
        for y in ys:
            cur = y
            while cur > 0 and cur not in need:
                need.add(cur)
                cur = g.parent[cur]
        off = int(max(self.wts[y] for y in ys)) if ys else 0
        width = 2 * off + 1
        base = np.zeros((1, width), dtype=np.int64)
        base[0, off] = 1
        states = {0: (np.array([x], dtype=np.int64), base)}
        scratch = self._scratch()
        wanted = set(ys)
        out = {}
        if 0 in wanted:
            out[0] = states[0]
        # children are visited after parents because indices follow length
        for y in sorted(need):
            sup, coef = states[g.parent[y]]
            a = g.last[y]
            states[y] = _kernels.right_mult_gen(sup, coef, a, self.weights[a],
                                                self.rmul, self.rdesc, scratch, self.backend)
            if y in wanted:
                out[y] = states[y]
        return off, out

    def max_shift(self, x: int, ys) -> dict[int, int]:
        """``max_z deg f_{x,y,z}`` per ``y``."""
        off, prods = self.products(x, ys)
        res = {}
        for y, (sup, coef) in prods.items():
            d = _kernels.row_degrees(coef, self.backend)
            res[y] = int(d.max()) - off if len(d) else -(1 << 30)
        return res


def arrays_to_hecke(system: CoxeterSystem, sup, coef, off: int) -> HeckeElement:
    terms = {}
    for w, row in zip(sup.tolist(), coef.tolist()):
        terms[w] = LaurentPoly({k - off: c for k, c in enumerate(row) if c})
    return HeckeElement(system, terms)


# --- verification


@dataclass
class _Acc:
    max_degree: float = float("-inf")
    witnesses: list = field(default_factory=list)
    bound: list = field(default_factory=list)
    fact_a: list = field(default_factory=list)
    fact_b: list = field(default_factory=list)
    pairs: int = 0
    triples: int = 0


WITNESS_LIMIT = 20


def _scan_x(sw: ProductSweeper, x: int, ny: int, N: int, inv_x: int) -> _Acc:
    acc = _Acc()
    off, prods = sw.products(x, range(ny))
    wts = sw.wts
    Lx = int(wts[x])
    for y in range(ny):
        sup, coef = prods[y]
        acc.pairs += 1
        acc.triples += len(sup)
        degs = _kernels.row_degrees(coef, sw.backend) - off
        top = int(degs.max())
        if top > acc.max_degree:
            acc.max_degree = top
            acc.witnesses = []
        if top == acc.max_degree and len(acc.witnesses) < WITNESS_LIMIT:
            for z in sup[degs == top].tolist():
                if len(acc.witnesses) < WITNESS_LIMIT:
                    acc.witnesses.append((x, y, z))
        if top > N:
            for z in sup[degs > N].tolist():
                if len(acc.bound) < WITNESS_LIMIT:
                    acc.bound.append((x, y, z))
        # f_{x,y,e} is 1 when x = y^-1 and 0 otherwise
        has_e = len(sup) and sup[0] == 0
        want_e = inv_x == y
        if has_e != want_e or (has_e and not (coef[0, off] == 1 and np.count_nonzero(coef[0]) == 1)):
            acc.fact_a.append((x, y, 0))
        cap = np.minimum(np.minimum(Lx, wts[y]), wts[sup])
        bad = degs > cap
        if bad.any():
            for z in sup[bad].tolist():
                acc.fact_b.append((x, y, z))
    return acc


def verify_bound(system: CoxeterSystem, x_max_len: int, y_max_len: int, *,
                 threads: int = 1, bound_override: int | None = None,
                 backend: str | None = None) -> dict:
    """Exhaustive check of ``v^-N T_x T_y in H_<=0`` and of the two degree facts.

    ``bound_override`` replaces ``N`` in the membership test (a test hook).
    """
    info = compute_bound(system)
    N = info.N if bound_override is None else bound_override
    g = group_for(system)
    sw = ProductSweeper(system, x_max_len + y_max_len, backend)
    nx, ny = g.size(x_max_len), g.size(y_max_len)

    def run(x):
        return _scan_x(sw, x, ny, N, g.inv[x])

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(run, range(nx)))
    else:
        parts = [run(x) for x in range(nx)]
    total = _Acc()
    for p in parts:  # merge in x order, so the result is schedule independent
        total.pairs += p.pairs
        total.triples += p.triples
        if p.max_degree > total.max_degree:
            total.max_degree = p.max_degree
            total.witnesses = []
        if p.max_degree == total.max_degree:
            total.witnesses.extend(p.witnesses[:WITNESS_LIMIT - len(total.witnesses)])
        total.bound.extend(p.bound[:WITNESS_LIMIT - len(total.bound)])
        total.fact_a.extend(p.fact_a)
        total.fact_b.extend(p.fact_b)

    w = g.words
    trip = lambda t: [w[t[0]], w[t[1]], w[t[2]]]
    sharp = []
    for u in info.M:
        d = f_coeff(system, u, u, u).deg()
        sharp.append({"x": u.word, "y": u.word, "z": u.word, "degree": d})
    in_ball = total.max_degree == N
    report = {
        "config": system.to_json(),
        "radii": {"x_max_len": x_max_len, "y_max_len": y_max_len},
        **info.to_json(),
        "bound_checked": N,
        "pairs_checked": total.pairs,
        "triples_checked": total.triples,
        "max_degree": total.max_degree,
        "witnesses": [trip(t) for t in total.witnesses],
        "bound_violations": [trip(t) for t in total.bound],
        "fact_a_violations": [trip(t) for t in total.fact_a[:WITNESS_LIMIT]],
        "fact_b_violations": [trip(t) for t in total.fact_b[:WITNESS_LIMIT]],
        "fact_a_violation_count": len(total.fact_a),
        "fact_b_violation_count": len(total.fact_b),
        "sharpness": {
            "max_attained_in_ball": in_ball,
            "witnesses": sharp,
            "sharp": in_ball or any(s["degree"] == N for s in sharp),
        },
    }
    report["pass"] = (not total.bound and not total.fact_a and not total.fact_b
                      and report["sharpness"]["sharp"] and total.max_degree <= N)
    return report


def verify_bound_exact(system: CoxeterSystem, x_max_len: int, y_max_len: int) -> dict:
    """Slow LaurentPoly reference for :func:`verify_bound` (small balls only)."""
    info = compute_bound(system)
    g = group_for(system)
    g.ensure(x_max_len + y_max_len)
    nx, ny = g.size(x_max_len), g.size(y_max_len)
    top = float("-inf")
    bad_a = bad_b = bad_n = 0
    for x in range(nx):
        memo: dict[int, dict] = {}
        for y in range(ny):
            vec = _product_vec(g, {x: ONE}, y, memo)
            e = vec.get(0, ZERO)
            if e != (ONE if g.inv[x] == y else ZERO):
                bad_a += 1
            for z, c in vec.items():
                d = c.deg()
                top = max(top, d)
                if d > info.N:
                    bad_n += 1
                if d > min(g.wts[x], g.wts[y], g.wts[z]):
                    bad_b += 1
    return {"N": info.N, "max_degree": top, "bound_violations": bad_n,
            "fact_a_violations": bad_a, "fact_b_violations": bad_b}
