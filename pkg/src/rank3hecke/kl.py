"""
Bar involution, Kazhdan-Lusztig basis and the coefficients p, q, h.

``c_w = sum_y p_{y,w} T_y`` is found by a triangular solve: walking the
Bruhat interval below ``w`` from the top, each ``p_{y,w}`` is the unique
element of ``v^-1 Z[v^-1]`` cancelling the bar-defect collected so far.
:func:`kl_element_recursive` is a second, independent construction (left
multiplication by ``c_s`` followed by bar-invariant corrections) used as an
oracle in tests.
"""

from __future__ import annotations

import heapq
import threading

from .coxeter import CoxeterSystem, Element, group_for
from .hecke import HeckeElement, _product_vec, _rmul_vec, hmul
from .laurent import ONE, ZERO, LaurentPoly, quad, v_power


class KLDefectError(ArithmeticError):
    """The bar-defect had a part no element of v^-1 Z[v^-1] can cancel."""


class ScopeError(RuntimeError):
    pass


def _sym_from_nonneg(p: LaurentPoly) -> LaurentPoly:
    """The bar-invariant polynomial agreeing with ``p`` in degrees >= 0."""
    c = {}
    for e, a in p.items():
        if e >= 0:
            c[e] = a
            if e:
                c[-e] = a
    return LaurentPoly(c)


class KLTables:
    """Memo of ``bar(T_w)``, ``c_w`` (as p-rows), q-rows and h-rows.

    ``scope`` caps the length of any element whose ``c_w`` may be built.
    """

    def __init__(self, system: CoxeterSystem, scope: int = 8):
        self.system = system
        self.g = group_for(system)
        self.scope = scope
        self._bar_T: dict[int, dict[int, LaurentPoly]] = {0: {0: ONE}}
        self.p: dict[int, dict[int, LaurentPoly]] = {0: {0: ONE}}
        self.q: dict[int, dict[int, LaurentPoly]] = {}
        self.h: dict[tuple[int, int], dict[int, LaurentPoly]] = {}
        self._lock = threading.RLock()

    # --- bar involution

    def bar_T(self, w: int) -> dict[int, LaurentPoly]:
        """``bar(T_w)`` built as ``bar(T_w') * (T_a - (v_a - v_a^-1))`` for ``w = w'a``."""
        hit = self._bar_T.get(w)
        if hit is not None:
            return hit
        g = self.g
        chain = []
        cur = w
        while cur not in self._bar_T:
            chain.append(cur)
            cur = g.parent[cur]
        vec = self._bar_T[cur]
        for node in reversed(chain):
            a = g.last[node]
            nxt = _rmul_vec(g, vec, a)
            q = quad(self.system.weight(a))
            for y, c in vec.items():
                nxt[y] = nxt.get(y, ZERO) - c * q
            vec = {y: c for y, c in nxt.items() if c}
            self._bar_T[node] = vec
        return vec

    def bar_vec(self, vec: dict[int, LaurentPoly]) -> dict[int, LaurentPoly]:
        out: dict[int, LaurentPoly] = {}
        for w, a in vec.items():
            ab = a.bar()
            for y, c in self.bar_T(w).items():
                out[y] = out.get(y, ZERO) + ab * c
        return {y: c for y, c in out.items() if c}

    # --- canonical basis

    def _check_scope(self, w: int):
        if self.g.lengths[w] > self.scope:
            raise ScopeError(f"c_w for l(w)={self.g.lengths[w]} exceeds table scope {self.scope}")

    def c(self, w: int) -> dict[int, LaurentPoly]:
        """``c_w`` as ``{y: p_{y,w}}``, including ``p_{w,w} = 1``."""
        hit = self.p.get(w)
        if hit is not None:
            return hit
        self._check_scope(w)
        with self._lock:
            if w not in self.p:
                self.p[w] = self._solve(w)
        return self.p[w]

    def _solve(self, w: int) -> dict[int, LaurentPoly]:
        acc: dict[int, LaurentPoly] = dict(self.bar_T(w))
        heap = [-y for y in acc if y != w]
        heapq.heapify(heap)
        seen = set(acc)
        row = {w: ONE}
        while heap:
            y = -heapq.heappop(heap)
            D = acc.get(y, ZERO)
            if not D:
                continue
            if D.coeff_at(0) or D.bar() != -D:
                raise KLDefectError(f"defect {D} at y={self.g.words[y]!r}, w={self.g.words[w]!r}")
            p = D.negative_part()
            row[y] = p
            pb = p.bar()
            for z, c in self.bar_T(y).items():
                acc[z] = acc.get(z, ZERO) + pb * c
                if z not in seen:
                    seen.add(z)
                    heapq.heappush(heap, -z)
        return row

    def q_row(self, w: int) -> dict[int, LaurentPoly]:
        """``{y: q_{y,w}}`` with ``T_w = sum_y q_{y,w} c_y``."""
        hit = self.q.get(w)
        if hit is None:
            hit = self.q[w] = self.to_c_basis({w: ONE})
        return hit

    def to_c_basis(self, vec: dict[int, LaurentPoly]) -> dict[int, LaurentPoly]:
        """Rewrite a T-basis vector in the c-basis by stripping the top term."""
        rest = dict(vec)
        out: dict[int, LaurentPoly] = {}
        while rest:
            z = max(rest)
            a = rest[z]
            out[z] = a
            for y, p in self.c(z).items():
                v = rest.get(y, ZERO) - a * p
                if v:
                    rest[y] = v
                else:
                    rest.pop(y, None)
        return out

    def h_row(self, x: int, y: int) -> dict[int, LaurentPoly]:
        """``{z: h_{x,y,z}}`` with ``c_x c_y = sum_z h_{x,y,z} c_z``."""
        key = (x, y)
        hit = self.h.get(key)
        if hit is None:
            prod = self.c_product(x, y)
            hit = self.h[key] = self.to_c_basis(prod)
        return hit

    def c_product(self, x: int, y: int) -> dict[int, LaurentPoly]:
        """``c_x c_y`` in the T-basis."""
        g = self.g
        cx = self.c(x)
        memo: dict[int, dict] = {}
        out: dict[int, LaurentPoly] = {}
        for yy in sorted(self.c(y)):
            c = self.c(y)[yy]
            for z, a in _product_vec(g, cx, yy, memo).items():
                out[z] = out.get(z, ZERO) + a * c
        return {z: a for z, a in out.items() if a}

    def element(self, w: int) -> HeckeElement:
        return HeckeElement(self.system, self.c(w))


_TABLES: dict[CoxeterSystem, KLTables] = {}
_TABLES_LOCK = threading.Lock()


def tables_for(system: CoxeterSystem, scope: int = 8) -> KLTables:
    with _TABLES_LOCK:
        t = _TABLES.get(system)
        if t is None:
            t = _TABLES[system] = KLTables(system, scope)
        t.scope = max(t.scope, scope)
        return t


# --- public operations


def bar_hecke(system: CoxeterSystem, h: HeckeElement, tables: KLTables | None = None) -> HeckeElement:
    tables = tables or tables_for(system)
    return HeckeElement(system, tables.bar_vec(h.terms))


def kl_element(system: CoxeterSystem, w: Element | str, tables: KLTables | None = None) -> HeckeElement:
    tables = tables or tables_for(system)
    return tables.element(tables.g.idx(w))


def p_coeff(system, y, w, tables: KLTables | None = None) -> LaurentPoly:
    tables = tables or tables_for(system)
    g = tables.g
    return tables.c(g.idx(w)).get(g.idx(y), ZERO)


def q_coeff(system, y, w, tables: KLTables | None = None) -> LaurentPoly:
    tables = tables or tables_for(system)
    g = tables.g
    return tables.q_row(g.idx(w)).get(g.idx(y), ZERO)


def h_coeff(system: CoxeterSystem, x, y, z, tables: KLTables | None = None) -> LaurentPoly:
    tables = tables or tables_for(system)
    g = tables.g
    return tables.h_row(g.idx(x), g.idx(y)).get(g.idx(z), ZERO)


def kl_element_recursive(system: CoxeterSystem, w: Element | str,
                         _memo: dict | None = None) -> HeckeElement:
    """Oracle: ``c_w`` from ``c_s c_{sw}`` minus bar-invariant corrections.

    Uses only T-basis multiplication, never the bar involution.
    """
    g = group_for(system)
    memo = {} if _memo is None else _memo
    wi = g.idx(w)
    if wi in memo:
        return memo[wi]
    if wi == 0:
        res = HeckeElement(system, {0: ONE})
    else:
        a = "rst".index(g.words[wi][0])
        rest = g.lmul_(wi, a)
        La = system.weight(a)
        cs = HeckeElement(system, {g.idx("rst"[a]): ONE, 0: v_power(-La)})
        cur = hmul(cs, kl_element_recursive(system, g.element(rest), memo))
        while True:
            bad = [z for z, c in cur.terms.items() if z != wi and c.deg() >= 0]
            if not bad:
                break
            z = max(bad)
            mu = _sym_from_nonneg(cur.terms[z])
            cur = cur - kl_element_recursive(system, g.element(z), memo).scale(mu)
        res = cur
    memo[wi] = res
    return res


def a_truncated(system: CoxeterSystem, w: Element | str, search_ball: int,
                tables: KLTables | None = None) -> int | float:
    """``max deg h_{x,y,w}`` over ``x, y`` of length ``<= search_ball`` (exact)."""
    tables = tables or tables_for(system, 2 * search_ball)
    tables.scope = max(tables.scope, 2 * search_ball)
    g = tables.g
    wi = g.idx(w)
    n = g.size(search_ball)
    best = float("-inf")
    lw = g.lengths[wi]
    for x in range(n):
        for y in range(n):
            # h_{x,y,w} needs w <= some z in the support of T_x T_y
            if g.lengths[x] + g.lengths[y] < lw:
                continue
            d = tables.h_row(x, y).get(wi, ZERO).deg()
            if d > best:
                best = d
    return best


def beta_gamma(system: CoxeterSystem, x, y, z, search_ball: int = 3,
               tables: KLTables | None = None) -> tuple[int, int]:
    """``(beta, gamma)``: leading coefficients of ``f_{x,y,z^-1}`` at ``N`` and
    of ``h_{x,y,z^-1}`` at ``a_truncated(z)``."""
    from .hecke import compute_bound, f_coeff

    tables = tables or tables_for(system, 2 * search_ball)
    g = tables.g
    zi = g.inv[g.idx(z)]
    N = compute_bound(system).N
    beta = f_coeff(system, x, y, zi).coeff_at(N)
    a = a_truncated(system, z, search_ball, tables)
    gamma = h_coeff(system, x, y, zi, tables).coeff_at(a) if a != float("-inf") else 0
    return beta, gamma
