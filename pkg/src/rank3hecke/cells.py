"""
The lowest two-sided cell: the sets M and Lambda, witness checks, cell graphs.

Deciding ``a_truncated(w, b) == N`` does not need the KL basis. Expanding
``c_x c_y`` through ``p`` and ``q``, every off-diagonal ``p`` or ``q`` lowers
the degree by at least one, so once ``deg f_{x',y',z} <= N`` holds on the
ball (checked during the same scan) the degree-N coefficient of
``h_{x,y,w}`` equals that of ``f_{x,y,w}``. :func:`check_prop_7_4` therefore
scans T-basis products only; :func:`rank3hecke.kl.a_truncated` is the exact
version, and tests hold the two equal on small balls.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import _kernels
from .coxeter import CoxeterSystem, Element, group_for
from .hecke import ProductSweeper, compute_bound
from .kl import KLTables, tables_for

__all__ = ["lowest_cell_sets", "check_prop_7_4", "check_thm_7_5_and_prop_7_6",
           "cell_graph", "CellGraph", "top_degree_targets"]


def _lambda_indices(system: CoxeterSystem, ball: int) -> tuple[list[int], list[int]]:
    g = group_for(system)
    info = compute_bound(system)
    n = g.size(ball)
    M = [g.idx(u) for u in info.M]
    seen = {u for u in M if u < n}
    stack = sorted(seen)
    while stack:
        w = stack.pop()
        for a in range(3):
            for nxt in (g.rmul_(w, a) if not g.rdesc[w] >> a & 1 else -1,
                        g.lmul_(w, a) if not g.ldesc(w) >> a & 1 else -1):
                if 0 <= nxt < n and nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return M, sorted(seen)


def lowest_cell_sets(system: CoxeterSystem, ball: int) -> tuple[list[Element], list[Element]]:
    """``(M, Lambda ∩ ball)``; Lambda is grown from M by length-increasing
    multiplication by generators on either side."""
    g = group_for(system)
    M, lam = _lambda_indices(system, ball)
    return [g.element(u) for u in M], [g.element(w) for w in lam]


def _factor(g, w: int, M: list[int]) -> tuple[int, int, int] | None:
    """First length-additive ``w = x . u . y`` with ``u`` in M, as indices."""
    lw = g.lengths[w]
    for u in M:
        lu = g.lengths[u]
        if lu > lw:
            continue
        for x in range(g.size(lw - lu)):
            if not g.additive(x, u):
                continue
            xu = g.product(x, u)
            y = g.product(g.inv[xu], w)
            if g.lengths[xu] + g.lengths[y] == lw:
                return x, u, y
    return None


def top_degree_targets(system: CoxeterSystem, witness_ball: int, target_ball: int,
                       N: int, *, threads: int = 1, backend: str | None = None):
    """Scan ``T_x T_y`` over the witness ball.

    Returns ``(hits, max_degree)`` where ``hits[z]`` is the first ``(x, y)``
    with ``deg f_{x,y,z} = N`` for each ``z`` of length ``<= target_ball``.
    """
    g = group_for(system)
    sw = ProductSweeper(system, 2 * witness_ball, backend)
    n = g.size(witness_ball)
    nt = g.size(target_ball)

    def run(x):
        off, prods = sw.products(x, range(n))
        hits: dict[int, tuple[int, int]] = {}
        top = float("-inf")
        for y in range(n):
            sup, coef = prods[y]
            degs = _kernels.row_degrees(coef, backend) - off
            top = max(top, int(degs.max()))
            sel = (degs == N) & (sup < nt)
            for z in sup[sel].tolist():
                hits.setdefault(z, (x, y))
        return hits, top

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(run, range(n)))
    else:
        parts = [run(x) for x in range(n)]
    hits: dict[int, tuple[int, int]] = {}
    top = float("-inf")
    for h, t in parts:
        top = max(top, t)
        for z, xy in h.items():
            hits.setdefault(z, xy)
    return hits, top


def check_prop_7_4(system: CoxeterSystem, lambda_ball: int = 5, witness_ball: int = 8,
                   *, threads: int = 1, backend: str | None = None) -> dict:
    """On the ball: ``w`` in Lambda iff ``a_truncated(w, witness_ball) = N``."""
    if witness_ball < lambda_ball:
        raise ValueError("witness_ball must be >= lambda_ball so that the "
                         "(x.u, u.y) witness of every Lambda element is searchable")
    info = compute_bound(system)
    N = info.N
    g = group_for(system)
    M, lam = _lambda_indices(system, lambda_ball)
    lam_set = set(lam)
    sw = ProductSweeper(system, 2 * lambda_ball, backend)

    witness_failures, rows = [], []
    for w in lam:
        x, u, y = _factor(g, w, M)
        xu, uy = g.product(x, u), g.product(u, y)
        off, prods = sw.products(xu, [uy])
        sup, coef = prods[uy]
        hit = np.nonzero(sup == w)[0]
        deg = int(_kernels.row_degrees(coef[hit], backend)[0]) - off if len(hit) else None
        if deg != N:
            witness_failures.append(g.words[w])
        rows.append({"w": g.words[w], "factorization": [g.words[x], g.words[u], g.words[y]],
                     "witness": [g.words[xu], g.words[uy]], "witness_degree": deg})

    hits, top = top_degree_targets(system, witness_ball, lambda_ball, N,
                                   threads=threads, backend=backend)
    n = g.size(lambda_ball)
    at_N = {z for z in hits if z < n}
    not_found = sorted(lam_set - at_N)
    outside = sorted(at_N - lam_set)
    report = {
        "config": system.to_json(),
        "N": N,
        "radii": {"lambda_ball": lambda_ball, "witness_ball": witness_ball},
        "M": [g.words[u] for u in M],
        "lambda_size": len(lam),
        "ball_size": n,
        "lambda": rows,
        "scan_max_degree": top,
        # the degree-N reduction from h to f needs deg f <= N on the scanned ball
        "reduction_valid": top <= N,
        "witness_failures": witness_failures,
        "lambda_not_attaining_N": [g.words[w] for w in not_found],
        "outside_lambda_attaining_N": [
            {"w": g.words[z], "x": g.words[hits[z][0]], "y": g.words[hits[z][1]]} for z in outside],
    }
    report["pass"] = (report["reduction_valid"] and not witness_failures
                      and not not_found and not outside)
    return report


def check_thm_7_5_and_prop_7_6(system: CoxeterSystem, ball: int = 5, *,
                               backend: str | None = None) -> dict:
    """Degree-N witnesses for each ``w_J`` in M, plus the right-descent
    description of ``{x . w_J}``.

    ``y`` and ``x`` range over the ball; the set equality compares
    ``{x . w_J : l(x) <= ball}`` with ``{z : R(z) = J, l(z) <= ball + l(w_J)}``.
    """
    info = compute_bound(system)
    N = info.N
    g = group_for(system)
    n = g.size(ball)
    per_u = []
    ok = True
    for u_el in info.M:
        u = g.idx(u_el)
        J = 0
        for ch in u_el.word:
            J |= 1 << "rst".index(ch)
        lu = g.lengths[u]
        g.ensure(ball + lu)
        sw = ProductSweeper(system, 2 * (ball + lu), backend)
        thm_fail, thm_count = [], 0
        for y in range(n):
            if g.rdesc[y] & J:
                continue
            yu = g.product(y, u)
            x1 = g.inv[yu]
            off, prods = sw.products(x1, [yu])
            sup, coef = prods[yu]
            hit = np.nonzero(sup == u)[0]
            d = int(_kernels.row_degrees(coef[hit], backend)[0]) - off if len(hit) else None
            thm_count += 1
            if d != N:
                thm_fail.append({"y": g.words[y], "degree": d})
        prop_fail, left_set = [], set()
        for x in range(n):
            if not g.additive(x, u):
                continue
            xu = g.product(x, u)
            left_set.add(xu)
            off, prods = sw.products(xu, [u])
            sup, coef = prods[u]
            hit = np.nonzero(sup == xu)[0]
            d = int(_kernels.row_degrees(coef[hit], backend)[0]) - off if len(hit) else None
            if d != N:
                prop_fail.append({"x": g.words[x], "degree": d})
        desc_set = {z for z in range(g.size(ball + lu)) if g.rdesc[z] == J}
        only_left = sorted(left_set - desc_set)
        only_desc = sorted(desc_set - left_set)
        u_ok = not thm_fail and not prop_fail and not only_left and not only_desc
        ok = ok and u_ok
        per_u.append({
            "w_J": u_el.word, "J": "".join(sorted(set(u_el.word), key="rst".index)),
            "thm_7_5_checked": thm_count, "thm_7_5_failures": thm_fail,
            "prop_7_6_checked": len(left_set), "prop_7_6_degree_failures": prop_fail,
            "prop_7_6_only_left_cosets": [g.words[z] for z in only_left],
            "prop_7_6_only_descent_set": [g.words[z] for z in only_desc],
            "pass": u_ok,
        })
    return {"config": system.to_json(), "N": N, "radii": {"ball": ball},
            "per_w_J": per_u, "pass": ok}


# --- cell graphs


@dataclass
class CellGraph:
    words: list[str]
    edges: dict[str, set[tuple[int, int]]]
    components: dict[str, list[list[int]]]
    incomplete: dict[str, list[bool]]
    boundary: set[int] = field(default_factory=set)
    note: str = "ball-truncated under-approximation"

    def component_of(self, kind: str, w: int) -> list[int]:
        for comp in self.components[kind]:
            if w in comp:
                return comp
        raise KeyError(w)

    def to_edgelist(self) -> str:
        L, R = self.edges["L"], self.edges["R"]
        name = lambda i: self.words[i] or "e"
        lines = []
        for a, b in sorted(L | R):
            tag = "LR" if (a, b) in L and (a, b) in R else ("L" if (a, b) in L else "R")
            lines.append(f"{name(a)} {name(b)} {tag}")
        return "\n".join(lines) + ("\n" if lines else "")

    def to_json(self) -> dict:
        return {
            "note": self.note,
            "elements": len(self.words),
            "edges": {k: len(v) for k, v in sorted(self.edges.items())},
            "components": {
                k: [{"members": [self.words[i] for i in comp], "incomplete": inc}
                    for comp, inc in zip(self.components[k], self.incomplete[k])]
                for k in ("L", "R", "LR")
            },
        }


def _sccs(n: int, edges: set[tuple[int, int]]) -> list[list[int]]:
    if edges:
        src, dst = zip(*sorted(edges))
    else:
        src, dst = (), ()
    mat = csr_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    _, labels = connected_components(mat, directed=True, connection="strong")
    comps: dict[int, list[int]] = {}
    for i, lab in enumerate(labels.tolist()):
        comps.setdefault(lab, []).append(i)
    return sorted(comps.values(), key=lambda c: c[0])


def cell_graph(system: CoxeterSystem, ball: int, tables: KLTables | None = None) -> CellGraph:
    """Edge ``w -> z`` (L) when ``c_z`` occurs in ``c_a c_w`` for a generator ``a``;
    R mirrors it with ``c_w c_a``; LR is the union."""
    tables = tables or tables_for(system, ball + 1)
    tables.scope = max(tables.scope, ball + 1)
    g = group_for(system)
    n = g.size(ball)
    gens = [g.idx(a) for a in "rst"]
    edges = {"L": set(), "R": set()}
    boundary = set()
    for w in range(n):
        for a in gens:
            for kind, row in (("L", tables.h_row(a, w)), ("R", tables.h_row(w, a))):
                for z in row:
                    if z < n:
                        edges[kind].add((w, z))
                    else:
                        boundary.add(w)
    edges["LR"] = edges["L"] | edges["R"]
    words = g.words[:n]
    # elements on the outer shell may have unseen in-edges, unless W is exhausted
    exhausted = g.size(ball + 1) == n
    comps, inc = {}, {}
    for kind in ("L", "R", "LR"):
        comps[kind] = _sccs(n, edges[kind])
        inc[kind] = [any(w in boundary or (g.lengths[w] >= ball and not exhausted) for w in c)
                     for c in comps[kind]]
    return CellGraph(list(words), edges, comps, inc, boundary)
