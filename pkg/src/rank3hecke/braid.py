"""
Tits rewriting: the slow, independent normal-form oracle.

A word is reduced iff no sequence of braid moves produces two equal adjacent
letters; two reduced words name the same element iff they are braid
connected. The ShortLex form is the least word of the braid class.
"""

from __future__ import annotations

from .coxeter import GENS, INF, CoxeterSystem


def _moves(system: CoxeterSystem):
    out = []
    for a in GENS:
        for b in GENS:
            if a == b:
                continue
            m = system.m(a, b)
            if m == INF:
                continue
            lhs = "".join(a if i % 2 == 0 else b for i in range(m))
            rhs = "".join(b if i % 2 == 0 else a for i in range(m))
            out.append((lhs, rhs))
    return out


def braid_class(system: CoxeterSystem, word: str, moves=None) -> set[str]:
    """All words reachable from ``word`` by braid moves (no deletions)."""
    moves = moves or _moves(system)
    seen = {word}
    stack = [word]
    while stack:
        w = stack.pop()
        for lhs, rhs in moves:
            k = len(lhs)
            i = w.find(lhs)
            while i >= 0:
                u = w[:i] + rhs + w[i + k:]
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
                i = w.find(lhs, i + 1)
    return seen


def oracle_normal_form(system: CoxeterSystem, word: str) -> str:
    for ch in word:
        if ch not in GENS:
            raise ValueError(f"unknown generator {ch!r}")
    moves = _moves(system)
    while True:
        cls = braid_class(system, word, moves)
        for u in sorted(cls):
            for i in range(len(u) - 1):
                if u[i] == u[i + 1]:
                    word = u[:i] + u[i + 2:]
                    break
            else:
                continue
            break
        else:
            return min(cls)


def is_reduced(system: CoxeterSystem, word: str) -> bool:
    return len(oracle_normal_form(system, word)) == len(word)
