"""
Weighted rank-3 Coxeter systems and an exact solution of their word problem.

Elements are identified with their ShortLex-minimal reduced word under the
generator order ``r < s < t``. A :class:`CoxeterGroup` grows a table of all
elements up to a given length, one length level at a time, by right
multiplication:

* For ``x = w.a`` with ``a`` not a right descent of ``w``, a second
  generator ``b`` is a right descent of ``x`` iff ``m_ab`` is finite and
  ``w`` ends (length-additively) in the alternating word of length
  ``m_ab - 1`` that finishes with ``b``.  Checking this only walks down
  ``m_ab - 1`` edges of the existing table.
* ShortLex words are prefix closed, so the word of ``x`` is the least of
  ``word(x.b) + b`` over its right descents ``b``.

No braid-class search happens on this path; :mod:`rank3hecke.braid` keeps
that as an independent oracle.

>>> S = CoxeterSystem(m_sr=INF, m_st=INF, m_rt=2, weights=(1, 5, 2))
>>> [len(level) for level in ball_levels(S, 4)]
[1, 3, 5, 8, 13]
>>> normal_form(S, "tr").word, normal_form(S, "ss").word
('rt', '')
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "INF", "GENS", "Side", "CoxeterSystem", "Element", "CaseShape",
    "InvalidSystem", "BallCapExceeded", "CoxeterGroup", "group_for",
    "normal_form", "length", "mult", "inverse", "descents",
    "parabolic_factorize", "longest_element", "bruhat_leq",
    "enumerate_ball", "ball_levels", "classify_case", "weight",
    "DEFAULT_BALL_CAP",
]

INF = math.inf
GENS = ("r", "s", "t")
_GEN_INDEX = {g: i for i, g in enumerate(GENS)}
DEFAULT_BALL_CAP = 2_000_000


class Side(str, Enum):
    LEFT = "LEFT"
    RIGHT = "RIGHT"

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str):
            return cls.__members__.get(value.upper())
        return None


class InvalidSystem(ValueError):
    """A Coxeter matrix or weight function violating its invariants."""


class BallCapExceeded(RuntimeError):
    pass


def _bond(m) -> float | int:
    if m == 0 or m == INF or m is None:
        return INF
    m = int(m)
    if m < 2:
        raise InvalidSystem(f"bond order {m} < 2 (use 0 for infinity)")
    return m


@dataclass(frozen=True)
class CoxeterSystem:
    """Rank-3 Coxeter matrix plus a positive weight function.

    Bonds are ``m_sr``, ``m_st``, ``m_rt``; ``INF`` (or ``0`` at construction)
    means no relation. ``weights`` is ``(L(r), L(s), L(t))``.
    """
    m_sr: float | int
    m_st: float | int
    m_rt: float | int
    weights: tuple[int, int, int] = (1, 1, 1)

    generators = GENS

    def __post_init__(self):
        for name in ("m_sr", "m_st", "m_rt"):
            object.__setattr__(self, name, _bond(getattr(self, name)))
        w = tuple(int(x) for x in self.weights)
        if len(w) != 3:
            raise InvalidSystem("need exactly three weights (L_r, L_s, L_t)")
        object.__setattr__(self, "weights", w)
        for g, L in zip(GENS, w):
            if L < 1:
                raise InvalidSystem(f"weight L({g})={L} is not positive")
        for (a, b), m in (("sr", self.m_sr), ("st", self.m_st), ("rt", self.m_rt)):
            if m != INF and m % 2 == 1 and self.weight(a) != self.weight(b):
                raise InvalidSystem(
                    f"odd bond m_{a}{b}={m} forces L({a}) = L({b}), "
                    f"got {self.weight(a)} != {self.weight(b)}")

    def m(self, a, b):
        """Order of ``ab``; accepts labels or generator indices."""
        a = GENS[a] if isinstance(a, int) else a
        b = GENS[b] if isinstance(b, int) else b
        if a == b:
            return 1
        key = "".join(sorted(a + b))
        return {"rs": self.m_sr, "st": self.m_st, "rt": self.m_rt}[key]

    def weight(self, a) -> int:
        return self.weights[a if isinstance(a, int) else _GEN_INDEX[a]]

    @property
    def matrix(self) -> dict[tuple[str, str], float | int]:
        return {(a, b): self.m(a, b) for a in GENS for b in GENS}

    def bonds_triple(self) -> tuple:
        """``(m_rt, m_sr, m_st)``, the ordering used in reports."""
        return (self.m_rt, self.m_sr, self.m_st)

    def to_json(self) -> dict:
        enc = lambda m: 0 if m == INF else int(m)
        return {
            "bonds": {"m_sr": enc(self.m_sr), "m_st": enc(self.m_st), "m_rt": enc(self.m_rt)},
            "weights": {"r": self.weights[0], "s": self.weights[1], "t": self.weights[2]},
        }

    def relabel(self, perm: dict[str, str]) -> CoxeterSystem:
        """The system obtained by renaming generator ``g`` to ``perm[g]``."""
        inv = {v: k for k, v in perm.items()}
        m = lambda a, b: self.m(inv[a], inv[b])
        return CoxeterSystem(
            m_sr=m("s", "r"), m_st=m("s", "t"), m_rt=m("r", "t"),
            weights=tuple(self.weight(inv[g]) for g in GENS))


@dataclass(frozen=True, order=True)
class Element:
    """A group element, held as its ShortLex normal form."""
    word: str = ""

    def __len__(self):
        return len(self.word)

    def __str__(self):
        return self.word

    @property
    def is_identity(self) -> bool:
        return not self.word


E = Element("")


def _sortkey(word: str):
    return (len(word), word)


class CoxeterGroup:
    """Growing table of a ball in the Cayley graph.

    Element ``i`` has ShortLex word ``words[i]``; indices are assigned in
    (length, lex) order. ``rmul[i][a]`` is the index of ``i * a`` or ``-1``
    if that element has not been built yet. Writers hold ``_lock``; tables
    only ever grow, so readers of already-built entries need no lock.
    """

    def __init__(self, system: CoxeterSystem, cap: int = DEFAULT_BALL_CAP):
        self.system = system
        self.cap = cap
        self.words: list[str] = [""]
        self.lengths: list[int] = [0]
        self.wts: list[int] = [0]
        self.rdesc: list[int] = [0]
        self.rmul: list[list[int]] = [[-1, -1, -1]]
        self.inv: list[int] = [0]
        self.parent: list[int] = [-1]
        self.last: list[int] = [-1]
        self.level_start: list[int] = [0, 1]
        self.index: dict[str, int] = {"": 0}
        self.exhausted = False
        self._lock = threading.RLock()
        self._arrays: dict[int, tuple] = {}
        self._bruhat: dict[tuple[int, int], bool] = {}
        self._m = [[system.m(a, b) for b in range(3)] for a in range(3)]
        self._weights = system.weights

    # --- growth

    @property
    def radius(self) -> int:
        return len(self.level_start) - 2

    def size(self, radius: int | None = None) -> int:
        if radius is None:
            return len(self.words)
        self.ensure(radius)
        return self.level_start[min(radius, self.radius) + 1]

    def ensure(self, radius: int) -> None:
        if radius <= self.radius or self.exhausted:
            return
        with self._lock:
            while self.radius < radius and not self.exhausted:
                self._grow()

    def _grow(self) -> None:
        k = self.radius
        lo, hi = self.level_start[k], self.level_start[k + 1]
        words, rdesc, rmul, m = self.words, self.rdesc, self.rmul, self._m
        cand: dict[tuple[int, int], tuple[str, int, dict[int, int]]] = {}
        for w in range(lo, hi):
            dw = rdesc[w]
            for a in range(3):
                if dw >> a & 1:
                    continue
                parents = {a: w}
                rx = 1 << a
                for b in range(3):
                    if b == a or m[a][b] == INF:
                        continue
                    n = m[a][b] - 1
                    cur = w
                    for j in range(n):
                        letter = b if j % 2 == 0 else a
                        if not rdesc[cur] >> letter & 1:
                            break
                        cur = rmul[cur][letter]
                    else:
                        # cur = w with its alternating tail removed; climb back
                        # up along the tail that ends in a
                        for i in range(n):
                            cur = rmul[cur][a if (n - 1 - i) % 2 == 0 else b]
                        rx |= 1 << b
                        parents[b] = cur
                b0 = min(parents)
                key = (b0, parents[b0])
                if key not in cand:
                    word = min(words[p] + GENS[c] for c, p in parents.items())
                    cand[key] = (word, rx, parents)
        if not cand:
            self.exhausted = True
            return
        if len(words) + len(cand) > self.cap:
            raise BallCapExceeded(
                f"ball of radius {k + 1} exceeds the cap of {self.cap} elements")
        for word, rx, parents in sorted(cand.values()):
            i = len(words)
            words.append(word)
            self.index[word] = i
            self.lengths.append(k + 1)
            self.wts.append(self.wts[parents[min(parents)]] + self._weights[min(parents)])
            rdesc.append(rx)
            row = [-1, -1, -1]
            for c, p in parents.items():
                row[c] = p
                rmul[p][c] = i
            rmul.append(row)
            self.parent.append(self.index[word[:-1]])
            self.last.append(_GEN_INDEX[word[-1]])
        self.level_start.append(len(words))
        # inverses: fold the reversed word, every step stays at length <= k+1
        for i in range(hi, len(words)):
            cur = 0
            for ch in reversed(words[i]):
                cur = rmul[cur][_GEN_INDEX[ch]]
            self.inv.append(cur)

    # --- element access

    def idx(self, x: Element | str | int) -> int:
        if isinstance(x, int):
            return x
        word = x.word if isinstance(x, Element) else x
        i = self.index.get(word)
        if i is None:
            self.ensure(len(word))
            i = self.index.get(word)
            if i is None:
                raise KeyError(f"{word!r} is not a ShortLex normal form")
        return i

    def element(self, i: int) -> Element:
        return Element(self.words[i])

    def reduce(self, letters: Iterable[int | str], start: int = 0) -> int:
        """Index of ``start * letters``."""
        cur = start
        for a in letters:
            cur = self.rmul_(cur, _GEN_INDEX[a] if isinstance(a, str) else a)
        return cur

    def rmul_(self, i: int, a: int) -> int:
        j = self.rmul[i][a]
        if j < 0:
            self.ensure(self.lengths[i] + 1)
            j = self.rmul[i][a]
        return j

    def lmul_(self, i: int, a: int) -> int:
        return self.inv[self.rmul_(self.inv[i], a)]

    def ldesc(self, i: int) -> int:
        return self.rdesc[self.inv[i]]

    def product(self, i: int, j: int) -> int:
        return self.reduce((_GEN_INDEX[c] for c in self.words[j]), start=i)

    def has_suffix(self, i: int, word: str) -> int:
        """Index of ``x1`` if element ``i`` is ``x1 . word`` length-additively, else ``-1``."""
        cur = i
        for ch in reversed(word):
            a = _GEN_INDEX[ch]
            if not self.rdesc[cur] >> a & 1:
                return -1
            cur = self.rmul[cur][a]
        return cur

    def has_prefix(self, i: int, word: str) -> int:
        """Index of ``x1`` if element ``i`` is ``word . x1`` length-additively, else ``-1``."""
        j = self.has_suffix(self.inv[i], word[::-1])
        return -1 if j < 0 else self.inv[j]

    def additive(self, *idxs: int) -> bool:
        """Whether the product of the given elements is length-additive."""
        cur = idxs[0]
        for j in idxs[1:]:
            for ch in self.words[j]:
                a = _GEN_INDEX[ch]
                if self.rdesc[cur] >> a & 1:
                    return False
                cur = self.rmul_(cur, a)
        return True

    def bruhat_leq(self, x: int, y: int) -> bool:
        key = (x, y)
        hit = self._bruhat.get(key)
        if hit is not None:
            return hit
        ly, lx = self.lengths[y], self.lengths[x]
        if lx > ly:
            res = False
        elif y == 0:
            res = x == 0
        elif lx == ly:
            res = x == y
        else:
            # peel the first letter of y, which is a left descent
            a = _GEN_INDEX[self.words[y][0]]
            ay = self.lmul_(y, a)
            if self.ldesc(x) >> a & 1:
                res = self.bruhat_leq(self.lmul_(x, a), ay)
            else:
                res = self.bruhat_leq(x, ay)
        self._bruhat[key] = res
        return res

    def arrays(self, radius: int):
        """``(rmul, rdesc, lengths, weights)`` as int64 arrays over the ball.

        Entries of ``rmul`` leaving the ball are ``-1``.
        """
        self.ensure(radius)
        radius = min(radius, self.radius)
        hit = self._arrays.get(radius)
        if hit is None:
            n = self.level_start[radius + 1]
            rm = np.array(self.rmul[:n], dtype=np.int64).reshape(n, 3)
            rm[rm >= n] = -1
            hit = (rm, np.array(self.rdesc[:n], dtype=np.int64),
                   np.array(self.lengths[:n], dtype=np.int64),
                   np.array(self.wts[:n], dtype=np.int64))
            self._arrays[radius] = hit
        return hit


_GROUPS: dict[CoxeterSystem, CoxeterGroup] = {}
_GROUPS_LOCK = threading.Lock()


def group_for(system: CoxeterSystem) -> CoxeterGroup:
    """Shared, memoized word engine for ``system``."""
    with _GROUPS_LOCK:
        g = _GROUPS.get(system)
        if g is None:
            g = _GROUPS[system] = CoxeterGroup(system)
        return g


def _letters(word) -> list[int]:
    if isinstance(word, Element):
        word = word.word
    out = []
    for ch in word:
        if ch not in _GEN_INDEX:
            raise ValueError(f"unknown generator {ch!r} in {word!r}")
        out.append(_GEN_INDEX[ch])
    return out


def _mask(J: Iterable[str]) -> int:
    m = 0
    for g in J:
        if g not in _GEN_INDEX:
            raise ValueError(f"unknown generator {g!r}")
        m |= 1 << _GEN_INDEX[g]
    return m


def _unmask(m: int) -> frozenset[str]:
    return frozenset(g for i, g in enumerate(GENS) if m >> i & 1)


# --- public operations


def normal_form(system: CoxeterSystem, word: str | Sequence[str]) -> Element:
    g = group_for(system)
    return g.element(g.reduce(_letters("".join(word))))


def length(x: Element) -> int:
    return len(x.word)


def weight(system: CoxeterSystem, x: Element) -> int:
    """``L(x)``, the sum of generator weights along a reduced word."""
    return sum(system.weight(c) for c in x.word)


def mult(system: CoxeterSystem, x: Element, y: Element) -> Element:
    g = group_for(system)
    return g.element(g.product(g.idx(x), g.idx(y)))


def inverse(system: CoxeterSystem, x: Element) -> Element:
    g = group_for(system)
    return g.element(g.inv[g.idx(x)])


def descents(system: CoxeterSystem, x: Element, side: Side | str = Side.LEFT) -> frozenset[str]:
    g = group_for(system)
    i = g.idx(x)
    return _unmask(g.rdesc[i] if Side(side) is Side.RIGHT else g.ldesc(i))


def parabolic_factorize(system: CoxeterSystem, w: Element, J: Iterable[str],
                        side: Side | str = Side.RIGHT) -> tuple[Element, Element]:
    """Coset factorization ``w = w1 . w2`` with ``w2`` in ``W_J``.

    RIGHT: ``R(w1)`` misses ``J``. LEFT: returns ``(w1, w2)`` with ``w1`` in
    ``W_J`` and ``L(w2)`` missing ``J``.
    """
    g = group_for(system)
    mask = _mask(J)
    cur = g.idx(w)
    peeled = []
    if Side(side) is Side.RIGHT:
        while g.rdesc[cur] & mask:
            a = min(i for i in range(3) if (g.rdesc[cur] & mask) >> i & 1)
            peeled.append(a)
            cur = g.rmul[cur][a]
        tail = g.reduce(reversed(peeled))
        return g.element(cur), g.element(tail)
    while g.ldesc(cur) & mask:
        a = min(i for i in range(3) if (g.ldesc(cur) & mask) >> i & 1)
        peeled.append(a)
        cur = g.lmul_(cur, a)
    head = g.reduce(peeled)
    return g.element(head), g.element(cur)


def longest_element(system: CoxeterSystem, J: Iterable[str]) -> tuple[Element, int] | None:
    """``(w_J, L(w_J))`` if ``W_J`` is finite, else ``None``."""
    J = sorted(set(J), key=GENS.index)
    if not J:
        return E, 0
    if len(J) == 1:
        return Element(J[0]), system.weight(J[0])
    if len(J) == 2:
        a, b = J
        m = system.m(a, b)
        if m == INF:
            return None
        word = "".join(a if i % 2 == 0 else b for i in range(m))
        x = normal_form(system, word)
        return x, weight(system, x)
    if classify_case(system).kind != "FINITE":
        return None
    g = group_for(system)
    g.ensure(10 ** 6)  # exhausts the finite group
    top = g.level_start[-2]
    x = g.element(top)
    return x, weight(system, x)


def bruhat_leq(system: CoxeterSystem, x: Element, y: Element) -> bool:
    g = group_for(system)
    return g.bruhat_leq(g.idx(x), g.idx(y))


def enumerate_ball(system: CoxeterSystem, max_len: int, cap: int | None = None) -> list[Element]:
    """All elements of length ``<= max_len`` in (length, lex) order."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    g = group_for(system)
    if cap is not None:
        g = CoxeterGroup(system, cap=cap) if cap < g.cap else g
    g.ensure(max_len)
    n = g.level_start[min(max_len, g.radius) + 1]
    return [Element(w) for w in g.words[:n]]


def ball_levels(system: CoxeterSystem, max_len: int) -> list[list[Element]]:
    g = group_for(system)
    g.ensure(max_len)
    return [[Element(w) for w in g.words[g.level_start[k]:g.level_start[k + 1]]]
            for k in range(min(max_len, g.radius) + 1)]


# --- case classification


@dataclass(frozen=True)
class CaseShape:
    """Position of a rank-3 system among the shapes handled case by case.

    ``relabeling`` maps each original generator label to its new label; after
    applying it ``m_rt = 2`` and ``m_sr >= m_st`` for the infinite shapes.
    """
    kind: str
    relabeling: dict = field(default_factory=lambda: {g: g for g in GENS}, compare=False)
    flags: tuple[str, ...] = ()
    note: str = ""

    def to_json(self) -> dict:
        return {"kind": self.kind, "relabeling": dict(sorted(self.relabeling.items())),
                "flags": list(self.flags), "note": self.note}


def _recip(m) -> Fraction:
    return Fraction(0) if m == INF else Fraction(1, int(m))


def classify_case(system: CoxeterSystem) -> CaseShape:
    total = _recip(system.m_sr) + _recip(system.m_st) + _recip(system.m_rt)
    if total > 1:
        return CaseShape("FINITE", note="spherical triangle group")
    key = lambda m: (m == INF, 0 if m == INF else m)
    for p in permutations(GENS):
        perm = dict(zip(GENS, p))
        rs = system.relabel(perm)
        if rs.m_rt == 2 and key(rs.m_sr) >= key(rs.m_st):
            break
    else:
        if total == 1:
            return CaseShape("AFFINE_SPECIAL", note="affine A2~ (complete graph)")
        return CaseShape("COMPLETE_GRAPH", note="no commuting pair; complete Coxeter graph")
    msr, mst = rs.m_sr, rs.m_st
    if msr == INF and mst == 2:
        return CaseShape("CASE1", perm)
    if msr == INF and mst == INF:
        return CaseShape("CASE2", perm)
    if msr == INF:
        return CaseShape("CASE3", perm)
    if mst >= 4:
        if msr == 4:
            return CaseShape("AFFINE_SPECIAL", perm, note="affine B2~")
        return CaseShape("CASE4", perm)
    # mst == 3, msr >= 6 since smaller values are finite
    if msr == 6:
        return CaseShape("AFFINE_SPECIAL", perm, note="affine G2~")
    if msr == 7:
        return CaseShape("CASE5", perm, flags=("equal_weights_forced",),
                         note="m_sr = 7 forces L = n*l")
    return CaseShape("CASE5", perm)
