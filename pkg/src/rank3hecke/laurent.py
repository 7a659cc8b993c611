"""
Integer Laurent polynomials in one indeterminate ``v``.

Coefficients are Python ints, so nothing can overflow. A polynomial is a
sparse map ``exponent -> nonzero coefficient``; the zero polynomial is the
empty map and has degree ``NEG_INF``.

>>> p = v_power(1) - v_power(-1)
>>> str(p * p)
'1*v^2 + -2*v^0 + 1*v^-2'
>>> (p * p).deg(), (p * p).coeff_at(0)
(2, -2)
>>> p.bar() == -p
True
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

__all__ = ["LaurentPoly", "NEG_INF", "ZERO", "ONE", "v_power", "quad", "parse"]

# sentinel degree of the zero polynomial; compares below every int
NEG_INF = float("-inf")


class LaurentPoly:
    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, a in items:
            if a:
                c[int(e)] = c.get(int(e), 0) + int(a)
        self._c = {e: a for e, a in c.items() if a}
        self._hash = None

    @classmethod
    def _raw(cls, c: dict[int, int]) -> LaurentPoly:
        # caller guarantees no zero coefficients
        p = object.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def constant(cls, a: int) -> LaurentPoly:
        return cls._raw({0: a} if a else {})

    # --- inspection

    def items(self) -> list[tuple[int, int]]:
        """Terms sorted by decreasing exponent."""
        return sorted(self._c.items(), reverse=True)

    def coeff_at(self, n: int) -> int:
        return self._c.get(n, 0)

    def deg(self):
        """Largest exponent with a nonzero coefficient, ``NEG_INF`` for 0."""
        return max(self._c) if self._c else NEG_INF

    def low_deg(self):
        return min(self._c) if self._c else float("inf")

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.items())

    def in_Z_vinv(self) -> bool:
        """Membership in Z[v^-1]."""
        return self.deg() <= 0

    def in_v_inv_Z_vinv(self) -> bool:
        """Membership in v^-1 Z[v^-1]."""
        return self.deg() <= -1

    def is_bar_invariant(self) -> bool:
        return all(self._c.get(-e, 0) == a for e, a in self._c.items())

    # --- arithmetic

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, int):
                other = LaurentPoly.constant(other)
            else:
                return NotImplemented
        if not other._c:
            return self
        c = dict(self._c)
        for e, a in other._c.items():
            s = c.get(e, 0) + a
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return LaurentPoly._raw({e: a * other for e, a in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._c or not other._c:
            return ZERO
        if len(other._c) == 1:
            (f, b), = other._c.items()
            return LaurentPoly._raw({e + f: a * b for e, a in self._c.items()})
        c: dict[int, int] = {}
        for e, a in self._c.items():
            for f, b in other._c.items():
                c[e + f] = c.get(e + f, 0) + a * b
        return LaurentPoly._raw({e: a for e, a in c.items() if a})

    __rmul__ = __mul__

    def shift(self, n: int) -> LaurentPoly:
        """Multiply by v^n."""
        if n == 0:
            return self
        return LaurentPoly._raw({e + n: a for e, a in self._c.items()})

    def bar(self) -> LaurentPoly:
        """The ring involution v -> v^-1."""
        return LaurentPoly._raw({-e: a for e, a in self._c.items()})

    def negative_part(self) -> LaurentPoly:
        """Terms of strictly negative degree."""
        return LaurentPoly._raw({e: a for e, a in self._c.items() if e < 0})

    def __eq__(self, other):
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __str__(self):
        if not self._c:
            return "0"
        return " + ".join(f"{a}*v^{e}" for e, a in self.items())

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def to_json(self) -> str:
        return str(self)


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})


@lru_cache(maxsize=None)
def v_power(n: int) -> LaurentPoly:
    return LaurentPoly._raw({n: 1})


@lru_cache(maxsize=None)
def quad(n: int) -> LaurentPoly:
    """``v^n - v^-n``, the factor produced by the quadratic relation."""
    if n == 0:
        return ZERO
    return LaurentPoly._raw({n: 1, -n: -1})


_TERM = re.compile(r"^\s*(-?\d+)\s*\*\s*v\^(-?\d+)\s*$")


def parse(text: str) -> LaurentPoly:
    """Inverse of ``str``; accepts the ``"a*v^e + b*v^f"`` format."""
    text = text.strip()
    if text == "0":
        return ZERO
    c: dict[int, int] = {}
    for part in text.split(" + "):
        m = _TERM.match(part)
        if m is None:
            raise ValueError(f"malformed Laurent term {part!r} in {text!r}")
        a, e = int(m.group(1)), int(m.group(2))
        if a == 0 or e in c:
            raise ValueError(f"non-canonical Laurent text {text!r}")
        c[e] = a
    return LaurentPoly._raw(c)
