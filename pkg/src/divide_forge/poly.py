"""Integer Laurent polynomials in one variable."""
from __future__ import annotations

from dataclasses import dataclass, field


def _clean(d: dict[int, int]) -> dict[int, int]:
    return {e: c for e, c in d.items() if c}


@dataclass(frozen=True)
class LaurentPoly:
    """Sparse map exponent -> coefficient.

    For Jones polynomials the exponent unit is t^(1/2); for the bracket it
    is A.  The class itself is agnostic.
    """

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "LaurentPoly":
        return cls(tuple(sorted(_clean(d).items())))

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls.from_dict({exp: coeff})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls.monomial(0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(d)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.from_dict({e: c * other for e, c in self.terms})
        return LaurentPoly.from_dict(poly_mul(self.as_dict(), other.as_dict()))

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def mirror(self) -> "LaurentPoly":
        return LaurentPoly.from_dict({-e: c for e, c in self.terms})

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self.terms}

    @classmethod
    def from_json(cls, obj: dict) -> "LaurentPoly":
        return cls.from_dict({int(k): int(v) for k, v in obj.items()})

    def pretty(self, var: str = "t", half: bool = True) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in sorted(self.terms, reverse=True):
            if half:
                exp = str(e // 2) if e % 2 == 0 else f"{e}/2"
            else:
                exp = str(e)
            mono = "" if e == 0 else (var if exp == "1" else f"{var}^{exp}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else "+"
            else:
                coef = f"{c:+d}"
            out.append(f"{coef}{mono}" if mono else f"{c:+d}")
        s = " ".join(out)
        return s[1:] if s.startswith("+") else s

    def __str__(self) -> str:
        return self.pretty()


def poly_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            k = ea + eb
            out[k] = out.get(k, 0) + ca * cb
    return _clean(out)


def poly_add_into(acc: dict[int, int], p: dict[int, int], shift: int = 0) -> None:
    for e, c in p.items():
        k = e + shift
        v = acc.get(k, 0) + c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def poly_divexact(num: dict[int, int], den: dict[int, int]) -> dict[int, int]:
    """Exact division of Laurent polynomials; raises if not exact."""
    num = dict(num)
    if not den:
        raise ZeroDivisionError
    floor = (min(num) - min(den)) if num else 0
    dtop = max(den)
    dlead = den[dtop]
    out: dict[int, int] = {}
    while num:
        top = max(num)
        c = num[top]
        q, r = divmod(c, dlead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        k = top - dtop
        if k < floor:
            raise ArithmeticError("inexact polynomial division")
        out[k] = q
        for e, dc in den.items():
            v = num.get(e + k, 0) - q * dc
            if v:
                num[e + k] = v
            else:
                num.pop(e + k, None)
    return out
