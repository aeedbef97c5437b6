"""Braid words, band words and their closures."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .diagram import Drawing, LinkDiagram


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[int, ...] = ()  # +i for sigma_i, -i for its inverse

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.n < 1:
            raise ValueError("braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) >= self.n:
                raise ValueError(f"generator {x} out of range for {self.n} strands")

    def text(self) -> str:
        return format_letters(self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple(-x for x in reversed(self.letters)))

    def free_reduce(self) -> "BraidWord":
        out: list[int] = []
        for x in self.letters:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return BraidWord(self.n, tuple(out))


@dataclass(frozen=True)
class Band:
    conj: tuple[int, ...]
    core: int

    def letters(self) -> tuple[int, ...]:
        return self.conj + (self.core,) + tuple(-x for x in reversed(self.conj))

    def to_json(self) -> dict:
        return {"conj": list(self.conj), "core": self.core}


@dataclass(frozen=True)
class BandWord:
    n: int
    bands: tuple[Band, ...] = ()

    @property
    def k(self) -> int:
        return len(self.bands)

    def flatten(self) -> BraidWord:
        return BraidWord(self.n, tuple(x for b in self.bands for x in b.letters()))

    def text(self) -> str:
        parts = []
        for b in self.bands:
            if b.conj:
                parts.append("(" + format_letters(b.letters()) + ")")
            else:
                parts.append(format_letters((b.core,)))
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"n": self.n, "bands": [b.to_json() for b in self.bands]}


def format_letters(letters) -> str:
    return " ".join(f"s{abs(x)}" + ("'" if x < 0 else "") for x in letters)


_TOKEN = re.compile(r"^s(\d+)('?)$")


def parse_braid(text: str, n: int | None = None) -> BraidWord:
    letters = []
    for tok in text.replace(",", " ").split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad braid letter {tok!r}")
        i = int(m.group(1))
        letters.append(-i if m.group(2) else i)
    if n is None:
        n = max((abs(x) for x in letters), default=0) + 1
    return BraidWord(n, tuple(letters))


def closure_diagram(word) -> LinkDiagram:
    """PD code of the closure; strands run downward, sigma_i is positive."""
    if isinstance(word, BandWord):
        word = word.flatten()
    n = word.n
    nxt = iter(range(1, 10**9))
    init = [next(nxt) for _ in range(n)]
    cur = list(init)
    crossings, signs = [], []
    touched = [False] * n
    for x in word.letters:
        i = abs(x) - 1
        a, b = cur[i], cur[i + 1]
        a2, b2 = next(nxt), next(nxt)  # a2 at position i+1, b2 at position i
        if x > 0:
            crossings.append((a, b2, a2, b))
            signs.append(1)
        else:
            crossings.append((b, a, b2, a2))
            signs.append(-1)
        cur[i], cur[i + 1] = b2, a2
        touched[i] = touched[i + 1] = True
    ren = {cur[p]: init[p] for p in range(n) if touched[p]}
    crossings = [tuple(ren.get(l, l) for l in c) for c in crossings]
    return LinkDiagram(tuple(crossings), tuple(signs), touched.count(False), _braid_drawing(word))


def _braid_drawing(word: BraidWord) -> Drawing:
    """Strands at x = 1..n running down one row per letter, closed by nested
    loops on the right."""
    n, L = word.n, len(word.letters)
    paths, overs = [], []
    for k, x in enumerate(word.letters):
        i = abs(x)
        y0, y1 = -float(k), -float(k + 1)
        for p in range(1, n + 1):
            if p == i:
                paths.append(((float(i), y0), (float(i + 1), y1)))
            elif p == i + 1:
                paths.append(((float(i + 1), y0), (float(i), y1)))
            else:
                paths.append(((float(p), y0), (float(p), y1)))
        mid = (i + 0.5, y0 - 0.5)
        overs.append((mid, (-1.0, -1.0) if x > 0 else (1.0, -1.0)))
    for p in range(1, n + 1):
        off = float(n - p + 1)
        right = n + off
        paths.append(((float(p), -float(L)), (float(p), -L - off), (right, -L - off), (right, off), (float(p), off), (float(p), 0.0)))
    return Drawing(tuple(paths), (False,) * len(paths), tuple(overs))
