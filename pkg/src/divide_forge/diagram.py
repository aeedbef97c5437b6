"""Oriented link diagrams stored as PD codes.

A crossing is a 4-tuple of arc labels listed counterclockwise, starting
from the incoming under-strand.  The under-strand runs slot 0 -> slot 2.
The over-strand runs slot 3 -> slot 1 on a positive crossing and
slot 1 -> slot 3 on a negative one; the sign is stored next to the tuple.
Crossingless unknotted components are kept as a count.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

Crossing = tuple[int, int, int, int]


def entry_slots(sign: int) -> tuple[int, int]:
    return (0, 3) if sign > 0 else (0, 1)


@dataclass(frozen=True)
class Drawing:
    """Planar picture of a diagram: polylines plus, per crossing, the point
    and the direction of the over strand (used to cut a gap in the under
    strand)."""
    paths: tuple[tuple[tuple[float, float], ...], ...]
    closed: tuple[bool, ...]
    overs: tuple[tuple[tuple[float, float], tuple[float, float]], ...] = ()


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...] = ()
    signs: tuple[int, ...] = ()
    free_loops: int = 0
    drawing: Optional[Drawing] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(c) for c in self.crossings))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if len(self.crossings) != len(self.signs):
            raise ValueError("one sign per crossing required")

    # -- structure -------------------------------------------------------
    def heads_and_tails(self):
        """label -> (crossing, slot) where it enters, and where it leaves."""
        head, tail = {}, {}
        for ci, (cr, s) in enumerate(zip(self.crossings, self.signs)):
            ins = entry_slots(s)
            for slot, lab in enumerate(cr):
                target = head if slot in ins else tail
                if lab in target:
                    raise ValueError(f"arc {lab} used twice in the same role")
                target[lab] = (ci, slot)
        if set(head) != set(tail):
            raise ValueError("every arc needs one head and one tail")
        return head, tail

    def check(self) -> None:
        counts: dict[int, int] = {}
        for cr in self.crossings:
            for lab in cr:
                counts[lab] = counts.get(lab, 0) + 1
        bad = [lab for lab, c in counts.items() if c != 2]
        if bad:
            raise ValueError(f"arc labels not used exactly twice: {bad[:5]}")
        self.heads_and_tails()

    def components(self) -> list[list[int]]:
        """Arc cycles, one per component carrying crossings."""
        head, _ = self.heads_and_tails()
        seen: set[int] = set()
        comps = []
        for start in sorted(head):
            if start in seen:
                continue
            comp, lab = [], start
            while lab not in seen:
                seen.add(lab)
                comp.append(lab)
                ci, slot = head[lab]
                lab = self.crossings[ci][(slot + 2) % 4]
            comps.append(comp)
        return comps

    @property
    def n_components(self) -> int:
        return len(self.components()) + self.free_loops

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def __len__(self) -> int:
        return len(self.crossings)

    # -- output ------------------------------------------------------------
    def pd_text(self) -> str:
        lines = [f"X[{a},{b},{c},{d}]" for a, b, c, d in self.crossings]
        if self.free_loops:
            lines.append(f"# free loops: {self.free_loops}")
        return "\n".join(lines) + ("\n" if lines else "")

    def to_json(self) -> dict:
        return {
            "crossings": [list(c) for c in self.crossings],
            "signs": list(self.signs),
            "free_loops": self.free_loops,
            "components": self.components(),
            "writhe": self.writhe,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LinkDiagram":
        return cls(tuple(tuple(c) for c in obj["crossings"]), tuple(obj["signs"]), obj.get("free_loops", 0))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def relabel(diag: LinkDiagram) -> LinkDiagram:
    """Renumber arcs 1..2c following components, deterministic."""
    mapping: dict[int, int] = {}
    for comp in diag.components():
        for lab in comp:
            mapping[lab] = len(mapping) + 1
    cr = tuple(tuple(mapping[x] for x in c) for c in diag.crossings)
    return LinkDiagram(cr, diag.signs, diag.free_loops)


def remove_crossings(diag: LinkDiagram, drop: set[int]) -> LinkDiagram:
    """Delete crossings and splice the strands that ran through them.

    Each strand passing only through deleted crossings is merged into one
    arc; cycles that lived entirely inside the deleted set become free
    loops.
    """
    head, tail = diag.heads_and_tails()
    rename: dict[int, int] = {}
    used: set[int] = set()
    for lab in sorted(tail):
        ci, _ = tail[lab]
        if ci in drop:
            continue
        cur = lab
        used.add(cur)
        while head[cur][0] in drop:
            hc, hs = head[cur]
            cur = diag.crossings[hc][(hs + 2) % 4]
            used.add(cur)
        rename[cur] = lab  # the slot where cur enters a kept crossing
    # arcs never reached from a kept tail form closed loops in the dropped set
    loops = 0
    left = set(head) - used
    while left:
        start = left.pop()
        cur = start
        while True:
            hc, hs = head[cur]
            cur = diag.crossings[hc][(hs + 2) % 4]
            if cur == start:
                break
            left.discard(cur)
        loops += 1
    new_cr, new_s = [], []
    for ci, (cr, s) in enumerate(zip(diag.crossings, diag.signs)):
        if ci in drop:
            continue
        ins = entry_slots(s)
        new_cr.append(tuple(rename.get(lab, lab) if slot in ins else lab for slot, lab in enumerate(cr)))
        new_s.append(s)
    return LinkDiagram(tuple(new_cr), tuple(new_s), diag.free_loops + loops)
