"""Consistent sequences, multiplicity tables, and stability detection."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .branching import tau
from .characters import SymLaurent, character, decompose, exterior_power, free_lie_component, gl_character, sp_character
from .errors import WindowTooSmall
from .labels import GL, SP, GlLabel, Label, SpLabel, VirtualDecomp, label_sort_key

__all__ = [
    "SequenceSpec",
    "MultiplicityTable",
    "StabilityReport",
    "generate",
    "detect_stability",
    "tau_sequence",
    "DEFAULT_HORIZON",
]

DEFAULT_HORIZON = 6


@dataclass(frozen=True)
class SequenceSpec:
    """A recipe for the character of ``V_n`` at each rank.

    Build with the classmethods rather than by hand.
    """

    name: str
    group: str
    k: int = 0
    label: Label | None = None
    parts: tuple["SequenceSpec", ...] = ()

    # generators ------------------------------------------------------------
    @classmethod
    def wedge_standard(cls, k: int, group: str = GL) -> "SequenceSpec":
        return cls("wedge_standard", group, k=k)

    @classmethod
    def h1_ia(cls) -> "SequenceSpec":
        """``Lambda^2 Q^n (x) (Q^n)^*``."""
        return cls("h1_ia", GL)

    @classmethod
    def h1_torelli(cls) -> "SequenceSpec":
        """``Lambda^3`` of the standard ``Sp_2g`` representation."""
        return cls("h1_torelli", SP)

    @classmethod
    def free_lie(cls, degree: int, base: "SequenceSpec") -> "SequenceSpec":
        if degree < 1:
            raise ValueError("free Lie degree must be positive")
        return cls("free_lie", base.group, k=degree, parts=(base,))

    @classmethod
    def tensor(cls, *specs: "SequenceSpec") -> "SequenceSpec":
        if not specs or len({s.group for s in specs}) != 1:
            raise ValueError("tensor needs one or more sequences over the same group")
        return cls("tensor", specs[0].group, parts=tuple(specs))

    @classmethod
    def irreducible(cls, label: Label, group: str) -> "SequenceSpec":
        return cls("irreducible", group, label=label)

    @classmethod
    def trivial(cls, group: str = GL) -> "SequenceSpec":
        return cls("trivial", group)

    # evaluation ------------------------------------------------------------
    def min_rank(self) -> int:
        if self.name == "irreducible":
            return self.label.length
        return max((p.min_rank() for p in self.parts), default=0)

    def character(self, n: int) -> SymLaurent:
        if self.name == "trivial":
            return SymLaurent.constant(n)
        if self.name == "irreducible":
            return character(self.label, self.group, n)
        if self.name == "wedge_standard":
            return exterior_power(_standard(self.group, n), self.k)
        if self.name == "h1_ia":
            v = gl_character(GlLabel.of((1,)), n)
            return exterior_power(v, 2) * v.dual()
        if self.name == "h1_torelli":
            return exterior_power(sp_character(SpLabel.of((1,)), n), 3)
        if self.name == "free_lie":
            return free_lie_component(self.parts[0].character(n), self.k)
        if self.name == "tensor":
            out = self.parts[0].character(n)
            for p in self.parts[1:]:
                out = out * p.character(n)
            return out
        raise ValueError(f"unknown sequence {self.name!r}")

    def __str__(self) -> str:
        if self.name == "wedge_standard":
            return f"wedge_standard(k={self.k}, {self.group})"
        if self.name == "free_lie":
            return f"free_lie({self.k}, {self.parts[0]})"
        if self.name == "tensor":
            return "tensor(" + ", ".join(map(str, self.parts)) + ")"
        if self.name == "irreducible":
            return f"irreducible({self.label}, {self.group})"
        return self.name


def _standard(group: str, n: int) -> SymLaurent:
    if n == 0:
        return SymLaurent(0)
    return gl_character(GlLabel.of((1,)), n) if group == GL else sp_character(SpLabel.of((1,)), n)


@dataclass(frozen=True)
class MultiplicityTable:
    """``rows[n]`` is the decomposition of the ``n``-th term of a sequence.

    The decomposition's own rank is usually ``n``; for tau sequences it is
    the fixed block rank.
    """

    kind: str
    rows: Mapping[int, VirtualDecomp]

    @property
    def ranks(self) -> list[int]:
        return sorted(self.rows)

    def __getitem__(self, n: int) -> VirtualDecomp:
        return self.rows[n]

    def dims(self) -> dict[int, int]:
        return {n: self.rows[n].dim() for n in self.ranks}

    def export_lines(self) -> list[str]:
        """One ``n label multiplicity`` line per constituent."""
        lines = []
        for n in self.ranks:
            for label, m in self.rows[n]:
                lines.append(f"{n} {label} {m}")
        return lines

    def records(self) -> list[dict]:
        return [{"n": n, "label": str(label), "sign": 1 if m > 0 else -1, "multiplicity": abs(m)}
                for n in self.ranks for label, m in self.rows[n]]


@dataclass(frozen=True)
class StabilityReport:
    """Outcome of scanning a finite window for multiplicity stability.

    A detected onset is evidence from the window only; ``evidence_only`` is
    always set, and the surjectivity half of uniform stability is never
    checked.
    """

    detected: bool
    stable_onset: int | None
    stable_multiplicities: dict
    horizon: tuple[int, int]
    reason: str = ""
    evidence_only: bool = True
    surjectivity_checked: bool = False

    def as_dict(self) -> dict:
        return {
            "detected": self.detected,
            "stable_onset": self.stable_onset,
            "stable_multiplicities": {str(k): v for k, v in self.stable_multiplicities.items()},
            "horizon": list(self.horizon),
            "reason": self.reason,
            "evidence_only": self.evidence_only,
            "surjectivity_checked": self.surjectivity_checked,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    def lines(self) -> list[str]:
        lo, hi = self.horizon
        out = []
        if self.detected:
            out.append(f"onset {self.stable_onset}")
            row = sorted(self.stable_multiplicities.items(), key=lambda kv: label_sort_key(kv[0]))
            out.append("stable " + ("; ".join(f"{k} {v}" for k, v in row) or "0"))
        else:
            out.append("onset not-detected")
            if self.reason:
                out.append(f"reason {self.reason}")
        out.append(f"window {lo}..{hi}")
        out.append("evidence-only true")
        out.append("surjectivity unchecked")
        return out


def generate(spec: SequenceSpec, n_lo: int, n_hi: int | None = None) -> MultiplicityTable:
    if n_lo < 1:
        raise ValueError("n_lo must be at least 1")
    if n_hi is None:
        n_hi = n_lo + DEFAULT_HORIZON
    if n_hi < n_lo:
        raise ValueError("empty rank window")
    rows = {n: decompose(spec.character(n), spec.group, n) for n in range(n_lo, n_hi + 1)}
    return MultiplicityTable(spec.group, rows)


def detect_stability(table: MultiplicityTable) -> StabilityReport:
    """Smallest ``n0`` after which every row of the window is the same.

    Needs at least three consecutive rows and a stable run of at least two.
    A run is rejected as spurious unless, at the top of the window, every
    stable constituent fits with at least one rank to spare.
    """
    ranks = table.ranks
    if len(ranks) < 3:
        raise WindowTooSmall(f"need at least 3 rows, got {len(ranks)}")
    if ranks != list(range(ranks[0], ranks[-1] + 1)):
        raise WindowTooSmall("rows must be consecutive ranks")
    lo, hi = ranks[0], ranks[-1]
    top = table.rows[hi]
    onset = hi
    while onset - 1 >= lo and table.rows[onset - 1].abstract() == top.abstract():
        onset -= 1
    stable = top.abstract()
    if onset == hi:
        return StabilityReport(False, None, {}, (lo, hi), "last two rows differ")
    if any(label.length > hi - 1 for label in stable):
        return StabilityReport(False, None, {}, (lo, hi), "stable row has no slack at the top of the window")
    return StabilityReport(True, onset, stable, (lo, hi))


def tau_sequence(spec: SequenceSpec, a: int, n_lo: int, n_hi: int | None = None) -> MultiplicityTable:
    """Row ``n`` is ``tau_{n,a}`` of the ``n``-th term, a decomposition at rank ``a``."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    if n_lo < max(a, 1):
        raise ValueError("n_lo must be at least max(a, 1)")
    table = generate(spec, n_lo, n_hi)
    return MultiplicityTable(spec.group, {n: tau(d, a).decomp for n, d in table.rows.items()})
