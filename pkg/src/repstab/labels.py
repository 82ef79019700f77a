"""Labels of irreducibles, their text syntax, and virtual decompositions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, Union

from .errors import LabelRangeError
from .partitions import EMPTY, Partition, parse_partition

__all__ = [
    "GlLabel",
    "SpLabel",
    "Label",
    "GL",
    "SP",
    "parse_label",
    "label_sort_key",
    "label_to_weight",
    "weight_to_label",
    "is_gl_dominant",
    "is_sp_dominant",
    "VirtualDecomp",
    "PairDecomp",
]

GL = "gl"
SP = "sp"


class GlLabel(NamedTuple):
    """``GL_n(plus, minus)``; valid at rank ``n`` iff the lengths sum to at most ``n``."""

    plus: Partition = EMPTY
    minus: Partition = EMPTY

    @property
    def length(self) -> int:
        return len(self.plus) + len(self.minus)

    @property
    def size(self) -> int:
        return self.plus.size + self.minus.size

    def valid_at(self, n: int) -> bool:
        return self.length <= n

    def __str__(self) -> str:
        return f"{self.plus}|{self.minus}"

    @classmethod
    def of(cls, plus: Iterable[int] = (), minus: Iterable[int] = ()) -> "GlLabel":
        return cls(Partition(plus), Partition(minus))


class SpLabel(NamedTuple):
    """``Sp_2n(lam)``; valid at rank ``n`` iff ``lam`` has at most ``n`` rows."""

    lam: Partition = EMPTY

    @property
    def length(self) -> int:
        return len(self.lam)

    @property
    def size(self) -> int:
        return self.lam.size

    def valid_at(self, n: int) -> bool:
        return self.length <= n

    def __str__(self) -> str:
        return str(self.lam)

    @classmethod
    def of(cls, lam: Iterable[int] = ()) -> "SpLabel":
        return cls(Partition(lam))


Label = Union[GlLabel, SpLabel]


def parse_label(text: str, kind: str) -> Label:
    """``"[1,1]|[1]"`` for GL, ``"[1,1,1]"`` for Sp."""
    if kind == GL:
        if text.count("|") != 1:
            raise ValueError(f"GL label needs exactly one '|': {text!r}")
        a, b = text.split("|")
        return GlLabel(parse_partition(a), parse_partition(b))
    if kind == SP:
        if "|" in text:
            raise ValueError(f"Sp label takes a single partition: {text!r}")
        return SpLabel(parse_partition(text))
    raise ValueError(f"unknown group kind {kind!r}")


def label_sort_key(label: Label):
    """Size descending, then reverse-lexicographic; use as ``sorted(key=...)``."""
    flat = tuple(label.plus) + (0,) + tuple(label.minus) if isinstance(label, GlLabel) else tuple(label.lam)
    return (-label.size, tuple(-x for x in flat), len(flat))


# --------------------------------------------------------------------------
# weights

def label_to_weight(label: GlLabel, n: int) -> tuple[int, ...]:
    """Highest weight ``(plus_1, ..., 0, ..., -minus_2, -minus_1)`` in ``Z^n``."""
    if label.length > n:
        raise LabelRangeError(f"GL label {label} has length {label.length} > rank {n}")
    zeros = n - label.length
    return tuple(label.plus) + (0,) * zeros + tuple(-m for m in reversed(label.minus))


def weight_to_label(weight: Sequence[int]) -> GlLabel:
    plus = Partition._trusted(tuple(int(w) for w in weight if w > 0))
    minus = Partition._trusted(tuple(-int(w) for w in reversed(weight) if w < 0))
    return GlLabel(plus, minus)


def is_gl_dominant(weight: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(weight, weight[1:]))


def is_sp_dominant(weight: Sequence[int]) -> bool:
    return is_gl_dominant(weight) and (len(weight) == 0 or weight[-1] >= 0)


# --------------------------------------------------------------------------
# decompositions

def _check_kind(kind: str) -> None:
    if kind not in (GL, SP):
        raise ValueError(f"unknown group kind {kind!r}")


@dataclass(frozen=True)
class VirtualDecomp:
    """A finite integer combination of irreducibles of ``GL_n`` or ``Sp_2n``."""

    kind: str
    rank: int
    terms: Mapping[Label, int] = field(default_factory=dict)

    def __post_init__(self):
        _check_kind(self.kind)
        clean = {}
        for label, mult in self.terms.items():
            if mult == 0:
                continue
            if not label.valid_at(self.rank):
                raise LabelRangeError(f"{label} is not a label at rank {self.rank}")
            clean[label] = int(mult)
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda kv: label_sort_key(kv[0]))))

    def __iter__(self) -> Iterator[tuple[Label, int]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, label: Label) -> int:
        return self.terms.get(label, 0)

    def __eq__(self, other):
        if not isinstance(other, VirtualDecomp):
            return NotImplemented
        return (self.kind, self.rank, self.terms) == (other.kind, other.rank, other.terms)

    def __hash__(self):
        return hash((self.kind, self.rank, tuple(self.terms.items())))

    def __add__(self, other: "VirtualDecomp") -> "VirtualDecomp":
        if (self.kind, self.rank) != (other.kind, other.rank):
            raise ValueError("cannot add decompositions of different groups")
        out = dict(self.terms)
        for label, mult in other.terms.items():
            out[label] = out.get(label, 0) + mult
        return VirtualDecomp(self.kind, self.rank, out)

    def scale(self, c: int) -> "VirtualDecomp":
        return VirtualDecomp(self.kind, self.rank, {k: c * v for k, v in self.terms.items()})

    @property
    def is_honest(self) -> bool:
        return all(v > 0 for v in self.terms.values())

    def dim(self) -> int:
        from .characters import irrep_dim

        return sum(m * irrep_dim(label, self.kind, self.rank) for label, m in self.terms.items())

    def abstract(self) -> dict[Label, int]:
        """Rank-free view: the label -> multiplicity map."""
        return dict(self.terms)

    def __str__(self) -> str:
        return "; ".join(f"{label} {m}" for label, m in self.terms.items()) or "0"


@dataclass(frozen=True)
class PairDecomp:
    """A decomposition into outer tensor products ``G_m(a) (x) G_k(b)``."""

    kind: str
    ranks: tuple[int, int]
    terms: Mapping[tuple[Label, Label], int] = field(default_factory=dict)

    def __post_init__(self):
        _check_kind(self.kind)
        m, k = self.ranks
        clean = {}
        for (a, b), mult in self.terms.items():
            if mult == 0:
                continue
            if not (a.valid_at(m) and b.valid_at(k)):
                raise LabelRangeError(f"({a}, {b}) is not a label pair at ranks {self.ranks}")
            clean[(a, b)] = int(mult)
        order = sorted(clean.items(), key=lambda kv: (label_sort_key(kv[0][0]), label_sort_key(kv[0][1])))
        object.__setattr__(self, "terms", dict(order))

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, pair) -> int:
        return self.terms.get(pair, 0)

    def __eq__(self, other):
        if not isinstance(other, PairDecomp):
            return NotImplemented
        return (self.kind, self.ranks, self.terms) == (other.kind, other.ranks, other.terms)

    def __hash__(self):
        return hash((self.kind, self.ranks, tuple(self.terms.items())))

    def dim(self) -> int:
        from .characters import irrep_dim

        m, k = self.ranks
        return sum(c * irrep_dim(a, self.kind, m) * irrep_dim(b, self.kind, k)
                   for (a, b), c in self.terms.items())

    def second_trivial(self) -> VirtualDecomp:
        """Constituents whose second factor is the trivial representation."""
        trivial = GlLabel() if self.kind == GL else SpLabel()
        return VirtualDecomp(self.kind, self.ranks[0],
                             {a: c for (a, b), c in self.terms.items() if b == trivial})
