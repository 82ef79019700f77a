"""Border-strip modification rules.

A label that is too long for rank ``n`` still names a well-defined virtual
character (the image of a universal character).  These rules rewrite it as
zero or plus/minus an in-range irreducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .labels import GL, SP, GlLabel, Label, SpLabel
from .partitions import Partition, StripFailure, StripRemoval, remove_border_strip

__all__ = ["SignedLabel", "mod_gl", "mod_sp", "modify"]


@dataclass(frozen=True)
class SignedLabel:
    """``sign * label``, or zero when ``sign == 0``.

    ``trace`` lists the label after every strip removal (the input first),
    and ``reason`` says why the result vanished.
    """

    sign: int
    label: Label | None
    trace: tuple = field(default=(), compare=False)
    reason: StripFailure | None = field(default=None, compare=False)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return f"{self.sign:+d} * {self.label}"


def _zero(trace, reason) -> SignedLabel:
    return SignedLabel(0, None, tuple(trace), reason)


def mod_gl(plus: Partition, minus: Partition, n: int) -> SignedLabel:
    if n < 0:
        raise ValueError("rank must be nonnegative")
    plus, minus = Partition(plus), Partition(minus)
    sign = 1
    trace = [GlLabel(plus, minus)]
    while len(plus) + len(minus) > n:
        strip = len(plus) + len(minus) - n - 1
        if strip == 0:
            return _zero(trace, StripFailure.EMPTY_STRIP)
        a = remove_border_strip(plus, strip)
        if not isinstance(a, StripRemoval):
            return _zero(trace, a)
        b = remove_border_strip(minus, strip)
        if not isinstance(b, StripRemoval):
            return _zero(trace, b)
        if (a.columns + b.columns - 1) % 2:
            sign = -sign
        plus, minus = a.remainder, b.remainder
        trace.append(GlLabel(plus, minus))
    return SignedLabel(sign, GlLabel(plus, minus), tuple(trace))


def mod_sp(lam: Partition, n: int) -> SignedLabel:
    if n < 0:
        raise ValueError("rank must be nonnegative")
    lam = Partition(lam)
    sign = 1
    trace = [SpLabel(lam)]
    while len(lam) > n:
        strip = 2 * (len(lam) - n - 1)
        if strip == 0:
            return _zero(trace, StripFailure.EMPTY_STRIP)
        r = remove_border_strip(lam, strip)
        if not isinstance(r, StripRemoval):
            return _zero(trace, r)
        if r.columns % 2:
            sign = -sign
        lam = r.remainder
        trace.append(SpLabel(lam))
    return SignedLabel(sign, SpLabel(lam), tuple(trace))


def modify(label: Label, kind: str, n: int) -> SignedLabel:
    if kind == GL:
        return mod_gl(label.plus, label.minus, n)
    if kind == SP:
        return mod_sp(label.lam, n)
    raise ValueError(f"unknown group kind {kind!r}")
