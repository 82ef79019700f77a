"""Closed-form branching and tensor rules for GL_n and Sp_2n.

Every rule here works in the universal character ring: the formula is a
sum of products of LR coefficients, each resulting term is pushed through
the modification rules for the target rank, and signed contributions are
collected.  :mod:`repstab.characters` provides the independent check.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from .characters import character, decompose, exterior_power
from .errors import RankCapExceeded
from .labels import GL, SP, GlLabel, Label, PairDecomp, SpLabel, VirtualDecomp, label_to_weight, weight_to_label
from .lr import coproduct, schur_product_expand, skew_expand
from .modification import mod_gl, mod_sp
from .partitions import EMPTY, Partition, conjugate

__all__ = [
    "restrict_gl_one",
    "restrict_sp_one",
    "sp_restriction_support",
    "length_drop_bound_gl",
    "length_drop_bound_sp",
    "stable_branch_gl",
    "stable_branch_sp",
    "outer_restrict_gl",
    "outer_restrict_sp",
    "outer_restrict",
    "tensor_gl",
    "tensor_sp",
    "tensor",
    "wedge_stable",
    "WedgeStable",
    "tau",
    "TauResult",
    "DEFAULT_RANK_CAP",
]

DEFAULT_RANK_CAP = 10


@lru_cache(maxsize=None)
def _subpartitions(p: Partition) -> tuple[Partition, ...]:
    """All partitions whose diagram fits inside ``p``, including ``p`` and the empty one."""
    out = []

    def rec(i: int, bound: int, acc: list[int]) -> None:
        out.append(Partition._trusted(tuple(acc)))
        if i == len(p):
            return
        for v in range(1, min(bound, p[i]) + 1):
            acc.append(v)
            rec(i + 1, v, acc)
            acc.pop()

    rec(0, p[0] if p else 0, [])
    return tuple(out)


def _common_subpartitions(a: Partition, b: Partition) -> tuple[Partition, ...]:
    meet = Partition(min(x, y) for x, y in zip(a, b))
    return _subpartitions(meet)


def _is_even_column(p: Partition) -> bool:
    return all(c % 2 == 0 for c in conjugate(p))


def _add(acc: dict, key, value: int) -> None:
    v = acc.get(key, 0) + value
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _product_of_sums(a: dict, b: dict) -> dict[Partition, int]:
    out: dict[Partition, int] = defaultdict(int)
    for x, cx in a.items():
        for y, cy in b.items():
            for z, cz in schur_product_expand(x, y).items():
                out[z] += cx * cy * cz
    return out


# --------------------------------------------------------------------------
# one-step restrictions

def restrict_gl_one(label: GlLabel, n: int) -> VirtualDecomp:
    """``GL_n -> GL_{n-1}``: one copy of every interleaving weight."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    w = label_to_weight(label, n)
    terms: dict[Label, int] = {}
    ranges = [range(w[i + 1], w[i] + 1) for i in range(n - 1)]
    for mu in itertools.product(*ranges):
        lab = weight_to_label(mu)
        terms[lab] = terms.get(lab, 0) + 1
    return VirtualDecomp(GL, n - 1, terms)


def sp_restriction_support(lam: Partition, mu: Partition, n: int) -> bool:
    """Nonvanishing of ``[Res Sp_2n(lam), Sp_{2n-2}(mu)]``: ``lam_i >= mu_i >= lam_{i+2}``."""
    if len(lam) > n or len(mu) > n - 1:
        return False
    return all(lam.part(i) >= mu.part(i) >= lam.part(i + 2) for i in range(n - 1))


def _sp_interlacing_count(lam: Partition, mu: Partition, n: int) -> int:
    # intermediate nu with lam_i >= nu_i >= lam_{i+1} and nu_i >= mu_i >= nu_{i+1}
    count = 0
    ranges = [range(max(lam.part(i + 1), mu.part(i)), lam.part(i) + 1) for i in range(n)]
    for nu in itertools.product(*ranges):
        if all(mu.part(i) >= nu[i + 1] for i in range(n - 1)):
            count += 1
    return count


def restrict_sp_one(label: SpLabel, n: int, method: str = "oracle") -> VirtualDecomp:
    """``Sp_2n -> Sp_{2n-2}`` with multiplicities.

    ``method="oracle"`` sets the last torus variable to 1 and decomposes;
    ``method="interlacing"`` counts intermediate patterns between the two
    interleaving conditions.
    """
    if n < 1:
        raise ValueError("rank must be at least 1")
    if method == "oracle":
        return decompose(character(label, SP, n).drop_last(), SP, n - 1)
    if method != "interlacing":
        raise ValueError(f"unknown method {method!r}")
    lam = label.lam
    terms = {}
    ranges = [range(lam.part(i + 2), lam.part(i) + 1) for i in range(n - 1)]
    for mu in itertools.product(*ranges):
        if any(a < b for a, b in zip(mu, mu[1:])):
            continue
        mu = Partition(mu)
        c = _sp_interlacing_count(lam, mu, n)
        if c:
            terms[SpLabel(mu)] = c
    return VirtualDecomp(SP, n - 1, terms)


def length_drop_bound_gl(lam: GlLabel, mu: GlLabel, m: int) -> bool:
    return mu.length >= lam.length - 2 * m


def length_drop_bound_sp(lam: SpLabel, mu: SpLabel, m: int) -> bool:
    return mu.length >= lam.length - 2 * m


# --------------------------------------------------------------------------
# stable branching coefficients

def stable_branch_gl(lam_p, lam_m, mu_p, mu_m, nu_p, nu_m) -> int:
    """Stable multiplicity of ``GL_m(mu) x GL_k(nu)`` in ``GL_{m+k}(lam)``."""
    lam_p, lam_m, mu_p, mu_m, nu_p, nu_m = map(Partition, (lam_p, lam_m, mu_p, mu_m, nu_p, nu_m))
    total = 0
    for gp, a in schur_product_expand(mu_p, nu_p).items():
        plus = skew_expand(lam_p, gp)
        if not plus:
            continue
        for gm, b in schur_product_expand(mu_m, nu_m).items():
            minus = skew_expand(lam_m, gm)
            for delta, c in plus.items():
                d = minus.get(delta, 0)
                if d:
                    total += a * b * c * d
    return total


def stable_branch_sp(lam, mu, nu) -> int:
    """Stable multiplicity of ``Sp_2m(mu) x Sp_2k(nu)`` in ``Sp_2(m+k)(lam)``."""
    lam, mu, nu = map(Partition, (lam, mu, nu))
    total = 0
    for gamma, a in schur_product_expand(mu, nu).items():
        for eta, b in skew_expand(lam, gamma).items():
            if _is_even_column(eta):
                total += a * b
    return total


# --------------------------------------------------------------------------
# outer restriction G_{m+k} -> G_m x G_k

@lru_cache(maxsize=None)
def _universal_split_gl(plus: Partition, minus: Partition):
    """Universal coefficients ``{((mu+, mu-), (nu+, nu-)): c}`` before modification."""

    def side(lam: Partition):
        # (nu, delta) -> {mu: sum_gamma c^lam_{gamma nu} c^gamma_{mu delta}}
        table: dict = defaultdict(lambda: defaultdict(int))
        for nu in _subpartitions(lam):
            for gamma, a in skew_expand(lam, nu).items():
                for delta in _subpartitions(gamma):
                    for mu, b in skew_expand(gamma, delta).items():
                        table[(nu, delta)][mu] += a * b
        return table

    tp, tm = side(plus), side(minus)
    acc: dict = {}
    for (nup, delta), mus_p in tp.items():
        for (num, delta2), mus_m in tm.items():
            if delta2 != delta:
                continue
            for mp, a in mus_p.items():
                for mm, b in mus_m.items():
                    _add(acc, ((mp, mm), (nup, num)), a * b)
    return acc


def outer_restrict_gl(label: GlLabel, m: int, k: int) -> PairDecomp:
    terms: dict = {}
    for ((mp, mm), (np_, nm)), c in _universal_split_gl(label.plus, label.minus).items():
        left = mod_gl(mp, mm, m)
        if left.is_zero:
            continue
        right = mod_gl(np_, nm, k)
        if right.is_zero:
            continue
        _add(terms, (left.label, right.label), left.sign * right.sign * c)
    return PairDecomp(GL, (m, k), terms)


@lru_cache(maxsize=None)
def _universal_split_sp(lam: Partition):
    acc: dict = {}
    for eta in _subpartitions(lam):
        if not _is_even_column(eta):
            continue
        for gamma, a in skew_expand(lam, eta).items():
            for (mu, nu), b in coproduct(gamma).items():
                _add(acc, (mu, nu), a * b)
    return acc


def outer_restrict_sp(label: SpLabel, m: int, k: int) -> PairDecomp:
    terms: dict = {}
    for (mu, nu), c in _universal_split_sp(label.lam).items():
        left = mod_sp(mu, m)
        if left.is_zero:
            continue
        right = mod_sp(nu, k)
        if right.is_zero:
            continue
        _add(terms, (left.label, right.label), left.sign * right.sign * c)
    return PairDecomp(SP, (m, k), terms)


def outer_restrict(label: Label, kind: str, m: int, k: int) -> PairDecomp:
    if not label.valid_at(m + k):
        from .errors import LabelRangeError

        raise LabelRangeError(f"{label} is not a label at rank {m + k}")
    return outer_restrict_gl(label, m, k) if kind == GL else outer_restrict_sp(label, m, k)


# --------------------------------------------------------------------------
# inner tensor products

@lru_cache(maxsize=None)
def _universal_tensor_gl(a: GlLabel, b: GlLabel) -> dict:
    acc: dict = {}
    for gamma in _common_subpartitions(a.plus, b.minus):
        for delta in _common_subpartitions(b.plus, a.minus):
            plus = _product_of_sums(skew_expand(a.plus, gamma), skew_expand(b.plus, delta))
            minus = _product_of_sums(skew_expand(a.minus, delta), skew_expand(b.minus, gamma))
            for lp, x in plus.items():
                for lm, y in minus.items():
                    _add(acc, (lp, lm), x * y)
    return acc


def tensor_gl(a: GlLabel, b: GlLabel, n: int) -> VirtualDecomp:
    """``GL_n(a) (x) GL_n(b)`` with signed modification at rank ``n``."""
    for lab in (a, b):
        if not lab.valid_at(n):
            from .errors import LabelRangeError

            raise LabelRangeError(f"{lab} is not a label at rank {n}")
    terms: dict = {}
    for (lp, lm), c in _universal_tensor_gl(a, b).items():
        r = mod_gl(lp, lm, n)
        if not r.is_zero:
            _add(terms, r.label, r.sign * c)
    return VirtualDecomp(GL, n, terms)


@lru_cache(maxsize=None)
def _universal_tensor_sp(a: Partition, b: Partition) -> dict:
    acc: dict = {}
    for gamma in _common_subpartitions(a, b):
        for lam, c in _product_of_sums(skew_expand(a, gamma), skew_expand(b, gamma)).items():
            _add(acc, lam, c)
    return acc


def tensor_sp(a: SpLabel, b: SpLabel, n: int) -> VirtualDecomp:
    """``Sp_2n(a) (x) Sp_2n(b)`` (Newell-Littlewood) with modification at rank ``n``."""
    for lab in (a, b):
        if not lab.valid_at(n):
            from .errors import LabelRangeError

            raise LabelRangeError(f"{lab} is not a label at rank {n}")
    terms: dict = {}
    for lam, c in _universal_tensor_sp(a.lam, b.lam).items():
        r = mod_sp(lam, n)
        if not r.is_zero:
            _add(terms, r.label, r.sign * c)
    return VirtualDecomp(SP, n, terms)


def tensor(a: Label, b: Label, kind: str, n: int) -> VirtualDecomp:
    return tensor_gl(a, b, n) if kind == GL else tensor_sp(a, b, n)


# --------------------------------------------------------------------------
# stable exterior powers

@dataclass(frozen=True)
class WedgeStable:
    onset: int
    stable: dict
    rows: dict  # rank -> VirtualDecomp, every rank that was computed


def _slack_ok(decomp: VirtualDecomp) -> bool:
    return all(label.length <= decomp.rank - 1 for label, _ in decomp)


def wedge_stable(label: Label, k: int, kind: str, cap: int = DEFAULT_RANK_CAP) -> WedgeStable:
    """Decompose ``Lambda^k`` of the irreducible ``label`` at growing rank
    until two consecutive ranks agree and every constituent has room to spare.

    ``onset`` is the first rank of the final run of identical rows.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    start = max(1, label.length)
    rows: dict[int, VirtualDecomp] = {}
    for r in range(start, cap + 1):
        rows[r] = decompose(exterior_power(character(label, kind, r), k), kind, r)
        if r - 1 in rows and rows[r].abstract() == rows[r - 1].abstract() and _slack_ok(rows[r]):
            onset = r - 1
            while onset - 1 in rows and rows[onset - 1].abstract() == rows[r].abstract():
                onset -= 1
            return WedgeStable(onset, rows[r].abstract(), rows)
    raise RankCapExceeded(f"Lambda^{k} {label} did not stabilise by rank {cap}")


# --------------------------------------------------------------------------
# tau functor

@dataclass(frozen=True)
class TauResult:
    decomp: VirtualDecomp
    n: int
    a: int


def tau(decomp: VirtualDecomp, a: int) -> TauResult:
    """Coinvariants of the complementary block ``G_{n-a}``: the constituents of
    ``Res^{G_n}_{G_a x G_{n-a}}`` whose second factor is trivial."""
    n = decomp.rank
    if not 0 <= a <= n:
        raise ValueError(f"block size {a} outside 0..{n}")
    out = VirtualDecomp(decomp.kind, a, {})
    for label, c in decomp:
        part = outer_restrict(label, decomp.kind, a, n - a).second_trivial()
        out = out + part.scale(c)
    return TauResult(out, n, a)
