"""Brute-force character oracle.

Characters of ``GL_n`` and ``Sp_2n`` are kept as fully expanded Laurent
polynomials in the torus variables ``x_1..x_n``.  Everything the closed-form
rules in :mod:`repstab.branching` produce is checked against this module on
small ranks, so it deliberately uses different machinery: Gelfand-Tsetlin
recursion for GL, the type C Weyl character formula for Sp, and greedy
peeling of highest weights for decomposition.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from . import _kernels
from .errors import CoefficientOverflow, FractionalCoefficient, InexactDivision, NonInvariant
from .labels import (
    GL,
    SP,
    GlLabel,
    Label,
    PairDecomp,
    SpLabel,
    VirtualDecomp,
    is_gl_dominant,
    is_sp_dominant,
    label_to_weight,
    weight_to_label,
)
from .partitions import Partition

__all__ = [
    "Codec",
    "SymLaurent",
    "gl_character",
    "sp_character",
    "character",
    "gl_dim",
    "sp_dim",
    "irrep_dim",
    "multiply",
    "adams",
    "decompose",
    "split_restrict",
    "exterior_power",
    "free_lie_component",
    "mobius",
]

LIMIT = 2**62
DECOMPOSE_CAP = 10**6
_PAIR_CHUNK = 1 << 22


class Codec:
    """Pack exponent vectors into int64 keys.

    Each coordinate becomes a balanced digit in base ``B = 2**bits``, most
    significant first.  The map is additive and strictly monotone for the
    lexicographic order, as long as every coordinate of every vector that
    is ever encoded (including sums) stays within ``[-B/2, B/2)``.
    """

    def __init__(self, n_vars: int, max_abs: int):
        self.n_vars = n_vars
        self.max_abs = int(max_abs)
        self.bits = max(2, (2 * self.max_abs + 1).bit_length())
        if self.bits * n_vars > 62:
            raise CoefficientOverflow(
                f"exponents up to {max_abs} in {n_vars} variables do not fit a 64-bit key")
        self.base = 1 << self.bits
        self.half = self.base >> 1
        self.shifts = np.array([self.bits * (n_vars - 1 - i) for i in range(n_vars)], np.int64)
        self.weights = np.left_shift(np.int64(1), self.shifts)
        self.offset = np.int64(sum(self.half << int(s) for s in self.shifts))

    def encode(self, exps: np.ndarray) -> np.ndarray:
        if self.n_vars == 0:
            return np.zeros(exps.shape[0], np.int64)
        return exps.astype(np.int64) @ self.weights

    def encode_one(self, vec: Iterable[int]) -> np.int64:
        return np.int64(sum(int(e) << int(s) for e, s in zip(vec, self.shifts)))

    def digit(self, keys: np.ndarray, i: int) -> np.ndarray:
        u = keys + self.offset
        return ((u >> self.shifts[i]) & (self.base - 1)) - self.half

    def decode(self, keys: np.ndarray) -> np.ndarray:
        out = np.empty((keys.size, self.n_vars), np.int64)
        if self.n_vars:
            u = keys + self.offset
            for i in range(self.n_vars):
                out[:, i] = ((u >> self.shifts[i]) & (self.base - 1)) - self.half
        return out


def _max_abs(exps: np.ndarray) -> int:
    return int(np.abs(exps).max()) if exps.size else 0


def _abs_total(coeffs: np.ndarray) -> float:
    return float(np.abs(coeffs.astype(np.float64)).sum())


class SymLaurent:
    """An exact Laurent polynomial with integer coefficients.

    ``exps`` is a ``(terms, n_vars)`` int64 array and ``coeffs`` the matching
    int64 vector.  Terms are unique, nonzero and sorted lexicographically
    descending, so ``exps[0]`` is the leading monomial.  Instances are
    immutable.
    """

    __slots__ = ("n_vars", "exps", "coeffs")

    def __init__(self, n_vars: int, exps=None, coeffs=None, _canonical: bool = False):
        if n_vars < 0:
            raise ValueError("variable count must be nonnegative")
        exps = np.zeros((0, n_vars), np.int64) if exps is None else np.asarray(exps, np.int64)
        coeffs = np.zeros(0, np.int64) if coeffs is None else np.asarray(coeffs, np.int64)
        exps = exps.reshape(coeffs.shape[0] if exps.size == 0 else -1, n_vars)
        if exps.shape[0] != coeffs.shape[0]:
            raise ValueError("exponent and coefficient arrays disagree in length")
        if not _canonical:
            codec = Codec(n_vars, _max_abs(exps))
            keys, coeffs = _kernels.reduce_terms(codec.encode(exps), coeffs.copy())
            exps = codec.decode(keys)
        exps.setflags(write=False)
        coeffs.setflags(write=False)
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "exps", exps)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("SymLaurent is immutable")

    # construction ---------------------------------------------------------
    @classmethod
    def from_terms(cls, n_vars: int, terms: Mapping[tuple, int]) -> "SymLaurent":
        exps = np.array(list(terms.keys()), np.int64).reshape(-1, n_vars)
        coeffs = np.array([int(v) for v in terms.values()], np.int64)
        return cls(n_vars, exps, coeffs)

    @classmethod
    def constant(cls, n_vars: int, c: int = 1) -> "SymLaurent":
        if c == 0:
            return cls(n_vars)
        return cls(n_vars, np.zeros((1, n_vars), np.int64), np.array([c], np.int64), _canonical=True)

    @classmethod
    def _from_keys(cls, codec: Codec, keys, coeffs) -> "SymLaurent":
        return cls(codec.n_vars, codec.decode(keys), coeffs, _canonical=True)

    # inspection -------------------------------------------------------------
    def terms(self) -> dict[tuple[int, ...], int]:
        return {tuple(int(e) for e in row): int(c) for row, c in zip(self.exps, self.coeffs)}

    def __len__(self) -> int:
        return int(self.coeffs.size)

    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    def leading(self) -> tuple[tuple[int, ...], int]:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading term")
        return tuple(int(e) for e in self.exps[0]), int(self.coeffs[0])

    def dim(self) -> int:
        """Value at ``x = (1, ..., 1)``."""
        return sum(int(c) for c in self.coeffs)

    def evaluate(self, point) -> Fraction:
        """Exact value at a point of nonzero rationals."""
        point = [Fraction(p) for p in point]
        if len(point) != self.n_vars:
            raise ValueError(f"need {self.n_vars} coordinates")
        total = Fraction(0)
        for row, c in zip(self.exps, self.coeffs):
            term = Fraction(int(c))
            for p, e in zip(point, row):
                term *= p ** int(e)
            total += term
        return total

    def max_abs_exponent(self) -> int:
        return _max_abs(self.exps)

    def __eq__(self, other):
        if isinstance(other, int):
            other = SymLaurent.constant(self.n_vars, other)
        if not isinstance(other, SymLaurent):
            return NotImplemented
        return (self.n_vars == other.n_vars and np.array_equal(self.exps, other.exps)
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.n_vars, self.exps.tobytes(), self.coeffs.tobytes()))

    def __repr__(self) -> str:
        if self.is_zero():
            return f"SymLaurent({self.n_vars}, 0)"
        shown = list(self.terms().items())[:6]
        body = " + ".join(f"{c}*x^{list(e)}" for e, c in shown)
        more = " + ..." if len(self) > 6 else ""
        return f"SymLaurent({self.n_vars}, {body}{more})"

    # ring operations ------------------------------------------------------
    def _same_ring(self, other: "SymLaurent") -> None:
        if other.n_vars != self.n_vars:
            raise ValueError(f"variable counts differ: {self.n_vars} vs {other.n_vars}")

    def __add__(self, other):
        if isinstance(other, int):
            other = SymLaurent.constant(self.n_vars, other)
        self._same_ring(other)
        if np.abs(self.coeffs).max(initial=0) >= LIMIT or np.abs(other.coeffs).max(initial=0) >= LIMIT:
            raise CoefficientOverflow("coefficient too large for exact addition")
        exps = np.concatenate([self.exps, other.exps])
        coeffs = np.concatenate([self.coeffs, other.coeffs])
        return SymLaurent(self.n_vars, exps, coeffs)

    __radd__ = __add__

    def __neg__(self):
        return SymLaurent(self.n_vars, self.exps, -self.coeffs, _canonical=True)

    def __sub__(self, other):
        if isinstance(other, int):
            other = SymLaurent.constant(self.n_vars, other)
        return self + (-other)

    def scale(self, c: int) -> "SymLaurent":
        if c == 0:
            return SymLaurent(self.n_vars)
        if self.coeffs.size and float(np.abs(self.coeffs).max()) * abs(c) >= LIMIT:
            raise CoefficientOverflow("scalar multiple leaves the 64-bit range")
        return SymLaurent(self.n_vars, self.exps, self.coeffs * np.int64(c), _canonical=True)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        if not isinstance(other, SymLaurent):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        return NotImplemented

    def __pow__(self, e: int) -> "SymLaurent":
        if e < 0:
            raise ValueError("negative powers are not supported")
        out = SymLaurent.constant(self.n_vars)
        base = self
        while e:
            if e & 1:
                out = multiply(out, base)
            e >>= 1
            if e:
                base = multiply(base, base)
        return out

    # substitutions ---------------------------------------------------------
    def adams(self, d: int) -> "SymLaurent":
        if d < 1:
            raise ValueError("Adams operations are indexed by positive integers")
        return SymLaurent(self.n_vars, self.exps * d, self.coeffs.copy(), _canonical=True)

    def dual(self) -> "SymLaurent":
        """``x_i -> 1/x_i``, the contragredient character."""
        return SymLaurent(self.n_vars, -self.exps, self.coeffs.copy())

    def permute_variables(self, perm) -> "SymLaurent":
        perm = list(perm)
        if sorted(perm) != list(range(self.n_vars)):
            raise ValueError(f"not a permutation of {self.n_vars} variables: {perm}")
        return SymLaurent(self.n_vars, self.exps[:, perm], self.coeffs.copy())

    def invert_variable(self, i: int) -> "SymLaurent":
        exps = self.exps.copy()
        exps[:, i] *= -1
        return SymLaurent(self.n_vars, exps, self.coeffs.copy())

    def specialize(self, keep: Iterable[int]) -> "SymLaurent":
        """Set every variable not in ``keep`` to 1; the result is in ``keep``'s variables."""
        keep = list(keep)
        return SymLaurent(len(keep), self.exps[:, keep], self.coeffs.copy())

    def drop_last(self, k: int = 1) -> "SymLaurent":
        return self.specialize(range(self.n_vars - k))

    def extend(self, before: int = 0, after: int = 0) -> "SymLaurent":
        """Regard as a polynomial in ``before + n_vars + after`` variables."""
        t = len(self)
        exps = np.hstack([np.zeros((t, before), np.int64), self.exps, np.zeros((t, after), np.int64)])
        return SymLaurent(self.n_vars + before + after, exps, self.coeffs.copy(), _canonical=True)

    def is_invariant(self, kind: str) -> bool:
        """Check invariance under generators of ``S_n`` (and the sign flip for Sp)."""
        n = self.n_vars
        if n <= 1 and kind == GL:
            return True
        gens = []
        if n >= 2:
            gens.append([1, 0] + list(range(2, n)))
            gens.append(list(range(1, n)) + [0])
        if any(self.permute_variables(g) != self for g in gens):
            return False
        if kind == SP and n >= 1:
            return self.invert_variable(0) == self
        return True


# --------------------------------------------------------------------------
# products

def multiply(f: SymLaurent, g: SymLaurent) -> SymLaurent:
    f._same_ring(g)
    if f.is_zero() or g.is_zero():
        return SymLaurent(f.n_vars)
    if _abs_total(f.coeffs) * _abs_total(g.coeffs) >= LIMIT:
        raise CoefficientOverflow("product coefficients may leave the 64-bit range")
    codec = Codec(f.n_vars, f.max_abs_exponent() + g.max_abs_exponent())
    ka, kb = codec.encode(f.exps), codec.encode(g.exps)
    ca, cb = f.coeffs, g.coeffs
    if ka.size < kb.size:
        ka, kb, ca, cb = kb, ka, cb, ca
    step = max(1, _PAIR_CHUNK // kb.size)
    if ka.size <= step:
        keys, coeffs = _kernels.product_terms(ka, ca, kb, cb)
    else:
        parts = [_kernels.product_terms(ka[i:i + step], ca[i:i + step], kb, cb)
                 for i in range(0, ka.size, step)]
        keys, coeffs = _kernels.reduce_terms(np.concatenate([p[0] for p in parts]),
                                             np.concatenate([p[1] for p in parts]))
    return SymLaurent._from_keys(codec, keys, coeffs)


def adams(f: SymLaurent, d: int) -> SymLaurent:
    return f.adams(d)


# --------------------------------------------------------------------------
# Schur polynomials by Gelfand-Tsetlin recursion

def _interlacing(lam: tuple[int, ...], n: int):
    # mu with lam_1 >= mu_1 >= lam_2 >= ... >= mu_{n-1} >= lam_n
    ranges = [range(lam[i + 1], lam[i] + 1) for i in range(n - 1)]
    return itertools.product(*ranges)


@lru_cache(maxsize=None)
def _schur(lam: tuple[int, ...], n: int) -> SymLaurent:
    """``s_lam(x_1..x_n)``; ``lam`` is padded with zeros to length ``n``."""
    if len(lam) > n and any(lam[n:]):
        return SymLaurent(n)
    lam = tuple(lam[:n]) + (0,) * max(0, n - len(lam))
    if n == 0:
        return SymLaurent.constant(0)
    if n == 1:
        return SymLaurent(1, np.array([[lam[0]]], np.int64), np.array([1], np.int64), _canonical=True)
    total = sum(lam)
    blocks, coeffs = [], []
    for mu in _interlacing(lam, n):
        sub = _schur(mu, n - 1)
        col = np.full((len(sub), 1), total - sum(mu), np.int64)
        blocks.append(np.hstack([sub.exps, col]))
        coeffs.append(sub.coeffs)
    return SymLaurent(n, np.concatenate(blocks), np.concatenate(coeffs))


@lru_cache(maxsize=None)
def gl_character(label: GlLabel, n: int) -> SymLaurent:
    """Character of ``GL_n(plus, minus)``: a shifted Schur polynomial.

    The weight is made polynomial by a determinant twist, expanded by
    Gelfand-Tsetlin recursion, and shifted back.
    """
    w = label_to_weight(label, n)
    if n == 0:
        return SymLaurent.constant(0)
    shift = w[-1]
    poly = _schur(tuple(x - shift for x in w), n)
    if shift == 0:
        return poly
    return SymLaurent(n, poly.exps + shift, poly.coeffs.copy(), _canonical=True)


# --------------------------------------------------------------------------
# symplectic characters

def _positive_roots_c(n: int) -> list[tuple[int, ...]]:
    roots = []
    for i in range(n):
        v = [0] * n
        v[i] = 2
        roots.append(tuple(v))
    for i in range(n):
        for j in range(i + 1, n):
            v = [0] * n
            v[i], v[j] = 1, -1
            roots.append(tuple(v))
            v = [0] * n
            v[i], v[j] = 1, 1
            roots.append(tuple(v))
    return roots


def _signed_alternant(l: list[int]) -> tuple[np.ndarray, np.ndarray]:
    n = len(l)
    perms = np.array(list(itertools.permutations(range(n))), np.int64).reshape(-1, n)
    inversions = np.zeros(perms.shape[0], np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            inversions += perms[:, i] > perms[:, j]
    psign = 1 - 2 * (inversions & 1)
    flips = np.array(list(itertools.product((1, -1), repeat=n)), np.int64).reshape(-1, n)
    larr = np.array(l, np.int64)
    exps = (larr[perms][:, None, :] * flips[None, :, :]).reshape(-1, n)
    coeffs = (psign[:, None] * flips.prod(axis=1)[None, :]).reshape(-1)
    return exps, coeffs


def _sp_ratio(lam: Partition, n: int) -> SymLaurent:
    """Weyl character formula: ``A_{lam+rho} / A_rho`` by successive exact
    division of the alternant by ``1 - e^{-alpha}``."""
    l = [lam.part(i) + n - i for i in range(n)]
    exps, coeffs = _signed_alternant(l)
    codec = Codec(n, 3 * l[0] + 2)
    keys = codec.encode(exps)
    for alpha in _positive_roots_c(n):
        c0 = next(i for i, a in enumerate(alpha) if a)
        pos = np.floor_divide(codec.digit(keys, c0), alpha[c0])
        ka = codec.encode_one(alpha)
        gid, pos, coeffs, exact = _kernels.string_divide(keys - pos * ka, pos, coeffs)
        if not exact:
            raise InexactDivision(f"alternant of {lam} is not divisible by 1 - e^-{alpha}")
        keys = gid + pos * ka
    keys = keys - codec.encode_one(range(n, 0, -1))
    keys, coeffs = _kernels.reduce_terms(keys, coeffs)
    return SymLaurent._from_keys(codec, keys, coeffs)


def _chebyshev_u(m: int) -> list[int]:
    # coefficients of U_m(u), where x^{m+1} - x^{-m-1} = (x - 1/x) U_m(x + 1/x)
    prev, cur = [1], [0, 1]
    if m == 0:
        return prev
    for _ in range(m - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


def _int_det(rows: list[list[int]]) -> int:
    # Bareiss fraction-free elimination
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def _binomial_table(m: int) -> np.ndarray:
    t = np.zeros((m + 1, m + 1), np.int64)
    for a in range(m + 1):
        for b in range(a + 1):
            t[a, b] = math.comb(a, b)
    return t


def _sp_bialternant(lam: Partition, n: int) -> SymLaurent:
    """Symplectic character via ``u_j = x_j + 1/x_j``.

    The Weyl quotient equals ``det[U_{l_i - 1}(u_j)] / Vandermonde(u)``, which
    Cauchy-Binet turns into an integer combination of Schur polynomials in
    ``u``.  Substituting ``u_j`` back gives the character without ever
    forming the ``2^n n!``-term alternant.
    """
    l = [lam.part(i) + n - i for i in range(n)]
    width = l[0]
    rows = []
    for li in l:
        u = _chebyshev_u(li - 1)
        rows.append(u + [0] * (width - len(u)))
    parts = []
    for cols in itertools.combinations(range(width - 1, -1, -1), n):
        d = _int_det([[row[c] for c in cols] for row in rows])
        if d:
            kappa = tuple(c - (n - 1 - r) for r, c in enumerate(cols))
            parts.append(_schur(kappa, n).scale(d))
    upoly = parts[0]
    for p in parts[1:]:
        upoly = upoly + p
    # substitute u_j -> x_j + 1/x_j one column at a time
    exps, coeffs = upoly.exps, upoly.coeffs
    top = _max_abs(exps)
    binom = _binomial_table(top)
    codec = Codec(n, top * n + 1)
    for j in range(n):
        a = exps[:, j]
        counts = a + 1
        src = np.repeat(np.arange(a.size), counts)
        first = np.cumsum(counts) - counts
        t = np.arange(src.size, dtype=np.int64) - first[src]
        exps = exps[src].copy()
        exps[:, j] = a[src] - 2 * t
        coeffs = coeffs[src] * binom[a[src], t]
        keys, coeffs = _kernels.reduce_terms(codec.encode(exps), coeffs)
        exps = codec.decode(keys)
    return SymLaurent(n, exps, coeffs, _canonical=True)


RATIO_MAX_RANK = 6


@lru_cache(maxsize=None)
def sp_character(label: SpLabel, n: int, method: str = "auto") -> SymLaurent:
    """Character of ``Sp_2n(lam)`` in the torus variables ``x_1..x_n``.

    ``method`` is ``"ratio"`` (Weyl quotient with exact division),
    ``"bialternant"``, or ``"auto"``, which uses the ratio up to rank 6.
    """
    from .errors import LabelRangeError

    if isinstance(label, Partition):
        label = SpLabel(label)
    if label.length > n:
        raise LabelRangeError(f"Sp label {label} has length {label.length} > rank {n}")
    if n == 0:
        return SymLaurent.constant(0)
    if method == "auto":
        method = "ratio" if n <= RATIO_MAX_RANK else "bialternant"
    if method == "ratio":
        return _sp_ratio(label.lam, n)
    if method == "bialternant":
        return _sp_bialternant(label.lam, n)
    raise ValueError(f"unknown method {method!r}")


def character(label: Label, kind: str, n: int) -> SymLaurent:
    return gl_character(label, n) if kind == GL else sp_character(label, n)


# --------------------------------------------------------------------------
# dimensions from the Weyl dimension formula

def gl_dim(label: GlLabel, n: int) -> int:
    w = label_to_weight(label, n)
    num = den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= w[i] - w[j] + j - i
            den *= j - i
    return num // den


def sp_dim(label: SpLabel, n: int) -> int:
    if label.length > n:
        from .errors import LabelRangeError

        raise LabelRangeError(f"Sp label {label} has length {label.length} > rank {n}")
    l = [label.lam.part(i) + n - i for i in range(n)]
    m = [n - i for i in range(n)]
    num = den = 1
    for i in range(n):
        num *= l[i]
        den *= m[i]
        for j in range(i + 1, n):
            num *= l[i] ** 2 - l[j] ** 2
            den *= m[i] ** 2 - m[j] ** 2
    return num // den


def irrep_dim(label: Label, kind: str, n: int) -> int:
    return gl_dim(label, n) if kind == GL else sp_dim(label, n)


# --------------------------------------------------------------------------
# decomposition

def _label_of(weight, kind: str) -> Label | None:
    if kind == GL:
        return weight_to_label(weight) if is_gl_dominant(weight) else None
    return SpLabel(Partition._trusted(tuple(int(w) for w in weight if w))) if is_sp_dominant(weight) else None


def _trivial(kind: str) -> Label:
    return GlLabel() if kind == GL else SpLabel()


def decompose(f: SymLaurent, kind: str, rank: int) -> VirtualDecomp:
    """Write ``f`` as an integer combination of irreducible characters by
    repeatedly removing the lexicographically largest monomial."""
    if f.n_vars != rank:
        raise ValueError(f"character has {f.n_vars} variables, rank is {rank}")
    terms: dict[Label, int] = {}
    for _ in range(DECOMPOSE_CAP):
        if f.is_zero():
            return VirtualDecomp(kind, rank, terms)
        weight, c = f.leading()
        label = _label_of(weight, kind)
        if label is None:
            raise NonInvariant(f"leading weight {weight} is not dominant")
        terms[label] = terms.get(label, 0) + c
        f = f - character(label, kind, rank).scale(c)
    raise NonInvariant("decomposition did not terminate")


def split_restrict(f: SymLaurent, kind: str, rank: int, a: int) -> PairDecomp:
    """Restrict to ``G_a x G_{rank-a}`` along the first ``a`` / last ``rank-a``
    variables and decompose into outer tensor products."""
    if not 0 <= a <= rank:
        raise ValueError(f"block size {a} outside 0..{rank}")
    if f.n_vars != rank:
        raise ValueError(f"character has {f.n_vars} variables, rank is {rank}")
    b = rank - a
    terms: dict[tuple[Label, Label], int] = {}
    for _ in range(DECOMPOSE_CAP):
        if f.is_zero():
            return PairDecomp(kind, (a, b), terms)
        weight, c = f.leading()
        left, right = _label_of(weight[:a], kind), _label_of(weight[a:], kind)
        if left is None or right is None:
            raise NonInvariant(f"leading weight {weight} is not dominant for the block subgroup")
        terms[(left, right)] = terms.get((left, right), 0) + c
        piece = multiply(character(left, kind, a).extend(after=b),
                         character(right, kind, b).extend(before=a))
        f = f - piece.scale(c)
    raise NonInvariant("split decomposition did not terminate")


# --------------------------------------------------------------------------
# exterior powers and free Lie components

def exterior_power(f: SymLaurent, k: int) -> SymLaurent:
    """``e_k`` of the weight multiset of ``f``: the coefficient of ``t^k`` in
    ``prod_w (1 + t x^w)^{m_w}``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if np.any(f.coeffs < 0):
        raise ValueError("exterior powers need an honest character (nonnegative coefficients)")
    n = f.n_vars
    dim = f.dim()
    if k > dim:
        return SymLaurent(n)
    if math.comb(dim, k) >= LIMIT:
        raise CoefficientOverflow(f"C({dim},{k}) leaves the 64-bit range")
    codec = Codec(n, max(1, k * f.max_abs_exponent()))
    wkeys = codec.encode(f.exps)
    empty = np.zeros(0, np.int64)
    layers = [(np.zeros(1, np.int64), np.ones(1, np.int64))] + [(empty, empty)] * k
    for wk, m in zip(wkeys, f.coeffs):
        m = int(m)
        new = []
        for d in range(k + 1):
            ks, cs = [layers[d][0]], [layers[d][1]]
            for j in range(1, min(m, d) + 1):
                pk, pc = layers[d - j]
                if pk.size:
                    ks.append(pk + j * wk)
                    cs.append(pc * math.comb(m, j))
            new.append(_kernels.reduce_terms(np.concatenate(ks), np.concatenate(cs)))
        layers = new
    return SymLaurent._from_keys(codec, *layers[k])


@lru_cache(maxsize=None)
def mobius(d: int) -> int:
    result, p, m = 1, 2, d
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


def free_lie_component(f: SymLaurent, k: int) -> SymLaurent:
    """Degree-``k`` piece of the free Lie algebra, by the Witt/necklace
    formula ``(1/k) sum_{d | k} mu(d) psi^d(f)^{k/d}``."""
    if k < 1:
        raise ValueError("degree must be positive")
    if np.any(f.coeffs < 0):
        raise ValueError("free Lie components need an honest character")
    total = SymLaurent(f.n_vars)
    for d in range(1, k + 1):
        if k % d == 0 and mobius(d):
            total = total + (f.adams(d) ** (k // d)).scale(mobius(d))
    if np.any(total.coeffs % k):
        raise FractionalCoefficient(f"degree-{k} Lie character is not divisible by {k}")
    return SymLaurent(f.n_vars, total.exps, total.coeffs // k, _canonical=True)
