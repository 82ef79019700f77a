"""Littlewood-Richardson coefficients by direct tableau enumeration.

``c^lam_{mu nu}`` counts semistandard fillings of the skew shape ``lam/mu``
with content ``nu`` whose reverse reading word (rows top to bottom, each row
right to left) is a lattice word.
"""

from __future__ import annotations

import os
import tempfile
import threading
from collections import defaultdict
from functools import lru_cache
from pathlib import Path

from .errors import CoefficientOverflow
from .partitions import EMPTY, Partition, contains, parse_partition, partitions_of

__all__ = [
    "lr_coefficient",
    "skew_expand",
    "schur_product_expand",
    "coproduct",
    "LrCache",
    "set_default_cache",
    "get_default_cache",
]

INT64_MAX = 2**63 - 1
CACHE_VERSION = "repstab-lr-v1"


def _checked(value: int) -> int:
    if value > INT64_MAX:
        raise CoefficientOverflow(f"LR coefficient {value} exceeds int64")
    return value


@lru_cache(maxsize=None)
def skew_expand(outer: Partition, inner: Partition) -> dict[Partition, int]:
    """``s_{outer/inner} = sum_nu c^outer_{inner nu} s_nu`` as ``{nu: c}``.

    Enumerates every LR filling of ``outer/inner`` once and tallies contents.
    """
    if not contains(outer, inner):
        return {}
    rows = len(outer)
    cells = []
    for r in range(rows):
        lo = inner.part(r)
        for c in range(outer[r] - 1, lo - 1, -1):
            cells.append((r, c))
    if not cells:
        return {EMPTY: 1}

    grid: dict[tuple[int, int], int] = {}
    counts = [0] * (rows + 1)
    tally: dict[Partition, int] = defaultdict(int)

    def above_bound(r: int, c: int) -> int:
        if r > 0 and inner.part(r - 1) <= c < outer[r - 1]:
            return grid[(r - 1, c)] + 1
        return 1

    def fill(idx: int, top: int) -> None:
        if idx == len(cells):
            content = Partition._trusted(tuple(x for x in counts[1:] if x))
            tally[content] += 1
            return
        r, c = cells[idx]
        lo = above_bound(r, c)
        hi = top + 1
        if c + 1 < outer[r]:
            hi = min(hi, grid[(r, c + 1)])
        for v in range(lo, hi + 1):
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            grid[(r, c)] = v
            counts[v] += 1
            fill(idx + 1, max(top, v))
            counts[v] -= 1
        grid.pop((r, c), None)

    fill(0, 0)
    return {nu: _checked(m) for nu, m in sorted(tally.items(), key=lambda kv: (-kv[0].size, tuple(-x for x in kv[0])))}


def _lr_compute(lam: Partition, mu: Partition, nu: Partition) -> int:
    if lam.size != mu.size + nu.size or not contains(lam, mu) or not contains(lam, nu):
        return 0
    return skew_expand(lam, mu).get(nu, 0)


def lr_coefficient(lam: Partition, mu: Partition, nu: Partition, cache: "LrCache | None" = None) -> int:
    cache = cache if cache is not None else _default_cache
    if cache is None:
        return _lr_compute(lam, mu, nu)
    hit = cache.get(lam, mu, nu)
    if hit is not None:
        return hit
    value = _lr_compute(lam, mu, nu)
    cache.put(lam, mu, nu, value)
    return value


@lru_cache(maxsize=None)
def _product(mu: Partition, nu: Partition) -> tuple[tuple[Partition, int], ...]:
    n = mu.size + nu.size
    out = []
    for lam in partitions_of(n):
        if contains(lam, mu) and contains(lam, nu):
            c = skew_expand(lam, mu).get(nu, 0)
            if c:
                out.append((lam, c))
    return tuple(out)


def schur_product_expand(mu: Partition, nu: Partition) -> dict[Partition, int]:
    """``s_mu s_nu = sum_lam c^lam_{mu nu} s_lam`` as ``{lam: c}``."""
    return dict(_product(mu, nu))


@lru_cache(maxsize=None)
def _coproduct(lam: Partition) -> tuple[tuple[tuple[Partition, Partition], int], ...]:
    out = []
    for k in range(lam.size + 1):
        for mu in partitions_of(k):
            if contains(lam, mu):
                for nu, c in skew_expand(lam, mu).items():
                    out.append(((mu, nu), c))
    return tuple(out)


def coproduct(lam: Partition) -> dict[tuple[Partition, Partition], int]:
    """``s_lam(x, y) = sum c^lam_{mu nu} s_mu(x) s_nu(y)`` as ``{(mu, nu): c}``."""
    return dict(_coproduct(lam))


# --------------------------------------------------------------------------
# persistent cache

class LrCache:
    """Write-through coefficient store, one ``lam|mu|nu=c`` record per line.

    Reads are lock-free once loaded; writes are serialised by a lock.  New
    records are appended as they are computed; :meth:`compact` rewrites the
    file atomically (temp file + rename).
    """

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self.version = CACHE_VERSION
        self._entries: dict[tuple[Partition, Partition, Partition], int] | None = None
        self._lock = threading.Lock()

    def _load(self) -> dict:
        if self._entries is not None:
            return self._entries
        with self._lock:
            if self._entries is not None:
                return self._entries
            entries = {}
            if self.path.exists():
                for lineno, line in enumerate(self.path.read_text().splitlines(), 1):
                    line = line.strip()
                    if not line or line.startswith("#"):
                        continue
                    try:
                        key, value = line.split("=")
                        lam, mu, nu = (parse_partition(t) for t in key.split("|"))
                        entries[(lam, mu, nu)] = int(value)
                    except ValueError as exc:
                        raise ValueError(f"{self.path}:{lineno}: bad cache record {line!r}") from exc
            self._entries = entries
        return entries

    def __len__(self) -> int:
        return len(self._load())

    def __contains__(self, key) -> bool:
        return key in self._load()

    def items(self):
        return self._load().items()

    def get(self, lam: Partition, mu: Partition, nu: Partition) -> int | None:
        return self._load().get((lam, mu, nu))

    def put(self, lam: Partition, mu: Partition, nu: Partition, value: int) -> None:
        entries = self._load()
        with self._lock:
            if (lam, mu, nu) in entries:
                return
            entries[(lam, mu, nu)] = _checked(value)
            new_file = not self.path.exists()
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                if new_file:
                    fh.write(f"# {self.version}\n")
                fh.write(f"{lam}|{mu}|{nu}={value}\n")

    def compact(self) -> None:
        entries = self._load()
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            lines = [f"# {self.version}"]
            lines += [f"{a}|{b}|{c}={v}" for (a, b, c), v in sorted(entries.items())]
            fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".lrcache-")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    fh.write("\n".join(lines) + "\n")
                os.replace(tmp, self.path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise

    def verify(self) -> list[tuple[Partition, Partition, Partition]]:
        """Keys whose stored value disagrees with a fresh computation."""
        return [key for key, v in self._load().items() if _lr_compute(*key) != v]


_default_cache: LrCache | None = None


def set_default_cache(cache: LrCache | None) -> None:
    global _default_cache
    _default_cache = cache


def get_default_cache() -> LrCache | None:
    return _default_cache
