"""Exact Stirling numbers and a three-way identity between them.

``[n, k]`` denotes unsigned Stirling numbers of the first kind (permutations
of ``n`` elements with ``k`` cycles) and ``{n, k}`` those of the second kind
(partitions of an ``n``-set into ``k`` blocks). Everything here is integer
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

__all__ = ["StirlingTable", "build_table", "theorem41_triple", "verify_theorem41", "Theorem41Report"]


@dataclass(frozen=True)
class StirlingTable:
    """Triangular tables of both kinds for ``0 <= k <= n <= max_n``.

    Reads outside the triangle (``k < 0``, ``k > n`` or ``n > max_n`` with
    ``k`` out of range) return 0.
    """

    max_n: int
    first_kind: tuple[tuple[int, ...], ...]
    second_kind: tuple[tuple[int, ...], ...]

    def first(self, n: int, k: int) -> int:
        if n < 0 or k < 0 or k > n:
            return 0
        if n > self.max_n:
            raise IndexError(f"n={n} exceeds table size {self.max_n}")
        return self.first_kind[n][k]

    def second(self, n: int, k: int) -> int:
        if n < 0 or k < 0 or k > n:
            return 0
        if n > self.max_n:
            raise IndexError(f"n={n} exceeds table size {self.max_n}")
        return self.second_kind[n][k]

    def recurrence_defects(self) -> int:
        """Number of entries violating the defining recurrences (should be 0)."""
        bad = 0
        for n in range(self.max_n):
            for k in range(n + 2):
                if self.first(n + 1, k) - self.first(n, k - 1) != n * self.first(n, k):
                    bad += 1
                if self.second(n + 1, k) - self.second(n, k - 1) != k * self.second(n, k):
                    bad += 1
        return bad


def build_table(max_n: int) -> StirlingTable:
    """Fill both tables from ``[n+1,k] = [n,k-1] + n[n,k]`` and ``{n+1,k} = {n,k-1} + k{n,k}``.

    >>> t = build_table(4)
    >>> t.first(3, 2), t.second(4, 2)
    (3, 7)
    """
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    first = [[1]]
    second = [[1]]
    for n in range(max_n):
        f, s = first[n], second[n]
        get = lambda row, k: row[k] if 0 <= k < len(row) else 0  # noqa: E731
        first.append([get(f, k - 1) + n * get(f, k) for k in range(n + 2)])
        second.append([get(s, k - 1) + k * get(s, k) for k in range(n + 2)])
    return StirlingTable(max_n, tuple(map(tuple, first)), tuple(map(tuple, second)))


def theorem41_triple(n: int, d: int, k: int, table: StirlingTable) -> tuple[int, int, int]:
    """The three sums ``(L, M, R)`` that the identity asserts are equal.

    ``L = sum_{s=0}^{k} {n-s, d-s} (d-s) [d-s, k-s]``,
    ``M = sum_{s=0}^{k} (-1)^s {n-s, d} [d+1, k-s]`` and
    ``R = sum_{s=0}^{d-k} (-1)^s {n+1, d-s} [d-s, k]``.
    The table must reach ``n + 1``.
    """
    if n < 1 or not 0 <= d <= n or not 0 <= k <= d:
        raise ValueError("need n >= 1, 0 <= d <= n and 0 <= k <= d")
    if table.max_n < n + 1:
        raise ValueError(f"table must cover n + 1 = {n + 1}")
    S, c = table.second, table.first
    L = sum(S(n - s, d - s) * (d - s) * c(d - s, k - s) for s in range(k + 1))
    M = sum((-1) ** s * S(n - s, d) * c(d + 1, k - s) for s in range(k + 1))
    R = sum((-1) ** s * S(n + 1, d - s) * c(d - s, k) for s in range(d - k + 1))
    return L, M, R


@dataclass(frozen=True)
class Theorem41Report:
    max_n: int
    checked: int
    counterexample: Optional[tuple[int, int, int, tuple[int, int, int]]] = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def verify_theorem41(max_n: int, table: Optional[StirlingTable] = None) -> Theorem41Report:
    """Check ``L = M = R`` for every ``1 <= n <= max_n``, ``0 <= k <= d <= n``."""
    if table is None:
        table = build_table(max_n + 1)
    checked = 0
    for n in range(1, max_n + 1):
        for d in range(n + 1):
            for k in range(d + 1):
                triple = theorem41_triple(n, d, k, table)
                checked += 1
                if not triple[0] == triple[1] == triple[2]:
                    return Theorem41Report(max_n, checked, (n, d, k, triple))
    return Theorem41Report(max_n, checked)
