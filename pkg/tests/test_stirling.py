import itertools
import math

import pytest
from hypothesis import given, strategies as st

from betapoly.stirling import build_table, theorem41_triple, verify_theorem41

TABLE = build_table(60)


def _cycles(perm):
    seen, count = set(), 0
    for i in range(len(perm)):
        if i not in seen:
            count += 1
            while i not in seen:
                seen.add(i)
                i = perm[i]
    return count


def _partitions(items):
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for p in _partitions(rest):
        yield [[head]] + p
        for i in range(len(p)):
            yield p[:i] + [[head] + p[i]] + p[i + 1:]


@pytest.mark.parametrize("n", range(0, 7))
def test_first_kind_counts_cycles(n):
    counts = [0] * (n + 1)
    for perm in itertools.permutations(range(n)):
        counts[_cycles(perm)] += 1
    assert [TABLE.first(n, k) for k in range(n + 1)] == counts


@pytest.mark.parametrize("n", range(0, 7))
def test_second_kind_counts_partitions(n):
    counts = [0] * (n + 1)
    for p in _partitions(list(range(n))):
        counts[len(p)] += 1
    assert [TABLE.second(n, k) for k in range(n + 1)] == counts


def test_known_entries_and_out_of_range():
    assert (TABLE.first(3, 1), TABLE.first(3, 2), TABLE.second(4, 2)) == (2, 3, 7)
    assert TABLE.first(0, 0) == 1 and TABLE.second(5, 5) == 1
    assert TABLE.first(4, 5) == 0 and TABLE.second(4, -1) == 0
    assert TABLE.first(5, 0) == 0


def test_exact_big_integers():
    assert sum(TABLE.first(40, k) for k in range(41)) == math.factorial(40)
    assert TABLE.second(50, 2) == 2 ** 49 - 1
    assert TABLE.recurrence_defects() == 0


@given(x=st.integers(0, 6), n=st.integers(0, 20))
def test_second_kind_falling_factorial_expansion(x, n):
    total = sum(TABLE.second(n, k) * math.perm(x, k) for k in range(n + 1))
    assert total == x ** n


def _brute_triple(n, d, k):
    S, c = TABLE.second, TABLE.first
    L = M = R = 0
    for s in range(0, k + 1):
        L += S(n - s, d - s) * (d - s) * c(d - s, k - s)
        M += (-1) ** s * S(n - s, d) * c(d + 1, k - s)
    for s in range(0, d - k + 1):
        R += (-1) ** s * S(n + 1, d - s) * c(d - s, k)
    return L, M, R


@pytest.mark.parametrize("args, want", [((3, 2, 1), (6, 6, 6)), ((3, 2, 2), (7, 7, 7)), ((5, 0, 0), (0, 0, 0))])
def test_triples(args, want):
    assert theorem41_triple(*args, TABLE) == want
    assert _brute_triple(*args) == want


def test_triple_validation():
    with pytest.raises(ValueError):
        theorem41_triple(3, 4, 1, TABLE)
    with pytest.raises(ValueError):
        theorem41_triple(10, 2, 1, build_table(5))


def test_verify_small_and_full():
    assert verify_theorem41(1).checked == 3
    rep = verify_theorem41(50)
    assert rep.ok and rep.counterexample is None
    assert rep.checked == sum((n + 1) * (n + 2) // 2 for n in range(1, 51))
