"""Independent derivation of expected values frozen into the C++ tests.

Brute force over assignments and direct recurrence evaluation; shares no
code with the C++ library.
"""
from fractions import Fraction as Q
from functools import lru_cache
from itertools import combinations


def maj(n):
    clauses = []
    for b in range(0, n, 4):
        clauses += [tuple(c) for c in combinations(range(b + 1, b + 5), 3)]
    return clauses


def nae_count(n, clauses, t):
    count = 0
    for ones in combinations(range(1, n + 1), t):
        s = set(ones)
        if all(0 < len(s & set(c)) < len(c) for c in clauses):
            count += 1
    return count


def min_sat_weight_closed(n, clauses):
    for t in range(n + 1):
        if nae_count(n, clauses, t):
            return t, nae_count(n, clauses, t)
    return None


@lru_cache(None)
def m_large(w, d):
    if d == 0:
        return Q(1) if w <= 0 else Q(0)
    return max(Q(5, 2) * m_large(w - 1, d - 1), 2 * m_large(w - 2, d - 1),
               Q(3, 2) * m_large(w - 3, d - 1))


@lru_cache(None)
def m_small(w, d, h):
    if d == 0:
        return Q(1) if (w <= 0 and h >= 0) else Q(0)
    return max(Q(9, 4) * m_small(w - 1, d - 1, h), 2 * m_small(w - 2, d - 1, h - 1),
               Q(7, 4) * m_small(w - 2, d - 1, h), Q(3, 2) * m_small(w - 3, d - 1, h))


def max_disjoint(clauses):
    best = 0
    for r in range(len(clauses) + 1):
        for combo in combinations(clauses, r):
            vs = [v for c in combo for v in c]
            if len(vs) == len(set(vs)):
                best = max(best, r)
    return best


if __name__ == "__main__":
    for n in (4, 8, 12):
        print("maj", n, "tau,count", min_sat_weight_closed(n, maj(n)))
    print("maj4 t0", max_disjoint(maj(4)), "maj8 t0", max_disjoint(maj(8)))
    print("M(1,1)", m_large(1, 1), "M(5,1)", m_large(5, 1), "M(0,0)", m_large(0, 0))
    print("M(1,1,0)", m_small(1, 1, 0), "M(2,1,1)", m_small(2, 1, 1), "M(0,0,-1)", m_small(0, 0, -1))
    print("M(4,2)", m_large(4, 2), "M(6,3,0)", m_small(6, 3, 0), "M(3,2,1)", m_small(3, 2, 1))
