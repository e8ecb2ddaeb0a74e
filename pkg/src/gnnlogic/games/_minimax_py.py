"""Pure-Python game-tree kernel (reference for the compiled one).

Both kernels take positions on two sides, an atomic-agreement table and,
per move type, successor lists in CSR form (``ptr`` offsets into ``idx``),
and return Duplicator-win tables for 0..rounds remaining rounds.  Every
table is a flat ``bytearray`` indexed ``a * n2 + b``.
"""

from itertools import combinations


def _spoiler_wins(s_sp, s_dup, win, c):
    """Spoiler picks U ⊆ s_sp, Duplicator an equal-size U' ⊆ s_dup, Spoiler
    picks u' ∈ U', Duplicator answers with some u ∈ U."""
    for t in range(1, min(c, len(s_sp)) + 1):
        if len(s_dup) < t:
            return True
        for U in combinations(s_sp, t):
            for U2 in combinations(s_dup, t):
                if all(any(win(u, u2) for u in U) for u2 in U2):
                    break
            else:
                return True
    return False


def solve(n1, n2, atomic, ptr1, idx1, ptr2, idx2, n_moves, rounds, c):
    tables = [bytearray(atomic)]
    for _ in range(rounds):
        prev = tables[-1]
        cur = bytearray(n1 * n2)
        from_left = lambda u, u2: prev[u * n2 + u2]
        from_right = lambda u, u2: prev[u2 * n2 + u]
        for a in range(n1):
            for b in range(n2):
                if not atomic[a * n2 + b]:
                    continue
                dup = 1
                for m in range(n_moves):
                    o1 = m * (n1 + 1) + a
                    o2 = m * (n2 + 1) + b
                    s1 = idx1[ptr1[o1]:ptr1[o1 + 1]]
                    s2 = idx2[ptr2[o2]:ptr2[o2 + 1]]
                    if s1 and _spoiler_wins(s1, s2, from_left, c):
                        dup = 0
                        break
                    if s2 and _spoiler_wins(s2, s1, from_right, c):
                        dup = 0
                        break
                cur[a * n2 + b] = dup
        tables.append(cur)
    return tables
