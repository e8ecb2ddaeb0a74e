# Compiled game-tree kernel; same contract as _minimax_py.solve.
# Candidate sets are bitmasks over successor positions, so a successor list
# may hold at most 62 entries.

from libc.stdlib cimport malloc, free


cdef inline unsigned long long _next_subset(unsigned long long x):
    # next larger integer with the same popcount
    cdef unsigned long long low = x & (~x + 1)
    cdef unsigned long long r = x + low
    return (((r ^ x) >> 2) // low) | r


cdef bint _spoiler_wins(const int* s_sp, int l_sp, const int* s_dup, int l_dup,
                        const unsigned char* prev, int n2, bint left, int c,
                        unsigned long long* match):
    cdef int i, j, t
    cdef unsigned long long U, V, top_sp, top_dup, rest
    cdef bint answered, ok
    # match[j]: which of Spoiler's candidates Duplicator may answer s_dup[j] with
    for j in range(l_dup):
        match[j] = 0
        for i in range(l_sp):
            if left:
                ok = prev[s_sp[i] * n2 + s_dup[j]]
            else:
                ok = prev[s_dup[j] * n2 + s_sp[i]]
            if ok:
                match[j] |= (<unsigned long long>1) << i
    top_sp = (<unsigned long long>1) << l_sp
    top_dup = (<unsigned long long>1) << l_dup
    for t in range(1, min(c, l_sp) + 1):
        if l_dup < t:
            return True
        U = ((<unsigned long long>1) << t) - 1
        while U < top_sp:
            answered = False
            V = ((<unsigned long long>1) << t) - 1
            while V < top_dup:
                ok = True
                rest = V
                j = 0
                while rest:
                    if rest & 1 and not (match[j] & U):
                        ok = False
                        break
                    rest >>= 1
                    j += 1
                if ok:
                    answered = True
                    break
                V = _next_subset(V)
            if not answered:
                return True
            U = _next_subset(U)
    return False


def solve(int n1, int n2, atomic, ptr1, idx1, ptr2, idx2, int n_moves, int rounds, int c):
    cdef const unsigned char[:] at = atomic
    cdef const int[:] p1 = ptr1
    cdef const int[:] i1 = idx1
    cdef const int[:] p2 = ptr2
    cdef const int[:] i2 = idx2
    cdef int a, b, m, o1, o2, l1, l2
    cdef unsigned char dup
    cdef const unsigned char* prevp
    cdef unsigned char[:] cur_view
    cdef const unsigned char[:] prev_view
    cdef unsigned long long* match = <unsigned long long*> malloc(64 * sizeof(unsigned long long))
    tables = [bytearray(atomic)]
    if n1 * n2 == 0:
        free(match)
        return tables + [bytearray() for _ in range(rounds)]
    try:
        for _ in range(rounds):
            prev = tables[len(tables) - 1]
            cur = bytearray(n1 * n2)
            cur_view = cur
            prev_view = prev
            prevp = &prev_view[0]
            for a in range(n1):
                for b in range(n2):
                    if not at[a * n2 + b]:
                        continue
                    dup = 1
                    for m in range(n_moves):
                        o1 = m * (n1 + 1) + a
                        o2 = m * (n2 + 1) + b
                        l1 = p1[o1 + 1] - p1[o1]
                        l2 = p2[o2 + 1] - p2[o2]
                        if l1 and _spoiler_wins(&i1[p1[o1]], l1, &i2[p2[o2]], l2,
                                                prevp, n2, True, c, match):
                            dup = 0
                            break
                        if l2 and _spoiler_wins(&i2[p2[o2]], l2, &i1[p1[o1]], l1,
                                                prevp, n2, False, c, match):
                            dup = 0
                            break
                    cur_view[a * n2 + b] = dup
            tables.append(cur)
    finally:
        free(match)
    return tables
