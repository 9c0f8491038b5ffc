# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of the pure-Python packing search (n <= 8).

Mirrors dtreepack.solver.search_packing decision-for-decision; feasibility
answers must match the pure route exactly.  Also hosts the permutation-orbit
mask minimisation used by canonical forms.
"""

cdef extern from *:
    int __builtin_popcountll(unsigned long long x)
    int __builtin_ctzll(unsigned long long x)


cdef struct Ctx:
    int n
    int nmask
    int s_mask
    int root
    bint internal
    int nterm
    int terminals[8]
    unsigned long long cols[8]


cdef inline int _ctz(unsigned long long x):
    return __builtin_ctzll(x)


cdef int _reach(Ctx* c, unsigned long long avail, int start, int blocked):
    cdef int reach = start
    cdef int frontier = start
    cdef int nxt, f, u
    while frontier:
        nxt = 0
        f = frontier
        while f:
            u = _ctz(<unsigned long long> f)
            f &= f - 1
            nxt |= <int> ((avail >> (u * c.n)) & <unsigned long long> c.nmask)
        nxt &= ~blocked & ~reach
        reach |= nxt
        frontier = nxt
    return reach


cdef bint _grow(Ctx* c, int remaining, int last_first_head,
                unsigned long long avail, int banned,
                int tree_v, int tails, unsigned long long forb,
                int first_head, unsigned long long tree_arcs):
    cdef int leaves, new_banned, heads_ok, tv, u, v, row
    cdef unsigned long long usable, seen_here, e_bit
    cdef int e
    if (c.s_mask & ~tree_v) == 0:
        leaves = tree_v & ~tails
        if leaves & ~c.s_mask:
            return False
        new_banned = banned
        if c.internal:
            new_banned = banned | (tree_v & ~c.s_mask)
        return _next_tree(c, remaining - 1, first_head, avail & ~tree_arcs, new_banned)
    usable = avail & ~forb
    if (_reach(c, usable, tree_v, banned) & c.s_mask) != c.s_mask:
        return False
    heads_ok = (~tree_v) & c.nmask
    if c.internal:
        heads_ok &= ~banned
    tv = tree_v
    while tv:
        u = _ctz(<unsigned long long> tv)
        tv &= tv - 1
        row = (<int> ((usable >> (u * c.n)) & <unsigned long long> c.nmask)) & heads_ok
        seen_here = 0
        while row:
            v = _ctz(<unsigned long long> row)
            row &= row - 1
            e = u * c.n + v
            e_bit = (<unsigned long long> 1) << e
            if _grow(c, remaining, last_first_head, avail, banned,
                     tree_v | (1 << v), tails | (1 << u), forb | seen_here,
                     first_head, tree_arcs | e_bit):
                return True
            seen_here |= e_bit
        forb |= seen_here
    return False


cdef bint _next_tree(Ctx* c, int remaining, int last_first_head,
                     unsigned long long avail, int banned):
    cdef int rrow, firsts, v, i, e
    cdef unsigned long long forb
    if remaining == 0:
        return True
    rrow = <int> ((avail >> (c.root * c.n)) & <unsigned long long> c.nmask)
    if c.internal:
        rrow &= ~banned
    firsts = rrow
    if last_first_head >= 0:
        firsts &= ~((1 << (last_first_head + 1)) - 1)
    if __builtin_popcountll(<unsigned long long> firsts) < remaining:
        return False
    for i in range(c.nterm):
        if __builtin_popcountll(avail & c.cols[c.terminals[i]]) < remaining:
            return False
    if (_reach(c, avail, 1 << c.root, banned) & c.s_mask) != c.s_mask:
        return False
    while firsts:
        v = _ctz(<unsigned long long> firsts)
        firsts &= firsts - 1
        forb = (<unsigned long long> ((1 << v) - 1)) << (c.root * c.n)
        e = c.root * c.n + v
        if _grow(c, remaining, last_first_head, avail, banned,
                 (1 << c.root) | (1 << v), 1 << c.root, forb, v,
                 (<unsigned long long> 1) << e):
            return True
    return False


def feasible(int n, tuple rows, int s_mask, int root, bint internal, int count):
    """Do ``count`` disjoint (S,r)-trees exist?  Requires n <= 8."""
    if count <= 0:
        return True
    if n > 8:
        raise ValueError("compiled kernel supports n <= 8")
    cdef Ctx c
    cdef int u, v, t
    cdef unsigned long long avail = 0
    c.n = n
    c.nmask = (1 << n) - 1
    c.s_mask = s_mask
    c.root = root
    c.internal = internal
    c.nterm = 0
    t = s_mask & ~(1 << root)
    while t:
        c.terminals[c.nterm] = _ctz(<unsigned long long> t)
        t &= t - 1
        c.nterm += 1
    for v in range(n):
        c.cols[v] = 0
        for u in range(n):
            if u != v:
                c.cols[v] |= (<unsigned long long> 1) << (u * n + v)
    for u in range(n):
        avail |= (<unsigned long long> (<int> rows[u])) << (u * n)
    return bool(_next_tree(&c, count, -1, avail, 0))


def min_arc_mask(int n, tuple rows, bytes perms, Py_ssize_t nperm):
    """Minimum packed arc mask over flattened permutations (n <= 8)."""
    if n > 8:
        raise ValueError("compiled kernel supports n <= 8")
    cdef int pid[8][8]
    cdef int tails[64]
    cdef int heads[64]
    cdef int i = 0, u, v, m = 0, row
    for u in range(n):
        for v in range(n):
            if u != v:
                pid[u][v] = i
                i += 1
    for u in range(n):
        row = <int> rows[u]
        while row:
            v = _ctz(<unsigned long long> row)
            row &= row - 1
            tails[m] = u
            heads[m] = v
            m += 1
    cdef unsigned long long best = <unsigned long long> -1
    cdef unsigned long long mask
    cdef const unsigned char* p = perms
    cdef Py_ssize_t t
    for t in range(nperm):
        mask = 0
        for i in range(m):
            mask |= (<unsigned long long> 1) << pid[p[t * n + tails[i]]][p[t * n + heads[i]]]
        if mask < best:
            best = mask
    return best
