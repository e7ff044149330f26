"""Pure-Python kernels. Same signatures and semantics as ``_kernels.pyx``.

Both kernels take numpy arrays so the drivers are backend-agnostic; this
version converts them to lists up front because list indexing is much faster
than numpy scalar indexing in an interpreted loop.
"""

import numpy as np

BACKEND = "python"


def nash_scan(sizes, local_idx, local_off, strides, flag_off, flags, lo, hi):
    """Linear indices in ``[lo, hi)`` of profiles where every player is best-responding.

    Profiles are numbered in mixed radix with vertex 0 most significant.
    Player ``v`` reads the profile digits ``local_idx[local_off[v]:local_off[v+1]]``
    with matching ``strides``; ``flags[flag_off[v] + local_index]`` is 1 when
    ``v``'s own choice is a best response to the rest of that local profile.
    """
    sizes = sizes.tolist()
    n = len(sizes)
    local_idx = local_idx.tolist()
    local_off = local_off.tolist()
    strides = strides.tolist()
    flag_off = flag_off.tolist()
    flags = flags.tolist()
    players = [
        (flag_off[v], list(zip(local_idx[local_off[v]:local_off[v + 1]],
                               strides[local_off[v]:local_off[v + 1]])))
        for v in range(n)
    ]
    digits = [0] * n
    rest = lo
    for v in range(n - 1, -1, -1):
        digits[v] = rest % sizes[v]
        rest //= sizes[v]
    hits = []
    for lin in range(lo, hi):
        for base, reads in players:
            k = base
            for u, s in reads:
                k += digits[u] * s
            if not flags[k]:
                break
        else:
            hits.append(lin)
        v = n - 1
        while v >= 0:
            digits[v] += 1
            if digits[v] < sizes[v]:
                break
            digits[v] = 0
            v -= 1
    return np.array(hits, dtype=np.int64)


def closure_pass(clos, lo, hi, hyp_lhs, hyp_rhs, cut_border, use_contiguity):
    """One in-place sweep of the closure rules over lhs masks ``lo <= L < hi``.

    ``clos[L]`` is the set of vertices derivable from ``L``.  Reflexivity,
    hypotheses, monotonicity (pulled from the one-smaller subsets) and
    transitivity are applied at ``L`` until stable; contiguity then pushes
    ``clos[L] & W`` into ``clos[B(U) | B(W) | (L & W)]`` for every cut.
    Returns True if any entry grew.
    """
    c_list = clos.tolist()
    hyps = list(zip(hyp_lhs.tolist(), hyp_rhs.tolist()))
    bb = cut_border.tolist()
    full = len(c_list) - 1
    changed = False
    for L in range(lo, hi):
        start = c_list[L]
        c = start | L
        while True:
            before = c
            rem = L
            while rem:
                low = rem & -rem
                c |= c_list[L ^ low]
                rem ^= low
            for hl, hr in hyps:
                if hl & ~c == 0:
                    c |= hr
            c |= c_list[c]
            if c == before:
                break
        if c != start:
            c_list[L] = c
            changed = True
        if not use_contiguity:
            continue
        for U in range(full + 1):
            W = full & ~U
            cw = c & W
            if not cw:
                continue
            X = bb[U] | (L & W)
            old = c_list[X]
            if old | cw != old:
                c_list[X] = old | cw
                changed = True
                if X == L:
                    c |= cw
    clos[:] = c_list
    return changed
