"""Hot loops behind the Morse watershed flood.

Everything here operates on the integer arrays of a packed complex (see
Complex.packed()): the flat-pair matching check, the facet adjacency
construction, minimum detection, and the label flood itself.  The flood
is compiled with numba when available.  Setting the environment variable
MORSESHED_NUMBA=0 forces the pure-python path (also used when numba is
not importable).  Both paths return identical results;
benchmarks/bench_flood.py compares them.
"""

from __future__ import annotations

import os

import numpy as np

_want_numba = os.environ.get("MORSESHED_NUMBA", "1") != "0"

if _want_numba:
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover
        NUMBA_ENABLED = False
else:
    NUMBA_ENABLED = False

if not NUMBA_ENABLED:

    def njit(*args, **kwargs):  # no-op decorator
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


def flat_matching_offender(sub, sup, alt, n_faces) -> int:
    """Index of the smallest face lying in two flat covering pairs, or -1
    when the flat pairs form a matching (the Morse condition)."""
    eq = alt[sub] == alt[sup]
    if not eq.any():
        return -1
    cnt = np.bincount(sub[eq], minlength=n_faces)
    cnt += np.bincount(sup[eq], minlength=n_faces)
    bad = np.nonzero(cnt > 1)[0]
    return int(bad[0]) if bad.size else -1


def top_adjacency(pk, alt):
    """Facet adjacency of a non-branching pure complex, from packed arrays.

    Returns (nbr, sep_ids, facet_alt, sep_alt, top_lo, sep_lo): row i of
    nbr holds the d+1 neighbour facets of facet i (local ids), sep_ids
    the matching shared (d-1)-faces (local ids).  Raises ValueError when
    some (d-1)-face does not have exactly two cofaces.
    """
    d = len(pk.dim_offset) - 2
    sep_lo, sep_hi = int(pk.dim_offset[d - 1]), int(pk.dim_offset[d])
    top_lo, top_hi = int(pk.dim_offset[d]), int(pk.dim_offset[d + 1])
    n_sep = sep_hi - sep_lo
    n_top = top_hi - top_lo

    mask = pk.sup >= top_lo
    subs = pk.sub[mask]
    sups = pk.sup[mask]
    order = np.argsort(subs, kind="stable")
    subs = subs[order]
    sups = sups[order]
    if subs.size != 2 * n_sep or not np.array_equal(
        subs[0::2], np.arange(sep_lo, sep_hi)
    ) or not np.array_equal(subs[0::2], subs[1::2]):
        raise ValueError("complex is not a non-branching pseudomanifold")
    cof0 = sups[0::2]
    cof1 = sups[1::2]

    src = np.concatenate([cof0, cof1])
    dst = np.concatenate([cof1, cof0])
    via = np.concatenate([np.arange(n_sep), np.arange(n_sep)])
    order2 = np.argsort(src, kind="stable")
    deg = d + 1
    if src.size != n_top * deg:
        raise ValueError("complex is not pure of top dimension")
    nbr = (dst[order2] - top_lo).reshape(n_top, deg)
    sep_ids = via[order2].reshape(n_top, deg)
    facet_alt = alt[top_lo:top_hi]
    sep_alt = alt[sep_lo:sep_hi]
    return nbr, sep_ids, facet_alt, sep_alt, top_lo, sep_lo


def minimum_facets(nbr, sep_ids, facet_alt, sep_alt):
    """Local ids (ascending) of facets with no flat boundary face; for a
    Morse stack these are exactly the regional minima."""
    flat_side = facet_alt[:, None] == sep_alt[sep_ids]
    return np.nonzero(~flat_side.any(axis=1))[0]


@njit(cache=True)
def _flood_numba(nbr, sep_ids, facet_alt, sep_alt, B, queue, tail):
    head = 0
    while head < tail:
        x = queue[head]
        head += 1
        bx = B[x]
        for k in range(nbr.shape[1]):
            y = nbr[x, k]
            if B[y] == 0 and facet_alt[y] == sep_alt[sep_ids[x, k]]:
                B[y] = bx
                queue[tail] = y
                tail += 1
    return B


def _flood_python(nbr, sep_ids, facet_alt, sep_alt, B, queue, tail):
    head = 0
    ncols = nbr.shape[1]
    while head < tail:
        x = queue[head]
        head += 1
        bx = B[x]
        row_n = nbr[x]
        row_s = sep_ids[x]
        for k in range(ncols):
            y = row_n[k]
            if B[y] == 0 and facet_alt[y] == sep_alt[row_s[k]]:
                B[y] = bx
                queue[tail] = y
                tail += 1
    return B


def flood(nbr, sep_ids, facet_alt, sep_alt, seeds):
    """Basin flood: propagate minimum labels across flat separators, then
    flag every separator whose two sides ended up with different labels.

    Every facet receives a positive label (a non-minimum facet has a
    unique flat separator leading back toward its minimum), so a flagged
    separator is exactly a biconnected one.
    """
    n = nbr.shape[0]
    n_seps = sep_alt.shape[0]
    B = np.zeros(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    tail = 0
    for i, label in seeds:
        B[i] = label
        queue[tail] = i
        tail += 1
    kernel = _flood_numba if NUMBA_ENABLED else _flood_python
    B = kernel(nbr, sep_ids, facet_alt, sep_alt, B, queue, tail)
    W = np.zeros(n_seps, dtype=np.bool_)
    differs = B[:, None] != B[nbr]
    W[sep_ids[differs]] = True
    return B, W
