"""Simplicial complexes as finite families of vertex sets.

A face is a tuple of strictly increasing non-negative vertex ids.  A
:class:`Complex` stores the full closed family together with eagerly built
incidence indexes (codimension-1 faces and cofaces), since every algorithm
downstream walks covering pairs.  Complexes are immutable after
construction; operations return new objects sharing nothing mutable.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

Face = tuple[int, ...]


class InvalidSimplexError(ValueError):
    pass


def make_face(vertices: Iterable[int]) -> Face:
    """Canonicalize a vertex collection into a face tuple."""
    vs = tuple(sorted(vertices))
    if not vs:
        raise InvalidSimplexError("a simplex must have at least one vertex")
    if any(v < 0 for v in vs):
        raise InvalidSimplexError(f"negative vertex id in {vs}")
    if any(vs[i] == vs[i + 1] for i in range(len(vs) - 1)):
        raise InvalidSimplexError(f"repeated vertex in {vs}")
    return vs


def face_dim(x: Face) -> int:
    return len(x) - 1


def proper_subfaces(x: Face) -> Iterator[Face]:
    """All non-empty proper subsets of x."""
    for k in range(1, len(x)):
        yield from combinations(x, k)


def face_key(x: Face) -> tuple[int, Face]:
    """Canonical ordering key: by dimension, then lexicographically."""
    return (len(x), x)


class Complex:
    """A finite simplicial complex with incidence indexes.

    ``boundary[x]`` lists the codim-1 faces of x, ``cofaces[x]`` the codim-1
    cofaces, both in canonical order.
    """

    __slots__ = ("faces", "dim", "by_dim", "boundary", "cofaces", "_sorted", "_packed")

    def __init__(self, faces: Iterable[Face], _trusted: bool = False):
        if _trusted:
            face_set = frozenset(faces)
        else:
            face_set = frozenset(make_face(x) for x in faces)
            for x in face_set:
                for y in proper_subfaces(x):
                    if y not in face_set:
                        raise InvalidSimplexError(
                            f"not closed: {x} present but its face {y} missing"
                        )
        self.faces: frozenset[Face] = face_set
        self.dim = max((len(x) for x in face_set), default=0) - 1
        by_dim: dict[int, list[Face]] = {p: [] for p in range(self.dim + 1)}
        for x in face_set:
            by_dim[len(x) - 1].append(x)
        for lst in by_dim.values():
            lst.sort()
        self.by_dim = by_dim
        boundary: dict[Face, tuple[Face, ...]] = {}
        cof: dict[Face, list[Face]] = {x: [] for x in face_set}
        for x in face_set:
            if len(x) == 1:
                boundary[x] = ()
                continue
            bd = tuple(x[:i] + x[i + 1:] for i in range(len(x)))
            boundary[x] = bd
            for y in bd:
                cof[y].append(x)
        self.boundary = boundary
        self.cofaces = {y: tuple(sorted(c)) for y, c in cof.items()}
        self._sorted: list[Face] | None = None
        self._packed: "PackedComplex | None" = None

    # -- basic protocol ----------------------------------------------------

    def __contains__(self, x) -> bool:
        return x in self.faces

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self) -> Iterator[Face]:
        return iter(self.sorted_faces())

    def __eq__(self, other) -> bool:
        return isinstance(other, Complex) and self.faces == other.faces

    def __hash__(self) -> int:
        return hash(self.faces)

    def __repr__(self) -> str:
        return f"Complex(dim={self.dim}, faces={len(self.faces)})"

    def sorted_faces(self) -> list[Face]:
        """All faces in canonical (dimension, lexicographic) order."""
        if self._sorted is None:
            self._sorted = sorted(self.faces, key=face_key)
        return self._sorted

    def faces_of_dim(self, p: int) -> list[Face]:
        return self.by_dim.get(p, [])

    def facets(self) -> list[Face]:
        """Inclusion-maximal faces, in canonical order."""
        return sorted((x for x in self.faces if not self.cofaces[x]), key=face_key)

    def is_pure(self) -> bool:
        return all(len(x) - 1 == self.dim for x in self.facets())

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * len(fs) for p, fs in self.by_dim.items())

    def star(self, x: Face) -> frozenset[Face]:
        """st(x) = all faces containing x; an open subset of the complex."""
        if x not in self.faces:
            raise KeyError(f"{x} is not a face of the complex")
        xs = set(x)
        return frozenset(y for y in self.faces if xs.issubset(y))

    def packed(self) -> "PackedComplex":
        """Integer-indexed incidence arrays, built once and cached.

        Faces are numbered in canonical order, so faces of one dimension
        occupy a contiguous index range.  Hot array-based algorithms use
        this instead of walking the tuple-keyed dicts.
        """
        if self._packed is None:
            import numpy as np

            faces = self.sorted_faces()
            index = {x: i for i, x in enumerate(faces)}
            subs: list[int] = []
            sups: list[int] = []
            for i, y in enumerate(faces):
                for z in self.boundary[y]:
                    subs.append(index[z])
                    sups.append(i)
            dim_offset = np.zeros(self.dim + 2, dtype=np.int64)
            for p in range(self.dim + 1):
                dim_offset[p + 1] = dim_offset[p] + len(self.by_dim.get(p, ()))
            self._packed = PackedComplex(
                faces=faces,
                index=index,
                sub=np.asarray(subs, dtype=np.int64),
                sup=np.asarray(sups, dtype=np.int64),
                dim_offset=dim_offset,
            )
        return self._packed


@dataclass(frozen=True, eq=False)
class PackedComplex:
    """Array view of a complex: `faces[i]` is face number i, `(sub[k],
    sup[k])` enumerates every covering pair by index, and faces of
    dimension p occupy indexes `dim_offset[p]:dim_offset[p+1]`."""

    faces: list[Face]
    index: dict[Face, int]
    sub: "object"  # np.ndarray[int64]
    sup: "object"  # np.ndarray[int64]
    dim_offset: "object"  # np.ndarray[int64]


EMPTY_COMPLEX = Complex(())


def closure(generators: Iterable[Iterable[int]]) -> Complex:
    """Smallest complex containing every generator simplex."""
    faces: set[Face] = set()
    for g in generators:
        x = make_face(g)
        if x in faces:
            continue
        faces.add(x)
        for k in range(1, len(x)):
            faces.update(combinations(x, k))
    return Complex(faces, _trusted=True)


def covering_pairs(X: Complex) -> set[tuple[Face, Face]]:
    """All ordered pairs (x, y) with x a codim-1 face of y."""
    return {(x, y) for y in X.faces for x in X.boundary[y]}


def is_free_pair(X: Complex, x: Face, y: Face) -> bool:
    """True iff y is the only face of X strictly containing x.

    Equivalent check on the incidence index: x has y as sole codim-1
    coface and y is a facet (closedness rules out higher cofaces).
    """
    return X.cofaces.get(x) == (y,) and not X.cofaces[y]

def free_pairs(X: Complex) -> set[tuple[Face, Face]]:
    out = set()
    for x, cof in X.cofaces.items():
        if len(cof) == 1 and not X.cofaces[cof[0]]:
            out.add((x, cof[0]))
    return out


def collapse(X: Complex, pair: tuple[Face, Face]) -> Complex:
    """Elementary collapse: remove a free pair (x, y)."""
    x, y = pair
    if not is_free_pair(X, x, y):
        raise ValueError(f"({x}, {y}) is not a free pair")
    return Complex(X.faces - {x, y}, _trusted=True)


def ultimate_collapse(X: Complex, p: int | None = None, seed: int = 0) -> Complex:
    """Collapse through free (p-)pairs until none remains.

    Free-pair selection is "arbitrary" in principle; here a worklist is
    seeded in canonical face order permuted by `seed`, so runs are
    reproducible.
    """
    remaining = set(X.faces)
    # mutable coface sets for incremental updates
    cof: dict[Face, set[Face]] = {x: set(c) for x, c in X.cofaces.items()}
    order = X.sorted_faces()
    rng = random.Random(seed)
    order = list(order)
    rng.shuffle(order)
    work = deque(order)
    in_work = set(order)

    def free_partner(x: Face) -> Face | None:
        c = cof[x]
        if len(c) != 1:
            return None
        (y,) = c
        if cof[y]:
            return None
        if p is not None and len(y) - 1 != p:
            return None
        return y

    while work:
        x = work.popleft()
        in_work.discard(x)
        if x not in remaining:
            continue
        y = free_partner(x)
        if y is None:
            continue
        remaining.discard(x)
        remaining.discard(y)
        touched = list(X.boundary[x]) + list(X.boundary[y])
        for z in X.boundary[x]:
            cof[z].discard(x)
        for z in X.boundary[y]:
            cof[z].discard(y)
        for z in touched:
            if z in remaining and z not in in_work:
                work.append(z)
                in_work.add(z)
    return Complex(remaining, _trusted=True)


def is_closed_subset(X: Complex, S: frozenset[Face] | set[Face]) -> bool:
    """S is closed for X iff S is itself a complex."""
    return all(y in S for x in S for y in proper_subfaces(x))


def is_open_subset(X: Complex, S: frozenset[Face] | set[Face]) -> bool:
    """S is open for X iff S contains every coface of each of its members."""
    return all(y in S for x in S for y in X.star(x) if y != x)


@dataclass(frozen=True)
class FaceSubset:
    """A subset of the faces of a host complex, with open/closed flags."""

    host: Complex
    members: frozenset[Face]
    closed: bool = field(init=False)
    open: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "closed", is_closed_subset(self.host, self.members))
        object.__setattr__(self, "open", is_open_subset(self.host, self.members))


def connected_components(X: Complex, S: Iterable[Face] | None = None) -> list[set[Face]]:
    """Maximal path-connected parts of S, paths stepping along inclusions.

    Adjacency never leaves S: two faces are adjacent when one contains
    the other, both being members.  Every inclusion pair is discovered
    from the larger face, so no quadratic scan is needed.
    """
    members = set(X.faces) if S is None else set(S)
    parent: dict[Face, Face] = {x: x for x in members}

    def find(x: Face) -> Face:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for y in members:
        ry = find(y)
        for x in proper_subfaces(y):
            if x in parent:
                rx = find(x)
                if rx != ry:
                    parent[rx] = ry
    groups: dict[Face, set[Face]] = {}
    for x in members:
        groups.setdefault(find(x), set()).add(x)
    return [groups[r] for r in sorted(groups, key=face_key)]


def _facets_of_subset(X: Complex, members: set[Face]) -> list[Face]:
    return sorted(
        (x for x in members if not any(y in members for y in X.cofaces[x])),
        key=face_key,
    )


def strong_connected_components(
    X: Complex, S: Iterable[Face] | None = None, d: int | None = None
) -> list[set[Face]]:
    """Partition of S by strong-path reachability between its d-facets.

    A strong path alternates d-faces and shared (d-1)-faces, all lying in
    S.  Non-facet members are attached to the component of their smallest
    containing facet (unambiguous on open subsets of normal
    pseudomanifolds, where this matches plain connectivity).
    """
    members = set(X.faces) if S is None else set(S)
    facets = _facets_of_subset(X, members)
    if d is None:
        d = max((len(x) - 1 for x in facets), default=-1)
    top = [x for x in facets if len(x) - 1 == d]
    parent: dict[Face, Face] = {x: x for x in top}

    def find(x: Face) -> Face:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: Face, b: Face) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for z in X.by_dim.get(d - 1, []) if d >= 1 else []:
        if z not in members:
            continue
        tops = [y for y in X.cofaces[z] if y in parent]
        for a, b in zip(tops, tops[1:]):
            union(a, b)

    groups: dict[Face, set[Face]] = {}
    for x in top:
        groups.setdefault(find(x), set()).add(x)
    comps = [groups[r] for r in sorted(groups, key=face_key)]
    # attach remaining members to the component of a containing facet
    placed = {x: i for i, comp in enumerate(comps) for x in comp}
    for x in sorted(members, key=face_key):
        if x in placed:
            continue
        owners = sorted(
            (i for y, i in placed.items() if len(y) - 1 == d and set(x) <= set(y)),
        )
        if owners:
            comps[owners[0]].add(x)
        else:
            comps.append({x})
    return comps
