"""Finite groups from permutation generators, subgroups and cosets.

Groups are materialized by a full multiplication table.  Elements are
enumerated in deterministic BFS order from the identity over the
generator list, so every downstream matrix is bit-reproducible.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

DEFAULT_MAX_ORDER = 10_000

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _gen_letter(k: int) -> str:
    return _LETTERS[k] if k < len(_LETTERS) else f"g{k}."


def compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """(a*b)(i) = a(b(i)): apply b first, then a."""
    return tuple(a[x] for x in b)


def cycles_to_permutation(cycles: Sequence[Sequence[int]], degree: int) -> tuple[int, ...]:
    """Permutation (as an image tuple) from a list of disjoint cycles."""
    images = list(range(degree))
    seen: set[int] = set()
    for cyc in cycles:
        for pt in cyc:
            if not (0 <= pt < degree):
                raise ValueError(f"cycle point {pt} out of range for degree {degree}")
            if pt in seen:
                raise ValueError(f"point {pt} appears in two cycles")
            seen.add(pt)
        for i, pt in enumerate(cyc):
            images[pt] = cyc[(i + 1) % len(cyc)]
    return tuple(images)


class GroupData:
    """A finite group: element list, multiplication table, BFS metadata.

    Do not call directly; use :func:`build_group`.
    """

    def __init__(self, degree, elements, labels, mult_table, inverse_table,
                 generators, bfs_parent):
        self.degree = degree
        self.elements = elements          # tuple of image tuples
        self.labels = labels              # words in generator letters, "e" first
        self.mult_table = mult_table      # (n, n) int32, mult_table[i, j] = idx(g_i * g_j)
        self.inverse_table = inverse_table
        self.generators = generators      # element indices of the generators
        self.bfs_parent = bfs_parent      # (parent index, generator position); (-1, -1) at identity
        self.index = {perm: i for i, perm in enumerate(elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def mult(self, i: int, j: int) -> int:
        return int(self.mult_table[i, j])

    def inverse(self, i: int) -> int:
        return int(self.inverse_table[i])

    def __repr__(self) -> str:
        return f"GroupData(order={self.order}, degree={self.degree}, generators={len(self.generators)})"


def build_group(
    generators: Iterable[Sequence[int]],
    degree: int | None = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> GroupData:
    """Group generated by permutations, enumerated BFS-first from the identity.

    Each generator is an image tuple (g maps i to g[i]).  The identity
    gets index 0; element k+... is discovered by right-multiplying
    already-known elements by the generators, in order.

    Raises:
        ValueError: on non-permutation input, mismatched degrees, or
            when the generated order exceeds max_order.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if gens:
        deg = len(gens[0])
        for g in gens:
            if len(g) != deg:
                raise ValueError("generators act on different numbers of points")
            if sorted(g) != list(range(deg)):
                raise ValueError(f"{g} is not a permutation")
        if degree is not None and degree != deg:
            raise ValueError(f"declared degree {degree} != generator degree {deg}")
    else:
        deg = degree if degree is not None else 1
        if deg < 1:
            raise ValueError("degree must be positive")

    identity = tuple(range(deg))
    elements: list[tuple[int, ...]] = [identity]
    labels: list[str] = ["e"]
    parents: list[tuple[int, int]] = [(-1, -1)]
    index = {identity: 0}
    head = 0
    while head < len(elements):
        x = elements[head]
        for k, g in enumerate(gens):
            y = compose(x, g)
            if y not in index:
                if len(elements) >= max_order:
                    raise ValueError(f"group order exceeds the bound {max_order}")
                index[y] = len(elements)
                word = _gen_letter(k) if head == 0 else labels[head] + _gen_letter(k)
                elements.append(y)
                labels.append(word)
                parents.append((head, k))
        head += 1

    n = len(elements)
    el_arr = np.array(elements, dtype=np.int64).reshape(n, deg)
    mult = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        composed = el_arr[i][el_arr]  # row j = elements[i] o elements[j]
        for j in range(n):
            mult[i, j] = index[tuple(composed[j])]
    inv = np.empty(n, dtype=np.int32)
    for i, perm in enumerate(elements):
        images = list(perm)
        inverse = [0] * deg
        for a, b in enumerate(images):
            inverse[b] = a
        inv[i] = index[tuple(inverse)]

    group = GroupData(
        degree=deg,
        elements=tuple(elements),
        labels=tuple(labels),
        mult_table=mult,
        inverse_table=inv,
        generators=tuple(index[g] for g in gens),
        bfs_parent=tuple(parents),
    )
    if n <= 128:
        _check_group_law(group)
    return group


def _check_group_law(group: GroupData) -> None:
    t = group.mult_table
    n = group.order
    left = t[t, :]                     # left[i, j, k] = t[t[i, j], k]
    right = t[:, t].reshape(n, n, n)   # right[i, j, k] = t[i, t[j, k]]
    if not np.array_equal(left, right):
        raise ValueError("multiplication table is not associative")
    if not (np.array_equal(t[0], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))):
        raise ValueError("identity is not at index 0")
    for i in range(n):
        j = int(group.inverse_table[i])
        if t[i, j] != 0 or t[j, i] != 0:
            raise ValueError(f"inverse table wrong at element {i}")


class SubgroupData:
    """A subgroup with left-coset bookkeeping and its own group structure.

    Coset representatives are chosen greedily by smallest element index,
    so reps[0] is the identity and the transversal is deterministic.
    """

    def __init__(self, parent, elements, generators, group, to_sub,
                 coset_reps, coset_pos, h_part):
        self.parent = parent
        self.elements = elements        # sorted tuple of parent indices
        self.generators = generators    # parent indices generating H
        self.group = group              # H as a GroupData in its own right
        self.to_sub = to_sub            # parent index -> H index (-1 outside H)
        self.coset_reps = coset_reps    # parent indices, reps[0] == 0
        self.coset_pos = coset_pos      # parent index -> coset number
        self.h_part = h_part            # parent index g -> h with g = rep * h

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def n_cosets(self) -> int:
        return len(self.coset_reps)

    def __repr__(self) -> str:
        return f"SubgroupData(order={self.order}, cosets={self.n_cosets})"


def subgroup_closure(parent: GroupData, elements: Iterable[int]) -> SubgroupData:
    """Smallest subgroup of `parent` containing the given element indices."""
    gens: list[int] = []
    for e in elements:
        e = int(e)
        if not (0 <= e < parent.order):
            raise ValueError(f"element index {e} out of range")
        if e not in gens:
            gens.append(e)

    members = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = parent.mult(x, g)
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    sub_elements = tuple(sorted(members))

    sub_group = build_group(
        [parent.elements[g] for g in gens],
        degree=parent.degree,
        max_order=parent.order,
    )
    if sub_group.order != len(sub_elements):
        raise AssertionError("subgroup closure and generated group disagree")
    to_sub = np.full(parent.order, -1, dtype=np.int32)
    for h_idx, perm in enumerate(sub_group.elements):
        to_sub[parent.index[perm]] = h_idx

    n = parent.order
    coset_pos = np.full(n, -1, dtype=np.int32)
    h_part = np.full(n, -1, dtype=np.int32)
    reps: list[int] = []
    for g in range(n):
        if coset_pos[g] >= 0:
            continue
        c = len(reps)
        reps.append(g)
        for h in sub_elements:
            gh = parent.mult(g, h)
            coset_pos[gh] = c
            h_part[gh] = h
    assert len(reps) * len(sub_elements) == n

    return SubgroupData(
        parent=parent,
        elements=sub_elements,
        generators=tuple(gens),
        group=sub_group,
        to_sub=to_sub,
        coset_reps=tuple(reps),
        coset_pos=coset_pos,
        h_part=h_part,
    )


# -- stock groups ---------------------------------------------------------------

def cyclic_group(n: int) -> GroupData:
    """C_n acting on n points via the long cycle."""
    if n == 1:
        return build_group([], degree=1)
    return build_group([cycles_to_permutation([list(range(n))], n)])


def symmetric_group(n: int) -> GroupData:
    """S_n generated by the transposition (0 1) and the n-cycle."""
    if n < 2:
        return build_group([], degree=1)
    transposition = cycles_to_permutation([[0, 1]], n)
    if n == 2:
        return build_group([transposition])
    long_cycle = cycles_to_permutation([list(range(n))], n)
    return build_group([transposition, long_cycle])
