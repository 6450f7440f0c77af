"""Brute-force enumeration of permutations and increasing trees, with the
statistics and grammatical labelings that reproduce every polynomial family
by plain weighted counting - no grammar involved.

Permutation statistics use the boundary convention sigma_0 = sigma_{n+1} = 0:
position i is a peak when sigma_{i-1} < sigma_i > sigma_{i+1}; left peaks
range over 1 <= i < n, interior peaks over 1 < i < n, left-right peaks over
1 <= i <= n.

Tree kinds (labels strictly increase away from the root):
  inc_binary      binary trees, left/right children distinguished
  plane_012       at most two children, ordered
  tree_012        at most two children, unordered (children sorted by min label)
  jv_tree         complete binary: labeled nodes have 0 or 2 children, children
                  may be unlabeled "empty leaves" (weight x each)
  planted_forest  set partition, each block a root (its min) over a binary tree
  jv_forest       set partition, each block a root over a jv tree (a lone root
                  carries one empty leaf)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Sequence, Tuple

from .errors import BoundExceeded, NotAPermutation, UnknownFamily
from .laurent import LaurentPoly

DEFAULT_ENUM_BOUND = 9

TREE_KINDS = (
    "inc_binary",
    "plane_012",
    "tree_012",
    "jv_tree",
    "jv_forest",
    "planted_forest",
)
STRUCTURE_KINDS = ("permutations",) + TREE_KINDS


def _check_bound(n: int, bound: int | None):
    bound = DEFAULT_ENUM_BOUND if bound is None else bound
    if n < 0:
        raise ValueError("size must be nonnegative")
    if n > bound:
        raise BoundExceeded(
            f"n = {n} exceeds the enumeration bound {bound}; "
            f"raise the bound explicitly to override"
        )


# -- permutations --------------------------------------------------------------


@dataclass(frozen=True)
class PermRecord:
    """A permutation of [n] with its descent and peak statistics."""

    perm: Tuple[int, ...]
    des: int
    asc: int
    lpk: int
    ipk: int
    lrpk: int
    alternating: bool


def _validate_perm(sigma: Sequence[int]) -> Tuple[int, ...]:
    perm = tuple(sigma)
    n = len(perm)
    if n == 0 or sorted(perm) != list(range(1, n + 1)):
        raise NotAPermutation(f"{perm} is not a permutation of 1..n")
    return perm


def perm_stats(sigma: Sequence[int]) -> PermRecord:
    """All statistics of one permutation (1-based one-line notation)."""
    perm = _validate_perm(sigma)
    n = len(perm)
    padded = (0,) + perm + (0,)
    des = sum(1 for i in range(1, n) if padded[i] > padded[i + 1])
    lpk = ipk = lrpk = 0
    for i in range(1, n + 1):
        if padded[i - 1] < padded[i] > padded[i + 1]:
            lrpk += 1
            if i < n:
                lpk += 1
                if i > 1:
                    ipk += 1
    alternating = all(
        (perm[i - 1] < perm[i]) == (i % 2 == 1) for i in range(1, n)
    )
    return PermRecord(perm, des, n - 1 - des, lpk, ipk, lrpk, alternating)


LABEL_SCHEMES = ("L", "M", "W")


def label_permutation(sigma: Sequence[int], scheme: str):
    """Position labels (n+1 of them) and the product weight monomial.

    L: the last position and the two positions flanking each left peak get x.
    M: the two end positions and the flanks of each interior peak get x.
    W: the flanks of each left-right peak get x.  Everything else gets y.
    """
    if scheme not in LABEL_SCHEMES:
        raise ValueError(f"scheme must be one of {LABEL_SCHEMES}")
    perm = _validate_perm(sigma)
    n = len(perm)
    padded = (0,) + perm + (0,)
    labels = ["y"] * (n + 1)

    def flank(i):
        labels[i - 1] = "x"
        labels[i] = "x"

    for i in range(1, n + 1):
        is_peak = padded[i - 1] < padded[i] > padded[i + 1]
        if not is_peak:
            continue
        if scheme == "L" and i < n:
            flank(i)
        elif scheme == "M" and 1 < i < n:
            flank(i)
        elif scheme == "W":
            flank(i)
    if scheme == "L":
        labels[n] = "x"
    if scheme == "M":
        labels[0] = "x"
        labels[n] = "x"
    x_count = labels.count("x")
    weight = LaurentPoly.monomial(("x", "y"), (x_count, n + 1 - x_count))
    return labels, weight


def format_labeling(sigma: Sequence[int], labels: Sequence[str]) -> str:
    """Interleave the zero-padded permutation with its position labels."""
    padded = (0,) + tuple(sigma) + (0,)
    parts = []
    for i, value in enumerate(padded):
        parts.append(str(value))
        if i < len(labels):
            parts.append(labels[i])
    return " ".join(parts)


def permutations(n: int) -> Iterator[Tuple[int, ...]]:
    return itertools.permutations(range(1, n + 1))


# -- increasing trees ------------------------------------------------------------
#
# Node encodings (plain nested tuples; None is an absent slot or empty leaf):
#   inc_binary:       (label, left, right), absent child = None
#   plane_012 / 012:  (label, (child, ...))
#   jv_tree:          None (empty leaf) or (label, ()) or (label, (c1, c2))
#   planted trees:    (root, subtree) with subtree None for a lone root


def _subsets(items: Tuple[int, ...]) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """All (chosen, rest) splits, deterministic by bitmask order."""
    m = len(items)
    for mask in range(1 << m):
        chosen = tuple(items[i] for i in range(m) if mask >> i & 1)
        rest = tuple(items[i] for i in range(m) if not mask >> i & 1)
        yield chosen, rest


def inc_binary_trees(labels: Tuple[int, ...]):
    if not labels:
        yield None
        return
    root, rest = labels[0], labels[1:]
    for left_set, right_set in _subsets(rest):
        for left in inc_binary_trees(left_set):
            for right in inc_binary_trees(right_set):
                yield (root, left, right)


def _ordered_pairs(rest: Tuple[int, ...]):
    # Nonempty ordered bipartitions of rest.
    for first, second in _subsets(rest):
        if first and second:
            yield first, second


def plane_012_trees(labels: Tuple[int, ...]):
    if not labels:
        return
    root, rest = labels[0], labels[1:]
    if not rest:
        yield (root, ())
        return
    for child in plane_012_trees(rest):
        yield (root, (child,))
    for first, second in _ordered_pairs(rest):
        for a in plane_012_trees(first):
            for b in plane_012_trees(second):
                yield (root, (a, b))


def tree_012_trees(labels: Tuple[int, ...]):
    if not labels:
        return
    root, rest = labels[0], labels[1:]
    if not rest:
        yield (root, ())
        return
    for child in tree_012_trees(rest):
        yield (root, (child,))
    for first, second in _ordered_pairs(rest):
        if rest[0] not in first:
            continue  # children canonically ordered by minimum label
        for a in tree_012_trees(first):
            for b in tree_012_trees(second):
                yield (root, (a, b))


def jv_trees(labels: Tuple[int, ...]):
    if not labels:
        yield None  # the lone empty leaf
        return
    root, rest = labels[0], labels[1:]
    if not rest:
        yield (root, ())
        yield (root, (None, None))
        return
    for left_set, right_set in _subsets(rest):
        left_options = list(jv_trees(left_set))
        for left in left_options:
            for right in jv_trees(right_set):
                yield (root, (left, right))


def set_partitions(labels: Tuple[int, ...]) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """Partitions into blocks ordered by minimum element (growth-string order)."""
    if not labels:
        yield ()
        return
    first, rest = labels[0], labels[1:]
    for sub in set_partitions(rest):
        yield ((first,),) + sub
        for i, block in enumerate(sub):
            yield sub[:i] + ((first,) + block,) + sub[i + 1 :]


def planted_forests(labels: Tuple[int, ...]):
    """Forests of planted increasing binary trees (one per partition block)."""
    for partition in set_partitions(labels):
        block_options = [
            [(block[0], sub) for sub in inc_binary_trees(block[1:])]
            for block in partition
        ]
        for choice in itertools.product(*block_options):
            yield tuple(choice)


def jv_forests(labels: Tuple[int, ...]):
    """Forests of planted jv trees; a singleton block is a root + empty leaf."""
    for partition in set_partitions(labels):
        block_options = [
            [(block[0], sub) for sub in (jv_trees(block[1:]) if block[1:] else [None])]
            for block in partition
        ]
        for choice in itertools.product(*block_options):
            yield tuple(choice)


def enumerate_structures(kind: str, n: int, bound: int | None = None):
    """Yield every structure of the kind on [n] exactly once, deterministically."""
    _check_bound(n, bound)
    labels = tuple(range(1, n + 1))
    if kind == "permutations":
        yield from permutations(n)
    elif kind == "inc_binary":
        if n == 0:
            return
        yield from inc_binary_trees(labels)
    elif kind == "plane_012":
        yield from plane_012_trees(labels)
    elif kind == "tree_012":
        yield from tree_012_trees(labels)
    elif kind == "jv_tree":
        yield from jv_trees(labels)
    elif kind == "jv_forest":
        yield from jv_forests(labels)
    elif kind == "planted_forest":
        yield from planted_forests(labels)
    else:
        raise ValueError(f"unknown structure kind {kind!r}")


def count_structures(kind: str, n: int, bound: int | None = None) -> int:
    return sum(1 for _ in enumerate_structures(kind, n, bound))


# -- statistics on trees ----------------------------------------------------------


def binary_degree_counts(tree) -> Tuple[int, int, int]:
    """(leaves, one-child, two-child) counts of an inc_binary tree."""
    if tree is None:
        return (0, 0, 0)
    _, left, right = tree
    children = (left is not None) + (right is not None)
    f0, f1, f2 = (1, 0, 0) if children == 0 else (0, 1, 0) if children == 1 else (0, 0, 1)
    for sub in (left, right):
        a, b, c = binary_degree_counts(sub)
        f0, f1, f2 = f0 + a, f1 + b, f2 + c
    return f0, f1, f2


def tree_degree_counts(tree) -> Tuple[int, int, int]:
    """(f0, f1, f2) for plane_012 / tree_012 nodes."""
    label, children = tree
    counts = [0, 0, 0]
    counts[len(children)] += 1
    for child in children:
        a, b, c = tree_degree_counts(child)
        counts[0] += a
        counts[1] += b
        counts[2] += c
    return tuple(counts)


def tree_leaf_count(tree) -> int:
    label, children = tree
    if not children:
        return 1
    return sum(tree_leaf_count(c) for c in children)


def jv_empty_leaves(tree) -> int:
    if tree is None:
        return 1
    _, children = tree
    return sum(jv_empty_leaves(c) for c in children)


# -- the oracle: families by weighted counting -------------------------------------

UV = ("u", "v")
XY = ("x", "y")


def _poly_from_counter(variables, counter: Dict[Tuple[int, ...], int]) -> LaurentPoly:
    return LaurentPoly(variables, {e: Fraction(c) for e, c in counter.items()})


_EMPTY_PERM = PermRecord((), 0, 0, 0, 0, 0, True)


def _perm_weight_sum(n: int, exponents) -> LaurentPoly:
    counter: Dict[Tuple[int, int], int] = {}
    records = [_EMPTY_PERM] if n == 0 else map(perm_stats, permutations(n))
    for record in records:
        key = exponents(record)
        counter[key] = counter.get(key, 0) + 1
    return _poly_from_counter(XY, counter)


def _block_jv_empty_lists(partition):
    for block in partition:
        rest = block[1:]
        if not rest:
            yield [1]  # lone root carries a single empty leaf
        else:
            yield [jv_empty_leaves(t) for t in jv_trees(rest)]


def _block_uv_lists(partition):
    for block in partition:
        rest = block[1:]
        if not rest:
            yield [(0, 1)]  # lone root labeled v
        else:
            yield [binary_degree_counts(t)[:2] for t in inc_binary_trees(rest)]


def family_poly_oracle(name: str, n: int, bound: int | None = None) -> LaurentPoly:
    """A family polynomial by exhaustive weighted counting.

    The supported names mirror the grammar families.  Ranges follow the
    combinatorial readings: the descent and binary-tree families and the
    interior-peak family need n >= 1 (their n = 0 values are seed
    conventions, not weighted counts).
    """
    _check_bound(n, bound)
    labels = tuple(range(1, n + 1))

    if name in ("eulerian_biv", "eulerian_uni"):
        if n < 1:
            raise ValueError(f"{name} oracle needs n >= 1")
        poly = _perm_weight_sum(n, lambda r: (r.des + 1, r.asc + 1))
    elif name in ("left_peak_biv", "left_peak_uni"):
        poly = _perm_weight_sum(n, lambda r: (2 * r.lpk + 1, n - 2 * r.lpk))
    elif name in ("interior_peak_biv", "interior_peak_uni"):
        if n < 1:
            raise ValueError(f"{name} oracle needs n >= 1")
        poly = _perm_weight_sum(n, lambda r: (2 * r.ipk + 2, n - 2 * r.ipk - 1))
    elif name in ("lr_peak_biv", "lr_peak_uni"):
        poly = _perm_weight_sum(n, lambda r: (2 * r.lrpk, n - 2 * r.lrpk + 1))
    elif name == "R_family":
        left = family_poly_oracle("left_peak_biv", n, bound)
        right = family_poly_oracle("lr_peak_biv", n, bound)
        return left + right
    elif name == "dumont":
        if n < 1:
            raise ValueError("dumont oracle needs n >= 1")
        counter: Dict[Tuple[int, int], int] = {}
        for tree in inc_binary_trees(labels):
            f0, f1, _ = binary_degree_counts(tree)
            counter[(f0, f1)] = counter.get((f0, f1), 0) + 1
        return _poly_from_counter(UV, counter)
    elif name in ("andre_biv", "andre_uni"):
        counter = {}
        if n == 0:
            counter[(0, 0)] = 1
        for tree in tree_012_trees(labels):
            f0, f1, _ = tree_degree_counts(tree)
            counter[(f0, f1)] = counter.get((f0, f1), 0) + 1
        poly = _poly_from_counter(UV, counter)
        if name == "andre_uni":
            return poly.substitute({"v": LaurentPoly.const(1)})
        return poly
    elif name == "deriv_P":
        counter = {}
        for tree in jv_trees(labels):
            k = jv_empty_leaves(tree)
            counter[(k,)] = counter.get((k,), 0) + 1
        return _poly_from_counter(("x",), counter)
    elif name == "deriv_Q":
        counter = {}
        for partition in set_partitions(labels):
            for combo in itertools.product(*_block_jv_empty_lists(partition)):
                k = sum(combo)
                counter[(k,)] = counter.get((k,), 0) + 1
        return _poly_from_counter(("x",), counter)
    elif name == "planted_forest":
        counter = {}
        for partition in set_partitions(labels):
            for combo in itertools.product(*_block_uv_lists(partition)):
                f0 = sum(c[0] for c in combo)
                f1 = sum(c[1] for c in combo)
                counter[(f1, f0)] = counter.get((f1, f0), 0) + 1
        return _poly_from_counter(("v", "u"), counter)
    else:
        raise UnknownFamily(f"no oracle for family {name!r}")

    if name == "eulerian_uni":
        return poly.substitute({"y": LaurentPoly.const(1)})
    if name == "left_peak_uni":
        from .families import _left_peak_k, _project

        return _project(poly, n, _left_peak_k)
    if name == "interior_peak_uni":
        from .families import _interior_peak_k, _project

        return _project(poly, n, _interior_peak_k)
    if name == "lr_peak_uni":
        from .families import _lr_peak_k, _project

        return _project(poly, n, _lr_peak_k)
    return poly


def dumont_plane_oracle(n: int, bound: int | None = None) -> LaurentPoly:
    """The binary-tree polynomials recounted from plane 0-1-2 trees.

    Every leaf weighs u and every one-child vertex weighs 2v; equivalence with
    the inc_binary route is one of the checked invariants.
    """
    _check_bound(n, bound)
    if n < 1:
        raise ValueError("plane-tree oracle needs n >= 1")
    counter: Dict[Tuple[int, int], int] = {}
    for tree in plane_012_trees(tuple(range(1, n + 1))):
        f0, f1, _ = tree_degree_counts(tree)
        counter[(f0, f1)] = counter.get((f0, f1), 0) + 1
    # weight u^f0 (2v)^f1: fold the 2^f1 into the coefficient
    terms = {
        (f0, f1): Fraction(count) * Fraction(2) ** f1
        for (f0, f1), count in counter.items()
    }
    return LaurentPoly(UV, terms)


def plane_leaf_counts(n: int, bound: int | None = None) -> Dict[int, int]:
    """Number of plane 0-1-2 increasing trees on [n] with k leaves."""
    _check_bound(n, bound)
    counts: Dict[int, int] = {}
    for tree in plane_012_trees(tuple(range(1, n + 1))):
        k = tree_leaf_count(tree)
        counts[k] = counts.get(k, 0) + 1
    return counts


def alternating_count(n: int, bound: int | None = None) -> int:
    """Number of up-down alternating permutations of [n]."""
    _check_bound(n, bound)
    if n == 0:
        return 1
    return sum(1 for p in permutations(n) if perm_stats(p).alternating)


# -- JSON ---------------------------------------------------------------------


def structure_to_json(kind: str, structure):
    """Nested-list JSON: node = [label or null, [children...]]; forests are lists."""
    if kind == "permutations":
        return list(structure)
    if kind == "inc_binary":
        return _binary_json(structure)
    if kind in ("plane_012", "tree_012"):
        return _tree_json(structure)
    if kind == "jv_tree":
        return _jv_json(structure)
    if kind == "jv_forest":
        return [[root, [_jv_json(sub)]] for root, sub in structure]
    if kind == "planted_forest":
        return [
            [root, [] if sub is None else [_binary_json(sub)]]
            for root, sub in structure
        ]
    raise ValueError(f"unknown structure kind {kind!r}")


def _binary_json(tree):
    if tree is None:
        return None
    label, left, right = tree
    if left is None and right is None:
        return [label, []]
    return [label, [_binary_json(left), _binary_json(right)]]


def _tree_json(tree):
    label, children = tree
    return [label, [_tree_json(c) for c in children]]


def _jv_json(tree):
    if tree is None:
        return [None, []]
    label, children = tree
    return [label, [_jv_json(c) for c in children]]
