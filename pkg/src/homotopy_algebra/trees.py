"""Rooted trees decorated by graded generators.

A tree is either a leaf carrying an integer label, or a vertex decorated by a
:class:`Generator` with as many children as the generator's arity.  Planar
trees use labels 1..n from left to right; trees in a symmetric operad carry
any permutation of 1..n on their leaves.

Sign bookkeeping follows one rule throughout.  A tree is read as the string
of its vertices in preorder (root first, then children left to right), each
vertex being a graded symbol of its generator's degree.  Reordering that
string costs the usual Koszul sign.  This matches evaluating the tree bottom
up on graded arguments, each operation picking up (-1)^(|op| * |args passed|).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .exactlin import koszul_permutation_sign, sign

PLANAR = "planar"
ANTISYMMETRIC = "antisymmetric"


@dataclass(frozen=True, order=True)
class Generator:
    name: str
    arity: int
    degree: int
    symmetry: str = PLANAR

    def __post_init__(self):
        if self.arity < 2:
            raise ValueError("generators must have arity >= 2")
        if self.symmetry not in (PLANAR, ANTISYMMETRIC):
            raise ValueError(f"unknown symmetry {self.symmetry!r}")

    def __str__(self):
        return self.name


class Tree:
    """Immutable decorated rooted tree (a leaf or a generator vertex)."""

    __slots__ = ("gen", "children", "label", "_hash", "_degree", "_labels")

    def __init__(self, gen: Generator | None = None, children: Sequence["Tree"] = (),
                 label: int | None = None):
        if gen is None:
            if label is None or children:
                raise ValueError("a leaf needs a label and no children")
        elif len(children) != gen.arity:
            raise ValueError(f"{gen.name} has arity {gen.arity}, got {len(children)} children")
        self.gen = gen
        self.children = tuple(children)
        self.label = label
        self._hash = None
        if gen is None:
            self._degree = 0
            self._labels = (label,)
        else:
            self._degree = gen.degree + sum(c._degree for c in self.children)
            self._labels = tuple(l for c in self.children for l in c._labels)

    @property
    def is_leaf(self) -> bool:
        return self.gen is None

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def arity(self) -> int:
        return len(self._labels)

    @property
    def leaf_labels(self) -> tuple[int, ...]:
        return self._labels

    @property
    def min_label(self) -> int:
        return min(self._labels)

    def vertices(self) -> list["Tree"]:
        """Internal vertices (as subtrees) in preorder."""
        if self.gen is None:
            return []
        out = [self]
        for c in self.children:
            out.extend(c.vertices())
        return out

    @property
    def vertex_count(self) -> int:
        return len(self.vertices())

    def vertex_generators(self) -> list[Generator]:
        return [v.gen for v in self.vertices()]

    def key(self):
        if self.gen is None:
            return (0, self.label)
        return (1, self.gen.arity, self.gen.name, tuple(c.key() for c in self.children))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tree):
            return NotImplemented
        return (self.gen == other.gen and self.label == other.label
                and self.children == other.children)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.gen, self.label, self.children))
        return self._hash

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        return f"Tree({inline(self)})"

    def __str__(self):
        return inline(self)


def leaf(label: int) -> Tree:
    return Tree(label=label)


def corolla(gen: Generator, labels: Sequence[int] | None = None) -> Tree:
    labels = labels or range(1, gen.arity + 1)
    return Tree(gen, [leaf(k) for k in labels])


def relabel(tree: Tree, mapping) -> Tree:
    if tree.gen is None:
        return leaf(mapping[tree.label])
    return Tree(tree.gen, [relabel(c, mapping) for c in tree.children])


def inline(tree: Tree) -> str:
    if tree.gen is None:
        return str(tree.label)
    return f"{tree.gen.name}({','.join(inline(c) for c in tree.children)})"


def pretty(tree: Tree) -> str:
    """Indented ASCII picture, one node per line."""
    lines: list[str] = []

    def walk(node: Tree, prefix: str, tail: str, child_prefix: str):
        name = str(node.label) if node.gen is None else node.gen.name
        lines.append(prefix + tail + name)
        kids = node.children
        for k, c in enumerate(kids):
            last = k == len(kids) - 1
            walk(c, prefix + child_prefix, "`-- " if last else "|-- ",
                 "    " if last else "|   ")

    walk(tree, "", "", "")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# grafting and substitution


def graft(outer: Tree, slot: int, inner: Tree) -> Tree:
    """outer ∘_slot inner: ``inner`` replaces the leaf labelled ``slot``.

    Labels of ``outer`` above ``slot`` shift up by arity(inner) - 1 and the
    labels of ``inner`` shift by slot - 1, so planar trees stay planar.
    """
    n, m = outer.arity, inner.arity
    if not 1 <= slot <= n:
        raise IndexError(f"slot {slot} out of range 1..{n}")
    shifted = relabel(inner, {l: l + slot - 1 for l in inner.leaf_labels})

    def walk(node: Tree) -> Tree:
        if node.gen is None:
            if node.label == slot:
                return shifted
            return leaf(node.label if node.label < slot else node.label + m - 1)
        return Tree(node.gen, [walk(c) for c in node.children])

    return walk(outer)


def graft_sign(outer: Tree, slot: int, inner: Tree) -> int:
    """Sign relating the operadic composite outer ∘_slot inner to graft(...).

    The composite reads as the string (outer vertices)(inner vertices); the
    grafted tree's preorder puts inner's vertices before those of outer that
    follow leaf ``slot``, so those get passed.
    """
    after = 0
    seen = False

    def walk(node: Tree):
        nonlocal after, seen
        if node.gen is None:
            if node.label == slot:
                seen = True
            return
        if seen:
            after += node.gen.degree
        for c in node.children:
            walk(c)

    walk(outer)
    return sign(inner.degree * after)


class _Tagged:
    __slots__ = ("tag", "gen", "children", "label")

    def __init__(self, tag, gen, children, label=None):
        self.tag, self.gen, self.children, self.label = tag, gen, children, label


def _tag(tree: Tree, prefix: str, counter) -> _Tagged:
    if tree.gen is None:
        return _Tagged(None, None, [], tree.label)
    tag = (prefix, next(counter))
    return _Tagged(tag, tree.gen, [_tag(c, prefix, counter) for c in tree.children])


def _untag(node: _Tagged, order: list) -> Tree:
    if node.gen is None:
        return leaf(node.label)
    order.append((node.tag, node.gen.degree))
    return Tree(node.gen, [_untag(c, order) for c in node.children])


def _reorder_sign(string: list[tuple[object, int]], preorder: list[tuple[object, int]]) -> int:
    pos = {tag: k for k, (tag, _) in enumerate(preorder)}
    odd = [pos[tag] for tag, deg in string if deg % 2]
    inversions = sum(1 for a in range(len(odd)) for b in range(a + 1, len(odd)) if odd[a] > odd[b])
    return sign(inversions)


def substitute(tree: Tree, position: int, replacement: Tree) -> tuple[int, Tree]:
    """Replace the vertex at preorder ``position`` by a tree of the same arity.

    Leaf label r of ``replacement`` stands for the r-th child (left to right)
    of the replaced vertex.  Returns ``(sign, new_tree)`` where the sign is the
    Koszul sign of moving from the string "vertices before, replacement
    vertices, vertices after" to the preorder of the new tree.
    """
    tagged = _tag(tree, "o", itertools.count())
    rep = _tag(replacement, "r", itertools.count())
    string: list[tuple[object, int]] = []
    target = ("o", position)

    def collect(node: _Tagged):
        if node.gen is None:
            return
        if node.tag == target:
            rep_order: list = []
            _untag(rep, rep_order)
            string.extend(rep_order)
        else:
            string.append((node.tag, node.gen.degree))
        for c in node.children:
            collect(c)

    collect(tagged)
    found = False

    def rebuild(node: _Tagged) -> _Tagged:
        nonlocal found
        if node.gen is None:
            return node
        kids = [rebuild(c) for c in node.children]
        if node.tag == target:
            found = True
            if len(kids) != replacement.arity:
                raise ValueError("replacement arity does not match the vertex")

            def plug(r: _Tagged) -> _Tagged:
                if r.gen is None:
                    return kids[r.label - 1]
                return _Tagged(r.tag, r.gen, [plug(c) for c in r.children])

            return plug(rep)
        return _Tagged(node.tag, node.gen, kids)

    new = rebuild(tagged)
    if not found:
        raise IndexError(f"no vertex at preorder position {position}")
    order: list = []
    result = _untag(new, order)
    return _reorder_sign(string, order), result


def canonical(tree: Tree) -> tuple[int, Tree]:
    """Normal form modulo the antisymmetry of antisymmetric vertices.

    Children of every antisymmetric vertex are sorted by their smallest leaf
    label.  Swapping adjacent subtrees S, T costs -(-1)^(|S||T|).
    """
    if tree.gen is None:
        return 1, tree
    s = 1
    kids = []
    for c in tree.children:
        cs, cc = canonical(c)
        s *= cs
        kids.append(cc)
    if tree.gen.symmetry == ANTISYMMETRIC:
        order = sorted(range(len(kids)), key=lambda k: kids[k].min_label)
        if order != list(range(len(kids))):
            s *= permutation_sign(order)
            s *= koszul_permutation_sign(order, [k.degree for k in kids])
            kids = [kids[k] for k in order]
    return s, Tree(tree.gen, kids)


# ---------------------------------------------------------------------------
# enumeration


def default_generators(arities: Iterable[int], symmetry: str = PLANAR,
                       prefix: str = "m") -> dict[int, Generator]:
    return {a: Generator(f"{prefix}{a}", a, a - 2, symmetry) for a in sorted(arities)}


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def _shapes(n: int, gens: dict[int, Generator]):
    if n == 1:
        yield None
        return
    for a in sorted(gens):
        if a > n:
            continue
        for comp in _compositions(n, a):
            for kids in itertools.product(*(list(_shapes(k, gens)) for k in comp)):
                yield (gens[a], kids)


def _label_shape(shape, counter) -> Tree:
    if shape is None:
        return leaf(next(counter))
    gen, kids = shape
    return Tree(gen, [_label_shape(k, counter) for k in kids])


def enumerate_trees(n: int, arities: Iterable[int] | None = None,
                    generators: dict[int, Generator] | None = None) -> list[Tree]:
    """All planar trees with ``n`` leaves whose vertex arities lie in ``arities``.

    Order: root arity ascending, then leaf distribution over the root's inputs
    (leftmost input smallest first), recursing left to right.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if generators is None:
        generators = default_generators(arities or ())
    elif arities is not None:
        generators = {a: g for a, g in generators.items() if a in set(arities)}
    return [_label_shape(shape, itertools.count(1)) for shape in _shapes(n, generators)]


def enumerate_labeled_trees(n: int, generators: dict[int, Generator]) -> list[Tree]:
    """Basis of arity-n trees in the free symmetric operad on ``generators``.

    Antisymmetric vertices are taken in canonical form, so each basis tree
    appears once; the list is sorted by :meth:`Tree.key`.
    """
    seen = set()
    for shape in enumerate_trees(n, generators=generators):
        for perm in itertools.permutations(range(1, n + 1)):
            _, t = canonical(relabel(shape, dict(zip(range(1, n + 1), perm))))
            seen.add(t)
    return sorted(seen, key=Tree.key)


# ---------------------------------------------------------------------------
# permutations and signs


@dataclass(frozen=True)
class Unshuffle:
    """Permutation σ of 1..n increasing on positions 1..i and i+1..n."""

    sigma: tuple[int, ...]
    block: int

    @property
    def first(self) -> tuple[int, ...]:
        return self.sigma[: self.block]

    @property
    def rest(self) -> tuple[int, ...]:
        return self.sigma[self.block:]


def unshuffles(i: int, n: int) -> list[Unshuffle]:
    """All (i, n-i)-unshuffles, in lexicographic order of σ."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"block size {i} out of range 1..{n - 1}")
    out = []
    for first in itertools.combinations(range(1, n + 1), i):
        rest = tuple(k for k in range(1, n + 1) if k not in first)
        out.append(Unshuffle(first + rest, i))
    assert len(out) == comb(n, i)
    return out


def permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm))
                     if perm[a] > perm[b])
    return sign(inversions)


def koszul_sign(sigma: Sequence[int], degrees: Sequence[int]) -> tuple[int, int]:
    """(χ(σ), sgn(σ)) for arguments of the given degrees.

    σ is 1-based and sends (a_1, ..., a_n) to (a_σ(1), ..., a_σ(n)); χ is the
    signature times the Koszul sign of that rearrangement.
    """
    if len(sigma) != len(degrees):
        raise ValueError("permutation and degree list differ in length")
    zero_based = [k - 1 for k in sigma]
    sgn = permutation_sign(zero_based)
    return sgn * koszul_permutation_sign(zero_based, degrees), sgn
