"""Free dg operads: the A(∞) and L(∞) minimal models and their checks.

Elements of a free operad are exact linear combinations of decorated trees
(:class:`FreeElement`).  A :class:`DgFreeOperad` stores a differential on its
generators and extends it to all trees as a derivation.

Sign normalisation of the generator differentials.  For an algebra over the
operad the generator differential must be sent to D(op) = ∂∘op - (-1)^|op| op∘∂,
the differential of the endomorphism complex.  Written against the axioms in
their usual form, Σ ±μ_i(..μ_j..) = [μ_n, ∂] and
Σ χ(σ)(-1)^{i(j-1)} l_j(l_i(..), ..) = (-1)^n [l_n, ∂], this forces

    ∂μ_n = (-1)^(n+1) · Σ (-1)^(j+s(j+1)) μ_i ∘_{s+1} μ_j
    ∂l_n = -Σ sgn(σ) (-1)^(i(j-1)) (l_j with l_i on the block σ(1..i))

and with these normalisations ∂∘∂ = 0 holds exactly.  The bare tree sums
(without the leading factor) are exposed as ``ainf_axiom_element`` and
``linf_axiom_element``: evaluated on an algebra they give the left hand sides
of the axioms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .exactlin import GradedSpace, as_scalar, rank, rref, sign
from .report import CheckRecord, Report
from .trees import (
    ANTISYMMETRIC, PLANAR, Generator, Tree, canonical, corolla, enumerate_labeled_trees,
    enumerate_trees, graft, graft_sign, inline, leaf, permutation_sign, substitute, unshuffles,
)


class ArityCapExceeded(ValueError):
    pass


class FreeElement:
    """Homogeneous linear combination of trees, kept in canonical form."""

    __slots__ = ("terms", "arity")

    def __init__(self, terms: Mapping[Tree, object] | Iterable[tuple[Tree, object]] = (),
                 arity: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Tree, Fraction] = {}
        for tree, coeff in items:
            coeff = as_scalar(coeff)
            if not coeff:
                continue
            s, tree = canonical(tree)
            acc[tree] = acc.get(tree, Fraction(0)) + s * coeff
        self.terms = {t: c for t, c in acc.items() if c}
        arities = {t.arity for t in self.terms}
        if len(arities) > 1:
            raise ValueError(f"mixed arities in free element: {sorted(arities)}")
        if arity is not None and arities and arities != {arity}:
            raise ValueError(f"expected arity {arity}, got {arities.pop()}")
        self.arity = arities.pop() if arities else arity
        degrees = {t.degree for t in self.terms}
        if len(degrees) > 1:
            raise ValueError(f"inhomogeneous free element, degrees {sorted(degrees)}")

    @classmethod
    def from_tree(cls, tree: Tree, coeff=1) -> "FreeElement":
        return cls({tree: coeff})

    @classmethod
    def zero(cls, arity: int | None = None) -> "FreeElement":
        return cls({}, arity=arity)

    @property
    def degree(self) -> int | None:
        for t in self.terms:
            return t.degree
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> list[tuple[Tree, Fraction]]:
        """Terms in deterministic order."""
        return sorted(self.terms.items(), key=lambda tc: tc[0].key())

    def coefficient(self, tree: Tree) -> Fraction:
        s, t = canonical(tree)
        return s * self.terms.get(t, Fraction(0))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.items())

    def __add__(self, other: "FreeElement") -> "FreeElement":
        merged = dict(self.terms)
        for t, c in other.terms.items():
            merged[t] = merged.get(t, 0) + c
        return FreeElement(merged, arity=self.arity if self.arity is not None else other.arity)

    def __neg__(self) -> "FreeElement":
        return self.scale(-1)

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return self + (-other)

    def scale(self, c) -> "FreeElement":
        c = as_scalar(c)
        return FreeElement({t: c * v for t, v in self.terms.items()}, arity=self.arity)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        return f"FreeElement({format_element(self)})"


def format_element(x: FreeElement) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for tree, c in x.items():
        mag = abs(c)
        coeff = "" if mag == 1 else f"{mag}*"
        parts.append(("- " if c < 0 else "+ ") + coeff + inline(tree))
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def partial_compose(outer: FreeElement, slot: int, inner: FreeElement) -> FreeElement:
    """Operadic ∘_slot, extended bilinearly, with the grafting Koszul sign."""
    out = []
    for t, a in outer.terms.items():
        for s, b in inner.terms.items():
            out.append((graft(t, slot, s), a * b * graft_sign(t, slot, s)))
    return FreeElement(out)


# ---------------------------------------------------------------------------
# dg free operads


@dataclass
class DgFreeOperad:
    name: str
    generators: list[Generator]
    diff: dict[Generator, FreeElement] = field(default_factory=dict)

    def __post_init__(self):
        for g, dg in self.diff.items():
            if g not in self.generators:
                raise ValueError(f"differential given on unknown generator {g.name}")
            if dg.is_zero():
                continue
            if dg.arity != g.arity:
                raise ValueError(f"∂{g.name} has arity {dg.arity}, expected {g.arity}")
            if dg.degree != g.degree - 1:
                raise ValueError(f"∂{g.name} has degree {dg.degree}, expected {g.degree - 1}")

    @property
    def is_symmetric(self) -> bool:
        return any(g.symmetry != PLANAR for g in self.generators)

    def generator(self, arity: int) -> Generator:
        for g in self.generators:
            if g.arity == arity:
                return g
        raise KeyError(f"{self.name} has no generator of arity {arity}")

    def generators_by_arity(self) -> dict[int, Generator]:
        return {g.arity: g for g in self.generators}

    def d(self, g: Generator) -> FreeElement:
        if g not in self.generators:
            raise KeyError(f"unknown generator {g.name}")
        return self.diff.get(g, FreeElement.zero(g.arity))

    def basis(self, n: int) -> list[Tree]:
        gens = {a: g for a, g in self.generators_by_arity().items() if a <= n}
        if self.is_symmetric:
            return enumerate_labeled_trees(n, gens)
        return enumerate_trees(n, generators=gens)

    def with_diff(self, g: Generator, value: FreeElement) -> "DgFreeOperad":
        diff = dict(self.diff)
        diff[g] = value
        return DgFreeOperad(self.name, list(self.generators), diff)


def ainf_generators(max_arity: int) -> list[Generator]:
    return [Generator(f"m{n}", n, n - 2, PLANAR) for n in range(2, max_arity + 1)]


def linf_generators(max_arity: int) -> list[Generator]:
    return [Generator(f"l{n}", n, n - 2, ANTISYMMETRIC) for n in range(2, max_arity + 1)]


def _ainf_gen(n):
    return Generator(f"m{n}", n, n - 2, PLANAR)


def _linf_gen(n):
    return Generator(f"l{n}", n, n - 2, ANTISYMMETRIC)


def ainf_axiom_element(n: int) -> FreeElement:
    """Σ_{i+j=n+1} Σ_s (-1)^(j+s(j+1)) μ_i ∘_{s+1} μ_j, the axiom's tree sum."""
    if n < 2:
        raise ValueError("arity must be >= 2")
    terms = []
    for j in range(2, n):
        i = n + 1 - j
        outer = corolla(_ainf_gen(i))
        inner = corolla(_ainf_gen(j))
        for s in range(0, n - j + 1):
            t = graft(outer, s + 1, inner)
            terms.append((t, sign(j + s * (j + 1)) * graft_sign(outer, s + 1, inner)))
    return FreeElement(terms, arity=n)


def ainf_generator_diff(n: int) -> FreeElement:
    """∂μ_n in the A(∞) operad (square-zero normalisation, see module doc)."""
    return ainf_axiom_element(n).scale(sign(n + 1))


def linf_axiom_element(n: int) -> FreeElement:
    """Σ_{i+j=n+1} Σ_σ sgn(σ)(-1)^(i(j-1)) l_j(l_i(σ(1..i)), σ(i+1..n))."""
    if n < 2:
        raise ValueError("arity must be >= 2")
    terms = []
    for i in range(2, n):
        j = n + 1 - i
        gi, gj = _linf_gen(i), _linf_gen(j)
        for u in unshuffles(i, n):
            inner = Tree(gi, [leaf(k) for k in u.first])
            t = Tree(gj, [inner] + [leaf(k) for k in u.rest])
            sgn = permutation_sign([k - 1 for k in u.sigma])
            terms.append((t, sgn * sign(i * (j - 1))))
    return FreeElement(terms, arity=n)


def linf_generator_diff(n: int) -> FreeElement:
    """∂l_n in the L(∞) operad (square-zero normalisation, see module doc)."""
    return -linf_axiom_element(n)


def ainf_operad(max_arity: int = 6) -> DgFreeOperad:
    gens = ainf_generators(max_arity)
    return DgFreeOperad("A(inf)", gens, {g: ainf_generator_diff(g.arity) for g in gens})


def linf_operad(max_arity: int = 5) -> DgFreeOperad:
    gens = linf_generators(max_arity)
    return DgFreeOperad("L(inf)", gens, {g: linf_generator_diff(g.arity) for g in gens})


def family_operad(family: str, max_arity: int) -> DgFreeOperad:
    if family == "ainf":
        return ainf_operad(max_arity)
    if family == "linf":
        return linf_operad(max_arity)
    raise ValueError(f"unknown family {family!r}")


def extend_derivation(op: DgFreeOperad, x: FreeElement) -> FreeElement:
    """Apply ∂ to a free element through the Leibniz rule.

    ∂ acts on the preorder vertex string of each tree: at vertex v it
    contributes (-1)^(degrees of vertices before v) times the tree with v
    replaced by ∂v, reordered into preorder with its Koszul sign.
    """
    known = set(op.generators)
    out = []
    for tree, coeff in x.terms.items():
        before = 0
        for pos, v in enumerate(tree.vertices()):
            if v.gen not in known:
                raise KeyError(f"tree vertex {v.gen.name} is not a generator of {op.name}")
            dv = op.diff.get(v.gen)
            if dv is not None:
                pre = sign(before)
                for rep, c in dv.terms.items():
                    s, new = substitute(tree, pos, rep)
                    out.append((new, coeff * c * s * pre))
            before += v.gen.degree
    return FreeElement(out, arity=x.arity)


def check_d_squared(op: DgFreeOperad, max_arity: int) -> Report:
    """∂∂g for every generator of arity <= max_arity; residual terms reported."""
    if max_arity < 2:
        raise ValueError("max_arity must be >= 2")
    report = Report()
    for g in op.generators:
        if g.arity > max_arity:
            continue
        residual = extend_derivation(op, op.d(g))
        detail = "" if residual.is_zero() else format_element(residual)
        report.add(CheckRecord("d_squared", g.arity, residual.is_zero(), len(residual), detail))
        report.payload[g.arity] = residual
    return report


def is_minimal(op: DgFreeOperad) -> bool:
    """Every tree in every ∂(generator) has at least two vertices."""
    return all(t.vertex_count >= 2 for dg in op.diff.values() for t in dg.terms)


# ---------------------------------------------------------------------------
# quotient presentations of Ass and Lie


ASS_PRODUCT = _ainf_gen(2)
LIE_BRACKET = _linf_gen(2)
_PLACEHOLDER = Generator("_t3", 3, 0, PLANAR)


def relator(presentation: str) -> FreeElement:
    if presentation == "ass":
        m = ASS_PRODUCT
        return FreeElement([
            (Tree(m, [Tree(m, [leaf(1), leaf(2)]), leaf(3)]), 1),
            (Tree(m, [leaf(1), Tree(m, [leaf(2), leaf(3)])]), -1),
        ])
    if presentation == "lie":
        l = LIE_BRACKET
        return FreeElement([
            (Tree(l, [Tree(l, [leaf(1), leaf(2)]), leaf(3)]), 1),
            (Tree(l, [Tree(l, [leaf(2), leaf(3)]), leaf(1)]), 1),
            (Tree(l, [Tree(l, [leaf(3), leaf(1)]), leaf(2)]), 1),
        ])
    raise ValueError(f"unknown presentation {presentation!r}")


def _collapse(tree: Tree, position: int, child: int) -> Tree:
    """Merge vertex ``position`` with its internal ``child`` into a 3-ary placeholder.

    The child's inputs are expanded in place, so planar leaf order is kept and
    the placeholder keeps preorder index ``position``.
    """
    counter = itertools.count()

    def walk(node: Tree) -> Tree:
        if node.gen is None:
            return node
        k = next(counter)
        if k == position:
            kids = list(node.children)
            kids[child:child + 1] = list(kids[child].children)
            return Tree(_PLACEHOLDER, kids)
        return Tree(node.gen, [walk(c) for c in node.children])

    return walk(tree)


@dataclass
class QuotientSpace:
    """Arity-n piece of Ass or Lie as the tree span modulo the relator ideal."""

    presentation: str
    arity: int
    trees: list[Tree]
    basis_trees: list[Tree]
    space: GradedSpace
    _normal_forms: dict = field(repr=False, default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis_trees)

    def project(self, x: FreeElement) -> dict[int, Fraction]:
        """Coordinates of the class of x in the quotient basis."""
        out: dict[int, Fraction] = {}
        for tree, c in x.terms.items():
            if tree not in self._normal_forms:
                raise ValueError(f"{inline(tree)} is not in the arity-{self.arity} tree span")
            for k, v in self._normal_forms[tree].items():
                out[k] = out.get(k, 0) + c * v
        return {k: v for k, v in out.items() if v}


def quotient_arity_space(presentation: str, n: int, cap: int = 5) -> QuotientSpace:
    """Ass(n) or Lie(n) by exact linear algebra over all relator placements."""
    if n > cap:
        raise ArityCapExceeded(f"arity {n} exceeds the cap {cap}")
    if n < 1:
        raise ValueError("arity must be >= 1")
    if presentation == "ass":
        trees = enumerate_trees(n, generators={2: ASS_PRODUCT})
    elif presentation == "lie":
        trees = enumerate_labeled_trees(n, {2: LIE_BRACKET})
    else:
        raise ValueError(f"unknown presentation {presentation!r}")
    index = {t: k for k, t in enumerate(trees)}
    rel = relator(presentation)

    rows = []
    for tree in trees:
        for pos, v in enumerate(tree.vertices()):
            for child, c in enumerate(v.children):
                if c.gen is None:
                    continue
                context = _collapse(tree, pos, child)
                inst = FreeElement([(substitute(context, pos, r)[1], k) for r, k in rel.terms.items()])
                row = [Fraction(0)] * len(trees)
                for t, k in inst.terms.items():
                    row[index[t]] += k
                if any(row):
                    rows.append(row)
    red, pivots = rref(rows) if rows else ([], [])
    free = [k for k in range(len(trees)) if k not in pivots]
    fpos = {k: a for a, k in enumerate(free)}
    normal: dict[Tree, dict[int, Fraction]] = {}
    for k in free:
        normal[trees[k]] = {fpos[k]: Fraction(1)}
    for row, pc in zip(red, pivots):
        normal[trees[pc]] = {fpos[k]: -row[k] for k in free if row[k]}
    basis_trees = [trees[k] for k in free]
    space = GradedSpace(tuple((inline(t), 0) for t in basis_trees))
    return QuotientSpace(presentation, n, trees, basis_trees, space, normal)


def alpha_map(family: str, x: FreeElement, quotient: QuotientSpace | None = None) -> dict[int, Fraction]:
    """α: A(∞) -> Ass or L(∞) -> Lie on a homogeneous element.

    Trees with a vertex of arity >= 3 go to zero; all-binary trees are read in
    the presentation's tree span and projected to the quotient.
    """
    presentation = {"ainf": "ass", "linf": "lie"}[family]
    if x.is_zero():
        return {}
    n = x.arity
    if quotient is None:
        quotient = quotient_arity_space(presentation, n, cap=max(5, n))
    binary = FreeElement([(t, c) for t, c in x.terms.items()
                          if all(v.gen.arity == 2 for v in t.vertices())], arity=n)
    return quotient.project(binary)


def arity_homology(op: DgFreeOperad, n: int, cap: int = 5) -> list[tuple[int, int]]:
    """Betti numbers (degree, dimension) of the arity-n piece of (F(E), ∂)."""
    if n > cap:
        raise ArityCapExceeded(f"arity {n} exceeds the cap {cap}")
    basis = op.basis(n)
    by_degree: dict[int, list[Tree]] = {}
    for t in basis:
        by_degree.setdefault(t.degree, []).append(t)
    pos = {deg: {t: k for k, t in enumerate(ts)} for deg, ts in by_degree.items()}
    ranks = {}
    for deg, ts in by_degree.items():
        lower = pos.get(deg - 1)
        if not lower:
            ranks[deg] = 0
            continue
        rows = [[Fraction(0)] * len(ts) for _ in lower]
        for j, t in enumerate(ts):
            for s, c in extend_derivation(op, FreeElement.from_tree(t)).terms.items():
                rows[lower[s]][j] += c
        ranks[deg] = rank(rows)
    return [(deg, len(by_degree[deg]) - ranks[deg] - ranks.get(deg + 1, 0))
            for deg in sorted(by_degree)]
