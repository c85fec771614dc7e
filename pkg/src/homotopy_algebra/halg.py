"""A(∞)- and L(∞)-structures on finite complexes.

An algebra is a graded space with a differential d (degree -1) and
operations op_n: V^{⊗n} -> V of degree n - 2, stored as :class:`GradedMap`
objects on flat tensor powers.  Operations are given up to ``max_arity``;
checks are always "to order N".

Axioms checked, with the Koszul rule applied whenever a map passes elements:

A(∞), for each n:
    Σ_{i+j=n+1} Σ_s (-1)^(j+s(j+1)) μ_i(1^s ⊗ μ_j ⊗ 1^(n-s-j)) = [μ_n, ∂]

L(∞), for each n:
    Σ_{i+j=n+1} Σ_σ χ(σ)(-1)^(i(j-1)) l_j(l_i ⊗ 1)(a_σ) = (-1)^n [l_n, ∂]

where [op_n, ∂] = op_n ∘ Σ_s (1^(s-1) ⊗ ∂ ⊗ 1^(n-s)) - (-1)^n ∂ ∘ op_n.

A(∞)-morphisms f = {f_n} have f_n of degree n - 1.  Their equations are
written with the rescaled operations m_1 = d, m_s = ε_s μ_s where
ε_s = (-1)^((s-1)(s-2)/2); in terms of m the signs are the standard ones:

    Σ_{r+s+t=n} (-1)^(r+st) f_{r+1+t}(1^r ⊗ m_s ⊗ 1^t)
        = Σ_{i_1+...+i_k=n} (-1)^w m_k(f_{i_1} ⊗ ... ⊗ f_{i_k}),
    w = Σ_l (k-l)(i_l - 1).

The rescaling identifies the A(∞) axioms above with
Σ (-1)^(r+st) m_{r+1+t}(1^r ⊗ m_s ⊗ 1^t) = 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exactlin import (
    GradedMap, GradedSpace, SpaceMismatch, as_scalar, compose_inserted, compose_permutation,
    flat_tensor_map, koszul_permutation_sign, sign, tensor_power,
)
from .operad import FreeElement
from .report import CheckRecord, Report
from .trees import Tree, permutation_sign, unshuffles


def rescale_sign(n: int) -> int:
    """ε_n = (-1)^((n-1)(n-2)/2): μ_n = ε_n m_n (ε_1 = ε_2 = 1)."""
    return sign((n - 1) * (n - 2) // 2)


def compositions(n: int, k: int):
    """Ordered k-tuples of positive integers summing to n."""
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def morphism_sign(parts: Sequence[int]) -> int:
    k = len(parts)
    return sign(sum((k - l) * (i - 1) for l, i in enumerate(parts, start=1)))


@dataclass
class _HomotopyAlgebra:
    space: GradedSpace
    d: GradedMap
    ops: dict[int, GradedMap] = field(default_factory=dict)
    max_arity: int = 2

    kind = "?"

    def __post_init__(self):
        if self.d.source != self.space or self.d.target != self.space:
            raise SpaceMismatch("differential must be an endomorphism of the space")
        if not self.d.is_zero() and self.d.degree != -1:
            raise ValueError("differential must have degree -1")
        if not (self.d @ self.d).is_zero():
            tgt, src, v = (self.d @ self.d).first_nonzero()
            raise ValueError(f"d∘d != 0 at ({tgt}, {src}) = {v}")
        for n, op in self.ops.items():
            if n < 2:
                raise ValueError("operations start at arity 2")
            if n > self.max_arity:
                raise ValueError(f"operation of arity {n} beyond max_arity {self.max_arity}")
            if op.source != tensor_power(self.space, n) or op.target != self.space:
                raise SpaceMismatch(f"operation {n} is not a map V^⊗{n} -> V")
            if not op.is_zero() and op.degree != n - 2:
                raise ValueError(f"operation {n} has degree {op.degree}, expected {n - 2}")

    def op(self, n: int) -> GradedMap:
        if n == 1:
            return self.d
        if n > self.max_arity:
            raise KeyError(f"no operation of arity {n} (max_arity {self.max_arity})")
        found = self.ops.get(n)
        if found is None:
            return GradedMap.zero(tensor_power(self.space, n), self.space, n - 2)
        return found

    def has_op(self, n: int) -> bool:
        return n == 1 or (n in self.ops and not self.ops[n].is_zero())

    def with_op(self, n: int, op: GradedMap):
        ops = dict(self.ops)
        ops[n] = op
        return type(self)(self.space, self.d, ops, max(self.max_arity, n))


class AInfAlgebra(_HomotopyAlgebra):
    kind = "ainf"


class LInfAlgebra(_HomotopyAlgebra):
    kind = "linf"


def structure_map(space: GradedSpace, n: int, degree: int,
                  table: Sequence[tuple[Sequence[str], str, object]],
                  target: GradedSpace | None = None) -> GradedMap:
    """Map space^{⊗n} -> target from sparse rows (input names, output name, scalar)."""
    target = target or space
    source = tensor_power(space, n)
    cols: dict[int, dict[int, Fraction]] = {}
    for inputs, output, value in table:
        if len(inputs) != n:
            raise ValueError(f"expected {n} inputs, got {list(inputs)}")
        j = source.join([space.index(a) for a in inputs])
        i = target.index(output)
        col = cols.setdefault(j, {})
        col[i] = col.get(i, Fraction(0)) + as_scalar(value)
    return GradedMap(source, target, degree, cols)


# ---------------------------------------------------------------------------
# brackets with d and axiom checks


def bracket_with_d(A: _HomotopyAlgebra, n: int) -> GradedMap:
    """[op_n, ∂] = op_n ∘ (Σ 1⊗..⊗∂⊗..⊗1) - (-1)^n ∂ ∘ op_n."""
    if not 2 <= n <= A.max_arity:
        raise ValueError(f"arity {n} out of range 2..{A.max_arity}")
    op = A.op(n)
    total = (A.d @ op).scale(-sign(n))
    if A.d.is_zero():
        return total
    for s in range(n):
        total = total + compose_inserted(op, A.space, s, A.d, n - 1 - s)
    return total


def ainf_lhs(A: AInfAlgebra, n: int) -> GradedMap:
    """Σ (-1)^(j+s(j+1)) μ_i ∘ (1^s ⊗ μ_j ⊗ 1^(n-s-j)) assembled as one map."""
    V = A.space
    total = GradedMap.zero(tensor_power(V, n), V, n - 3)
    for j in range(2, n):
        i = n + 1 - j
        if not (A.has_op(i) and A.has_op(j)):
            continue
        for s in range(0, n - j + 1):
            term = compose_inserted(A.op(i), V, s, A.op(j), n - s - j)
            total = total + term.scale(sign(j + s * (j + 1)))
    return total


def _record(check: str, n: int, residual: GradedMap, report: Report) -> CheckRecord:
    first = residual.first_nonzero()
    detail = "" if first is None else f"first nonzero entry ({first[0]}, {first[1]}) = {first[2]}"
    entries = sum(len(c) for c in residual.columns.values())
    report.payload[(check, n)] = residual
    return report.add(CheckRecord(check, n, residual.is_zero(), entries, detail))


def check_ainf(A: AInfAlgebra, max_arity: int | None = None) -> Report:
    """Residual LHS - [μ_n, ∂] for n = 2..max_arity, exactly."""
    top = A.max_arity if max_arity is None else min(max_arity, A.max_arity)
    report = Report()
    for n in range(2, top + 1):
        _record("ainf", n, ainf_lhs(A, n) - bracket_with_d(A, n), report)
    return report


def check_antisymmetry(L: LInfAlgebra, n: int) -> GradedMap:
    """l_n∘P_τ + l_n for the first adjacent transposition τ where it is nonzero.

    P_τ carries the Koszul sign, so the result is zero for every τ exactly
    when l_n is graded antisymmetric.
    """
    op = L.op(n)
    for k in range(n - 1):
        tau = list(range(n))
        tau[k], tau[k + 1] = tau[k + 1], tau[k]
        r = compose_permutation(op, L.space, tau) + op
        if not r.is_zero():
            return r
    return GradedMap.zero(op.source, L.space, op.degree)


def linf_lhs(L: LInfAlgebra, n: int) -> GradedMap:
    V = L.space
    total = GradedMap.zero(tensor_power(V, n), V, n - 3)
    for i in range(2, n):
        j = n + 1 - i
        if not (L.has_op(i) and L.has_op(j)):
            continue
        inner = compose_inserted(L.op(j), V, 0, L.op(i), j - 1)
        for u in unshuffles(i, n):
            sigma = [k - 1 for k in u.sigma]
            sgn = permutation_sign(sigma)
            term = compose_permutation(inner, V, sigma)
            total = total + term.scale(sgn * sign(i * (j - 1)))
    return total


def check_linf(L: LInfAlgebra, max_arity: int | None = None) -> Report:
    """Antisymmetry of every l_n, then the L(∞) residuals for n = 2..max_arity.

    If any l_n fails antisymmetry the axioms are not evaluated.
    """
    top = L.max_arity if max_arity is None else min(max_arity, L.max_arity)
    report = Report()
    for n in range(2, top + 1):
        _record("antisymmetry", n, check_antisymmetry(L, n), report)
    if not report.passed:
        return report
    for n in range(2, top + 1):
        residual = linf_lhs(L, n) - bracket_with_d(L, n).scale(sign(n))
        _record("linf", n, residual, report)
    return report


def check_algebra(A: _HomotopyAlgebra, max_arity: int | None = None) -> Report:
    if isinstance(A, LInfAlgebra):
        return check_linf(A, max_arity)
    return check_ainf(A, max_arity)


# ---------------------------------------------------------------------------
# evaluating free operad elements


def _apply_op(op: GradedMap, vectors: Sequence[dict[int, Fraction]]) -> dict[int, Fraction]:
    source = op.source
    out: dict[int, Fraction] = {}
    for combo in itertools.product(*(v.items() for v in vectors)):
        coeff = Fraction(1)
        idx = []
        for k, c in combo:
            coeff *= c
            idx.append(k)
        for i, v in op.columns.get(source.join(idx), {}).items():
            out[i] = out.get(i, 0) + coeff * v
    return {i: v for i, v in out.items() if v}


def _eval_planar(tree: Tree, A: _HomotopyAlgebra, args: Sequence[int], pos: list) -> dict:
    """Value of ``tree`` on the next arguments (consumed via ``pos``)."""
    degs = A.space.degrees
    if tree.gen is None:
        k = args[pos[0]]
        pos[0] += 1
        return {k: Fraction(1)}
    values = []
    exponent = 0
    passed = 0
    for child in tree.children:
        start = pos[0]
        values.append(_eval_planar(child, A, args, pos))
        exponent += child.degree * passed
        passed += sum(degs[args[m]] for m in range(start, pos[0]))
    if not all(values):
        return {}
    try:
        op = A.op(tree.gen.arity)
    except KeyError:
        raise KeyError(f"algebra has no operation for vertex {tree.gen.name}") from None
    s = sign(exponent)
    return {i: s * v for i, v in _apply_op(op, values).items()}


def evaluate_action(x: FreeElement, A: _HomotopyAlgebra, args: Sequence) -> dict[int, Fraction]:
    """Value of a free operad element on a tuple of basis elements.

    Each tree is evaluated bottom up; a vertex op applied to the values of its
    subtrees T_1..T_k on argument blocks A_1..A_k picks up
    (-1)^(|T_m| (|A_1| + ... + |A_{m-1}|)).  A tree whose leaves carry labels
    λ_1..λ_n is evaluated on (a_λ1, ..., a_λn) times the Koszul sign of that
    rearrangement.
    """
    V = A.space
    idx = [V.index(a) if isinstance(a, str) else int(a) for a in args]
    if x.is_zero():
        return {}
    if x.arity != len(idx):
        raise ValueError(f"element has arity {x.arity}, got {len(idx)} arguments")
    degs = [V.degree_of(k) for k in idx]
    out: dict[int, Fraction] = {}
    for tree, coeff in x.terms.items():
        labels = tree.leaf_labels
        perm = [l - 1 for l in labels]
        k_sign = koszul_permutation_sign(perm, degs)
        vec = _eval_planar(tree, A, [idx[p] for p in perm], [0])
        for i, v in vec.items():
            out[i] = out.get(i, 0) + coeff * k_sign * v
    return {i: v for i, v in out.items() if v}


def evaluate_as_map(x: FreeElement, A: _HomotopyAlgebra) -> GradedMap:
    """The multilinear map V^{⊗n} -> V obtained by evaluating x on every basis tuple."""
    n = x.arity
    V = A.space
    power = tensor_power(V, n)
    cols = {}
    for multi in itertools.product(range(V.dim), repeat=n):
        vec = evaluate_action(x, A, multi)
        if vec:
            cols[power.join(multi)] = vec
    degree = x.degree if x.degree is not None else 0
    return GradedMap(power, V, degree, cols, check=False)


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class AInfMorphism:
    """A(∞)-morphism source -> target with components f_n of degree n - 1."""

    source: AInfAlgebra
    target: AInfAlgebra
    components: dict[int, GradedMap] = field(default_factory=dict)

    def __post_init__(self):
        for n, f in self.components.items():
            if n < 1:
                raise ValueError("components start at arity 1")
            if f.source != tensor_power(self.source.space, n) or f.target != self.target.space:
                raise SpaceMismatch(f"component {n} has the wrong source or target")
            if not f.is_zero() and f.degree != n - 1:
                raise ValueError(f"component {n} has degree {f.degree}, expected {n - 1}")

    def component(self, n: int) -> GradedMap:
        found = self.components.get(n)
        if found is None:
            return GradedMap.zero(tensor_power(self.source.space, n), self.target.space, n - 1)
        return found

    def has_component(self, n: int) -> bool:
        return n in self.components and not self.components[n].is_zero()

    @property
    def max_arity(self) -> int:
        return max(self.components, default=1)


def identity_morphism(A: AInfAlgebra) -> AInfMorphism:
    return AInfMorphism(A, A, {1: GradedMap.identity(A.space)})


def strict_morphism(source: AInfAlgebra, target: AInfAlgebra, f: GradedMap) -> AInfMorphism:
    return AInfMorphism(source, target, {1: f})


def _m(A: AInfAlgebra, s: int) -> GradedMap:
    op = A.op(s)
    return op if s == 1 else op.scale(rescale_sign(s))


def _has_m(A: AInfAlgebra, s: int) -> bool:
    return (s == 1 and not A.d.is_zero()) or (s > 1 and s <= A.max_arity and A.has_op(s))


def morphism_source_side(F: AInfMorphism, n: int, skip_top: bool = False) -> GradedMap:
    """Σ_{r+s+t=n} (-1)^(r+st) f_{r+1+t} ∘ (1^r ⊗ m_s ⊗ 1^t)."""
    A = F.source
    V = A.space
    total = GradedMap.zero(tensor_power(V, n), F.target.space, n - 2)
    for s in range(1, n + 1):
        if skip_top and s == n:
            continue
        if not _has_m(A, s):
            continue
        u = n - s + 1
        if not F.has_component(u):
            continue
        ms = _m(A, s)
        for r in range(0, n - s + 1):
            t = n - s - r
            term = compose_inserted(F.component(u), V, r, ms, t)
            total = total + term.scale(sign(r + s * t))
    return total


def morphism_target_side(F: AInfMorphism, n: int, skip_linear: bool = False) -> GradedMap:
    """Σ_{i_1+..+i_k=n} (-1)^w m_k ∘ (f_{i_1} ⊗ ... ⊗ f_{i_k})."""
    B = F.target
    total = GradedMap.zero(tensor_power(F.source.space, n), B.space, n - 2)
    for k in range(1, n + 1):
        if skip_linear and k == 1:
            continue
        if not _has_m(B, k):
            continue
        mk = _m(B, k)
        for parts in compositions(n, k):
            if not all(F.has_component(i) for i in parts):
                continue
            inner = flat_tensor_map([F.component(i) for i in parts], F.source.space, B.space)
            total = total + (mk @ inner).scale(morphism_sign(parts))
    return total


def check_morphism(F: AInfMorphism, max_arity: int | None = None) -> Report:
    """Residual of the A(∞)-morphism equations for n = 1..max_arity."""
    top = min(F.source.max_arity, F.target.max_arity)
    if max_arity is not None:
        top = min(top, max_arity)
    report = Report()
    for n in range(1, top + 1):
        residual = morphism_source_side(F, n) - morphism_target_side(F, n)
        _record("morphism", n, residual, report)
    return report


def compose_morphisms(G: AInfMorphism, F: AInfMorphism, max_arity: int | None = None) -> AInfMorphism:
    """G∘F with (G∘F)_n = Σ (-1)^w g_k ∘ (f_{i_1} ⊗ ... ⊗ f_{i_k})."""
    if F.target.space != G.source.space:
        raise SpaceMismatch("target of F is not the source of G")
    top = max_arity or min(F.source.max_arity, G.target.max_arity,
                           max(F.max_arity, 1) * max(G.max_arity, 1))
    comps = {}
    for n in range(1, top + 1):
        total = GradedMap.zero(tensor_power(F.source.space, n), G.target.space, n - 1)
        for k in range(1, n + 1):
            if not G.has_component(k):
                continue
            for parts in compositions(n, k):
                if not all(F.has_component(i) for i in parts):
                    continue
                inner = flat_tensor_map([F.component(i) for i in parts], F.source.space,
                                        G.source.space)
                total = total + (G.component(k) @ inner).scale(morphism_sign(parts))
        if not total.is_zero():
            comps[n] = total
    return AInfMorphism(F.source, G.target, comps)


def pullback_structure(target: AInfAlgebra, components: Mapping[int, GradedMap],
                       max_arity: int | None = None) -> AInfMorphism:
    """Solve for the A(∞)-structure on target.space making ``components`` a morphism.

    The first component must be the identity; the source keeps the target's
    differential.  Returns the morphism (source algebra, target) with the new
    operations determined arity by arity.
    """
    V = target.space
    if components.get(1) != GradedMap.identity(V):
        raise ValueError("pullback needs f_1 = identity")
    top = max_arity or target.max_arity
    source = AInfAlgebra(V, target.d, {}, top)
    for n in range(2, top + 1):
        F = AInfMorphism(source, target, dict(components))
        # f_1 m'_n = RHS - (other source-side terms); f_1 = 1
        rest = morphism_target_side(F, n) - morphism_source_side(F, n, skip_top=True)
        source = source.with_op(n, rest.scale(rescale_sign(n)))
    return AInfMorphism(source, target, dict(components))
