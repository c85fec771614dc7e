"""Small algebras used by the tests, the examples directory and the CLI."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .exactlin import GradedMap, GradedSpace, permutation_map, tensor_power
from .halg import AInfAlgebra, LInfAlgebra, structure_map
from .trees import permutation_sign


def massey_dga(max_arity: int = 5) -> AInfAlgebra:
    """Associative dga whose homology carries a nonzero triple Massey product.

    Degree 0: a, b, c, e, f, g; degree 1: u, v, p, q with d u = e, d v = f,
    d p = d q = g.  Products ab = e, bc = f, ec = af = g, uc = p, av = q.
    Homology is spanned by a, b, c and the class of p - q; <a, b, c> is that
    class up to sign.
    """
    V = GradedSpace.from_pairs([("a", 0), ("b", 0), ("c", 0), ("e", 0), ("f", 0), ("g", 0),
                                ("u", 1), ("v", 1), ("p", 1), ("q", 1)])
    d = GradedMap.from_entries(V, V, -1, [("u", "e", 1), ("v", "f", 1), ("p", "g", 1), ("q", "g", 1)])
    m2 = structure_map(V, 2, 0, [
        (("a", "b"), "e", 1), (("b", "c"), "f", 1), (("e", "c"), "g", 1),
        (("a", "f"), "g", 1), (("u", "c"), "p", 1), (("a", "v"), "q", 1),
    ])
    return AInfAlgebra(V, d, {2: m2}, max_arity)


def truncated_polynomial_dga(max_arity: int = 5) -> AInfAlgebra:
    """k[x]/(x^3) with |x| = 0 and zero differential."""
    V = GradedSpace.from_pairs([("1", 0), ("x", 0), ("x2", 0)])
    names = ["1", "x", "x2"]
    table = []
    for i, j in itertools.product(range(3), repeat=2):
        if i + j < 3:
            table.append(((names[i], names[j]), names[i + j], 1))
    d = GradedMap.zero(V, V, -1)
    return AInfAlgebra(V, d, {2: structure_map(V, 2, 0, table)}, max_arity)


def nonassociative_algebra(max_arity: int = 3) -> AInfAlgebra:
    """Two-dimensional algebra with x·x = y, x·y = y, y·x = 0 (not associative)."""
    V = GradedSpace.from_pairs([("x", 0), ("y", 0)])
    m2 = structure_map(V, 2, 0, [(("x", "x"), "y", 1), (("x", "y"), "y", 1)])
    return AInfAlgebra(V, GradedMap.zero(V, V, -1), {2: m2}, max_arity)


def sl2(max_arity: int = 4) -> LInfAlgebra:
    """sl(2) in degree 0: [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    V = GradedSpace.from_pairs([("h", 0), ("e", 0), ("f", 0)])
    rows = [(("h", "e"), "e", 2), (("h", "f"), "f", -2), (("e", "f"), "h", 1)]
    table = []
    for (x, y), out, c in rows:
        table.append(((x, y), out, c))
        table.append(((y, x), out, -c))
    return LInfAlgebra(V, GradedMap.zero(V, V, -1), {2: structure_map(V, 2, 0, table)}, max_arity)


def abelian_linf(max_arity: int = 4) -> LInfAlgebra:
    V = GradedSpace.from_pairs([("x", 0), ("y", 1)])
    return LInfAlgebra(V, GradedMap.zero(V, V, -1), {}, max_arity)


def non_jacobi_bracket(max_arity: int = 3) -> LInfAlgebra:
    """Antisymmetric bracket on span(x, y, z) that violates Jacobi.

    [x,y] = x, [x,z] = x, [y,z] = y; the Jacobiator of (x, y, z) is -x.
    """
    V = GradedSpace.from_pairs([("x", 0), ("y", 0), ("z", 0)])
    rows = [(("x", "y"), "x", 1), (("x", "z"), "x", 1), (("y", "z"), "y", 1)]
    table = []
    for (a, b), out, c in rows:
        table += [((a, b), out, c), ((b, a), out, -c)]
    return LInfAlgebra(V, GradedMap.zero(V, V, -1), {2: structure_map(V, 2, 0, table)}, max_arity)


def sl2_cone(max_arity: int = 4) -> LInfAlgebra:
    """sl(2) ⊗ Λ(ε) with |ε| = 1 and d ε = 1: an acyclic dg Lie algebra.

    Basis x⊗1 (degree 0) and x⊗ε (degree 1, named "xe"); the bracket is
    [x⊗α, y⊗β] = [x, y]⊗αβ and ε² = 0.
    """
    base = sl2()
    names = base.space.names
    pairs = [(n, 0) for n in names] + [(n + "e", 1) for n in names]
    V = GradedSpace.from_pairs(pairs)
    d = GradedMap.from_entries(V, V, -1, [(n + "e", n, 1) for n in names])
    table = []
    for (tgt, src, val) in base.op(2).nonzero_entries():
        x, y = base.op(2).source.split(src)
        out = names[tgt]
        table.append(((names[x], names[y]), out, val))
        table.append(((names[x] + "e", names[y]), out + "e", val))
        table.append(((names[x], names[y] + "e"), out + "e", val))
    return LInfAlgebra(V, d, {2: structure_map(V, 2, 0, table)}, max_arity)


# ---------------------------------------------------------------------------
# random structures (they need not satisfy any identity)


def _random_space(rng: random.Random, dims: dict[int, int]) -> GradedSpace:
    pairs = []
    for deg, k in sorted(dims.items()):
        pairs += [(f"x{deg}_{j}", deg) for j in range(k)]
    return GradedSpace.from_pairs(pairs)


def random_map(rng: random.Random, source: GradedSpace, target: GradedSpace, degree: int,
                density: float = 0.5, values=(-2, -1, 1, 2, Fraction(1, 2))) -> GradedMap:
    cols = {}
    for j in range(source.dim):
        want = source.degree_of(j) + degree
        for i in target.indices_in_degree(want):
            if rng.random() < density:
                cols.setdefault(j, {})[i] = rng.choice(values)
    return GradedMap(source, target, degree, cols)


def _random_square_zero_d(rng: random.Random, V: GradedSpace) -> GradedMap:
    # d sends one chosen degree-k basis vector onto one degree-(k-1) vector, disjointly
    entries = []
    used = set()
    for k in sorted(set(V.degrees)):
        lower = [i for i in V.indices_in_degree(k - 1) if i not in used]
        upper = [j for j in V.indices_in_degree(k) if j not in used]
        if lower and upper and rng.random() < 0.8:
            i, j = lower[0], upper[-1]
            used |= {i, j}
            entries.append((V.names[j], V.names[i], rng.choice([1, -1, 2])))
    return GradedMap.from_entries(V, V, -1, entries)


def random_ainf(seed: int = 0, dims: dict[int, int] | None = None, max_arity: int = 4) -> AInfAlgebra:
    """Graded space with random d (d∘d = 0) and random μ_n of degree n - 2."""
    rng = random.Random(seed)
    V = _random_space(rng, dims or {0: 2, 1: 2, 2: 1})
    d = _random_square_zero_d(rng, V)
    ops = {n: random_map(rng, tensor_power(V, n), V, n - 2, 0.3) for n in range(2, max_arity + 1)}
    return AInfAlgebra(V, d, ops, max_arity)


def antisymmetrize(op: GradedMap, space: GradedSpace) -> GradedMap:
    """(1/n!) Σ_σ sgn(σ) op∘P_σ, which is graded antisymmetric."""
    n = op.source.arity
    total = GradedMap.zero(op.source, op.target, op.degree)
    perms = list(itertools.permutations(range(n)))
    for sigma in perms:
        total = total + (op @ permutation_map(space, sigma)).scale(permutation_sign(sigma))
    return total.scale(Fraction(1, len(perms)))


def random_linf(seed: int = 0, dims: dict[int, int] | None = None, max_arity: int = 4) -> LInfAlgebra:
    """Graded space with random d and random antisymmetric l_n."""
    rng = random.Random(seed)
    V = _random_space(rng, dims or {0: 3, 1: 2, 2: 1})
    d = _random_square_zero_d(rng, V)
    ops = {}
    for n in range(2, max_arity + 1):
        raw = random_map(rng, tensor_power(V, n), V, n - 2, 0.3)
        ops[n] = antisymmetrize(raw, V)
    return LInfAlgebra(V, d, ops, max_arity)
