"""Exact graded linear algebra over the rationals.

Spaces are finite, with an ordered basis of named, integer-graded vectors.
Maps are stored sparsely by column and always carry a degree; every stored
entry is checked against it.  Tensor products of spaces keep track of their
factors so that the Koszul rule can be applied when tensoring maps together.

The grading is homological: differentials have degree -1.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Vector = dict  # sparse vector: basis index -> Fraction


class SpaceMismatch(ValueError):
    """Raised when maps are combined across incompatible spaces."""


class DegreeError(ValueError):
    """Raised when an entry of a map violates its degree."""


def as_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point scalars are not allowed; use Fraction or 'p/q'")
    return Fraction(value)


def sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


# ---------------------------------------------------------------------------
# spaces


@dataclass(frozen=True, eq=False)
class GradedSpace:
    """Finite graded vector space with an ordered basis of (name, degree)."""

    basis: tuple[tuple[str, int], ...]
    factors: tuple["GradedSpace", ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        basis = tuple((str(name), int(deg)) for name, deg in self.basis)
        object.__setattr__(self, "basis", basis)
        names = [name for name, _ in basis]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate basis names: {dupes}")
        object.__setattr__(self, "_index", {name: k for k, name in enumerate(names)})

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GradedSpace):
            return NotImplemented
        return self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]]) -> "GradedSpace":
        return cls(tuple(pairs))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.basis]

    @property
    def degrees(self) -> list[int]:
        return [deg for _, deg in self.basis]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown basis element {name!r}") from None

    def degree_of(self, k: int) -> int:
        return self.basis[k][1]

    def indices_in_degree(self, degree: int) -> list[int]:
        return [k for k, (_, deg) in enumerate(self.basis) if deg == degree]

    def graded_pieces(self) -> list[int]:
        return sorted({deg for _, deg in self.basis})

    # tensor structure -------------------------------------------------------

    @property
    def arity(self) -> int:
        return len(self.factors) if self.factors is not None else 1

    def split(self, flat: int) -> tuple[int, ...]:
        """Multi-index of a basis element of a tensor product (row-major)."""
        if self.factors is None:
            return (flat,)
        out = []
        for factor in reversed(self.factors):
            flat, r = divmod(flat, factor.dim)
            out.append(r)
        return tuple(reversed(out))

    def join(self, multi: Sequence[int]) -> int:
        if self.factors is None:
            (k,) = multi
            return k
        flat = 0
        for factor, k in zip(self.factors, multi):
            flat = flat * factor.dim + k
        return flat

    def __repr__(self):
        body = ", ".join(f"{n}:{d}" for n, d in self.basis[:8])
        more = ", ..." if self.dim > 8 else ""
        return f"GradedSpace([{body}{more}])"


def tensor(*spaces: GradedSpace) -> GradedSpace:
    """Tensor product; basis ordered lexicographically, first factor slowest."""
    if not spaces:
        return GradedSpace((("1", 0),), factors=())
    basis = []
    for multi in itertools.product(*(s.basis for s in spaces)):
        basis.append(("⊗".join(n for n, _ in multi), sum(d for _, d in multi)))
    return GradedSpace(tuple(basis), factors=tuple(spaces))


@functools.lru_cache(maxsize=256)
def tensor_power(space: GradedSpace, n: int) -> GradedSpace:
    return tensor(*([space] * n))


# ---------------------------------------------------------------------------
# maps


class GradedMap:
    """Degree-homogeneous linear map, stored as sparse columns.

    ``columns[j]`` is the image of source basis element ``j`` as a dict
    ``{target index: Fraction}``; zero columns are not stored.
    """

    __slots__ = ("source", "target", "degree", "columns")

    def __init__(self, source: GradedSpace, target: GradedSpace, degree: int,
                 columns: Mapping[int, Mapping[int, object]] | None = None, check: bool = True):
        self.source = source
        self.target = target
        self.degree = int(degree)
        cols: dict[int, dict[int, Fraction]] = {}
        for j, col in (columns or {}).items():
            clean = {}
            for i, v in col.items():
                v = as_scalar(v)
                if v:
                    clean[i] = v
            if clean:
                cols[j] = clean
        self.columns = cols
        if check:
            self._check_degrees()

    def _check_degrees(self):
        for j, col in self.columns.items():
            if not 0 <= j < self.source.dim:
                raise IndexError(f"source index {j} out of range")
            want = self.source.degree_of(j) + self.degree
            for i in col:
                if not 0 <= i < self.target.dim:
                    raise IndexError(f"target index {i} out of range")
                if self.target.degree_of(i) != want:
                    raise DegreeError(
                        f"entry ({self.target.basis[i][0]}, {self.source.basis[j][0]}) "
                        f"violates degree {self.degree}")

    # constructors -----------------------------------------------------------

    @classmethod
    def identity(cls, space: GradedSpace) -> "GradedMap":
        return cls(space, space, 0, {k: {k: Fraction(1)} for k in range(space.dim)}, check=False)

    @classmethod
    def zero(cls, source: GradedSpace, target: GradedSpace, degree: int = 0) -> "GradedMap":
        return cls(source, target, degree, {}, check=False)

    @classmethod
    def from_dense(cls, source, target, degree, rows: Sequence[Sequence[object]]) -> "GradedMap":
        cols: dict[int, dict[int, Fraction]] = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                v = as_scalar(v)
                if v:
                    cols.setdefault(j, {})[i] = v
        return cls(source, target, degree, cols)

    @classmethod
    def from_entries(cls, source, target, degree,
                     entries: Iterable[tuple[str, str, object]]) -> "GradedMap":
        """Build from named triples ``(source name, target name, scalar)``."""
        cols: dict[int, dict[int, Fraction]] = {}
        for src, tgt, v in entries:
            j, i = source.index(src), target.index(tgt)
            col = cols.setdefault(j, {})
            col[i] = col.get(i, Fraction(0)) + as_scalar(v)
        return cls(source, target, degree, cols)

    # access -----------------------------------------------------------------

    def column(self, j: int) -> dict[int, Fraction]:
        return self.columns.get(j, {})

    def entry(self, i: int, j: int) -> Fraction:
        return self.columns.get(j, {}).get(i, Fraction(0))

    def apply(self, vec: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for j, c in vec.items():
            for i, v in self.columns.get(j, {}).items():
                out[i] = out.get(i, 0) + c * v
        return {i: v for i, v in out.items() if v}

    def to_dense(self) -> list[list[Fraction]]:
        rows = [[Fraction(0)] * self.source.dim for _ in range(self.target.dim)]
        for j, col in self.columns.items():
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def nonzero_entries(self) -> list[tuple[int, int, Fraction]]:
        """(row, column, value) triples in column-major, then row order."""
        return [(i, j, self.columns[j][i]) for j in sorted(self.columns)
                for i in sorted(self.columns[j])]

    def first_nonzero(self):
        entries = self.nonzero_entries()
        if not entries:
            return None
        i, j, v = entries[0]
        return self.target.basis[i][0], self.source.basis[j][0], v

    def is_zero(self) -> bool:
        return not self.columns

    def rank(self) -> int:
        return rank(self.to_dense())

    # arithmetic -------------------------------------------------------------

    def _same_shape(self, other: "GradedMap"):
        if self.source != other.source or self.target != other.target:
            raise SpaceMismatch("maps have different source or target")
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise DegreeError(f"cannot add maps of degree {self.degree} and {other.degree}")

    def __add__(self, other: "GradedMap") -> "GradedMap":
        self._same_shape(other)
        cols = {j: dict(col) for j, col in self.columns.items()}
        for j, col in other.columns.items():
            tgt = cols.setdefault(j, {})
            for i, v in col.items():
                tgt[i] = tgt.get(i, 0) + v
        degree = self.degree if not self.is_zero() else other.degree
        return GradedMap(self.source, self.target, degree, cols, check=False)

    def __neg__(self) -> "GradedMap":
        return self.scale(-1)

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        return self + (-other)

    def scale(self, c) -> "GradedMap":
        c = as_scalar(c)
        cols = {j: {i: c * v for i, v in col.items()} for j, col in self.columns.items()}
        return GradedMap(self.source, self.target, self.degree, cols, check=False)

    __rmul__ = scale

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.columns == other.columns
                and (self.degree == other.degree or self.is_zero()))

    __hash__ = None

    def __repr__(self):
        nnz = sum(len(c) for c in self.columns.values())
        return (f"GradedMap({self.source.dim}->{self.target.dim}, degree={self.degree}, "
                f"nnz={nnz})")


def compose(g: GradedMap, f: GradedMap) -> GradedMap:
    """The composite g∘f (apply f first).  Degrees add."""
    if g.source != f.target:
        raise SpaceMismatch("cannot compose: source of g is not the target of f")
    cols = {}
    for j, col in f.columns.items():
        out = g.apply(col)
        if out:
            cols[j] = out
    return GradedMap(f.source, g.target, g.degree + f.degree, cols, check=False)


def direct_sum_maps(maps: Sequence[GradedMap]) -> GradedMap:
    total = maps[0]
    for m in maps[1:]:
        total = total + m
    return total


def tensor_power_map(maps: Sequence[GradedMap]) -> GradedMap:
    """f_1 ⊗ ... ⊗ f_k with the Koszul rule.

    (f_1 ⊗ ... ⊗ f_k)(x_1 ⊗ ... ⊗ x_k)
        = (-1)^(sum_m |f_m| (|x_1| + ... + |x_{m-1}|)) f_1(x_1) ⊗ ... ⊗ f_k(x_k)
    """
    maps = list(maps)
    source = tensor(*(f.source for f in maps))
    target = tensor(*(f.target for f in maps))
    degree = sum(f.degree for f in maps)
    cols = {}
    for combo in itertools.product(*(sorted(f.columns.items()) for f in maps)):
        exponent = 0
        passed = 0
        for f, (k, _) in zip(maps, combo):
            exponent += f.degree * passed
            passed += f.source.degree_of(k)
        s = sign(exponent)
        out = {}
        for images in itertools.product(*(col.items() for _, col in combo)):
            coeff = Fraction(s)
            idx = []
            for i, v in images:
                coeff *= v
                idx.append(i)
            out[target.join(idx)] = coeff
        cols[source.join([k for k, _ in combo])] = out
    return GradedMap(source, target, degree, cols, check=False)


def flat_tensor_map(maps: Sequence[GradedMap], base: GradedSpace,
                    target_base: GradedSpace | None = None) -> GradedMap:
    """f_1 ⊗ ... ⊗ f_k viewed as a map base^{⊗N} -> target_base^{⊗k}.

    Every f_m must go from a tensor power of ``base`` (or ``base`` itself) to
    ``target_base`` (default ``base``).
    """
    target_base = target_base or base
    m = tensor_power_map(maps)
    n = sum(f.source.arity for f in maps)
    return _reindex(m, tensor_power(base, n), tensor_power(target_base, len(maps)))


def insert_map(space: GradedSpace, before: int, f: GradedMap, after: int) -> GradedMap:
    """1^before ⊗ f ⊗ 1^after on flat tensor powers of ``space``.

    f goes from a tensor power of ``space`` to ``space``.
    """
    j = f.source.arity
    src = tensor_power(space, before + j + after)
    tgt = tensor_power(space, before + 1 + after)
    dim = space.dim
    degs = space.degrees
    cols = {}
    inner = sorted(f.columns.items())
    for pre in itertools.product(range(dim), repeat=before):
        s = sign(f.degree * sum(degs[k] for k in pre))
        for jcol, col in inner:
            mid = f.source.split(jcol)
            for post in itertools.product(range(dim), repeat=after):
                key = src.join(pre + mid + post)
                cols[key] = {tgt.join(pre + (i,) + post): s * v for i, v in col.items()}
    return GradedMap(src, tgt, f.degree, cols, check=False)


def compose_inserted(g: GradedMap, space: GradedSpace, before: int, f: GradedMap,
                     after: int) -> GradedMap:
    """g ∘ (1^before ⊗ f ⊗ 1^after), same value as ``g @ insert_map(...)``.

    Only the nonzero columns of g are visited, so this stays cheap when the
    tensor power is large and g is sparse.
    """
    j = f.source.arity
    src = tensor_power(space, before + j + after)
    mid_space = tensor_power(space, 1)
    if g.source != tensor_power(space, before + 1 + after) or f.target != mid_space:
        raise SpaceMismatch("compose_inserted: shapes do not fit")
    degs = space.degrees
    preimages: dict[int, list[tuple[tuple[int, ...], Fraction]]] = {}
    for jcol, col in f.columns.items():
        mid = f.source.split(jcol)
        for i, v in col.items():
            preimages.setdefault(i, []).append((mid, v))
    out: dict[int, dict[int, Fraction]] = {}
    for kcol, gcol in g.columns.items():
        multi = g.source.split(kcol)
        hits = preimages.get(multi[before])
        if not hits:
            continue
        pre, post = multi[:before], multi[before + 1:]
        s = sign(f.degree * sum(degs[k] for k in pre))
        for mid, v in hits:
            c = s * v
            dest = out.setdefault(src.join(pre + mid + post), {})
            for i, w in gcol.items():
                dest[i] = dest.get(i, 0) + c * w
    return GradedMap(src, g.target, g.degree + f.degree, out, check=False)


def _reindex(m: GradedMap, source: GradedSpace, target: GradedSpace) -> GradedMap:
    """Reinterpret a map between nested tensor products as one between flat ones."""
    if m.source.dim != source.dim or m.target.dim != target.dim:
        raise SpaceMismatch("reindexing between spaces of different dimension")
    return GradedMap(source, target, m.degree, m.columns, check=False)


def permutation_map(space: GradedSpace, sigma: Sequence[int]) -> GradedMap:
    """a_1 ⊗ ... ⊗ a_n  ->  ±a_σ(1) ⊗ ... ⊗ a_σ(n) with the Koszul sign only.

    ``sigma`` is 0-based: position m of the output holds input σ[m].
    """
    n = len(sigma)
    power = tensor_power(space, n)
    cols = {}
    for multi in itertools.product(range(space.dim), repeat=n):
        degs = [space.degree_of(k) for k in multi]
        s = koszul_permutation_sign(sigma, degs)
        out = power.join([multi[sigma[m]] for m in range(n)])
        cols[power.join(multi)] = {out: Fraction(s)}
    return GradedMap(power, power, 0, cols, check=False)


def compose_permutation(g: GradedMap, space: GradedSpace, sigma: Sequence[int]) -> GradedMap:
    """g ∘ permutation_map(space, sigma), visiting only the nonzero columns of g."""
    n = len(sigma)
    power = tensor_power(space, n)
    if g.source != power:
        raise SpaceMismatch("compose_permutation: g is not defined on the tensor power")
    degs = space.degrees
    cols = {}
    for kcol, gcol in g.columns.items():
        image = power.split(kcol)
        multi = [0] * n
        for m in range(n):
            multi[sigma[m]] = image[m]
        s = koszul_permutation_sign(sigma, [degs[k] for k in multi])
        cols[power.join(multi)] = {i: s * v for i, v in gcol.items()}
    return GradedMap(power, g.target, g.degree, cols, check=False)


def koszul_permutation_sign(sigma: Sequence[int], degrees: Sequence[int]) -> int:
    """Koszul sign of reordering graded symbols x_1..x_n into x_σ(1)..x_σ(n)."""
    exponent = 0
    n = len(sigma)
    for a in range(n):
        for b in range(a + 1, n):
            if sigma[a] > sigma[b]:
                exponent += degrees[sigma[a]] * degrees[sigma[b]]
    return sign(exponent)


# ---------------------------------------------------------------------------
# dense exact matrix helpers


def rref(rows: Sequence[Sequence[object]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; pivots chosen as the first usable column."""
    m = [[as_scalar(v) for v in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((k for k in range(r, len(m)) if m[k][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c]:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[object]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[object]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : rows·x = 0}, one vector per free column, in column order."""
    if not rows:
        return [[Fraction(int(k == c)) for k in range(ncols)] for c in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def inverse(rows: Sequence[Sequence[object]]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [[as_scalar(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def matmul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class Contraction:
    """Deformation retract of a complex onto its homology.

    p: complex -> homology, i: homology -> complex, h: complex -> complex of
    degree +1, with p i = 1, d h + h d = 1 - i p and h h = p h = h i = 0.
    """

    space: GradedSpace
    d: GradedMap
    homology: GradedSpace
    p: GradedMap
    i: GradedMap
    h: GradedMap
    representatives: tuple[Vector, ...] = field(default=(), compare=False, repr=False)

    def violations(self) -> list[str]:
        """Names of the contraction identities that fail (empty when valid)."""
        V, H = self.space, self.homology
        one_v, one_h = GradedMap.identity(V), GradedMap.identity(H)
        checks = {
            "d∘d = 0": (self.d @ self.d).is_zero(),
            "p∘i = 1": self.p @ self.i == one_h,
            "d∘h + h∘d = 1 - i∘p": (self.d @ self.h) + (self.h @ self.d) == one_v - (self.i @ self.p),
            "h∘h = 0": (self.h @ self.h).is_zero(),
            "p∘h = 0": (self.p @ self.h).is_zero(),
            "h∘i = 0": (self.h @ self.i).is_zero(),
            "p∘d = 0": (self.p @ self.d).is_zero(),
            "d∘i = 0": (self.d @ self.i).is_zero(),
        }
        return [name for name, ok in checks.items() if not ok]

    def is_valid(self) -> bool:
        return not self.violations()

    @classmethod
    def trivial(cls, space: GradedSpace) -> "Contraction":
        one = GradedMap.identity(space)
        return cls(space, GradedMap.zero(space, space, -1), space, one, one,
                   GradedMap.zero(space, space, 1))


def homology_with_contraction(space: GradedSpace, d: GradedMap) -> Contraction:
    """Homology of (space, d) together with contraction data (p, i, h).

    Each degree k is split as V_k = B_k ⊕ H_k ⊕ C_k with B_k = im d, B_k ⊕ H_k =
    ker d, and d: C_k -> B_{k-1} an isomorphism.  C_k is spanned by the source
    basis vectors whose images are picked first in basis order; H_k is spanned
    by kernel vectors (reduced echelon form, free columns in basis order) not
    already in B_k.  A homology class is named after the free basis element of
    its representative.
    """
    if d.source != space or d.target != space:
        raise SpaceMismatch("differential must be an endomorphism of the space")
    if d.degree != -1 and not d.is_zero():
        raise DegreeError(f"differential must have degree -1, got {d.degree}")
    dd = d @ d
    if not dd.is_zero():
        tgt, src, v = dd.first_nonzero()
        raise ValueError(f"d∘d != 0: entry ({tgt}, {src}) = {v}")

    degrees = space.graded_pieces()
    idx = {k: space.indices_in_degree(k) for k in degrees}

    def block(k_src):
        # matrix of d: V_k -> V_{k-1} in local indices
        src, tgt = idx.get(k_src, []), idx.get(k_src - 1, [])
        return [[d.entry(i, j) for j in src] for i in tgt]

    # C_k: source basis indices (global) whose images form a basis of im d
    chosen: dict[int, list[int]] = {}
    for k in degrees:
        chosen[k] = [idx[k][c] for c in _pivots_of(block(k))]

    hom_basis: list[tuple[str, int]] = []
    reps: list[Vector] = []
    frames: dict[int, dict] = {}
    for k in degrees:
        local = idx[k]
        n = len(local)
        pos = {g: a for a, g in enumerate(local)}
        boundary = []  # B_k basis vectors (local coords), from C_{k+1}
        for j in chosen.get(k + 1, []):
            vec = [Fraction(0)] * n
            for i, v in d.column(j).items():
                vec[pos[i]] = v
            boundary.append(vec)
        ker = nullspace(block(k), n)
        kernel_pivots = set(_pivots_of(block(k)))
        span = list(boundary)
        hom_vecs = []
        for v in ker:
            if rank(span + [v]) > len(span):
                span.append(v)
                hom_vecs.append(v)
        comp = []  # C_k basis vectors
        for g in chosen.get(k, []):
            vec = [Fraction(0)] * n
            vec[pos[g]] = Fraction(1)
            comp.append(vec)
        frame = boundary + hom_vecs + comp
        if len(frame) != n:
            raise ArithmeticError(f"splitting failed in degree {k}")
        frames[k] = {
            "inv": inverse([list(col) for col in zip(*frame)]) if n else [],
            "nb": len(boundary),
            "nh": len(hom_vecs),
            "hom_start": len(hom_basis),
        }
        for v in hom_vecs:
            free = next(a for a in range(n) if v[a] and a not in kernel_pivots)
            hom_basis.append((space.basis[local[free]][0], k))
            reps.append({local[a]: c for a, c in enumerate(v) if c})

    H = GradedSpace(tuple(hom_basis))
    i_cols = {h: rep for h, rep in enumerate(reps)}
    p_cols: dict[int, dict[int, Fraction]] = {}
    h_cols: dict[int, dict[int, Fraction]] = {}
    for k in degrees:
        local = idx[k]
        fr = frames[k]
        inv, nb, nh, h0 = fr["inv"], fr["nb"], fr["nh"], fr["hom_start"]
        up = chosen.get(k + 1, [])
        for a, g in enumerate(local):
            coords = [inv[r][a] for r in range(len(local))]
            p_col = {h0 + r: coords[nb + r] for r in range(nh) if coords[nb + r]}
            if p_col:
                p_cols[g] = p_col
            h_col = {up[r]: coords[r] for r in range(nb) if coords[r]}
            if h_col:
                h_cols[g] = h_col
    p = GradedMap(space, H, 0, p_cols)
    i = GradedMap(H, space, 0, i_cols)
    h = GradedMap(space, space, 1, h_cols)
    return Contraction(space, d, H, p, i, h, tuple(reps))


def _pivots_of(mat):
    if not mat or not mat[0]:
        return []
    return rref(mat)[1]
