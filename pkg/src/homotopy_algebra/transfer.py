"""Transfer of an A(∞)-structure to homology along a contraction.

Given an A(∞)-algebra (V, d, μ) and a contraction (p, i, h) onto H = H(V, d),
the structure X on H and the morphism f: H -> V are built arity by arity.
With m_s = ε_s μ_s the rescaled operations (see :mod:`halg`), put

    Φ_n = Σ_{k≥2} Σ (-1)^w m_k(f_{i_1} ⊗ ... ⊗ f_{i_k})
          - Σ_{2≤s<n} Σ_r (-1)^(r+st) f_{n-s+1}(1^r ⊗ X'_s ⊗ 1^t)

using only components of arity < n.  Then X'_n = p Φ_n and f_n = -h Φ_n
(f_1 = i).  Unrolled, this is the usual sum over planar trees with i on the
leaves, h on internal edges and p or h at the root.  The morphism equation
at arity n holds as soon as d Φ_n = 0, which the A(∞) identities of the
source guarantee; :func:`verify_transfer` checks the outcome independently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactlin import Contraction, GradedMap, homology_with_contraction
from .halg import (
    AInfAlgebra, AInfMorphism, check_ainf, check_morphism, morphism_source_side,
    morphism_target_side, rescale_sign,
)
from .report import CheckRecord, Report

DEFAULT_MAX_ARITY = 5


class TransferError(ValueError):
    pass


@dataclass
class TransferProblem:
    source: AInfAlgebra
    contraction: Contraction | None = None
    max_arity: int = DEFAULT_MAX_ARITY

    def resolved_contraction(self) -> Contraction:
        if self.contraction is None:
            return homology_with_contraction(self.source.space, self.source.d)
        return self.contraction


@dataclass
class TransferResult:
    source: AInfAlgebra
    contraction: Contraction
    transferred: AInfAlgebra
    morphism: AInfMorphism

    @property
    def max_arity(self) -> int:
        return self.transferred.max_arity


def transfer(problem: TransferProblem) -> TransferResult:
    """Transferred structure on homology and the morphism back to the source.

    Raises:
        TransferError: if the contraction does not fit the source, violates
            one of its identities (side conditions included) or the source
            fails its own A(∞) identities up to ``max_arity``.
    """
    A = problem.source
    top = problem.max_arity
    if top < 2:
        raise TransferError("max_arity must be at least 2")
    if A.max_arity < top:
        raise TransferError(f"source is only given up to arity {A.max_arity}, need {top}")
    c = problem.resolved_contraction()
    if c.space != A.space or c.d != A.d:
        raise TransferError("contraction is not built on the source complex")
    bad = c.violations()
    if bad:
        raise TransferError("invalid contraction: " + ", ".join(bad))
    source_report = check_ainf(A, top)
    if not source_report.passed:
        first = source_report.first_failure()
        raise TransferError(f"source fails the A(∞) identity at n={first.arity}")

    H = c.homology
    X = AInfAlgebra(H, GradedMap.zero(H, H, -1), {}, top)
    comps = {1: c.i}
    for n in range(2, top + 1):
        F = AInfMorphism(X, A, comps)
        phi = morphism_target_side(F, n, skip_linear=True) - morphism_source_side(F, n, skip_top=True)
        X = X.with_op(n, (c.p @ phi).scale(rescale_sign(n)))
        f_n = -(c.h @ phi)
        if not f_n.is_zero():
            comps[n] = f_n
    return TransferResult(A, c, X, AInfMorphism(X, A, comps))


def verify_transfer(result: TransferResult, ainf_arity: int | None = None,
                    morphism_arity: int | None = None) -> Report:
    """check_ainf on the transferred structure, check_morphism on f, and the
    homology isomorphism test for f_1, gathered in one report."""
    report = Report()
    report.extend(check_ainf(result.transferred, ainf_arity))
    report.extend(check_morphism(result.morphism, morphism_arity))
    c = result.contraction
    induced = c.p @ result.morphism.component(1)
    ok = induced.rank() == c.homology.dim and c.homology.dim == induced.source.dim
    report.add(CheckRecord("quasi_iso", 1, ok, 0 if ok else 1,
                           "" if ok else f"p∘f_1 has rank {induced.rank()} on H of dim {c.homology.dim}"))
    return report
