"""Positive linear functionals, states, and the GNS construction.

A functional is stored by its values on the algebra's orthonormal basis,
so functionals on proper subalgebras are intrinsic.  Positivity is
decided by the basis Gram matrix G[i, j] = f(e_i* e_j), which represents
the sesquilinear form <[a], [b]> = f(b* a) in coordinates.  The GNS
Hilbert space is the quotient by the Gram null space; no completion step
is needed in finite dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import Algebra, Element, left_regular_matrix
from .errors import (
    AlgebraMismatch,
    DimensionMismatch,
    NotPositive,
    NotStarClosed,
    NotUnital,
    NotUnitVector,
)

GRAM_NULL_TOL = 1e-10


@dataclass(frozen=True)
class Functional:
    """A linear functional stored as its values on the algebra basis."""

    algebra: Algebra
    values: tuple[complex, ...]

    def __post_init__(self):
        if len(self.values) != self.algebra.dim:
            raise DimensionMismatch(
                f"functional needs {self.algebra.dim} values, got {len(self.values)}"
            )

    def __call__(self, a) -> complex:
        m = a.matrix if isinstance(a, Element) else linalg.as_matrix(a)
        return complex(np.dot(self.values, self.algebra.coords(m)))


@dataclass(frozen=True)
class State(Functional):
    """A positive functional of norm 1 (= f(1) on unital algebras)."""

    norm: float = 1.0


@dataclass(frozen=True)
class PositivityReport:
    positive: bool
    min_gram_eigenvalue: float
    hermitian_defect: float


def functional(alg: Algebra, values) -> Functional:
    return Functional(alg, tuple(complex(v) for v in values))


def gram_matrix(alg: Algebra, f: Functional) -> np.ndarray:
    """G[i, j] = f(e_i* e_j); Hermitian PSD exactly when f is positive on the span."""
    if not alg.star_closed:
        raise NotStarClosed("positivity needs a *-closed algebra (e_i* e_j must stay inside)")
    d = alg.dim
    g = np.zeros((d, d), dtype=complex)
    for i, bi in enumerate(alg.basis):
        bi_adj = linalg.adjoint(bi)
        for j, bj in enumerate(alg.basis):
            g[i, j] = f(bi_adj @ bj)
    return g


def is_positive_functional(alg: Algebra, f: Functional, tol: float = 1e-9) -> PositivityReport:
    """Positivity (f(a*a) >= 0 on the span) via the Gram matrix's eigenvalues."""
    g = gram_matrix(alg, f)
    scale = max(1.0, float(np.max(np.abs(g))) if g.size else 0.0)
    defect = float(np.linalg.norm(g - g.conj().T)) / scale
    w = np.linalg.eigvalsh((g + g.conj().T) / 2.0)
    min_eig = float(w[0]) if w.size else 0.0
    positive = defect <= tol and min_eig >= -tol * scale
    return PositivityReport(positive, min_eig, defect)


def make_state(alg: Algebra, values, tol: float = 1e-9) -> State:
    """Validate positivity and normalization, then build a State."""
    f = functional(alg, values)
    report = is_positive_functional(alg, f, tol)
    if not report.positive:
        raise NotPositive(f"min Gram eigenvalue {report.min_gram_eigenvalue:.3e}")
    if not alg.unital:
        raise NotUnital("states are normalized against the algebra identity")
    nrm = f(alg.identity_matrix)
    if abs(nrm - 1.0) > 1e-6:
        raise ValueError(f"functional has f(1) = {nrm}, expected 1")
    return State(alg, f.values, norm=float(nrm.real))


def vector_state(alg: Algebra, x, tol: float = 1e-9) -> State:
    """The state f(a) = <a x, x> induced by a unit vector x."""
    xv = np.asarray(x, dtype=complex).ravel()
    if xv.shape[0] != alg.ambient_dim:
        raise DimensionMismatch(
            f"vector has length {xv.shape[0]}, ambient space is {alg.ambient_dim}"
        )
    if abs(float(np.linalg.norm(xv)) - 1.0) > tol:
        raise NotUnitVector(f"vector norm {np.linalg.norm(xv):.12f} is not 1")
    values = tuple(complex(np.vdot(xv, b @ xv)) for b in alg.basis)
    return make_state(alg, values, tol)


def functional_norm(alg: Algebra, f: Functional, tol: float = 1e-9) -> float:
    """||f|| = f(1) for positive functionals on unital algebras."""
    if not alg.unital:
        raise NotUnital("the norm formula needs an identity")
    report = is_positive_functional(alg, f, tol)
    if not report.positive:
        raise NotPositive(f"min Gram eigenvalue {report.min_gram_eigenvalue:.3e}")
    return float(f(alg.identity_matrix).real)


def cauchy_schwarz_residual(f: Functional, a: Element, b: Element) -> float:
    """f(a*a) f(b*b) - |f(b*a)|^2, non-negative for positive functionals."""
    alg = f.algebra
    report = is_positive_functional(alg, f)
    if not report.positive:
        raise NotPositive(f"min Gram eigenvalue {report.min_gram_eigenvalue:.3e}")
    ma, mb = a.matrix, b.matrix
    faa = f(linalg.adjoint(ma) @ ma).real
    fbb = f(linalg.adjoint(mb) @ mb).real
    fba = f(linalg.adjoint(mb) @ ma)
    return float(faa * fbb - abs(fba) ** 2)


def norming_state(a: Element, tol: float = 1e-9) -> State:
    """A state with f(a) = ||a||, from a top eigenvector of the positive element a."""
    from .spectral import classify

    if a.algebra is None:
        raise ValueError("norming_state needs an element with an explicit algebra")
    if not classify(a, tol).positive:
        raise NotPositive("norming states are built over positive elements")
    w, v = linalg.herm_eig(a.matrix, tol)
    return vector_state(a.algebra, v[:, -1], tol)


@dataclass(frozen=True)
class Representation:
    """A *-homomorphism into matrices, given per algebra basis element."""

    algebra: Algebra
    rep_matrices: tuple[np.ndarray, ...]
    hilbert_dim: int

    def apply(self, a) -> np.ndarray:
        m = a.matrix if isinstance(a, Element) else linalg.as_matrix(a)
        coords = self.algebra.coords(m)
        out = np.zeros((self.hilbert_dim, self.hilbert_dim), dtype=complex)
        for c, r in zip(coords, self.rep_matrices):
            out += c * r
        return out


@dataclass(frozen=True)
class GnsRepresentation(Representation):
    """GNS data: coset map to Hilbert coordinates, plus the inducing state."""

    coset_map: np.ndarray = None
    state: Functional = None
    cyclic_vector: np.ndarray | None = None


def gns(alg: Algebra, state: Functional, tol: float = 1e-9) -> GnsRepresentation:
    """GNS representation of a positive functional.

    The Hilbert space is the coordinate space modulo the Gram null space
    (eigenvalues <= 1e-10 * max are treated as zero); left multiplication
    descends to the representing matrices.
    """
    f = state
    report = is_positive_functional(alg, f, tol)
    if not report.positive:
        raise NotPositive(f"min Gram eigenvalue {report.min_gram_eigenvalue:.3e}")
    g = gram_matrix(alg, f)
    g = (g + g.conj().T) / 2.0
    w, v = np.linalg.eigh(g)
    wmax = float(w[-1]) if w.size else 0.0
    keep = w > GRAM_NULL_TOL * max(wmax, 0.0)
    vk = v[:, keep]
    wk = w[keep]
    k = int(np.sum(keep))
    coset_map = (np.sqrt(wk)[:, None]) * vk.conj().T  # k x d
    pinv = vk / np.sqrt(wk)[None, :]  # d x k
    reps = []
    for b in alg.basis:
        lmat = left_regular_matrix(alg, b)
        reps.append(coset_map @ lmat @ pinv)
    cyclic = None
    if alg.unital:
        cyclic = coset_map @ alg.identity_coords
    return GnsRepresentation(
        algebra=alg,
        rep_matrices=tuple(reps),
        hilbert_dim=k,
        coset_map=coset_map,
        state=f,
        cyclic_vector=cyclic,
    )


def direct_sum_reps(reps) -> Representation:
    """Block-diagonal direct sum of representations of the same algebra."""
    reps = list(reps)
    if not reps:
        raise ValueError("need at least one representation")
    alg = reps[0].algebra
    if any(r.algebra is not alg for r in reps):
        raise AlgebraMismatch("representations must share one algebra")
    total = sum(r.hilbert_dim for r in reps)
    out = []
    for i in range(alg.dim):
        block = np.zeros((total, total), dtype=complex)
        at = 0
        for r in reps:
            k = r.hilbert_dim
            block[at : at + k, at : at + k] = r.rep_matrices[i]
            at += k
        out.append(block)
    return Representation(alg, tuple(out), total)


def trace_state(alg: Algebra) -> State:
    """The normalized trace f(a) = tr(a) / tr(1)."""
    if not alg.unital:
        raise NotUnital("the normalized trace needs an identity")
    denom = complex(np.trace(alg.identity_matrix)).real
    values = tuple(complex(np.trace(b)) / denom for b in alg.basis)
    return make_state(alg, values)


@dataclass(frozen=True)
class UniversalReport:
    representation: Representation
    max_isometry_residual: float
    state_count: int


def universal_rep(alg: Algebra, extra_states=(), seed: int = 0, samples: int = 100) -> UniversalReport:
    """Direct sum of GNS representations over a norming family of states.

    The family is the normalized trace, the supplied extra states, and a
    norming state of (b b*)^2 for each basis element b; it is large enough
    to make the sum isometric at finite dimension.  The report carries the
    max over sampled elements of | ||pi(a)|| - ||a|| |.
    """
    from .algebra import random_element

    family: list[Functional] = []
    if alg.unital:
        family.append(trace_state(alg))
    family.extend(extra_states)
    for b in alg.basis:
        bb = b @ linalg.adjoint(b)
        family.append(norming_state(Element(alg, bb @ bb)))
    reps = [gns(alg, f) for f in family]
    total = direct_sum_reps(reps)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        a = random_element(alg, rng)
        worst = max(worst, abs(linalg.op_norm(total.apply(a)) - a.norm()))
    return UniversalReport(total, worst, len(family))
