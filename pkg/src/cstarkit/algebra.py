"""Finite-dimensional subalgebras of complex matrices.

An Algebra is stored as an orthonormal basis under the trace pairing
<x, y> = trace(y* x) (i.e. Frobenius inner product), together with cached
structure flags: unitality (identity coordinates), commutativity, closure
under the adjoint, and the scalar field (real or complex coefficients).

Quotients keep a coset basis orthogonal to the ideal plus the structure
constants of coset multiplication, so quotient arithmetic never touches
representatives again.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import linalg
from .errors import (
    AlgebraMismatch,
    BudgetExceeded,
    DimensionMismatch,
    NotInAlgebra,
    NotProper,
    NotRealAlgebra,
    NotSubspace,
    NotTwoSided,
)

MEMBERSHIP_TOL = 1e-9


def _trace_ip(x: np.ndarray, y: np.ndarray) -> complex:
    """Trace pairing <x, y> = trace(y* x)."""
    return complex(np.vdot(y, x))


def _mgs_insert(basis: list[np.ndarray], cand: np.ndarray, tol: float = MEMBERSHIP_TOL) -> bool:
    """Insert cand into the orthonormal list if its residual exceeds tol * ||cand||."""
    scale = float(np.linalg.norm(cand))
    if scale == 0.0:
        return False
    v = cand.astype(complex)
    for _ in range(2):  # two MGS passes for orthogonality at roundoff level
        for b in basis:
            v = v - _trace_ip(v, b) * b
    rem = float(np.linalg.norm(v))
    if rem <= tol * scale:
        return False
    basis.append(v / rem)
    return True


@dataclass(frozen=True)
class Algebra:
    """A subalgebra of M_n given by an orthonormal basis under the trace pairing."""

    basis: tuple[np.ndarray, ...]
    identity_coords: np.ndarray | None
    abelian: bool
    star_closed: bool
    real_field: bool = False

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return self.basis[0].shape[0] if self.basis else 0

    @property
    def unital(self) -> bool:
        return self.identity_coords is not None

    def coords(self, m: np.ndarray) -> np.ndarray:
        """Coordinates of m in the orthonormal basis (valid for members)."""
        return np.array([_trace_ip(m, b) for b in self.basis])

    def from_coords(self, c) -> np.ndarray:
        c = np.asarray(c, dtype=complex)
        out = np.zeros((self.ambient_dim, self.ambient_dim), dtype=complex)
        for ck, b in zip(c, self.basis):
            out += ck * b
        return out

    def project(self, m: np.ndarray) -> np.ndarray:
        return self.from_coords(self.coords(m))

    def membership_residual(self, m: np.ndarray) -> float:
        scale = float(np.linalg.norm(m))
        if scale == 0.0:
            return 0.0
        return float(np.linalg.norm(m - self.project(m))) / scale

    def contains(self, m: np.ndarray, tol: float = MEMBERSHIP_TOL) -> bool:
        return self.membership_residual(m) <= tol

    @property
    def identity_matrix(self) -> np.ndarray | None:
        if self.identity_coords is None:
            return None
        return self.from_coords(self.identity_coords)


def _solve_identity(basis: list[np.ndarray], tol: float) -> np.ndarray | None:
    """Least-squares solve for coordinates of a two-sided identity, or None."""
    d = len(basis)
    if d == 0:
        return None
    n = basis[0].shape[0]
    rows = []
    rhs = []
    for b in basis:
        left = np.stack([(ej @ b).ravel() for ej in basis], axis=1)
        right = np.stack([(b @ ej).ravel() for ej in basis], axis=1)
        rows.extend([left, right])
        rhs.extend([b.ravel(), b.ravel()])
    a = np.vstack(rows)
    y = np.concatenate(rhs)
    x, *_ = np.linalg.lstsq(a, y, rcond=None)
    resid = float(np.linalg.norm(a @ x - y))
    if resid > tol * max(1.0, float(np.linalg.norm(y))):
        return None
    e = sum(xk * b for xk, b in zip(x, basis))
    if float(np.linalg.norm(e)) == 0.0:
        return None
    return x


def _build_algebra(
    candidates: list[np.ndarray], real_field: bool, tol: float = MEMBERSHIP_TOL
) -> Algebra:
    """Orthonormalize an already multiplication-closed spanning set and cache flags."""
    basis: list[np.ndarray] = []
    for cand in candidates:
        _mgs_insert(basis, cand, tol)
    abelian = True
    star_closed = True
    for i, bi in enumerate(basis):
        adj = linalg.adjoint(bi)
        rem = adj - sum(_trace_ip(adj, b) * b for b in basis)
        if float(np.linalg.norm(rem)) > tol:
            star_closed = False
        for bj in basis[: i + 1]:
            if float(np.linalg.norm(bi @ bj - bj @ bi)) > tol:
                abelian = False
    ident = _solve_identity(basis, tol)
    return Algebra(
        basis=tuple(basis),
        identity_coords=ident,
        abelian=abelian,
        star_closed=star_closed,
        real_field=real_field,
    )


def algebra_from_generators(
    gens,
    include_identity: bool = True,
    include_adjoints: bool = True,
    real_field: bool = False,
    tol: float = MEMBERSHIP_TOL,
) -> Algebra:
    """Smallest subalgebra of M_n containing the generators.

    With include_adjoints the closure is taken under the * operation as
    well, and with include_identity the ambient identity is adjoined.
    Closure alternates product and adjoint passes, orthonormalizing by
    modified Gram-Schmidt, until the dimension stabilizes.
    """
    mats = [linalg.require_square(linalg.as_matrix(g)) for g in gens]
    if not mats:
        raise ValueError("need at least one generator")
    n = mats[0].shape[0]
    if any(m.shape[0] != n for m in mats):
        raise DimensionMismatch("generators must all be n x n of equal size")
    if real_field and any(np.max(np.abs(m.imag)) > 0 for m in mats):
        raise NotRealAlgebra("real-field algebra requires real generators")

    basis: list[np.ndarray] = []
    if include_identity:
        _mgs_insert(basis, np.eye(n, dtype=complex), tol)
    for m in mats:
        _mgs_insert(basis, m, tol)

    max_rounds = n * n + 1
    for _ in range(max_rounds):
        grew = False
        if include_adjoints:
            for b in list(basis):
                grew |= _mgs_insert(basis, linalg.adjoint(b), tol)
        current = list(basis)
        for bi in current:
            for bj in current:
                grew |= _mgs_insert(basis, bi @ bj, tol)
        if not grew:
            break
    return _build_algebra(basis, real_field, tol)


def full_matrix_algebra(n: int) -> Algebra:
    """All of M_n, with the matrix units as orthonormal basis."""
    units = []
    for i in range(n):
        for j in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = 1.0
            units.append(e)
    return _build_algebra(units, real_field=False)


@dataclass(frozen=True)
class Element:
    """A matrix tagged with its owning algebra (None means ambient M_n)."""

    algebra: Algebra | None
    matrix: np.ndarray

    def __post_init__(self):
        m = linalg.require_square(linalg.as_matrix(self.matrix))
        object.__setattr__(self, "matrix", m)
        if self.algebra is not None:
            if m.shape[0] != self.algebra.ambient_dim:
                raise DimensionMismatch(
                    f"matrix is {m.shape[0]} x {m.shape[0]}, algebra ambient is "
                    f"{self.algebra.ambient_dim}"
                )
            resid = self.algebra.membership_residual(m)
            if resid > 1e-8:
                raise NotInAlgebra(f"projection residual {resid:.3e} outside the span")

    @property
    def coords(self) -> np.ndarray:
        if self.algebra is None:
            raise NotInAlgebra("ambient elements carry no basis coordinates")
        return self.algebra.coords(self.matrix)

    def adjoint(self) -> "Element":
        return Element(self.algebra, linalg.adjoint(self.matrix))

    def norm(self) -> float:
        return linalg.op_norm(self.matrix)

    def _wrap(self, m: np.ndarray) -> "Element":
        return Element(self.algebra, m)

    def __add__(self, other: "Element") -> "Element":
        return self._wrap(self.matrix + other.matrix)

    def __sub__(self, other: "Element") -> "Element":
        return self._wrap(self.matrix - other.matrix)

    def __neg__(self) -> "Element":
        return self._wrap(-self.matrix)

    def __matmul__(self, other: "Element") -> "Element":
        return self._wrap(self.matrix @ other.matrix)

    def __mul__(self, scalar) -> "Element":
        return self._wrap(self.matrix * complex(scalar))

    __rmul__ = __mul__


def element(alg: Algebra | None, m) -> Element:
    return Element(alg, linalg.as_matrix(m))


def ambient_element(m) -> Element:
    return Element(None, linalg.as_matrix(m))


def find_identity(alg: Algebra) -> Element | None:
    """The algebra's two-sided identity, or None when there is none."""
    if alg.identity_coords is None:
        return None
    return Element(alg, alg.from_coords(alg.identity_coords))


def is_abelian(alg: Algebra) -> bool:
    return alg.abelian


def random_element(alg: Algebra, rng: np.random.Generator, scale: float = 1.0) -> Element:
    """Element with seeded Gaussian coordinates (real when the field is real)."""
    c = rng.standard_normal(alg.dim)
    if not alg.real_field:
        c = c + 1j * rng.standard_normal(alg.dim)
    return Element(alg, alg.from_coords(scale * c))


@dataclass(frozen=True)
class SubspaceBasis:
    """A linearly independent subset of an algebra, kept with an orthonormal copy."""

    algebra: Algebra
    matrices: tuple[np.ndarray, ...]
    onb: tuple[np.ndarray, ...] = field(default=(), compare=False)

    def __post_init__(self):
        onb: list[np.ndarray] = []
        for m in self.matrices:
            mm = linalg.as_matrix(m)
            if not self.algebra.contains(mm, 1e-8):
                raise NotSubspace("matrix outside the algebra span")
            if not _mgs_insert(onb, mm):
                raise NotSubspace("matrices are linearly dependent")
        object.__setattr__(self, "onb", tuple(onb))

    @property
    def dim(self) -> int:
        return len(self.onb)

    def residual(self, m: np.ndarray) -> float:
        rem = m.astype(complex)
        for b in self.onb:
            rem = rem - _trace_ip(rem, b) * b
        return float(np.linalg.norm(rem))


def subspace(alg: Algebra, mats) -> SubspaceBasis:
    return SubspaceBasis(alg, tuple(linalg.as_matrix(m) for m in mats))


def ideal_check(alg: Algebra, s: SubspaceBasis, tol: float = MEMBERSHIP_TOL) -> str:
    """Classify s as 'two_sided', 'left_only', 'right_only' or 'not_ideal'."""
    if s.algebra is not alg:
        raise NotSubspace("subspace was built over a different algebra")
    left = True
    right = True
    for b in alg.basis:
        for m in s.onb:
            if s.residual(b @ m) > tol * (1.0 + float(np.linalg.norm(b @ m))):
                left = False
            if s.residual(m @ b) > tol * (1.0 + float(np.linalg.norm(m @ b))):
                right = False
    if left and right:
        return "two_sided"
    if left:
        return "left_only"
    if right:
        return "right_only"
    return "not_ideal"


@dataclass(frozen=True)
class QuotientAlgebra:
    """Cosets of a two-sided ideal, with multiplication as structure constants."""

    parent: Algebra
    ideal: SubspaceBasis
    coset_basis: tuple[np.ndarray, ...]
    mult_table: np.ndarray  # [i, j, l] = <c_i c_j, c_l>
    identity_coset: np.ndarray | None

    @property
    def dim(self) -> int:
        return len(self.coset_basis)

    def coset_coords(self, m: np.ndarray) -> np.ndarray:
        return np.array([_trace_ip(m, c) for c in self.coset_basis])

    def coset_multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijl->l", x, y, self.mult_table)


def quotient(alg: Algebra, ideal: SubspaceBasis, tol: float = MEMBERSHIP_TOL) -> QuotientAlgebra:
    """Quotient by a proper two-sided ideal; cosets multiply as [a][b] = [ab]."""
    kind = ideal_check(alg, ideal, tol)
    if kind != "two_sided":
        raise NotTwoSided(f"ideal_check returned {kind!r}")
    if ideal.dim >= alg.dim:
        raise NotProper("ideal must have dimension below the algebra's")
    coset: list[np.ndarray] = list(ideal.onb)
    k0 = len(coset)
    for b in alg.basis:
        _mgs_insert(coset, b, tol)
    coset_basis = tuple(coset[k0:])
    k = len(coset_basis)
    table = np.zeros((k, k, k), dtype=complex)
    for i, ci in enumerate(coset_basis):
        for j, cj in enumerate(coset_basis):
            prod = ci @ cj
            table[i, j, :] = [_trace_ip(prod, cl) for cl in coset_basis]
    ident = None
    if alg.unital:
        e = alg.identity_matrix
        ident = np.array([_trace_ip(e, cl) for cl in coset_basis])
    return QuotientAlgebra(alg, ideal, coset_basis, table, ident)


def quotient_norm(
    q: QuotientAlgebra,
    a: Element,
    budget: int = 20000,
    seed: int = 0,
    tol: float = 1e-9,
) -> float:
    """Numerical inf over the ideal of ||a + b||, the quotient (coset) norm.

    Nelder-Mead over the real/imaginary ideal coordinates, warm-started at
    zero and at the Frobenius-optimal offset, with 8 seeded random restarts.
    The objective (largest singular value over an affine subspace) is convex.
    """
    if a.algebra is not q.parent:
        raise AlgebraMismatch("element does not belong to the quotient's parent algebra")
    k = q.ideal.dim
    base = a.matrix
    if k == 0:
        return linalg.op_norm(base)
    onb = q.ideal.onb

    def objective(t: np.ndarray) -> float:
        coef = t[:k] + 1j * t[k:]
        m = base + sum(c * b for c, b in zip(coef, onb))
        return linalg.op_norm(m)

    frob = np.array([-_trace_ip(base, b) for b in onb])
    starts = [np.zeros(2 * k), np.concatenate([frob.real, frob.imag])]
    rng = np.random.default_rng(seed)
    scale = linalg.op_norm(base) + 1.0
    for _ in range(8):
        starts.append(rng.standard_normal(2 * k) * scale)

    per_run = max(200, budget // len(starts))
    best = np.inf
    converged = False
    for x0 in starts:
        res = optimize.minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"maxfev": per_run, "xatol": 1e-8, "fatol": 1e-10},
        )
        best = min(best, float(res.fun))
        converged |= bool(res.success)
    best = min(best, objective(starts[0]), objective(starts[1]))
    if not converged and best > tol:
        raise BudgetExceeded(f"minimizer did not stabilize within {budget} evaluations")
    return best


def unitize(alg: Algebra) -> Algebra:
    """Adjoin an identity to a non-unital algebra.

    Pairs (a, x) are realized in M_{n+1} as blockdiag(a + x I_n, x), so the
    pair product (a, x)(b, y) = (ab + xb + ya, xy) is plain matrix
    multiplication and the embedding a -> (a, 0) is isometric for the
    ambient operator norm.  Already-unital input is returned unchanged with
    a warning.
    """
    if alg.unital:
        warnings.warn("algebra is already unital; returning it unchanged", stacklevel=2)
        return alg
    n = alg.ambient_dim
    cands = [unitize_embed(b, 0.0, n) for b in alg.basis]
    cands.append(np.eye(n + 1, dtype=complex))
    return _build_algebra(cands, alg.real_field)


def unitize_embed(a, x, n: int | None = None) -> np.ndarray:
    """Realize the pair (a, x) as blockdiag(a + x I_n, x) in M_{n+1}."""
    a = linalg.as_matrix(a)
    n = a.shape[0] if n is None else n
    out = np.zeros((n + 1, n + 1), dtype=complex)
    out[:n, :n] = a + complex(x) * np.eye(n)
    out[n, n] = complex(x)
    return out


def unitization_one_norm(m) -> float:
    """Companion norm ||(a, x)||_1 = ||a|| + |x| on unitization matrices."""
    m = linalg.as_matrix(m)
    n = m.shape[0] - 1
    x = m[n, n]
    a = m[:n, :n] - x * np.eye(n)
    return linalg.op_norm(a) + abs(x)


def complexify(alg: Algebra) -> Algebra:
    """Extend a real algebra to complex scalars; pairs (a, b) become a + i b."""
    if not alg.real_field:
        raise NotRealAlgebra("complexify expects an algebra flagged real")
    return _build_algebra([b.copy() for b in alg.basis], real_field=False)


def pair_element(calg: Algebra, a, b) -> Element:
    """The element (a, b) = a + i b of a complexified algebra."""
    return Element(calg, linalg.as_matrix(a) + 1j * linalg.as_matrix(b))


def left_regular_matrix(alg: Algebra, m: np.ndarray) -> np.ndarray:
    """Coordinate matrix of left multiplication by m on the algebra."""
    cols = [alg.coords(m @ b) for b in alg.basis]
    return np.stack(cols, axis=1)


def pair_regular_norm(calg: Algebra, a, b) -> float:
    """Left-regular-representation norm ||S_a + i S_b|| of the pair (a, b).

    A secondary report value: it can differ from the ambient operator norm
    of a + i b on algebras that are not C*-subalgebras.
    """
    m = linalg.as_matrix(a) + 1j * linalg.as_matrix(b)
    return linalg.op_norm(left_regular_matrix(calg, m))


def direct_sum_algebras(a: Algebra, b: Algebra) -> Algebra:
    """Block-diagonal sum; the block norm is the max of the block norms."""
    na, nb = a.ambient_dim, b.ambient_dim
    cands = []
    for x in a.basis:
        m = np.zeros((na + nb, na + nb), dtype=complex)
        m[:na, :na] = x
        cands.append(m)
    for y in b.basis:
        m = np.zeros((na + nb, na + nb), dtype=complex)
        m[na:, na:] = y
        cands.append(m)
    return _build_algebra(cands, a.real_field and b.real_field)
