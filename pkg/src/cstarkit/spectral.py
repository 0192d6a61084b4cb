"""Spectra, spectral radius limits, exponentials and functional calculus.

Spectra are always the ambient-matrix eigenvalues, deduplicated with a
clustering radius of 1e-7 * (1 + radius); for elements of non-unital
algebras this matches the convention of passing to the unitization.  The
real field mode filters to (numerically) real eigenvalues and may yield
the empty set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla

from . import linalg
from .algebra import Element
from .errors import (
    NotContractive,
    NotNormal,
    NotPositive,
    NotUnital,
    SingularResolvent,
)

CLUSTER_SCALE = 1e-7


@dataclass(frozen=True)
class SpectrumReport:
    points: tuple[complex, ...]
    radius: float
    field_mode: str


@dataclass(frozen=True)
class RadiusTrace:
    """Pairs (n, ||a^n||^(1/n)) along n = 1, 2, 4, ... plus the final estimate."""

    powers: tuple[int, ...]
    values: tuple[float, ...]
    estimate: float
    eigen_radius: float

    @property
    def gap(self) -> float:
        return abs(self.estimate - self.eigen_radius)


@dataclass(frozen=True)
class ElementFlags:
    hermitian: bool
    unitary: bool
    normal: bool
    positive: bool


@dataclass(frozen=True)
class CommutatorReport:
    trace_value: complex
    lambda_candidate: complex
    scalar_residual: float
    scalar_commutator: bool


def clustering_radius(values: np.ndarray) -> float:
    peak = float(np.max(np.abs(values))) if len(values) else 0.0
    return CLUSTER_SCALE * (1.0 + peak)


def _dedupe(values: np.ndarray) -> tuple[list[complex], float]:
    """Cluster eigenvalues; returns representatives (cluster means) and the radius."""
    radius = clustering_radius(values)
    order = sorted(values, key=lambda z: (z.real, z.imag))
    clusters: list[list[complex]] = []
    for z in order:
        placed = False
        for cl in clusters:
            mean = sum(cl) / len(cl)
            if abs(z - mean) <= radius:
                cl.append(z)
                placed = True
                break
        if not placed:
            clusters.append([z])
    return [sum(cl) / len(cl) for cl in clusters], radius


def _matrix_of(a) -> np.ndarray:
    return a.matrix if isinstance(a, Element) else linalg.as_matrix(a)


def _identity_of(a: Element) -> np.ndarray:
    """The unit the element sees: algebra identity, or ambient I_n."""
    if isinstance(a, Element) and a.algebra is not None and a.algebra.unital:
        return a.algebra.identity_matrix
    n = _matrix_of(a).shape[0]
    return np.eye(n, dtype=complex)


def spectrum(a, field_mode: str = "complex") -> SpectrumReport:
    """Eigenvalue spectrum of the element, deduplicated.

    Real mode keeps only eigenvalues with |Im| below the clustering radius
    and may return an empty report (radius 0).
    """
    if field_mode not in ("real", "complex"):
        raise ValueError(f"field_mode must be 'real' or 'complex', got {field_mode!r}")
    eigs = linalg.eig_general(_matrix_of(a))
    points, radius = _dedupe(eigs)
    if field_mode == "real":
        points = [complex(z.real, 0.0) for z in points if abs(z.imag) <= radius]
    rad = max((abs(z) for z in points), default=0.0)
    return SpectrumReport(tuple(points), rad, field_mode)


def resolvent(a: Element, z: complex, tol: float = 1e-9) -> Element:
    """(a - z 1)^{-1}, solved inside the owning algebra when one is attached."""
    m = a.matrix
    eigs = linalg.eig_general(m)
    if len(eigs) and np.min(np.abs(eigs - z)) <= clustering_radius(eigs):
        raise SingularResolvent(f"{z} is within the clustering radius of the spectrum")
    alg = a.algebra
    if alg is not None and alg.unital:
        from .algebra import left_regular_matrix

        shifted = m - z * alg.identity_matrix
        lmat = left_regular_matrix(alg, shifted)
        try:
            x = np.linalg.solve(lmat, alg.identity_coords)
        except np.linalg.LinAlgError as exc:
            raise SingularResolvent(str(exc)) from exc
        return Element(alg, alg.from_coords(x))
    inv = linalg.invert(m - z * np.eye(m.shape[0]), tol)
    return Element(None, inv)


def spectral_radius_limit(a, n_max: int = 1024) -> RadiusTrace:
    """Trace of ||a^n||^(1/n) by repeated squaring, evaluated in the log domain.

    Log-scale accumulation keeps ||a^n|| representable for any n, so the
    trace always completes; the values are monotone non-increasing along
    the doubling sequence.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    m = _matrix_of(a)
    eigen_radius = float(np.max(np.abs(linalg.eig_general(m)))) if m.size else 0.0
    powers: list[int] = []
    values: list[float] = []
    nrm = linalg.op_norm(m)
    powers.append(1)
    values.append(nrm)
    if nrm == 0.0:
        return RadiusTrace((1,), (0.0,), 0.0, eigen_radius)
    w = m / nrm
    log_norm = math.log(nrm)
    n = 1
    while 2 * n <= n_max:
        v = w @ w
        vn = linalg.op_norm(v)
        n *= 2
        log_norm = 2.0 * log_norm + (math.log(vn) if vn > 0.0 else -math.inf)
        powers.append(n)
        if vn == 0.0:
            values.append(0.0)
            return RadiusTrace(tuple(powers), tuple(values), 0.0, eigen_radius)
        values.append(math.exp(log_norm / n))
        w = v / vn
    return RadiusTrace(tuple(powers), tuple(values), values[-1], eigen_radius)


def power_norm_root(a, n: int) -> float:
    """||a^n||^(1/n) at a single exponent n."""
    m = _matrix_of(a)
    return linalg.op_norm(np.linalg.matrix_power(m, n)) ** (1.0 / n)


def neumann_inverse(a: Element, tol: float = 1e-12) -> Element:
    """(1 - a)^{-1} by partial geometric sums; requires ||a|| < 1.

    Terms accumulate until the term norm drops below tol * (1 - ||a||),
    bounding the series tail by tol.
    """
    m = a.matrix
    nrm = linalg.op_norm(m)
    if nrm >= 1.0:
        raise NotContractive(f"operator norm {nrm:.6f} is not below 1")
    e = _identity_of(a)
    term = e.copy()
    total = e.copy()
    cutoff = tol * (1.0 - nrm)
    while linalg.op_norm(term) > cutoff:
        term = term @ m
        total += term
    alg = a.algebra if (a.algebra is not None and a.algebra.unital) else None
    return Element(alg, total)


def exp_element(a) -> Element:
    """Power-series exponential, computed by scaling and squaring.

    The input is scaled by 2^{-s} so its norm is at most 0.5, summed with
    20 series terms, then squared s times.
    """
    m = _matrix_of(a)
    nrm = linalg.op_norm(m)
    s = max(0, math.ceil(math.log2(nrm / 0.5))) if nrm > 0.5 else 0
    x = m / (2**s)
    n = m.shape[0]
    acc = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, 21):
        term = term @ x / k
        acc = acc + term
    for _ in range(s):
        acc = acc @ acc
    alg = None
    if isinstance(a, Element) and a.algebra is not None and a.algebra.unital:
        alg = a.algebra
    return Element(alg, acc)


def poly_apply(a, coeffs) -> Element:
    """Evaluate a polynomial (coefficients in ascending order) by Horner's rule."""
    m = _matrix_of(a)
    e = _identity_of(a)
    cs = [complex(c) for c in coeffs]
    if not cs:
        cs = [0.0 + 0.0j]
    acc = cs[-1] * e
    for c in reversed(cs[:-1]):
        acc = acc @ m + c * e
    alg = None
    if isinstance(a, Element) and a.algebra is not None and a.algebra.unital:
        alg = a.algebra
    return Element(alg, acc)


def classify(a, tol: float = 1e-9) -> ElementFlags:
    """Hermitian / unitary / normal / positive flags by residual tests."""
    m = _matrix_of(a)
    scale = linalg.op_norm(m)
    herm = linalg.hermitian_residual(m) <= tol
    adj = linalg.adjoint(m)
    norm_res = linalg.op_norm(m @ adj - adj @ m)
    normal = norm_res <= tol * max(1.0, scale**2)
    unitary = False
    has_unit = not (isinstance(a, Element) and a.algebra is not None and not a.algebra.unital)
    if has_unit:
        e = _identity_of(a)
        unitary = (
            linalg.op_norm(m @ adj - e) <= tol * max(1.0, scale**2)
            and linalg.op_norm(adj @ m - e) <= tol * max(1.0, scale**2)
        )
    positive = False
    if herm:
        w, _ = linalg.herm_eig(m, tol=max(tol, 1e-9))
        positive = bool(np.min(w) >= -tol * max(1.0, scale)) if w.size else True
    return ElementFlags(herm, unitary, normal, positive)


def sqrt_positive(a, tol: float = 1e-9) -> Element:
    """Hermitian square root of a positive element via its eigendecomposition."""
    if not classify(a, tol).positive:
        raise NotPositive("element is not positive (Hermitian with spectrum >= 0)")
    m = _matrix_of(a)
    w, v = linalg.herm_eig(m, tol)
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    alg = a.algebra if isinstance(a, Element) else None
    return Element(alg, root)


def func_calc(a, f, tol: float = 1e-9) -> Element:
    """Apply a scalar function to a normal element through diagonalization."""
    m = _matrix_of(a)
    if not classify(a, tol).normal:
        raise NotNormal("functional calculus requires a normal element")
    t, q = sla.schur(m, output="complex")
    lam = np.diag(t)
    fm = (q * np.array([complex(f(z)) for z in lam])) @ q.conj().T
    alg = a.algebra if isinstance(a, Element) else None
    if alg is not None and not alg.contains(fm, 1e-8):
        alg = None
    return Element(alg, fm)


def commutator_scalar_test(a: Element, b: Element, tol: float = 1e-9) -> CommutatorReport:
    """Test whether ab - ba is a scalar multiple of the identity.

    The trace of any commutator vanishes, so a scalar commutator forces
    the scalar to zero: there is no finite-dimensional pair with
    ab - ba = lambda 1 for nonzero lambda.
    """
    if isinstance(a, Element) and a.algebra is not None and not a.algebra.unital:
        raise NotUnital("commutator test requires a unital algebra")
    ma, mb = _matrix_of(a), _matrix_of(b)
    c = ma @ mb - mb @ ma
    n = c.shape[0]
    trace = complex(np.trace(c))
    lam = trace / n
    residual = linalg.op_norm(c - lam * np.eye(n))
    scale = max(1.0, linalg.op_norm(ma) * linalg.op_norm(mb))
    return CommutatorReport(trace, lam, residual, residual <= tol * scale)


def _hausdorff(p: list[complex], q: list[complex]) -> float:
    if not p and not q:
        return 0.0
    if not p or not q:
        return math.inf
    d1 = max(min(abs(x - y) for y in q) for x in p)
    d2 = max(min(abs(x - y) for y in p) for x in q)
    return max(d1, d2)


def spec_symmetry_check(a, b) -> float:
    """Hausdorff distance between the nonzero parts of spec(ab) and spec(ba)."""
    ma, mb = _matrix_of(a), _matrix_of(b)
    eab = linalg.eig_general(ma @ mb)
    eba = linalg.eig_general(mb @ ma)
    radius = clustering_radius(np.concatenate([eab, eba]))
    pab = [z for z in eab if abs(z) > radius]
    pba = [z for z in eba if abs(z) > radius]
    return _hausdorff(pab, pba)
