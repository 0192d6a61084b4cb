"""Matrix kernel: adjoints, eigendecompositions, norms, inverses, null spaces."""

import numpy as np
import pytest

from conftest import rand_hermitian, rand_matrix
from cstarkit import linalg
from cstarkit.errors import NotHermitian, Singular


class TestAdjoint:
    def test_real_transpose(self):
        out = linalg.adjoint([[0, 1], [0, 0]])
        assert np.array_equal(out, np.array([[0, 0], [1, 0]], dtype=complex))

    def test_conjugates_diagonal(self):
        out = linalg.adjoint([[1j]])
        assert out[0, 0] == -1j

    def test_involution_on_random(self):
        rng = np.random.default_rng(101)
        m = rand_matrix(rng, 4)
        assert np.array_equal(linalg.adjoint(linalg.adjoint(m)), m)


class TestHermEig:
    def test_diagonal_input_sorted(self):
        w, _ = linalg.herm_eig(np.diag([3.0, 1.0]))
        assert np.allclose(w, [1.0, 3.0])

    def test_positive_example_eigenvalues(self):
        w, _ = linalg.herm_eig([[25.0, 40.0], [40.0, 65.0]])
        assert abs(w[0] - 0.28) < 0.005
        assert abs(w[1] - 89.72) < 0.005

    def test_reconstruction_residual(self):
        rng = np.random.default_rng(102)
        m = rand_hermitian(rng, 6)
        w, v = linalg.herm_eig(m)
        assert np.linalg.norm(v.conj().T @ v - np.eye(6)) < 1e-12
        assert np.linalg.norm(m @ v - v @ np.diag(w)) <= 1e-10 * linalg.op_norm(m)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            linalg.herm_eig([[0.0, 1.0], [0.0, 0.0]])


class TestOpNorm:
    def test_upper_triangular_value(self):
        assert abs(linalg.op_norm([[1.0, 1.0], [0.0, 2.0]]) - np.sqrt(3 + np.sqrt(5))) < 1e-12

    def test_identity(self):
        assert linalg.op_norm(np.eye(3)) == pytest.approx(1.0)

    def test_nilpotent_unit(self):
        assert linalg.op_norm([[0.0, 1.0], [0.0, 0.0]]) == pytest.approx(1.0)


class TestInvert:
    def test_identity(self):
        assert np.allclose(linalg.invert(np.eye(2)), np.eye(2))

    def test_multiply_back(self):
        m = np.array([[1.0, 1.0], [0.0, 2.0]])
        inv = linalg.invert(m)
        assert np.allclose(inv, [[1.0, -0.5], [0.0, 0.5]])
        assert np.allclose(m @ inv, np.eye(2), atol=1e-12)
        assert np.allclose(inv @ m, np.eye(2), atol=1e-12)

    def test_singular_nilpotent(self):
        with pytest.raises(Singular):
            linalg.invert([[0.0, 1.0], [0.0, 0.0]])


class TestEigGeneral:
    def test_integer_spectrum(self):
        eigs = sorted(linalg.eig_general([[3.0, 2.0], [1.0, 4.0]]), key=lambda z: z.real)
        assert abs(eigs[0] - 2.0) < 1e-10 and abs(eigs[1] - 5.0) < 1e-10

    def test_rotation_spectrum(self):
        eigs = sorted(linalg.eig_general([[0.0, -1.0], [1.0, 0.0]]), key=lambda z: z.imag)
        assert abs(eigs[0] + 1j) < 1e-10 and abs(eigs[1] - 1j) < 1e-10

    def test_triangular_uses_diagonal(self):
        eigs = linalg.eig_general([[7.0, 3.0], [0.0, 9.0]])
        assert set(eigs) == {7.0 + 0j, 9.0 + 0j}


class TestNullBasis:
    def test_zero_matrix_full_null(self):
        assert len(linalg.null_basis(np.zeros((3, 3)))) == 3

    def test_identity_empty(self):
        assert linalg.null_basis(np.eye(3)) == []

    def test_rank_one_projector(self):
        p = np.array([[1.0, 0.0], [0.0, 0.0]])
        vecs = linalg.null_basis(p)
        assert len(vecs) == 1
        assert np.linalg.norm(p @ vecs[0]) <= 1e-9


class TestNormInvariants:
    def test_adjoint_preserves_norm(self):
        rng = np.random.default_rng(103)
        for _ in range(20):
            m = rand_matrix(rng, 4)
            assert abs(linalg.op_norm(linalg.adjoint(m)) - linalg.op_norm(m)) <= 1e-9

    def test_cstar_axiom(self):
        rng = np.random.default_rng(104)
        for _ in range(20):
            m = rand_matrix(rng, 4)
            nrm = linalg.op_norm(m)
            assert abs(linalg.op_norm(linalg.adjoint(m) @ m) - nrm**2) <= 1e-9 * nrm**2

    def test_submultiplicative(self):
        rng = np.random.default_rng(105)
        for _ in range(20):
            a, b = rand_matrix(rng, 4), rand_matrix(rng, 4)
            assert linalg.op_norm(a @ b) <= linalg.op_norm(a) * linalg.op_norm(b) + 1e-9

    def test_herm_eig_matches_general(self):
        rng = np.random.default_rng(106)
        for _ in range(10):
            m = rand_hermitian(rng, 5)
            w, _ = linalg.herm_eig(m)
            general = np.sort(linalg.eig_general(m).real)
            assert np.max(np.abs(w - general)) <= 1e-8
