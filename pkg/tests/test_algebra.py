"""Tests for base algebras, Hom-Leibniz algebras and representations."""

import pytest

from hlr_toolkit.algebra import (
    TWISTED_BILINEAR_NOTE,
    AModuleStructure,
    CommAlgebra,
    HomLeibnizAAlgebra,
    HomLeibnizAlgebra,
    adjoint_representation,
    check_hla_homomorphism,
    is_phi_derivation,
    left_leibniz_defect,
    validate_comm_algebra,
    validate_hom_leibniz,
    validate_hom_leibniz_a_algebra,
    validate_module,
    validate_representation,
)
from hlr_toolkit.errors import BaseMismatchError, ShapeError
from hlr_toolkit.library import (
    dual_numbers,
    dxmod_rank1,
    leibniz_dim2,
    leibniz_dim2_hlr,
)
from hlr_toolkit.linalg import Bilinear, Matrix


def _idempotent_line() -> HomLeibnizAlgebra:
    """``[e1, e1] = e1``, which is not Leibniz."""
    return HomLeibnizAlgebra(1, Bilinear.from_nested([[[1]]], 1, 1), Matrix.identity(1))


def test_scalars_and_dual_numbers_are_valid() -> None:
    """Test the library base algebras pass all checks."""
    assert validate_comm_algebra(CommAlgebra.scalars()).is_valid
    assert validate_comm_algebra(dual_numbers()).is_valid


def test_noncommutative_product_is_reported() -> None:
    """Test that a product with e1.e2 != e2.e1 fails COMM."""
    mul = Bilinear.from_nested([[[0, 1], [0, 0]], [[0, 0], [0, 0]]], 2, 2)
    report = validate_comm_algebra(CommAlgebra(2, mul, Matrix.identity(2)))
    assert "COMM" in report.tags()
    first = report.only("COMM").failures[0]
    assert first.witness == (("f", 0), ("g", 1))


def test_wrong_unit_is_reported() -> None:
    """Test the unit check on the dual numbers with x declared as unit."""
    a = dual_numbers()
    broken = CommAlgebra(a.dim, a.mul, a.phi, a.basis()[1])
    assert "UNIT" in validate_comm_algebra(broken).tags()


def test_phi_derivations_of_dual_numbers() -> None:
    """Test x d/dx is a derivation of Q[x]/(x^2) while d/dx is not."""
    a = dual_numbers()
    assert is_phi_derivation(Matrix.diagonal([0, 1]), a).is_valid
    report = is_phi_derivation(Matrix.from_rows([[0, 1], [0, 0]]), a)
    assert report.tags() == ["PHI-DER"]
    assert report.failures[0].witness == (("f", 1), ("g", 1))
    with pytest.raises(ShapeError):
        is_phi_derivation(Matrix.identity(3), a)


def test_leibniz_dim2_is_hom_leibniz() -> None:
    """Test the non-Lie Leibniz algebra passes with alpha = id."""
    assert validate_hom_leibniz(leibniz_dim2()).is_valid
    assert left_leibniz_defect(leibniz_dim2()) == []


def test_hom_jacobi_failure_has_witness() -> None:
    """Test the idempotent line fails the Hom-Jacobi identity at (e1, e1, e1)."""
    algebra = _idempotent_line()
    report = validate_hom_leibniz(algebra)
    assert "HJ" in report.tags()
    failure = report.only("HJ").failures[0]
    assert failure.witness == (("x", 0), ("y", 0), ("z", 0))
    assert failure.render() == "[HJ] x=e1, y=e1, z=e1: lhs=(1) rhs=(2)"
    assert left_leibniz_defect(algebra) == [(0, 0, 0)]


def test_non_multiplicative_alpha() -> None:
    """Test alpha = diag(1, 2) does not respect [e2, e2] = e1."""
    algebra = leibniz_dim2()
    twisted = HomLeibnizAlgebra(2, algebra.bracket, Matrix.diagonal([1, 2]))
    assert "MULT" in validate_hom_leibniz(twisted).tags()
    multiplicative = HomLeibnizAlgebra(2, algebra.bracket, Matrix.diagonal([4, 2]))
    assert validate_hom_leibniz(multiplicative).is_valid


def test_singular_alpha_fails_regularity() -> None:
    """Test the regularity check on a rank-deficient twist."""
    report = validate_hom_leibniz(HomLeibnizAlgebra.abelian(2, Matrix.diagonal([1, 0])))
    assert report.tags() == ["REG"]


def test_shape_checks_on_construction() -> None:
    """Test inconsistent dimensions are rejected when objects are built."""
    with pytest.raises(ShapeError):
        HomLeibnizAlgebra(2, leibniz_dim2().bracket, Matrix.identity(3))
    with pytest.raises(ShapeError):
        HomLeibnizAAlgebra(leibniz_dim2(), AModuleStructure.scaling(3))


def test_module_checks() -> None:
    """Test scaling is a module and a non-unital action fails MOD-UNIT."""
    assert validate_module(AModuleStructure.scaling(2)).is_valid
    lazy = AModuleStructure.trivial(CommAlgebra.scalars(), 2)
    assert validate_module(lazy).tags() == ["MOD-UNIT"]


def test_adjoint_representation_is_valid() -> None:
    """Test the adjoint representation of the Leibniz algebra."""
    algebra = leibniz_dim2()
    assert validate_representation(algebra, adjoint_representation(algebra)).is_valid


def test_hom_leibniz_a_algebra_carries_note() -> None:
    """Test the twisted bilinear reading is recorded on the report."""
    algebra = leibniz_dim2_hlr().as_hom_leibniz_a_algebra()
    report = validate_hom_leibniz_a_algebra(algebra)
    assert report.is_valid
    assert TWISTED_BILINEAR_NOTE in report.notes


def test_anchored_bracket_is_not_a_plain_a_algebra() -> None:
    """Test [d, x.d] = x.d fails right A-linearity without an anchor."""
    hlr = dxmod_rank1()
    report = validate_hom_leibniz_a_algebra(HomLeibnizAAlgebra(hlr.carrier, hlr.module))
    assert "HLA-RIGHT" in report.tags()


def test_hla_homomorphisms() -> None:
    """Test the identity passes and a rescaling breaks the bracket."""
    hla = leibniz_dim2_hlr().as_hom_leibniz_a_algebra()
    assert check_hla_homomorphism(Matrix.identity(2), hla, hla).is_valid
    report = check_hla_homomorphism(Matrix.diagonal([1, 2]), hla, hla)
    assert report.tags() == ["HOM-BRACKET"]
    with pytest.raises(ShapeError):
        check_hla_homomorphism(Matrix.identity(3), hla, hla)


def test_hla_homomorphism_base_mismatch() -> None:
    """Test maps between algebras over different bases are refused."""
    hlr = dxmod_rank1()
    over_dual = HomLeibnizAAlgebra(hlr.carrier, hlr.module)
    over_q = leibniz_dim2_hlr().as_hom_leibniz_a_algebra()
    with pytest.raises(BaseMismatchError):
        check_hla_homomorphism(Matrix.identity(2), over_dual, over_q)
