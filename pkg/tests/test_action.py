"""Tests for actions and semi-direct products."""

import pytest

from hlr_toolkit.action import (
    HomAction,
    LRSAction,
    actor_inclusion,
    adjoint_action,
    check_semidirect_equivalence,
    semidirect,
    target_inclusion,
    validate_hom_action,
    validate_lrs_action,
)
from hlr_toolkit.algebra import AModuleStructure, HomLeibnizAAlgebra, HomLeibnizAlgebra
from hlr_toolkit.errors import BaseMismatchError, ShapeError
from hlr_toolkit.library import action_dxmod_ideal, dxmod_rank1, leibniz_dim2_hlr
from hlr_toolkit.linalg import Bilinear, Matrix, to_vector
from hlr_toolkit.rinehart import check_hlr_homomorphism, validate_hlr


def _line() -> HomLeibnizAAlgebra:
    return HomLeibnizAAlgebra(HomLeibnizAlgebra.abelian(1), AModuleStructure.scaling(1))


def _central_element_acts() -> LRSAction:
    """``[e1, m] = m`` although ``e1 = [e2, e2]``."""
    return LRSAction(
        leibniz_dim2_hlr(),
        _line(),
        Bilinear.from_nested([[[1], [0]]], 2, 1),
        Bilinear.zeros(1, 2, 1),
    )


def test_library_action_is_valid() -> None:
    """Test the dual-number action and its semi-direct product."""
    act = action_dxmod_ideal()
    report = validate_lrs_action(act)
    assert report.is_valid, report.render_text()
    product_algebra = semidirect(act)
    assert product_algebra.dim == 3
    assert validate_hlr(product_algebra).is_valid


def test_adjoint_action_is_valid() -> None:
    """Test the Leibniz algebra acting on itself."""
    assert validate_lrs_action(adjoint_action(leibniz_dim2_hlr())).is_valid


def test_action_failure_is_tagged() -> None:
    """Test a central element acting nontrivially breaks the left Leibniz law."""
    report = validate_lrs_action(_central_element_acts())
    assert report.tags() == ["A13"]
    assert report.failures[0].witness == (("x", 1), ("y", 1), ("m", 0))


def test_semidirect_equivalence_agrees() -> None:
    """Test both sides agree for a valid and an invalid action."""
    good_action, good_product = check_semidirect_equivalence(action_dxmod_ideal())
    assert good_action.is_valid and good_product.is_valid
    bad_action, bad_product = check_semidirect_equivalence(_central_element_acts())
    assert not bad_action.is_valid
    assert not bad_product.is_valid


def test_semidirect_bracket_blocks() -> None:
    """Test the mixed brackets use the action with alpha on the actor."""
    product_algebra = semidirect(_central_element_acts())
    e1, e3 = to_vector([1, 0, 0]), to_vector([0, 0, 1])
    assert product_algebra.carrier.bracket_of(e1, e3) == e3
    assert product_algebra.carrier.bracket_of(e3, e1) == to_vector([0, 0, 0])
    assert product_algebra.alpha.is_identity()


def test_inclusions_are_homomorphisms() -> None:
    """Test the actor includes into the semi-direct product."""
    act = action_dxmod_ideal()
    product_algebra = semidirect(act)
    inclusion = actor_inclusion(act)
    assert check_hlr_homomorphism(inclusion, act.actor, product_algebra).is_valid
    assert target_inclusion(act) == Matrix.from_rows([[0], [0], [1]])


def test_action_shapes_and_bases() -> None:
    """Test action shapes are checked and bases must agree."""
    line = _line()
    with pytest.raises(ShapeError):
        HomAction(
            leibniz_dim2_hlr().carrier,
            line.carrier,
            Bilinear.zeros(1, 1, 1),
            Bilinear.zeros(1, 2, 1),
        )
    mismatched = LRSAction.trivial(
        dxmod_rank1(), leibniz_dim2_hlr().as_hom_leibniz_a_algebra()
    )
    with pytest.raises(BaseMismatchError):
        validate_lrs_action(mismatched)
    with pytest.raises(BaseMismatchError):
        semidirect(mismatched)


def test_trivial_hom_action() -> None:
    """Test the zero action is always a Hom-action."""
    twisted_line = HomLeibnizAlgebra.abelian(1, Matrix.diagonal([3]))
    act = HomAction.trivial(leibniz_dim2_hlr().carrier, twisted_line)
    assert validate_hom_action(act).is_valid
