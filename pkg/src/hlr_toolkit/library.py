"""Built-in example instances.

Every registered example passes its validator; the names are what
``hlr examples`` lists and what the test suite sweeps over.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List

from .action import LRSAction
from .algebra import (
    AModuleStructure,
    CommAlgebra,
    HomLeibnizAAlgebra,
    HomLeibnizAlgebra,
)
from .cat1 import Cat1Algebra, Cat1Morphism, cm_to_cat1
from .category import CMLMorphism, CrossedLModule, adjoint_module, make_crossed_l_module
from .crossed import CMMorphism, CrossedModule
from .errors import HLRError
from .linalg import Bilinear, Matrix, to_vector
from .rinehart import HLRAlgebra, yau_twist
from .serialization import AlgebraDocument, TypedMorphism, to_document

logger = logging.getLogger(__name__)


def q_trivial() -> CommAlgebra:
    """The ground field with ``phi = id``."""
    return CommAlgebra.scalars()


def leibniz_dim2() -> HomLeibnizAlgebra:
    """Non-Lie Leibniz algebra ``[e2, e2] = e1``, ``alpha = id``."""
    return HomLeibnizAlgebra(
        2,
        Bilinear.from_nested([[[0, 0], [0, 1]], [[0, 0], [0, 0]]], 2, 2),
        Matrix.identity(2),
    )


def leibniz_dim2_hlr() -> HLRAlgebra:
    """``leibniz_dim2`` over ``Q`` with zero anchors."""
    return HLRAlgebra.with_zero_anchors(leibniz_dim2(), AModuleStructure.scaling(2))


def yau_twisted_dim2() -> HLRAlgebra:
    """``leibniz_dim2`` twisted along ``alpha = diag(4, 2)``: ``[e2, e2] = 4 e1``."""
    return yau_twist(leibniz_dim2_hlr(), Matrix.diagonal([4, 2]), Matrix.identity(1))


def dual_numbers() -> CommAlgebra:
    """``Q[x]/(x^2)`` on the basis ``(1, x)`` with ``phi = id``."""
    mul = Bilinear.from_nested([[[1, 0], [0, 0]], [[0, 1], [1, 0]]], 2, 2)
    return CommAlgebra(2, mul, Matrix.identity(2), to_vector([1, 0]))


def dxmod_rank1() -> HLRAlgebra:
    """``L = A.d`` over ``A = Q[x]/(x^2)`` on the basis ``(d, x.d)``.

    ``[d, x.d] = x.d``, left anchor ``rho(d) = x d/dx``, ``rho(x.d) = 0`` and
    zero right anchor.
    """
    base = dual_numbers()
    module = AModuleStructure(
        base, 2, Bilinear.from_nested([[[1, 0], [0, 0]], [[0, 1], [1, 0]]], 2, 2)
    )
    carrier = HomLeibnizAlgebra(
        2,
        Bilinear.from_nested([[[0, 0], [0, 0]], [[0, 1], [0, 0]]], 2, 2),
        Matrix.identity(2),
    )
    zero = Matrix.zeros(2, 2)
    return HLRAlgebra(carrier, module, (Matrix.diagonal([0, 1]), zero), (zero, zero))


def _abelian_over(
    base: CommAlgebra, alpha: Matrix, action: Bilinear
) -> HomLeibnizAAlgebra:
    n = alpha.rows
    return HomLeibnizAAlgebra(
        HomLeibnizAlgebra.abelian(n, alpha), AModuleStructure(base, n, action)
    )


def _scalar_line(alpha: int = 1) -> HomLeibnizAAlgebra:
    return _abelian_over(
        CommAlgebra.scalars(),
        Matrix.diagonal([alpha]),
        AModuleStructure.scaling(1).action,
    )


def crossed_trivial() -> CrossedModule:
    """Abelian lines, trivial action, zero boundary."""
    actor = HLRAlgebra.with_zero_anchors(
        HomLeibnizAlgebra.abelian(1), AModuleStructure.scaling(1)
    )
    target = _scalar_line()
    return CrossedModule(LRSAction.trivial(actor, target), Matrix.zeros(1, 1))


def crossed_ideal() -> CrossedModule:
    """``span{e1}`` inside ``leibniz_dim2``; the ambient bracket acts by zero."""
    actor = leibniz_dim2_hlr()
    return CrossedModule(
        LRSAction.trivial(actor, _scalar_line()), Matrix.from_rows([[1], [0]])
    )


def crossed_ideal_cm1_mutated() -> CrossedModule:
    """``crossed_ideal`` with the boundary sent to ``e2``; breaks CM1."""
    cm = crossed_ideal()
    return CrossedModule(cm.action, Matrix.from_rows([[0], [1]]))


def crossed_dxmod() -> CrossedModule:
    """``Q.m`` with ``x.m = 0``, ``d > m = m`` and boundary ``m -> x.d``."""
    actor = dxmod_rank1()
    target = _abelian_over(
        actor.base, Matrix.identity(1), Bilinear.from_nested([[[1], [0]]], 2, 1)
    )
    left = Bilinear.from_nested([[[1], [0]]], 2, 1)
    right = Bilinear.zeros(1, 2, 1)
    return CrossedModule(
        LRSAction(actor, target, left, right), Matrix.from_rows([[0], [1]])
    )


def crossed_yau_twisted() -> CrossedModule:
    """A line with ``alpha_M = 4`` over ``yau_twisted_dim2``, zero boundary."""
    actor = yau_twisted_dim2()
    return CrossedModule(LRSAction.trivial(actor, _scalar_line(4)), Matrix.zeros(2, 1))


def crossed_yau_ideal() -> CrossedModule:
    """``span{e1}`` inside ``yau_twisted_dim2`` with ``alpha_M = 4``.

    Valid, but ``(alpha_M, alpha_L)`` does not undo its round trip since
    ``alpha_L d alpha_M != d alpha_M``.
    """
    actor = yau_twisted_dim2()
    return CrossedModule(
        LRSAction.trivial(actor, _scalar_line(4)), Matrix.from_rows([[1], [0]])
    )


def crossed_adjoint() -> CrossedModule:
    """``leibniz_dim2`` acting on itself, identity boundary."""
    return adjoint_module(leibniz_dim2_hlr()).cm


def action_dxmod_ideal() -> LRSAction:
    return crossed_dxmod().action


def cat1_from_crossed_ideal() -> Cat1Algebra:
    return cm_to_cat1(crossed_ideal())


# Crossed L-modules over leibniz_dim2_hlr


def ideal_module() -> CrossedLModule:
    cm = crossed_ideal()
    return CrossedLModule(cm.actor, cm)


def kernel_line_module() -> CrossedLModule:
    """A line with trivial action and zero boundary."""
    base = leibniz_dim2_hlr()
    return make_crossed_l_module(
        base,
        _scalar_line(),
        Bilinear.zeros(2, 1, 1),
        Bilinear.zeros(1, 2, 1),
        Matrix.zeros(2, 1),
    )


def twisted_plane_module() -> CrossedLModule:
    """``Q^2`` with ``alpha = diag(1, 2)``, trivial action and zero boundary."""
    base = leibniz_dim2_hlr()
    plane = _abelian_over(
        CommAlgebra.scalars(),
        Matrix.diagonal([1, 2]),
        AModuleStructure.scaling(2).action,
    )
    return make_crossed_l_module(
        base,
        plane,
        Bilinear.zeros(2, 2, 2),
        Bilinear.zeros(2, 2, 2),
        Matrix.zeros(2, 2),
    )


def morphism_cm_identity() -> TypedMorphism:
    cm = crossed_ideal()
    iso = CMMorphism(Matrix.identity(cm.target.dim), Matrix.identity(cm.actor.dim))
    return TypedMorphism("crossed-module", iso, cm, cm)


def morphism_cml_inclusion() -> TypedMorphism:
    """``span{e1} -> L`` from the ideal module into the adjoint module."""
    source = ideal_module()
    target = adjoint_module(source.base)
    lam = CMLMorphism(source, target, Matrix.from_rows([[1], [0]]))
    return TypedMorphism("crossed-l-module", lam, source, target)


def morphism_cml_twisted_plane_alpha() -> TypedMorphism:
    plane = twisted_plane_module()
    lam = CMLMorphism(plane, plane, plane.module.alpha)
    return TypedMorphism("crossed-l-module", lam, plane, plane)


def morphism_cat1_identity() -> TypedMorphism:
    c = cat1_from_crossed_ideal()
    return TypedMorphism("cat1", Cat1Morphism(Matrix.identity(c.source.dim)), c, c)


@dataclass(frozen=True)
class Example:
    """A named library instance."""

    name: str
    description: str
    build: Callable[[], Any]


EXAMPLES: List[Example] = [
    Example("Q-trivial", "the ground field, phi = id", q_trivial),
    Example("leibniz-dim2", "Leibniz algebra [e2, e2] = e1", leibniz_dim2),
    Example("yau-twisted-dim2", "leibniz-dim2 twisted by diag(4, 2)", yau_twisted_dim2),
    Example("dxmod-rank1", "A.d over Q[x]/(x^2) with anchor x d/dx", dxmod_rank1),
    Example("crossed-trivial", "trivial action, zero boundary", crossed_trivial),
    Example("crossed-ideal", "ideal span{e1} of leibniz-dim2", crossed_ideal),
    Example(
        "crossed-ideal-cm1-mutated",
        "crossed-ideal with boundary e2 (fails CM1)",
        crossed_ideal_cm1_mutated,
    ),
    Example(
        "crossed-dxmod", "line acted on by dxmod-rank1, boundary x.d", crossed_dxmod
    ),
    Example(
        "crossed-yau-twisted",
        "twisted line over yau-twisted-dim2",
        crossed_yau_twisted,
    ),
    Example("crossed-adjoint", "leibniz-dim2 acting on itself", crossed_adjoint),
    Example("action-dxmod-ideal", "the action of crossed-dxmod", action_dxmod_ideal),
    Example(
        "cat1-from-crossed-ideal",
        "cat1 algebra of crossed-ideal",
        cat1_from_crossed_ideal,
    ),
    Example(
        "crossed-twisted-plane",
        "Q^2 with alpha = diag(1, 2), zero boundary",
        lambda: twisted_plane_module().cm,
    ),
    Example("morphism-cm-identity", "identity of crossed-ideal", morphism_cm_identity),
    Example(
        "morphism-cml-inclusion",
        "ideal module into the adjoint module",
        morphism_cml_inclusion,
    ),
    Example(
        "morphism-cml-twisted-plane-alpha",
        "alpha of crossed-twisted-plane as an endomorphism",
        morphism_cml_twisted_plane_alpha,
    ),
    Example(
        "morphism-cat1-identity",
        "identity of cat1-from-crossed-ideal",
        morphism_cat1_identity,
    ),
]

_BY_NAME: Dict[str, Example] = {example.name: example for example in EXAMPLES}

# Registered but expected to fail validation.
INVALID_EXAMPLES = ("crossed-ideal-cm1-mutated",)


def example_names() -> List[str]:
    return [example.name for example in EXAMPLES]


def build_example(name: str) -> Any:
    """Build the object of a named example.

    Raises:
        HLRError: If the name is unknown
    """
    if name not in _BY_NAME:
        raise HLRError(
            f"unknown example {name!r}; try one of {', '.join(example_names())}"
        )
    logger.debug(f"Building example {name}")
    return _BY_NAME[name].build()


def load_example(name: str) -> AlgebraDocument:
    """The canonical document of a named example."""
    return to_document(build_example(name))


def describe(name: str) -> str:
    return _BY_NAME[name].description
