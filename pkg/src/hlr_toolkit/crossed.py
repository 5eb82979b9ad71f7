"""Crossed modules of Hom-Leibniz-Rinehart algebras and their morphisms."""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Tuple

from .action import LRSAction, adjoint_action, semidirect, validate_lrs_action
from .algebra import HomLeibnizAAlgebra, check_hla_homomorphism
from .errors import ShapeError
from .linalg import Matrix
from .report import ValidationReport
from .rinehart import HLRAlgebra, check_hlr_homomorphism, hla_as_hlr

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CrossedModule:
    """An action of ``L`` on ``M`` together with a boundary ``d: M -> L``."""

    action: LRSAction
    boundary: Matrix

    def __post_init__(self) -> None:
        expected = (self.action.actor.dim, self.action.target.dim)
        if self.boundary.shape != expected:
            raise ShapeError(
                f"boundary has shape {self.boundary.shape}, expected {expected}"
            )

    @property
    def actor(self) -> HLRAlgebra:
        return self.action.actor

    @property
    def target(self) -> HomLeibnizAAlgebra:
        return self.action.target


def crossed_module_axioms(cm: CrossedModule) -> ValidationReport:
    """Check the boundary axioms only.

    Returns:
        Report tagged CM0, CM1, CM2, CM3 and CM4
    """
    report = ValidationReport("crossed-module")
    L, M = cm.actor, cm.target
    d = cm.boundary
    left, right = cm.action.left.apply, cm.action.right.apply
    lb, mb = L.carrier.basis(), M.carrier.basis()
    images = d.columns()

    report.check_maps("CM0", (), L.alpha @ d, d @ M.alpha, role="m")
    for i, k in product(range(L.dim), range(M.dim)):
        report.check(
            "CM1",
            (("x", i), ("m", k)),
            d.apply(left(lb[i], mb[k])),
            L.carrier.bracket_of(lb[i], images[k]),
        )
        report.check(
            "CM1",
            (("m", k), ("x", i)),
            d.apply(right(mb[k], lb[i])),
            L.carrier.bracket_of(images[k], lb[i]),
        )
    for k, q in product(range(M.dim), repeat=2):
        w = (("m", k), ("n", q))
        mn = M.carrier.bracket_of(mb[k], mb[q])
        report.check("CM2", w, left(images[k], mb[q]), mn)
        report.check("CM2", w, right(mb[k], images[q]), mn)
    for a in range(L.base.dim):
        report.check_maps(
            "CM3",
            (("f", a),),
            d @ M.module.operators[a],
            L.module.operators[a] @ d,
            role="m",
        )
    zero = Matrix.zeros(L.base.dim, L.base.dim)
    for k, image in enumerate(images):
        report.check_maps(
            "CM4", (("side", 0), ("m", k)), L.anchor_l(image), zero, role="f"
        )
        report.check_maps(
            "CM4", (("side", 1), ("m", k)), L.anchor_r(image), zero, role="f"
        )
    return report


def validate_crossed_module(cm: CrossedModule) -> ValidationReport:
    """Boundary axioms plus the full validation of the underlying action."""
    report = crossed_module_axioms(cm)
    report.extend(validate_lrs_action(cm.action))
    return report


def check_boundary_homomorphisms(
    cm: CrossedModule,
) -> Tuple[ValidationReport, ValidationReport]:
    """Compare the boundary axioms with two homomorphisms of semi-direct products.

    The maps are ``(id, d): L x| M -> L x| L`` and ``(d, id): M x| M -> L x| M``,
    where ``L`` acts on itself and ``M`` on itself (zero anchors) by brackets.

    Returns:
        ``(boundary_report, homomorphism_report)``
    """
    L, M = cm.actor, cm.target
    d = cm.boundary
    l_on_m = semidirect(cm.action)
    l_on_l = semidirect(adjoint_action(L))
    m_as_hlr = hla_as_hlr(M)
    m_on_m = semidirect(LRSAction(m_as_hlr, M, M.bracket, M.bracket))

    hom_report = ValidationReport("boundary-homomorphisms")
    hom_report.extend(
        check_hlr_homomorphism(
            Matrix.block_diagonal(Matrix.identity(L.dim), d), l_on_m, l_on_l
        ),
        "(id,d)",
    )
    hom_report.extend(
        check_hlr_homomorphism(
            Matrix.block_diagonal(d, Matrix.identity(M.dim)), m_on_m, l_on_m
        ),
        "(d,id)",
    )
    return crossed_module_axioms(cm), hom_report


@dataclass(frozen=True)
class CMMorphism:
    """Morphism ``(Phi: M -> M', Psi: L -> L')`` of crossed modules."""

    phi_map: Matrix
    psi_map: Matrix

    def then(self, other: "CMMorphism") -> "CMMorphism":
        """Composite ``other o self``."""
        return CMMorphism(other.phi_map @ self.phi_map, other.psi_map @ self.psi_map)


def validate_cm_morphism(
    morphism: CMMorphism, source: CrossedModule, target: CrossedModule
) -> ValidationReport:
    """Check a crossed module morphism.

    Returns:
        Report tagged CMM-BOUNDARY, CMM-LEFT and CMM-RIGHT, with the
        Hom-Leibniz A-algebra laws of ``Phi`` under scope ``Phi`` and the HLR
        laws of ``Psi`` under scope ``Psi``

    Raises:
        ShapeError: If the components do not fit the endpoints
    """
    phi, psi = morphism.phi_map, morphism.psi_map
    if phi.shape != (target.target.dim, source.target.dim):
        raise ShapeError(f"Phi has shape {phi.shape}")
    if psi.shape != (target.actor.dim, source.actor.dim):
        raise ShapeError(f"Psi has shape {psi.shape}")
    report = ValidationReport("crossed-module-morphism")
    report.check_maps(
        "CMM-BOUNDARY", (), psi @ source.boundary, target.boundary @ phi, role="m"
    )
    lb = source.actor.carrier.basis()
    mb = source.target.carrier.basis()
    psi_x, phi_m = psi.columns(), phi.columns()
    for i, k in product(range(len(lb)), range(len(mb))):
        report.check(
            "CMM-LEFT",
            (("x", i), ("m", k)),
            phi.apply(source.action.left.apply(lb[i], mb[k])),
            target.action.left.apply(psi_x[i], phi_m[k]),
        )
        report.check(
            "CMM-RIGHT",
            (("m", k), ("x", i)),
            phi.apply(source.action.right.apply(mb[k], lb[i])),
            target.action.right.apply(phi_m[k], psi_x[i]),
        )
    report.extend(check_hla_homomorphism(phi, source.target, target.target), "Phi")
    report.extend(check_hlr_homomorphism(psi, source.actor, target.actor), "Psi")
    return report


def is_cm_isomorphism(morphism: CMMorphism) -> bool:
    """True when both components are invertible."""
    return (
        morphism.phi_map.inverse() is not None
        and morphism.psi_map.inverse() is not None
    )
