"""Hom-Leibniz-Rinehart algebras: type, axiom validator and constructors."""

import logging
from dataclasses import dataclass
from itertools import product
from typing import List, Sequence, Tuple

from .algebra import (
    AModuleStructure,
    CommAlgebra,
    HomLeibnizAAlgebra,
    HomLeibnizAlgebra,
    check_hla_homomorphism,
    is_phi_derivation,
    validate_comm_algebra,
    validate_hom_leibniz,
    validate_module,
)
from .errors import PreconditionError, ShapeError
from .linalg import (
    Bilinear,
    Matrix,
    Rational,
    add_vectors,
    linear_combination,
    sub_vectors,
)
from .report import ValidationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HLRAlgebra:
    """Hom-Leibniz algebra over ``(A, phi)`` with left and right anchors.

    Anchors are stored per basis element of ``L`` as ``dim A x dim A``
    matrices and extended linearly.
    """

    carrier: HomLeibnizAlgebra
    module: AModuleStructure
    anchor_left: Tuple[Matrix, ...]
    anchor_right: Tuple[Matrix, ...]

    def __post_init__(self) -> None:
        n = self.carrier.dim
        a = self.module.algebra.dim
        if self.module.dim != n:
            raise ShapeError(
                f"module of dimension {self.module.dim} on carrier of dimension {n}"
            )
        if len(self.anchor_left) != n or len(self.anchor_right) != n:
            raise ShapeError(f"anchors must have one matrix per basis element ({n})")
        for m in self.anchor_left + self.anchor_right:
            if m.shape != (a, a):
                raise ShapeError(f"anchor value has shape {m.shape}, expected {(a, a)}")

    @classmethod
    def with_zero_anchors(
        cls, carrier: HomLeibnizAlgebra, module: AModuleStructure
    ) -> "HLRAlgebra":
        zero = Matrix.zeros(module.algebra.dim, module.algebra.dim)
        return cls(carrier, module, (zero,) * carrier.dim, (zero,) * carrier.dim)

    @property
    def base(self) -> CommAlgebra:
        return self.module.algebra

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def alpha(self) -> Matrix:
        return self.carrier.alpha

    @property
    def bracket(self) -> Bilinear:
        return self.carrier.bracket

    def anchor_l(self, x: Sequence[Rational]) -> Matrix:
        return linear_combination(x, self.anchor_left, self.base.dim, self.base.dim)

    def anchor_r(self, x: Sequence[Rational]) -> Matrix:
        return linear_combination(x, self.anchor_right, self.base.dim, self.base.dim)

    def as_hom_leibniz_a_algebra(self) -> HomLeibnizAAlgebra:
        """Forget the anchors."""
        return HomLeibnizAAlgebra(self.carrier, self.module)

    def has_zero_anchors(self) -> bool:
        return all(m.is_zero() for m in self.anchor_left + self.anchor_right)


def hla_as_hlr(hla: HomLeibnizAAlgebra) -> HLRAlgebra:
    """A Hom-Leibniz A-algebra viewed as an HLR algebra with zero anchors."""
    return HLRAlgebra.with_zero_anchors(hla.carrier, hla.module)


def _anchor_derivations(algebra: HLRAlgebra, report: ValidationReport) -> None:
    families = (("DER-L", algebra.anchor_left), ("DER-R", algebra.anchor_right))
    for tag, family in families:
        for i, value in enumerate(family):
            for failure in is_phi_derivation(value, algebra.base).failures:
                report.add(tag, (("x", i),) + failure.witness, failure.lhs, failure.rhs)


def validate_hlr(algebra: HLRAlgebra) -> ValidationReport:
    """Check every Hom-Leibniz-Rinehart axiom on basis tuples.

    Args:
        algebra: Candidate HLR algebra

    Returns:
        Report tagged H01, H11, H12, H21, H22, H23, H31, H32, H41, H42,
        DER-L and DER-R, plus the base algebra (scope ``A``), Hom-Leibniz
        and module tags
    """
    report = ValidationReport("hlr")
    base = algebra.base
    module = algebra.module
    alpha = algebra.alpha
    phi = base.phi
    report.extend(validate_comm_algebra(base), "A")
    report.extend(validate_hom_leibniz(algebra.carrier))
    report.extend(validate_module(module))
    _anchor_derivations(algebra, report)

    basis = algebra.carrier.basis()
    alpha_x = alpha.columns()
    rho_l, rho_r = algebra.anchor_left, algebra.anchor_right
    br = algebra.carrier.bracket_of

    for i in range(algebra.dim):
        wx = (("x", i),)
        report.check_maps(
            "H11", wx, algebra.anchor_l(alpha_x[i]) @ phi, phi @ rho_l[i], role="f"
        )
        report.check_maps(
            "H12", wx, algebra.anchor_r(alpha_x[i]) @ phi, phi @ rho_r[i], role="f"
        )

    for i, j in product(range(algebra.dim), repeat=2):
        w = (("x", i), ("y", j))
        xy = br(basis[i], basis[j])
        left_ax, left_ay = algebra.anchor_l(alpha_x[i]), algebra.anchor_l(alpha_x[j])
        right_ay = algebra.anchor_r(alpha_x[j])
        report.check_maps(
            "H21", w, right_ay @ rho_r[i], -(right_ay @ rho_l[i]), role="f"
        )
        report.check_maps(
            "H22",
            w,
            algebra.anchor_l(xy) @ phi,
            left_ax @ rho_l[j] - left_ay @ rho_l[i],
            role="f",
        )
        report.check_maps(
            "H23",
            w,
            algebra.anchor_r(xy) @ phi,
            left_ax @ rho_r[j] - right_ay @ rho_l[i],
            role="f",
        )

    for a in range(base.dim):
        f_op = module.operators[a]
        phi_f = phi.column(a)
        phi_f_op = module.operator(phi_f)
        times_phi_f = base.multiplication_operator(phi_f)
        report.check_maps("H01", (("f", a),), alpha @ f_op, phi_f_op @ alpha, role="x")
        for i in range(algebra.dim):
            w = (("f", a), ("x", i))
            f_x = f_op.column(i)
            report.check_maps(
                "H41", w, algebra.anchor_l(f_x), times_phi_f @ rho_l[i], role="g"
            )
            report.check_maps(
                "H42", w, algebra.anchor_r(f_x), times_phi_f @ rho_r[i], role="g"
            )
            for j in range(algebra.dim):
                w3 = (("f", a), ("x", i), ("y", j))
                scaled = phi_f_op.apply(br(basis[i], basis[j]))
                report.check(
                    "H31",
                    w3,
                    br(basis[i], f_op.column(j)),
                    add_vectors(scaled, module.act(rho_l[i].column(a), alpha_x[j])),
                )
                report.check(
                    "H32",
                    w3,
                    br(f_x, basis[j]),
                    sub_vectors(scaled, module.act(rho_r[j].column(a), alpha_x[i])),
                )
    return report


def from_leibniz_rinehart(classical: HLRAlgebra) -> HLRAlgebra:
    """Accept a Leibniz-Rinehart algebra as an HLR algebra with identity twists.

    Raises:
        PreconditionError: If phi or alpha is not the identity, or the input
            fails validation
    """
    if not classical.base.phi.is_identity() or not classical.alpha.is_identity():
        raise PreconditionError(
            "a Leibniz-Rinehart algebra needs phi = id and alpha = id"
        )
    report = validate_hlr(classical)
    if not report.is_valid:
        raise PreconditionError("input is not a valid Leibniz-Rinehart algebra", report)
    return classical


def yau_twist(classical: HLRAlgebra, alpha: Matrix, phi: Matrix) -> HLRAlgebra:
    """Twist a Leibniz-Rinehart algebra along an invertible ``(alpha, phi)``.

    The result has bracket ``alpha o [.,.]``, anchors ``phi o rho`` and twist
    maps ``alpha`` and ``phi``.

    Args:
        classical: Valid Leibniz-Rinehart algebra
        alpha: Endomorphism of the carrier
        phi: Endomorphism of the base algebra

    Returns:
        The twisted HLR algebra

    Raises:
        ShapeError: If the maps have the wrong size
        PreconditionError: If the input is not classical and valid, a map is
            not invertible, or ``(alpha, phi)`` is not an endomorphism (the
            error carries a report tagged END-BRACKET, END-MODULE, END-ANCHOR
            and END-PHI)
    """
    n, a = classical.dim, classical.base.dim
    if alpha.shape != (n, n) or phi.shape != (a, a):
        raise ShapeError(f"twist maps have shapes {alpha.shape}, {phi.shape}")
    from_leibniz_rinehart(classical)
    if alpha.inverse() is None:
        raise PreconditionError("alpha is not invertible")
    if phi.inverse() is None:
        raise PreconditionError("phi is not invertible")

    report = ValidationReport("endomorphism")
    base = classical.base
    twisted_base = CommAlgebra(base.dim, base.mul, phi, base.unit)
    checked = validate_comm_algebra(twisted_base).only("PHI-MORPH", "UNIT")
    for failure in checked.failures:
        report.add("END-PHI", failure.witness, failure.lhs, failure.rhs)

    basis = classical.carrier.basis()
    alpha_x = alpha.columns()
    br = classical.carrier.bracket_of
    for i, j in product(range(n), repeat=2):
        report.check(
            "END-BRACKET",
            (("x", i), ("y", j)),
            alpha.apply(br(basis[i], basis[j])),
            br(alpha_x[i], alpha_x[j]),
        )
    module = classical.module
    for f in range(a):
        report.check_maps(
            "END-MODULE",
            (("f", f),),
            alpha @ module.operators[f],
            module.operator(phi.column(f)) @ alpha,
            role="x",
        )
    for i in range(n):
        report.check_maps(
            "END-ANCHOR",
            (("side", 0), ("x", i)),
            classical.anchor_l(alpha_x[i]) @ phi,
            phi @ classical.anchor_left[i],
            role="f",
        )
        report.check_maps(
            "END-ANCHOR",
            (("side", 1), ("x", i)),
            classical.anchor_r(alpha_x[i]) @ phi,
            phi @ classical.anchor_right[i],
            role="f",
        )
    if not report.is_valid:
        raise PreconditionError("(alpha, phi) is not an endomorphism", report)

    bracket = Bilinear.from_function(
        n, n, n, lambda i, j: alpha.apply(br(basis[i], basis[j]))
    )
    twisted = HLRAlgebra(
        HomLeibnizAlgebra(n, bracket, alpha),
        AModuleStructure(twisted_base, n, module.action),
        tuple(phi @ m for m in classical.anchor_left),
        tuple(phi @ m for m in classical.anchor_right),
    )
    logger.debug(f"Twisted a dimension-{n} Leibniz-Rinehart algebra")
    return twisted


def check_hlr_homomorphism(
    h: Matrix, source: HLRAlgebra, target: HLRAlgebra
) -> ValidationReport:
    """Check that ``h`` is an HLR homomorphism.

    Returns:
        Report tagged HOM-ALPHA, HOM-BRACKET, HOM-ALIN, HOM-ANCHOR-L and
        HOM-ANCHOR-R
    """
    report = check_hla_homomorphism(
        h, source.as_hom_leibniz_a_algebra(), target.as_hom_leibniz_a_algebra()
    )
    for i, image in enumerate(h.columns()):
        w = (("x", i),)
        report.check_maps(
            "HOM-ANCHOR-L", w, target.anchor_l(image), source.anchor_left[i], role="f"
        )
        report.check_maps(
            "HOM-ANCHOR-R", w, target.anchor_r(image), source.anchor_right[i], role="f"
        )
    return report


def anchor_symmetry_defect(algebra: HLRAlgebra) -> List[Tuple[int, int]]:
    """Basis pairs where ``rho_left([x,y] + [y,x]) o phi`` is nonzero.

    Every valid HLR algebra returns an empty list.
    """
    basis = algebra.carrier.basis()
    br = algebra.carrier.bracket_of
    defects = []
    for i, j in product(range(algebra.dim), repeat=2):
        symmetric = add_vectors(br(basis[i], basis[j]), br(basis[j], basis[i]))
        if not (algebra.anchor_l(symmetric) @ algebra.base.phi).is_zero():
            defects.append((i, j))
    return defects
