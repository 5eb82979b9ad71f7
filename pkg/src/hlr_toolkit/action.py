"""Hom-actions, Rinehart-compatible actions and semi-direct products."""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Tuple

from .algebra import (
    AModuleStructure,
    HomLeibnizAAlgebra,
    HomLeibnizAlgebra,
    validate_hom_leibniz_a_algebra,
)
from .errors import BaseMismatchError, ShapeError
from .linalg import (
    Bilinear,
    Matrix,
    Vector,
    add_vectors,
    concat_vectors,
    sub_vectors,
    unit_vector,
    zero_vector,
)
from .report import ValidationReport
from .rinehart import HLRAlgebra, validate_hlr

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomAction:
    """Left ``[x, m]`` and right ``[m, x]`` actions of ``L`` on ``M``."""

    actor: HomLeibnizAlgebra
    target: HomLeibnizAlgebra
    left: Bilinear
    right: Bilinear

    def __post_init__(self) -> None:
        l, m = self.actor.dim, self.target.dim
        if (self.left.dim_left, self.left.dim_right, self.left.dim_out) != (l, m, m):
            raise ShapeError(f"left action must have shape (L={l}) x (M={m}) -> M")
        if (self.right.dim_left, self.right.dim_right, self.right.dim_out) != (m, l, m):
            raise ShapeError(f"right action must have shape (M={m}) x (L={l}) -> M")

    @classmethod
    def trivial(
        cls, actor: HomLeibnizAlgebra, target: HomLeibnizAlgebra
    ) -> "HomAction":
        return cls(
            actor,
            target,
            Bilinear.zeros(actor.dim, target.dim, target.dim),
            Bilinear.zeros(target.dim, actor.dim, target.dim),
        )


@dataclass(frozen=True)
class LRSAction:
    """Action of an HLR algebra on a Hom-Leibniz A-algebra."""

    actor: HLRAlgebra
    target: HomLeibnizAAlgebra
    left: Bilinear
    right: Bilinear

    def __post_init__(self) -> None:
        HomAction(self.actor.carrier, self.target.carrier, self.left, self.right)

    @classmethod
    def trivial(cls, actor: HLRAlgebra, target: HomLeibnizAAlgebra) -> "LRSAction":
        act = HomAction.trivial(actor.carrier, target.carrier)
        return cls(actor, target, act.left, act.right)

    @property
    def underlying(self) -> HomAction:
        return HomAction(self.actor.carrier, self.target.carrier, self.left, self.right)


def validate_hom_action(act: HomAction) -> ValidationReport:
    """Check the eight Hom-action axioms on basis tuples.

    Returns:
        Report tagged A11, A12, A13, A21, A22, A23, A31 and A32
    """
    report = ValidationReport("hom-action")
    L, M = act.actor, act.target
    lb, mb = L.basis(), M.basis()
    ax, am = L.alpha.columns(), M.alpha.columns()
    left, right = act.left.apply, act.right.apply
    br_l, br_m = L.bracket_of, M.bracket_of

    for i, k in product(range(L.dim), range(M.dim)):
        w = (("x", i), ("m", k))
        report.check("A31", w, M.alpha.apply(left(lb[i], mb[k])), left(ax[i], am[k]))
        report.check("A32", w, M.alpha.apply(right(mb[k], lb[i])), right(am[k], ax[i]))

    for i, j, k in product(range(L.dim), range(L.dim), range(M.dim)):
        w = (("x", i), ("y", j), ("m", k))
        m = mb[k]
        xy = br_l(lb[i], lb[j])
        report.check(
            "A11",
            w,
            right(am[k], xy),
            sub_vectors(left(ax[i], right(m, lb[j])), right(left(lb[i], m), ax[j])),
        )
        report.check(
            "A12",
            w,
            left(ax[i], right(m, lb[j])),
            sub_vectors(right(am[k], xy), right(right(m, lb[i]), ax[j])),
        )
        report.check(
            "A13",
            w,
            left(ax[i], left(lb[j], m)),
            add_vectors(left(xy, am[k]), left(ax[j], left(lb[i], m))),
        )

    for i, k, q in product(range(L.dim), range(M.dim), range(M.dim)):
        w = (("x", i), ("m", k), ("m'", q))
        x, m, m2 = lb[i], mb[k], mb[q]
        mm = br_m(m, m2)
        report.check(
            "A21",
            w,
            left(ax[i], mm),
            sub_vectors(br_m(am[k], left(x, m2)), br_m(right(m, x), am[q])),
        )
        report.check(
            "A22",
            w,
            br_m(am[k], left(x, m2)),
            sub_vectors(left(ax[i], mm), br_m(left(x, m), am[q])),
        )
        report.check(
            "A23",
            w,
            br_m(am[k], right(m2, x)),
            add_vectors(right(mm, ax[i]), br_m(am[q], right(m, x))),
        )
    return report


def validate_lrs_action(act: LRSAction) -> ValidationReport:
    """Validate an action of an HLR algebra on a Hom-Leibniz A-algebra.

    The actor is validated under scope ``L`` and the target under scope
    ``M``; the Hom-action axioms and S21, S22, S31, S32 follow.

    Raises:
        BaseMismatchError: If actor and target are over different bases
    """
    L, M = act.actor, act.target
    if L.base != M.base:
        raise BaseMismatchError(
            "actor and target are modules over different base algebras"
        )
    report = ValidationReport("lrs-action")
    report.extend(validate_hlr(L), "L")
    report.extend(validate_hom_leibniz_a_algebra(M), "M")
    report.extend(validate_hom_action(act.underlying))

    base = L.base
    lb, mb = L.carrier.basis(), M.carrier.basis()
    am = M.alpha.columns()
    left, right = act.left.apply, act.right.apply
    for a in range(base.dim):
        phi_f = base.phi.column(a)
        phi_on_m = M.module.operator(phi_f)
        f_on_l, f_on_m = L.module.operators[a], M.module.operators[a]
        for i, k in product(range(L.dim), range(M.dim)):
            w = (("f", a), ("x", i), ("m", k))
            x, m = lb[i], mb[k]
            xm, mx = left(x, m), right(m, x)
            report.check("S21", w, left(f_on_l.column(i), m), phi_on_m.apply(xm))
            report.check("S22", w, right(m, f_on_l.column(i)), phi_on_m.apply(mx))
            report.check(
                "S31",
                w,
                left(x, f_on_m.column(k)),
                add_vectors(
                    phi_on_m.apply(xm), M.module.act(L.anchor_left[i].column(a), am[k])
                ),
            )
            report.check(
                "S32",
                w,
                right(f_on_m.column(k), x),
                sub_vectors(
                    phi_on_m.apply(mx), M.module.act(L.anchor_right[i].column(a), am[k])
                ),
            )
    return report


def semidirect(act: LRSAction) -> HLRAlgebra:
    """The semi-direct product ``L x| M`` on ``L (+) M``, L-block first.

    Invalid actions are not refused; ``check_semidirect_equivalence`` compares
    the two sides.

    Raises:
        BaseMismatchError: If actor and target are over different bases
    """
    L, M = act.actor, act.target
    if L.base != M.base:
        raise BaseMismatchError(
            "actor and target are modules over different base algebras"
        )
    l, m = L.dim, M.dim
    n = l + m
    ax = L.alpha.columns()
    lb, mb = L.carrier.basis(), M.carrier.basis()

    def bracket(i: int, j: int) -> Vector:
        if i < l and j < l:
            return concat_vectors(L.carrier.bracket_of(lb[i], lb[j]), zero_vector(m))
        if i < l:
            return concat_vectors(zero_vector(l), act.left.apply(ax[i], mb[j - l]))
        if j < l:
            return concat_vectors(zero_vector(l), act.right.apply(mb[i - l], ax[j]))
        return concat_vectors(
            zero_vector(l), M.carrier.bracket_of(mb[i - l], mb[j - l])
        )

    def scale(a: int, j: int) -> Vector:
        f = unit_vector(L.base.dim, a)
        if j < l:
            return concat_vectors(L.module.act(f, lb[j]), zero_vector(m))
        return concat_vectors(zero_vector(l), M.module.act(f, mb[j - l]))

    carrier = HomLeibnizAlgebra(
        n,
        Bilinear.from_function(n, n, n, bracket),
        Matrix.block_diagonal(L.alpha, M.alpha),
    )
    module = AModuleStructure(
        L.base, n, Bilinear.from_function(L.base.dim, n, n, scale)
    )
    zero = Matrix.zeros(L.base.dim, L.base.dim)
    product_algebra = HLRAlgebra(
        carrier,
        module,
        L.anchor_left + (zero,) * m,
        L.anchor_right + (zero,) * m,
    )
    logger.debug(f"Built semi-direct product of dimensions {l} + {m}")
    return product_algebra


def actor_inclusion(act: LRSAction) -> Matrix:
    """``x -> (x, 0)`` into the semi-direct product."""
    return Matrix.vstack(
        Matrix.identity(act.actor.dim), Matrix.zeros(act.target.dim, act.actor.dim)
    )


def target_inclusion(act: LRSAction) -> Matrix:
    """``m -> (0, m)`` into the semi-direct product."""
    return Matrix.vstack(
        Matrix.zeros(act.actor.dim, act.target.dim), Matrix.identity(act.target.dim)
    )


def adjoint_action(algebra: HLRAlgebra) -> LRSAction:
    """``L`` acting on itself by its bracket on both sides."""
    return LRSAction(
        algebra, algebra.as_hom_leibniz_a_algebra(), algebra.bracket, algebra.bracket
    )


def check_semidirect_equivalence(
    act: LRSAction,
) -> Tuple[ValidationReport, ValidationReport]:
    """Validate an action and its semi-direct product side by side.

    Returns:
        ``(action_report, product_report)``; for actions over ``phi = id``
        with ``rho o alpha = rho`` both are empty or both are non-empty
    """
    action_report = validate_lrs_action(act)
    product_report = validate_hlr(semidirect(act))
    logger.debug(
        f"Action valid: {action_report.is_valid}, "
        f"product valid: {product_report.is_valid}"
    )
    return action_report, product_report
