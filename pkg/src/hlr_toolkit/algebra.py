"""Base commutative algebras, Hom-Leibniz algebras, modules and representations.

Every identity is checked on basis tuples only; both sides are multilinear,
so this is equivalent to checking it on arbitrary elements.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .errors import BaseMismatchError, ShapeError
from .linalg import (
    Bilinear,
    Matrix,
    Rational,
    Vector,
    add_vectors,
    linear_combination,
    to_vector,
    unit_vector,
)
from .report import ValidationReport

logger = logging.getLogger(__name__)

TWISTED_BILINEAR_NOTE = (
    "module bracket assumed phi-twisted: [f.m, m'] = [m, f.m'] = phi(f).[m, m']"
)


@dataclass(frozen=True)
class CommAlgebra:
    """Commutative associative algebra ``A`` with an endomorphism ``phi``."""

    dim: int
    mul: Bilinear
    phi: Matrix
    unit: Optional[Vector] = None

    def __post_init__(self) -> None:
        n = self.dim
        if (self.mul.dim_left, self.mul.dim_right, self.mul.dim_out) != (n, n, n):
            raise ShapeError(f"product of a dimension-{n} algebra has the wrong shape")
        if self.phi.shape != (n, n):
            raise ShapeError(f"phi has shape {self.phi.shape}, expected {(n, n)}")
        if self.unit is not None and len(self.unit) != n:
            raise ShapeError(f"unit has length {len(self.unit)}, expected {n}")

    @classmethod
    def scalars(cls) -> "CommAlgebra":
        """The ground field ``Q`` with ``phi = id``."""
        return cls(
            1, Bilinear.from_nested([[[1]]], 1, 1), Matrix.identity(1), to_vector([1])
        )

    def basis(self) -> List[Vector]:
        return [unit_vector(self.dim, i) for i in range(self.dim)]

    def multiply(self, f: Sequence[Rational], g: Sequence[Rational]) -> Vector:
        return self.mul.apply(f, g)

    def multiplication_operator(self, f: Sequence[Rational]) -> Matrix:
        return self.mul.left_operator(f)


@dataclass(frozen=True)
class AModuleStructure:
    """An action ``A x V -> V`` written ``f.v``."""

    algebra: CommAlgebra
    dim: int
    action: Bilinear

    def __post_init__(self) -> None:
        shape = (self.action.dim_left, self.action.dim_right, self.action.dim_out)
        if shape != (self.algebra.dim, self.dim, self.dim):
            raise ShapeError(
                f"module action has shape {shape}, expected "
                f"{(self.algebra.dim, self.dim, self.dim)}"
            )

    @classmethod
    def scaling(cls, dim: int) -> "AModuleStructure":
        """``Q`` acting on ``Q^dim`` by scalar multiplication."""
        return cls(
            CommAlgebra.scalars(),
            dim,
            Bilinear.from_function(1, dim, dim, lambda a, j: unit_vector(dim, j)),
        )

    @classmethod
    def trivial(cls, algebra: CommAlgebra, dim: int) -> "AModuleStructure":
        return cls(algebra, dim, Bilinear.zeros(algebra.dim, dim, dim))

    @cached_property
    def operators(self) -> Tuple[Matrix, ...]:
        """``v -> e_a.v`` for each basis element ``e_a`` of ``A``."""
        return tuple(
            self.action.left_operator(unit_vector(self.algebra.dim, a))
            for a in range(self.algebra.dim)
        )

    def act(self, f: Sequence[Rational], v: Sequence[Rational]) -> Vector:
        return self.action.apply(f, v)

    def operator(self, f: Sequence[Rational]) -> Matrix:
        return linear_combination(f, self.operators, self.dim, self.dim)


@dataclass(frozen=True)
class HomLeibnizAlgebra:
    """Left Hom-Leibniz algebra ``(L, [.,.], alpha)``."""

    dim: int
    bracket: Bilinear
    alpha: Matrix

    def __post_init__(self) -> None:
        n = self.dim
        b = self.bracket
        if (b.dim_left, b.dim_right, b.dim_out) != (n, n, n):
            raise ShapeError(f"bracket of a dimension-{n} algebra has the wrong shape")
        if self.alpha.shape != (n, n):
            raise ShapeError(f"alpha has shape {self.alpha.shape}, expected {(n, n)}")

    @classmethod
    def abelian(cls, dim: int, alpha: Optional[Matrix] = None) -> "HomLeibnizAlgebra":
        return cls(dim, Bilinear.zeros(dim, dim, dim), alpha or Matrix.identity(dim))

    @cached_property
    def alpha_inverse(self) -> Optional[Matrix]:
        return self.alpha.inverse()

    def bracket_of(self, x: Sequence[Rational], y: Sequence[Rational]) -> Vector:
        return self.bracket.apply(x, y)

    def basis(self) -> List[Vector]:
        return [unit_vector(self.dim, i) for i in range(self.dim)]


@dataclass(frozen=True)
class Representation:
    """Representation ``(rho_left, rho_right)`` of a Hom-Leibniz algebra on ``V``.

    ``V`` carries its own twist ``alpha_v``. The maps are stored on basis
    elements of ``L`` and extended linearly.
    """

    dim: int
    alpha_v: Matrix
    rho_left: Tuple[Matrix, ...]
    rho_right: Tuple[Matrix, ...]

    def left(self, x: Sequence[Rational]) -> Matrix:
        return linear_combination(x, self.rho_left, self.dim, self.dim)

    def right(self, x: Sequence[Rational]) -> Matrix:
        return linear_combination(x, self.rho_right, self.dim, self.dim)


@dataclass(frozen=True)
class HomLeibnizAAlgebra:
    """Hom-Leibniz algebra that is also an ``A``-module on the same carrier."""

    carrier: HomLeibnizAlgebra
    module: AModuleStructure

    def __post_init__(self) -> None:
        if self.module.dim != self.carrier.dim:
            raise ShapeError(
                f"module of dimension {self.module.dim} on a carrier of "
                f"dimension {self.carrier.dim}"
            )

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def base(self) -> CommAlgebra:
        return self.module.algebra

    @property
    def bracket(self) -> Bilinear:
        return self.carrier.bracket

    @property
    def alpha(self) -> Matrix:
        return self.carrier.alpha


def validate_comm_algebra(algebra: CommAlgebra) -> ValidationReport:
    """Check commutativity, associativity, that phi is a morphism, and the unit.

    Args:
        algebra: Algebra to check

    Returns:
        Report tagged COMM, ASSOC, PHI-MORPH and UNIT
    """
    report = ValidationReport("comm-algebra")
    basis = algebra.basis()
    phi = algebra.phi
    for i, j in product(range(algebra.dim), repeat=2):
        fg = algebra.multiply(basis[i], basis[j])
        witness = (("f", i), ("g", j))
        if i < j:
            report.check("COMM", witness, fg, algebra.multiply(basis[j], basis[i]))
        report.check(
            "PHI-MORPH",
            witness,
            phi.apply(fg),
            algebra.multiply(phi.column(i), phi.column(j)),
        )
        for k in range(algebra.dim):
            report.check(
                "ASSOC",
                witness + (("h", k),),
                algebra.multiply(fg, basis[k]),
                algebra.multiply(basis[i], algebra.multiply(basis[j], basis[k])),
            )
    if algebra.unit is not None:
        for i in range(algebra.dim):
            report.check(
                "UNIT",
                (("f", i),),
                algebra.multiply(algebra.unit, basis[i]),
                basis[i],
            )
        report.check("UNIT", (), phi.apply(algebra.unit), algebra.unit)
    return report


def is_phi_derivation(delta: Matrix, algebra: CommAlgebra) -> ValidationReport:
    """Check ``delta(fg) = phi(f) delta(g) + phi(g) delta(f)`` on basis pairs.

    Raises:
        ShapeError: If ``delta`` is not a square matrix of size ``dim A``
    """
    if delta.shape != (algebra.dim, algebra.dim):
        raise ShapeError(
            f"derivation has shape {delta.shape}, algebra has dim {algebra.dim}"
        )
    report = ValidationReport("phi-derivation")
    basis = algebra.basis()
    for i, j in product(range(algebra.dim), repeat=2):
        lhs = delta.apply(algebra.multiply(basis[i], basis[j]))
        rhs = add_vectors(
            algebra.multiply(algebra.phi.column(i), delta.column(j)),
            algebra.multiply(algebra.phi.column(j), delta.column(i)),
        )
        report.check("PHI-DER", (("f", i), ("g", j)), lhs, rhs)
    return report


def validate_hom_leibniz(algebra: HomLeibnizAlgebra) -> ValidationReport:
    """Check hom-Jacobi, multiplicativity and regularity.

    Returns:
        Report tagged HJ, MULT and REG
    """
    report = ValidationReport("hom-leibniz")
    n = algebra.dim
    basis = algebra.basis()
    alpha = algebra.alpha
    images = alpha.columns()
    br = algebra.bracket_of
    for i, j in product(range(n), repeat=2):
        xy = br(basis[i], basis[j])
        report.check(
            "MULT", (("x", i), ("y", j)), alpha.apply(xy), br(images[i], images[j])
        )
        for k in range(n):
            lhs = br(images[i], br(basis[j], basis[k]))
            rhs = add_vectors(br(xy, images[k]), br(images[j], br(basis[i], basis[k])))
            report.check("HJ", (("x", i), ("y", j), ("z", k)), lhs, rhs)
    if algebra.alpha_inverse is None:
        report.add("REG", (), (alpha.rank(),), (n,))
    return report


def validate_module(module: AModuleStructure) -> ValidationReport:
    """Check ``(fg).v = f.(g.v)`` and, for unital ``A``, ``1.v = v``."""
    report = ValidationReport("a-module")
    algebra = module.algebra
    basis_a = algebra.basis()
    for a, b in product(range(algebra.dim), repeat=2):
        fg = algebra.multiply(basis_a[a], basis_a[b])
        lhs = module.operator(fg)
        rhs = module.operators[a] @ module.operators[b]
        report.check_maps("MOD-ASSOC", (("f", a), ("g", b)), lhs, rhs)
    if algebra.unit is not None:
        identity = Matrix.identity(module.dim)
        report.check_maps("MOD-UNIT", (), module.operator(algebra.unit), identity)
    return report


def validate_representation(
    algebra: HomLeibnizAlgebra, representation: Representation
) -> ValidationReport:
    """Check the five representation identities on basis pairs.

    Args:
        algebra: The represented Hom-Leibniz algebra
        representation: Candidate representation

    Returns:
        Report tagged REP1 to REP5; the role ``v`` names the basis vector of ``V``

    Raises:
        ShapeError: If the families are not indexed by the basis of ``algebra``
    """
    rep = representation
    v = rep.dim
    if len(rep.rho_left) != algebra.dim or len(rep.rho_right) != algebra.dim:
        raise ShapeError("representation families must have one map per basis element")
    for m in rep.rho_left + rep.rho_right + (rep.alpha_v,):
        if m.shape != (v, v):
            raise ShapeError(
                f"representation map has shape {m.shape}, expected {(v, v)}"
            )

    report = ValidationReport("representation")
    basis = algebra.basis()
    alpha_x = algebra.alpha.columns()
    av = rep.alpha_v
    for i in range(algebra.dim):
        wx = (("x", i),)
        report.check_maps("REP1", wx, rep.left(alpha_x[i]) @ av, av @ rep.rho_left[i])
        report.check_maps("REP2", wx, rep.right(alpha_x[i]) @ av, av @ rep.rho_right[i])
    for i, j in product(range(algebra.dim), repeat=2):
        w = (("x", i), ("y", j))
        xy = algebra.bracket_of(basis[i], basis[j])
        left_ax, left_ay = rep.left(alpha_x[i]), rep.left(alpha_x[j])
        right_ay = rep.right(alpha_x[j])
        report.check_maps(
            "REP3",
            w,
            rep.left(xy) @ av,
            left_ax @ rep.rho_left[j] - left_ay @ rep.rho_left[i],
        )
        report.check_maps(
            "REP4",
            w,
            rep.right(xy) @ av,
            left_ax @ rep.rho_right[j] - right_ay @ rep.rho_left[i],
        )
        report.check_maps(
            "REP5", w, right_ay @ rep.rho_right[i], -(right_ay @ rep.rho_left[i])
        )
    return report


def adjoint_representation(algebra: HomLeibnizAlgebra) -> Representation:
    """``L`` on itself with ``rho_left(x) = [x, .]`` and ``rho_right(x) = [., x]``."""
    basis = algebra.basis()
    return Representation(
        algebra.dim,
        algebra.alpha,
        tuple(algebra.bracket.left_operator(e) for e in basis),
        tuple(algebra.bracket.right_operator(e) for e in basis),
    )


def validate_hom_leibniz_a_algebra(hla: HomLeibnizAAlgebra) -> ValidationReport:
    """Validate a Hom-Leibniz A-algebra.

    Runs the base algebra (scope ``A``), Hom-Leibniz and module checks and
    the three phi-compatibility laws HLA-ALPHA, HLA-LEFT and HLA-RIGHT.
    """
    report = ValidationReport("hom-leibniz-a-algebra")
    report.note(TWISTED_BILINEAR_NOTE)
    report.extend(validate_comm_algebra(hla.base), "A")
    report.extend(validate_hom_leibniz(hla.carrier))
    report.extend(validate_module(hla.module))

    algebra = hla.base
    module = hla.module
    alpha = hla.alpha
    basis = hla.carrier.basis()
    for a in range(algebra.dim):
        f_op = module.operators[a]
        phi_f = module.operator(algebra.phi.column(a))
        report.check_maps(
            "HLA-ALPHA", (("f", a),), alpha @ f_op, phi_f @ alpha, role="m"
        )
        for i, j in product(range(hla.dim), repeat=2):
            w = (("f", a), ("m", i), ("m'", j))
            mm = hla.carrier.bracket_of(basis[i], basis[j])
            expected = phi_f.apply(mm)
            report.check(
                "HLA-LEFT",
                w,
                hla.carrier.bracket_of(f_op.column(i), basis[j]),
                expected,
            )
            report.check(
                "HLA-RIGHT",
                w,
                hla.carrier.bracket_of(basis[i], f_op.column(j)),
                expected,
            )
    return report


def check_hla_homomorphism(
    h: Matrix, source: HomLeibnizAAlgebra, target: HomLeibnizAAlgebra
) -> ValidationReport:
    """Check that ``h`` commutes with alpha, brackets and the ``A``-action.

    Raises:
        ShapeError: If ``h`` is not a ``target.dim x source.dim`` matrix
        BaseMismatchError: If the two algebras are over different bases
    """
    if h.shape != (target.dim, source.dim):
        raise ShapeError(
            f"map of shape {h.shape} from dim {source.dim} to dim {target.dim}"
        )
    if source.base != target.base:
        raise BaseMismatchError("homomorphism between algebras over different bases")
    report = ValidationReport("homomorphism")
    report.check_maps("HOM-ALPHA", (), h @ source.alpha, target.alpha @ h, role="x")
    for a in range(source.base.dim):
        report.check_maps(
            "HOM-ALIN",
            (("f", a),),
            h @ source.module.operators[a],
            target.module.operators[a] @ h,
            role="x",
        )
    images = h.columns()
    basis = source.carrier.basis()
    for i, j in product(range(source.dim), repeat=2):
        report.check(
            "HOM-BRACKET",
            (("x", i), ("y", j)),
            h.apply(source.carrier.bracket_of(basis[i], basis[j])),
            target.carrier.bracket_of(images[i], images[j]),
        )
    return report


def left_leibniz_defect(algebra: HomLeibnizAlgebra) -> List[Tuple[int, int, int]]:
    """Basis triples where ``[[x,y] + [y,x], alpha z]`` is nonzero.

    Every valid Hom-Leibniz algebra returns an empty list.
    """
    basis = algebra.basis()
    images = algebra.alpha.columns()
    br = algebra.bracket_of
    defects = []
    for i, j, k in product(range(algebra.dim), repeat=3):
        symmetric = add_vectors(br(basis[i], basis[j]), br(basis[j], basis[i]))
        if any(br(symmetric, images[k])):
            defects.append((i, j, k))
    return defects

