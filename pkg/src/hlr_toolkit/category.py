"""Crossed L-modules over a fixed base and their limits and colimits.

Every construction returns a ``ConstructionResult`` whose object and legs
have been validated; anything ill-defined raises ``ConstructionError``.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from .action import LRSAction, adjoint_action
from .algebra import (
    AModuleStructure,
    HomLeibnizAAlgebra,
    HomLeibnizAlgebra,
    check_hla_homomorphism,
)
from .crossed import CrossedModule, validate_crossed_module
from .errors import BaseMismatchError, ConstructionError, PreconditionError, ShapeError
from .linalg import (
    Bilinear,
    Matrix,
    QuotientStructure,
    Slot,
    Subspace,
    Vector,
    closure_rounds,
    concat_vectors,
    format_rational,
    induced_bilinear,
    induced_map_from_quotient,
    induced_map_on_quotient,
    is_zero_vector,
    nullspace,
    restrict_bilinear,
    restrict_map,
    solve,
    unit_vector,
    zero_vector,
)
from .report import ValidationReport
from .rinehart import HLRAlgebra

logger = logging.getLogger(__name__)


class PeifferSign(Enum):
    """Sign of the second component of the coproduct generators."""

    PRINTED = "printed"  # ([d n', m], [d m, n'])
    SIGNED = "signed"  # ([d n', m], -[d m, n'])


@dataclass(frozen=True)
class CrossedLModule:
    """A crossed module whose acting algebra is the shared base ``L``."""

    base: HLRAlgebra
    cm: CrossedModule

    def __post_init__(self) -> None:
        if self.cm.actor != self.base:
            raise BaseMismatchError("crossed module does not act by the shared base")

    @property
    def module(self) -> HomLeibnizAAlgebra:
        return self.cm.target

    @property
    def boundary(self) -> Matrix:
        return self.cm.boundary

    @property
    def dim(self) -> int:
        return self.cm.target.dim

    @property
    def left(self) -> Bilinear:
        return self.cm.action.left

    @property
    def right(self) -> Bilinear:
        return self.cm.action.right


def make_crossed_l_module(
    base: HLRAlgebra,
    module: HomLeibnizAAlgebra,
    left: Bilinear,
    right: Bilinear,
    boundary: Matrix,
) -> CrossedLModule:
    action = LRSAction(base, module, left, right)
    return CrossedLModule(base, CrossedModule(action, boundary))


def adjoint_module(base: HLRAlgebra) -> CrossedLModule:
    """``(L, id)`` with ``L`` acting on itself by its bracket."""
    action = adjoint_action(base)
    return CrossedLModule(base, CrossedModule(action, Matrix.identity(base.dim)))


@dataclass(frozen=True)
class CMLMorphism:
    """Morphism ``lambda: M -> M'`` between crossed L-modules."""

    source: CrossedLModule
    target: CrossedLModule
    lambda_map: Matrix

    def __post_init__(self) -> None:
        if self.source.base != self.target.base:
            raise BaseMismatchError(
                "morphism between crossed modules over different bases"
            )
        if self.lambda_map.shape != (self.target.dim, self.source.dim):
            raise ShapeError(
                f"lambda has shape {self.lambda_map.shape}, expected "
                f"{(self.target.dim, self.source.dim)}"
            )

    def then(self, other: "CMLMorphism") -> "CMLMorphism":
        """Composite ``other o self``."""
        return CMLMorphism(
            self.source, other.target, other.lambda_map @ self.lambda_map
        )


def identity_morphism(module: CrossedLModule) -> CMLMorphism:
    return CMLMorphism(module, module, Matrix.identity(module.dim))


def validate_cml_morphism(morphism: CMLMorphism) -> ValidationReport:
    """Check the boundary triangle, the algebra laws and equivariance.

    Returns:
        Report tagged CML-TRIANGLE, HOM-ALPHA, HOM-BRACKET, HOM-ALIN,
        CML-LEFT and CML-RIGHT
    """
    src, dst = morphism.source, morphism.target
    lam = morphism.lambda_map
    report = ValidationReport("crossed-l-module-morphism")
    report.check_maps("CML-TRIANGLE", (), dst.boundary @ lam, src.boundary, role="m")
    report.extend(check_hla_homomorphism(lam, src.module, dst.module))
    lb = src.base.carrier.basis()
    for i, x in enumerate(lb):
        report.check_maps(
            "CML-LEFT",
            (("x", i),),
            lam @ src.left.left_operator(x),
            dst.left.left_operator(x) @ lam,
            role="m",
        )
        report.check_maps(
            "CML-RIGHT",
            (("x", i),),
            lam @ src.right.right_operator(x),
            dst.right.right_operator(x) @ lam,
            role="m",
        )
    return report


@dataclass(frozen=True)
class ConstructionResult:
    """A constructed crossed L-module with its legs.

    For limits the legs point out of ``obj``; for colimits they point into it.
    """

    kind: str
    obj: CrossedLModule
    legs: Tuple[CMLMorphism, ...]
    is_colimit: bool
    rounds: int = 0
    ideal: Optional[Subspace] = None


def restrict(
    module: CrossedLModule, subspace: Subspace
) -> Tuple[CrossedLModule, CMLMorphism]:
    """Substructure on ``subspace`` and its inclusion.

    Raises:
        ConstructionError: If the subspace is not closed under a structure
            map; ``tensor`` names it
    """
    M = module.module
    pieces = {
        "bracket": restrict_bilinear(M.bracket, subspace, subspace, subspace),
        "alpha": restrict_map(M.alpha, subspace, subspace),
        "module": restrict_bilinear(M.module.action, None, subspace, subspace),
        "left": restrict_bilinear(module.left, None, subspace, subspace),
        "right": restrict_bilinear(module.right, subspace, None, subspace),
    }
    for name, value in pieces.items():
        if value is None:
            raise ConstructionError(f"subspace is not closed under {name}", tensor=name)
    k = subspace.dim
    sub = make_crossed_l_module(
        module.base,
        HomLeibnizAAlgebra(
            HomLeibnizAlgebra(k, pieces["bracket"], pieces["alpha"]),
            AModuleStructure(module.base.base, k, pieces["module"]),
        ),
        pieces["left"],
        pieces["right"],
        module.boundary @ subspace.basis,
    )
    return sub, CMLMorphism(sub, module, subspace.basis)


def quotient(
    module: CrossedLModule, subspace: Subspace
) -> Tuple[CrossedLModule, CMLMorphism]:
    """Quotient by ``subspace`` with induced structure, and the projection.

    Raises:
        ConstructionError: If a structure map does not descend; ``tensor``
            names it and ``witness`` holds an offending subspace vector for
            the boundary
    """
    M = module.module
    q = QuotientStructure.of(subspace)
    pieces = {
        "bracket": induced_bilinear(M.bracket, q, q, q),
        "alpha": induced_map_on_quotient(M.alpha, q),
        "module": induced_bilinear(M.module.action, None, q, q),
        "left": induced_bilinear(module.left, None, q, q),
        "right": induced_bilinear(module.right, q, None, q),
        "boundary": induced_map_from_quotient(module.boundary, q),
    }
    for name, value in pieces.items():
        if value is None:
            witness = None
            if name == "boundary":
                witness = next(
                    v
                    for v in subspace.vectors()
                    if not is_zero_vector(module.boundary.apply(v))
                )
            raise ConstructionError(
                f"{name} is not well-defined on the quotient",
                tensor=name,
                witness=witness,
            )
    k = q.dim
    result = make_crossed_l_module(
        module.base,
        HomLeibnizAAlgebra(
            HomLeibnizAlgebra(k, pieces["bracket"], pieces["alpha"]),
            AModuleStructure(module.base.base, k, pieces["module"]),
        ),
        pieces["left"],
        pieces["right"],
        pieces["boundary"],
    )
    return result, CMLMorphism(module, result, q.projection)


def _finish(
    kind: str,
    obj: CrossedLModule,
    legs: Sequence[CMLMorphism],
    is_colimit: bool,
    rounds: int = 0,
    ideal: Optional[Subspace] = None,
) -> ConstructionResult:
    report = validate_crossed_module(obj.cm)
    if not report.is_valid:
        raise ConstructionError(f"{kind} object fails validation", report=report)
    for index, leg in enumerate(legs):
        leg_report = validate_cml_morphism(leg)
        if not leg_report.is_valid:
            raise ConstructionError(
                f"{kind} leg {index + 1} is not a morphism", report=leg_report
            )
    logger.debug(f"Built {kind} of dimension {obj.dim}")
    return ConstructionResult(kind, obj, tuple(legs), is_colimit, rounds, ideal)


def _require_parallel(f: CMLMorphism, g: CMLMorphism) -> None:
    if f.source != g.source or f.target != g.target:
        raise PreconditionError("morphisms do not share source and target")


def _stack_left(first: Bilinear, second: Bilinear) -> Bilinear:
    """Act on ``U (+) V`` componentwise through the right argument."""
    u, v = first.dim_right, second.dim_right
    k = first.dim_left

    def value(a: int, j: int) -> Vector:
        if j < u:
            return concat_vectors(first.on_basis(a, j), zero_vector(v))
        return concat_vectors(zero_vector(u), second.on_basis(a, j - u))

    return Bilinear.from_function(k, u + v, u + v, value)


def _stack_right(first: Bilinear, second: Bilinear) -> Bilinear:
    """Act on ``U (+) V`` componentwise through the left argument."""
    u, v = first.dim_left, second.dim_left
    k = first.dim_right

    def value(i: int, a: int) -> Vector:
        if i < u:
            return concat_vectors(first.on_basis(i, a), zero_vector(v))
        return concat_vectors(zero_vector(u), second.on_basis(i - u, a))

    return Bilinear.from_function(u + v, k, u + v, value)


def _pair(
    x: CrossedLModule, y: CrossedLModule, bracket: Bilinear, boundary: Matrix
) -> CrossedLModule:
    """``M (+) N`` with the given bracket and boundary, the rest componentwise."""
    n = x.dim + y.dim
    module = HomLeibnizAAlgebra(
        HomLeibnizAlgebra(
            n, bracket, Matrix.block_diagonal(x.module.alpha, y.module.alpha)
        ),
        AModuleStructure(
            x.base.base, n, _stack_left(x.module.module.action, y.module.module.action)
        ),
    )
    return make_crossed_l_module(
        x.base,
        module,
        _stack_left(x.left, y.left),
        _stack_right(x.right, y.right),
        boundary,
    )


def _componentwise_bracket(x: CrossedLModule, y: CrossedLModule) -> Bilinear:
    m, n = x.dim, y.dim
    bx, by = x.module.bracket, y.module.bracket

    def value(i: int, j: int) -> Vector:
        if i < m and j < m:
            return concat_vectors(bx.on_basis(i, j), zero_vector(n))
        if i >= m and j >= m:
            return concat_vectors(zero_vector(m), by.on_basis(i - m, j - m))
        return zero_vector(m + n)

    return Bilinear.from_function(m + n, m + n, m + n, value)


def equalizer(f: CMLMorphism, g: CMLMorphism) -> ConstructionResult:
    """``{m : f(m) = g(m)}`` with the restricted structure and its inclusion."""
    _require_parallel(f, g)
    kernel = nullspace(f.lambda_map - g.lambda_map)
    sub, inclusion = restrict(f.source, kernel)
    return _finish("equalizer", sub, (inclusion,), is_colimit=False)


def pullback(f: CMLMorphism, g: CMLMorphism) -> ConstructionResult:
    """``{(m, n) : f(m) = g(n)}`` inside ``M (+) N`` with ``d(m, n) = d_M(m)``.

    Raises:
        PreconditionError: If ``f`` and ``g`` have different targets
    """
    if f.target != g.target:
        raise PreconditionError("pullback needs morphisms with a common target")
    x, y = f.source, g.source
    ambient = _pair(
        x,
        y,
        _componentwise_bracket(x, y),
        Matrix.hstack(x.boundary, Matrix.zeros(x.base.dim, y.dim)),
    )
    kernel = nullspace(Matrix.hstack(f.lambda_map, -g.lambda_map))
    obj, inclusion = restrict(ambient, kernel)
    first = Matrix.hstack(Matrix.identity(x.dim), Matrix.zeros(x.dim, y.dim))
    second = Matrix.hstack(Matrix.zeros(y.dim, x.dim), Matrix.identity(y.dim))
    legs = (
        CMLMorphism(obj, x, first @ inclusion.lambda_map),
        CMLMorphism(obj, y, second @ inclusion.lambda_map),
    )
    return _finish("pullback", obj, legs, is_colimit=False)


def anchor_kernel(base: HLRAlgebra) -> Subspace:
    """``{r : rho_left(r) = 0 = rho_right(r)}`` as a subspace of ``L``."""
    a = base.base.dim
    rows = [
        [family[x].entry(r, c) for x in range(base.dim)]
        for family in (base.anchor_left, base.anchor_right)
        for r in range(a)
        for c in range(a)
    ]
    return nullspace(Matrix.from_rows(rows, base.dim))


def terminal(base: HLRAlgebra) -> ConstructionResult:
    """The anchor kernel with its inclusion into ``L`` as boundary."""
    obj, _ = restrict(adjoint_module(base), anchor_kernel(base))
    return _finish("terminal", obj, (), is_colimit=False)


def to_terminal(
    module: CrossedLModule, terminal_result: ConstructionResult
) -> CMLMorphism:
    """The unique morphism into the terminal object: the boundary, corestricted.

    Raises:
        ConstructionError: If the boundary leaves the anchor kernel
    """
    kernel = anchor_kernel(module.base)
    lam = restrict_map(module.boundary, Subspace.full(module.dim), kernel)
    if lam is None:
        raise ConstructionError(
            "boundary image is not inside the anchor kernel", tensor="boundary"
        )
    return CMLMorphism(module, terminal_result.obj, lam)


def product(x: CrossedLModule, y: CrossedLModule) -> ConstructionResult:
    """Pullback of the two morphisms into the terminal object."""
    if x.base != y.base:
        raise BaseMismatchError("product of crossed modules over different bases")
    term = terminal(x.base)
    result = pullback(to_terminal(x, term), to_terminal(y, term))
    return ConstructionResult("product", result.obj, result.legs, False)


def _ideal_closure(ambient: CrossedLModule, seed: Subspace) -> Tuple[Subspace, int]:
    M = ambient.module
    return closure_rounds(
        seed,
        unary=[M.alpha] + list(M.module.operators),
        binary=[
            (M.bracket, Slot.BOTH),
            (ambient.left, Slot.RIGHT),
            (ambient.right, Slot.LEFT),
        ],
    )


def coequalizer(f: CMLMorphism, g: CMLMorphism) -> ConstructionResult:
    """Quotient of the common target by the ideal generated by ``f(m) - g(m)``.

    Raises:
        ConstructionError: If the ideal is not inside the kernel of the boundary
    """
    _require_parallel(f, g)
    n_module = f.target
    seed = Subspace.span((f.lambda_map - g.lambda_map).columns(), n_module.dim)
    ideal, rounds = _ideal_closure(n_module, seed)
    for v in ideal.vectors():
        if not is_zero_vector(n_module.boundary.apply(v)):
            raise ConstructionError(
                "generated ideal is not inside ker d", tensor="boundary", witness=v
            )
    obj, projection = quotient(n_module, ideal)
    logger.debug(f"Coequalizer ideal of dimension {ideal.dim} after {rounds} rounds")
    return _finish("coequalizer", obj, (projection,), True, rounds, ideal)


def _mutual_bracket(x: CrossedLModule, y: CrossedLModule) -> Bilinear:
    """Bracket on ``M (+) N`` where ``N`` acts on ``M`` through its boundary."""
    m, n = x.dim, y.dim
    bx, by = x.module.bracket, y.module.bracket
    acting = x.base.alpha @ y.boundary  # n -> alpha_L(d_N n)

    def value(i: int, j: int) -> Vector:
        if i < m and j < m:
            return concat_vectors(bx.on_basis(i, j), zero_vector(n))
        if i >= m and j >= m:
            return concat_vectors(zero_vector(m), by.on_basis(i - m, j - m))
        if i < m:
            acted = x.right.apply(unit_vector(m, i), acting.column(j - m))
        else:
            acted = x.left.apply(acting.column(i - m), unit_vector(m, j))
        return concat_vectors(acted, zero_vector(n))

    return Bilinear.from_function(m + n, m + n, m + n, value)


def _amalgamate(
    kind: str,
    x: CrossedLModule,
    y: CrossedLModule,
    extra: Sequence[Vector],
    sign: PeifferSign,
) -> Tuple[ConstructionResult, CMLMorphism, CMLMorphism]:
    if x.base != y.base:
        raise BaseMismatchError(f"{kind} of crossed modules over different bases")
    m, n = x.dim, y.dim
    ambient = _pair(x, y, _mutual_bracket(x, y), Matrix.hstack(x.boundary, y.boundary))
    generators: List[Vector] = []
    for q in range(n):
        dn = y.boundary.column(q)
        for k in range(m):
            dm = x.boundary.column(k)
            first = x.left.apply(dn, unit_vector(m, k))
            second = y.left.apply(dm, unit_vector(n, q))
            if sign is PeifferSign.SIGNED:
                second = tuple(-c for c in second)
            generators.append(concat_vectors(first, second))
    for g in generators:
        if not is_zero_vector(ambient.boundary.apply(g)):
            logger.warning(
                f"{kind} generator has nonzero boundary with {sign.value} sign"
            )
            raise ConstructionError(
                f"{kind} boundary not well-defined for these inputs",
                tensor="boundary",
                witness=g,
            )
    seed = Subspace.span(list(generators) + list(extra), m + n)
    ideal, rounds = _ideal_closure(ambient, seed)
    for v in ideal.vectors():
        if not is_zero_vector(ambient.boundary.apply(v)):
            raise ConstructionError(
                f"{kind} boundary not well-defined for these inputs",
                tensor="boundary",
                witness=v,
            )
    obj, projection = quotient(ambient, ideal)
    p = projection.lambda_map
    into_first = CMLMorphism(
        x, obj, p @ Matrix.vstack(Matrix.identity(m), Matrix.zeros(n, m))
    )
    into_second = CMLMorphism(
        y, obj, p @ Matrix.vstack(Matrix.zeros(m, n), Matrix.identity(n))
    )
    result = _finish(kind, obj, (into_first, into_second), True, rounds, ideal)
    return result, into_first, into_second


def coproduct(
    x: CrossedLModule, y: CrossedLModule, sign: PeifferSign = PeifferSign.PRINTED
) -> ConstructionResult:
    """``(M x| N) / I`` with ``delta(m, n) = d_M m + d_N n``.

    Legs are ``m -> (m, 0) + I`` and ``n -> (0, n) + I``.

    Raises:
        ConstructionError: If ``delta`` does not vanish on the ideal
    """
    return _amalgamate("coproduct", x, y, (), sign)[0]


def pushout(
    f: CMLMorphism, g: CMLMorphism, sign: PeifferSign = PeifferSign.PRINTED
) -> ConstructionResult:
    """Pushout of ``f: E -> N`` and ``g: E -> M`` as ``(M x| N) / T``.

    ``T`` adds the generators ``(g(e), -f(e))`` to the coproduct ideal.

    Raises:
        PreconditionError: If ``f`` and ``g`` have different sources
        ConstructionError: If the boundary does not descend or the square
            does not commute
    """
    if f.source != g.source:
        raise PreconditionError("pushout needs morphisms with a common source")
    x, y = g.target, f.target
    extra = [
        concat_vectors(
            g.lambda_map.column(e), tuple(-c for c in f.lambda_map.column(e))
        )
        for e in range(f.source.dim)
    ]
    result, into_x, into_y = _amalgamate("pushout", x, y, extra, sign)
    if into_x.lambda_map @ g.lambda_map != into_y.lambda_map @ f.lambda_map:
        raise ConstructionError("pushout square does not commute", tensor="legs")
    return result


@dataclass
class UniversalPropertyReport:
    """Outcome of solving for a mediating morphism."""

    exists: bool
    mediating: Optional[Matrix] = None
    unique: bool = False
    morphism_report: Optional[ValidationReport] = None
    notes: List[str] = field(default_factory=list)

    def render_text(self) -> str:
        lines = [f"exists: {self.exists}", f"unique: {self.unique}"]
        if self.mediating is not None:
            rows = [
                " ".join(format_rational(v) for v in self.mediating.row(i))
                for i in range(self.mediating.rows)
            ]
            lines.append("mediating: [" + "; ".join(rows) + "]")
        lines.extend(self.notes)
        return "\n".join(lines)


class _LinearSystem:
    """Equations ``sum_k A_k H B_k = R`` in the entries of an ``r x c`` unknown."""

    def __init__(self, rows: int, cols: int) -> None:
        self.rows = rows
        self.cols = cols
        self.equations: List[List] = []
        self.rhs: List = []

    def add(self, terms: Sequence[Tuple[Matrix, Matrix]], result: Matrix) -> None:
        for s in range(result.rows):
            for t in range(result.cols):
                coeffs = [0] * (self.rows * self.cols)
                for a, b in terms:
                    for i in range(self.rows):
                        a_si = a.entry(s, i)
                        if a_si == 0:
                            continue
                        for j in range(self.cols):
                            b_jt = b.entry(j, t)
                            if b_jt:
                                coeffs[i * self.cols + j] += a_si * b_jt
                self.equations.append(coeffs)
                self.rhs.append(result.entry(s, t))

    def matrix(self) -> Matrix:
        return Matrix.from_rows(self.equations, self.rows * self.cols)


def verify_universal_property(
    result: ConstructionResult, apex: CrossedLModule, cone: Sequence[CMLMorphism]
) -> UniversalPropertyReport:
    """Solve for the mediating morphism of a cone (limits) or cocone (colimits).

    Args:
        result: Completed construction
        apex: The other vertex of the cone
        cone: One morphism per leg; ``apex -> leg target`` for limits and
            ``leg source -> apex`` for colimits

    Returns:
        Existence, the mediating matrix, uniqueness and the post-check report

    Raises:
        ShapeError: If the cone does not match the legs
    """
    if len(cone) != len(result.legs):
        raise ShapeError(f"cone has {len(cone)} morphisms for {len(result.legs)} legs")
    obj = result.obj
    source, target = (obj, apex) if result.is_colimit else (apex, obj)
    r, c = target.dim, source.dim
    system = _LinearSystem(r, c)
    eye_r, eye_c = Matrix.identity(r), Matrix.identity(c)
    for leg, arrow in zip(result.legs, cone):
        if result.is_colimit:
            system.add([(eye_r, leg.lambda_map)], arrow.lambda_map)
        else:
            system.add([(leg.lambda_map, eye_c)], arrow.lambda_map)
    system.add([(target.boundary, eye_c)], source.boundary)
    zero = Matrix.zeros(r, c)
    system.add([(target.module.alpha, eye_c), (-eye_r, source.module.alpha)], zero)
    operators = zip(target.module.module.operators, source.module.module.operators)
    for op_t, op_s in operators:
        system.add([(op_t, eye_c), (-eye_r, op_s)], zero)
    for x in source.base.carrier.basis():
        system.add(
            [
                (target.left.left_operator(x), eye_c),
                (-eye_r, source.left.left_operator(x)),
            ],
            zero,
        )
        system.add(
            [
                (target.right.right_operator(x), eye_c),
                (-eye_r, source.right.right_operator(x)),
            ],
            zero,
        )

    coefficients = system.matrix()
    solution = solve(coefficients, system.rhs)
    if solution is None:
        return UniversalPropertyReport(
            False, notes=["no mediating map satisfies the constraints"]
        )
    unique = nullspace(coefficients).dim == 0
    mediating = Matrix(r, c, solution)
    morphism_report = validate_cml_morphism(CMLMorphism(source, target, mediating))
    return UniversalPropertyReport(
        exists=morphism_report.is_valid,
        mediating=mediating,
        unique=unique,
        morphism_report=morphism_report,
    )
