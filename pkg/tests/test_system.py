"""Library-wide acceptance sweeps."""

import itertools
from pathlib import Path
from typing import Any, Dict, Generator, List, Tuple

import pytest
from sympy import Rational, S

from hlr_toolkit.action import (
    LRSAction,
    check_semidirect_equivalence,
    validate_lrs_action,
)
from hlr_toolkit.algebra import (
    CommAlgebra,
    HomLeibnizAAlgebra,
    HomLeibnizAlgebra,
    left_leibniz_defect,
    validate_comm_algebra,
    validate_hom_leibniz,
    validate_hom_leibniz_a_algebra,
    validate_module,
)
from hlr_toolkit.app import AppConfig, Application
from hlr_toolkit.cat1 import (
    Cat1Algebra,
    Cat4Mode,
    cat1_to_cm,
    cm_to_cat1,
    roundtrip_iso_check,
    validate_cat1,
)
from hlr_toolkit.category import (
    CMLMorphism,
    ConstructionResult,
    CrossedLModule,
    PeifferSign,
    adjoint_module,
    coequalizer,
    coproduct,
    equalizer,
    identity_morphism,
    product,
    pullback,
    pushout,
    terminal,
    to_terminal,
    verify_universal_property,
)
from hlr_toolkit.config import ENV_OVERRIDES
from hlr_toolkit.crossed import (
    CrossedModule,
    check_boundary_homomorphisms,
    validate_crossed_module,
)
from hlr_toolkit.errors import HLRError
from hlr_toolkit.fuzz import MutationSpec, fuzz
from hlr_toolkit.library import (
    EXAMPLES,
    INVALID_EXAMPLES,
    build_example,
    dxmod_rank1,
    ideal_module,
    kernel_line_module,
    leibniz_dim2_hlr,
    load_example,
    twisted_plane_module,
    yau_twisted_dim2,
)
from hlr_toolkit.linalg import Matrix
from hlr_toolkit.main import run_command
from hlr_toolkit.report import ValidationReport
from hlr_toolkit.rinehart import HLRAlgebra, anchor_symmetry_defect, validate_hlr
from hlr_toolkit.serialization import TypedMorphism, dumps, from_document

CROSSED_EXAMPLES = [e.name for e in EXAMPLES if e.name.startswith("crossed-")]
VALID_CROSSED = [n for n in CROSSED_EXAMPLES if n not in INVALID_EXAMPLES]
# Examples with alpha = id on both sides.
UNTWISTED_CROSSED = [
    "crossed-trivial",
    "crossed-ideal",
    "crossed-dxmod",
    "crossed-adjoint",
]


@pytest.fixture
def app() -> Application:
    """Create an Application with default configuration."""
    return Application(AppConfig())


def _algebras_in(obj: Any) -> List[Any]:
    """Hom-Leibniz and HLR algebras reachable from a library object."""
    if isinstance(obj, HLRAlgebra):
        return [obj, obj.carrier]
    if isinstance(obj, HomLeibnizAlgebra):
        return [obj]
    if isinstance(obj, HomLeibnizAAlgebra):
        return [obj.carrier]
    if isinstance(obj, LRSAction):
        return _algebras_in(obj.actor) + [obj.target.carrier]
    if isinstance(obj, CrossedModule):
        return _algebras_in(obj.action)
    if isinstance(obj, CrossedLModule):
        return _algebras_in(obj.cm)
    if isinstance(obj, Cat1Algebra):
        return _algebras_in(obj.source) + _algebras_in(obj.base)
    if isinstance(obj, TypedMorphism):
        return _algebras_in(obj.source) + _algebras_in(obj.target)
    return []


def _component_reports(obj: Any) -> List[ValidationReport]:
    """Reports of every part of ``obj``, each run by its own validator."""
    if isinstance(obj, TypedMorphism):
        return _component_reports(obj.source) + _component_reports(obj.target)
    if isinstance(obj, CrossedLModule):
        return _component_reports(obj.cm)
    if isinstance(obj, Cat1Algebra):
        return (
            [validate_cat1(obj)]
            + _component_reports(obj.source)
            + _component_reports(obj.base)
        )
    if isinstance(obj, CrossedModule):
        return [validate_crossed_module(obj)] + _component_reports(obj.action)
    if isinstance(obj, LRSAction):
        return (
            [validate_lrs_action(obj)]
            + _component_reports(obj.actor)
            + _component_reports(obj.target)
        )
    if isinstance(obj, HLRAlgebra):
        return [
            validate_hlr(obj),
            validate_comm_algebra(obj.base),
            validate_hom_leibniz(obj.carrier),
            validate_module(obj.module),
        ]
    if isinstance(obj, HomLeibnizAAlgebra):
        return [
            validate_hom_leibniz_a_algebra(obj),
            validate_comm_algebra(obj.base),
            validate_hom_leibniz(obj.carrier),
            validate_module(obj.module),
        ]
    if isinstance(obj, HomLeibnizAlgebra):
        return [validate_hom_leibniz(obj)]
    if isinstance(obj, CommAlgebra):
        return [validate_comm_algebra(obj)]
    return []


RawVector = List[Rational]


def _raw_matrix(node: Dict[str, Any]) -> List[List[Rational]]:
    return [[Rational(v) for v in row] for row in node["rows"]]


def _raw_bilinear(node: Dict[str, Any]) -> List[List[List[Rational]]]:
    return [[[Rational(v) for v in row] for row in plane] for plane in node["coeffs"]]


def _raw_apply(c: List[List[List[Rational]]], x: RawVector, y: RawVector) -> RawVector:
    return [
        sum(
            (c[k][i][j] * x[i] * y[j] for i in range(len(x)) for j in range(len(y))),
            S.Zero,
        )
        for k in range(len(c))
    ]


def _raw_map(m: List[List[Rational]], v: RawVector) -> RawVector:
    return [sum((row[j] * v[j] for j in range(len(v))), S.Zero) for row in m]


def _raw_basis(n: int) -> List[RawVector]:
    return [[S.One if i == j else S.Zero for i in range(n)] for j in range(n)]


def _raw_defects(node: Any, path: str = "payload") -> List[str]:
    """Axioms broken anywhere in a document payload, recomputed from the text.

    Covers every commutative algebra (commutativity, associativity, phi
    multiplicative, unit), every Hom-Leibniz bracket (multiplicativity and
    the Hom-Leibniz identity) and every module over a unital base.
    """
    defects: List[str] = []
    if isinstance(node, list):
        for k, item in enumerate(node):
            defects += _raw_defects(item, f"{path}[{k}]")
        return defects
    if not isinstance(node, dict):
        return defects
    if "mul" in node and "phi" in node:
        mul, phi = _raw_bilinear(node["mul"]), _raw_matrix(node["phi"])
        basis = _raw_basis(len(mul))

        def times(f: RawVector, g: RawVector) -> RawVector:
            return _raw_apply(mul, f, g)

        for f, g in itertools.product(basis, repeat=2):
            fg = times(f, g)
            if fg != times(g, f):
                defects.append(f"{path}: COMM")
            if _raw_map(phi, fg) != times(_raw_map(phi, f), _raw_map(phi, g)):
                defects.append(f"{path}: PHI-MORPH")
            for h in basis:
                if times(fg, h) != times(f, times(g, h)):
                    defects.append(f"{path}: ASSOC")
        if node.get("unit") is not None:
            unit = [Rational(v) for v in node["unit"]]
            if any(times(unit, f) != f for f in basis) or _raw_map(phi, unit) != unit:
                defects.append(f"{path}: UNIT")
    if "bracket" in node and "alpha" in node:
        bracket, alpha = _raw_bilinear(node["bracket"]), _raw_matrix(node["alpha"])
        basis = _raw_basis(len(alpha))

        def br(x: RawVector, y: RawVector) -> RawVector:
            return _raw_apply(bracket, x, y)

        for x, y in itertools.product(basis, repeat=2):
            ax, ay = _raw_map(alpha, x), _raw_map(alpha, y)
            if _raw_map(alpha, br(x, y)) != br(ax, ay):
                defects.append(f"{path}: MULT")
            for z in basis:
                lhs = br(ax, br(y, z))
                left = br(br(x, y), _raw_map(alpha, z))
                rhs = [a + b for a, b in zip(left, br(ay, br(x, z)))]
                if lhs != rhs:
                    defects.append(f"{path}: HJ")
    if "module" in node and isinstance(node.get("base"), dict):
        action = _raw_bilinear(node["module"])
        base = node["base"]
        mul = _raw_bilinear(base["mul"])
        scalars, vectors = _raw_basis(len(mul)), _raw_basis(len(action))
        for f, g, v in itertools.product(scalars, scalars, vectors):
            lhs = _raw_apply(action, _raw_apply(mul, f, g), v)
            if lhs != _raw_apply(action, f, _raw_apply(action, g, v)):
                defects.append(f"{path}: MOD-ASSOC")
        if base.get("unit") is not None:
            unit = [Rational(v) for v in base["unit"]]
            if any(_raw_apply(action, unit, v) != v for v in vectors):
                defects.append(f"{path}: MOD-UNIT")
    for key, value in sorted(node.items()):
        defects += _raw_defects(value, f"{path}.{key}")
    return defects


@pytest.mark.parametrize("name", [e.name for e in EXAMPLES])
def test_library_validates(app: Application, name: str) -> None:
    """Test registered examples pass, and the registered invalid ones fail."""
    report = app.validate_object(build_example(name))
    assert report.is_valid == (name not in INVALID_EXAMPLES), report.render_text()


@pytest.mark.parametrize(
    "name", [e.name for e in EXAMPLES if e.name not in INVALID_EXAMPLES]
)
def test_mutation_sweep_is_sound(app: Application, name: str) -> None:
    """Test every undetected mutation passes an independent recheck of its parts."""
    doc = load_example(name)
    assert _raw_defects(doc.payload) == []
    detected = 0
    for seed in range(100):
        mutated = fuzz(doc, MutationSpec(seed))
        try:
            obj = from_document(mutated)
            report = app.validate_object(obj)
        except HLRError:
            detected += 1
            continue
        if not report.is_valid:
            detected += 1
            continue
        assert _raw_defects(mutated.payload) == [], seed
        for part in _component_reports(obj):
            assert part.is_valid, (seed, part.render_text())
        for algebra in _algebras_in(obj):
            if isinstance(algebra, HLRAlgebra):
                assert anchor_symmetry_defect(algebra) == []
            else:
                assert left_leibniz_defect(algebra) == []
    assert detected > 0


def test_raw_recheck_sees_endpoint_damage() -> None:
    """Test the document-level recheck reaches the endpoints of a cat1 morphism."""
    site = "payload.source.base.base.unit[0]"
    doc = fuzz(
        load_example("morphism-cat1-identity"), MutationSpec(0, target_path=site)
    )
    assert "payload.source.base.base: UNIT" in _raw_defects(doc.payload)
    assert not all(part.is_valid for part in _component_reports(from_document(doc)))


def test_derived_identities_on_library() -> None:
    """Test the symmetric-bracket identities on every library algebra."""
    for example in EXAMPLES:
        if example.name in INVALID_EXAMPLES:
            continue
        for algebra in _algebras_in(example.build()):
            if isinstance(algebra, HLRAlgebra):
                assert anchor_symmetry_defect(algebra) == []
            else:
                assert left_leibniz_defect(algebra) == []


@pytest.mark.parametrize("prefix", ["payload.left", "payload.right"])
def test_semidirect_equivalence_under_mutation(prefix: str) -> None:
    """Test action validity matches product validity for 25 mutations per side."""
    doc = load_example("action-dxmod-ideal")
    actions = [from_document(doc)]
    actions += [
        from_document(fuzz(doc, MutationSpec(seed, target_path=prefix)))
        for seed in range(25)
    ]
    actions.append(build_example("crossed-adjoint").action)
    for act in actions:
        action_report, product_report = check_semidirect_equivalence(act)
        assert action_report.is_valid == product_report.is_valid


@pytest.mark.parametrize("name", UNTWISTED_CROSSED)
def test_boundary_homomorphisms_under_mutation(name: str) -> None:
    """Test the boundary axioms match the two homomorphisms on boundary mutations."""
    doc = load_example(name)
    modules = [from_document(doc)]
    modules += [
        from_document(fuzz(doc, MutationSpec(seed, target_path="payload.boundary")))
        for seed in range(13)
    ]
    for cm in modules:
        boundary_report, hom_report = check_boundary_homomorphisms(cm)
        assert boundary_report.is_valid == hom_report.is_valid


@pytest.mark.parametrize("name", VALID_CROSSED)
def test_cat1_forward_and_round_trip(name: str) -> None:
    """Test the cat1 construction and the round trip on every valid crossed module."""
    cm = build_example(name)
    c = cm_to_cat1(cm)
    assert validate_cat1(c, Cat4Mode.RECONSTRUCTED).is_valid
    back = cat1_to_cm(c)
    assert back.boundary == cm.boundary @ cm.target.alpha
    assert back.action.left == cm.action.left
    assert back.action.right == cm.action.right
    iso = roundtrip_iso_check(cm)
    assert iso.phi_map == cm.target.alpha


def test_strict_cat4_discrepancy_is_reported(caplog: pytest.LogCaptureFixture) -> None:
    """Test the strict reading fails on the anchored example and says why."""
    c = cm_to_cat1(build_example("crossed-dxmod"))
    with caplog.at_level("WARNING"):
        report = validate_cat1(c, Cat4Mode.STRICT)
    assert report.tags() == ["Cat4"]
    assert report.notes
    assert "Strict Cat4 fails" in caplog.text


def _constructions() -> List[ConstructionResult]:
    ideal, line, plane = ideal_module(), kernel_line_module(), twisted_plane_module()
    adjoint = adjoint_module(ideal.base)
    inclusion = CMLMorphism(ideal, adjoint, Matrix.from_rows([[1], [0]]))
    plane_id = identity_morphism(plane)
    plane_alpha = CMLMorphism(plane, plane, plane.module.alpha)
    line_id = identity_morphism(line)
    signed = PeifferSign.SIGNED
    return [
        equalizer(plane_id, plane_alpha),
        equalizer(inclusion, inclusion),
        equalizer(line_id, line_id),
        pullback(inclusion, inclusion),
        pullback(plane_id, plane_alpha),
        pullback(line_id, line_id),
        terminal(leibniz_dim2_hlr()),
        terminal(dxmod_rank1()),
        terminal(yau_twisted_dim2()),
        product(ideal, line),
        product(line, line),
        product(ideal, ideal),
        coequalizer(plane_id, plane_alpha),
        coequalizer(inclusion, inclusion),
        coequalizer(line_id, line_id),
        coproduct(ideal, line),
        coproduct(line, line),
        coproduct(adjoint, adjoint, signed),
        pushout(inclusion, inclusion, signed),
        pushout(line_id, line_id),
        pushout(plane_id, plane_alpha),
    ]


def test_constructions_satisfy_their_universal_property() -> None:
    """Test each construction mediates uniquely to its own cone by the identity."""
    for result in _constructions():
        assert validate_crossed_module(result.obj.cm).is_valid
        outcome = verify_universal_property(result, result.obj, list(result.legs))
        assert outcome.exists, result.kind
        assert outcome.unique, result.kind
        assert outcome.mediating is not None and outcome.mediating.is_identity()
        if result.ideal is not None:
            assert result.rounds <= result.ideal.ambient_dim


def _cones() -> List[Tuple[ConstructionResult, CrossedLModule, List[CMLMorphism]]]:
    """Cones and cocones whose apex is not the construction itself."""
    ideal, line, plane = ideal_module(), kernel_line_module(), twisted_plane_module()
    adjoint = adjoint_module(ideal.base)
    alpha = plane.module.alpha

    def arrow(source: CrossedLModule, target: CrossedLModule, rows: Any) -> CMLMorphism:
        return CMLMorphism(source, target, Matrix.from_rows(rows))

    inclusion = arrow(ideal, adjoint, [[1], [0]])
    line_into_plane = arrow(line, plane, [[1], [0]])
    plane_pullback = pullback(
        identity_morphism(plane), CMLMorphism(plane, plane, alpha)
    )
    inclusion_pullback = pullback(inclusion, inclusion)
    line_plane_product = product(line, plane)
    term = terminal(leibniz_dim2_hlr())
    line_plane_coproduct = coproduct(line, plane)
    line_pushout = pushout(line_into_plane, line_into_plane)
    return [
        (
            plane_pullback,
            plane,
            [CMLMorphism(plane, plane, alpha), identity_morphism(plane)],
        ),
        (
            plane_pullback,
            plane,
            [
                arrow(plane, plane, [[0, 0], [0, 2]]),
                arrow(plane, plane, [[0, 0], [0, 1]]),
            ],
        ),
        (plane_pullback, line, [arrow(line, plane, [[1], [0]])] * 2),
        (inclusion_pullback, ideal, [identity_morphism(ideal)] * 2),
        (
            line_plane_product,
            plane,
            [arrow(plane, line, [[1, 0]]), identity_morphism(plane)],
        ),
        (line_plane_product, line, [arrow(line, line, [[3]]), line_into_plane]),
        (
            line_plane_product,
            plane,
            [arrow(plane, line, [[0, 0]]), arrow(plane, plane, [[0, 0], [0, 1]])],
        ),
        (term, ideal, []),
        (term, line, []),
        (term, plane, []),
        (term, adjoint, []),
        (line_plane_coproduct, plane, [line_into_plane, identity_morphism(plane)]),
        (
            line_plane_coproduct,
            plane,
            [arrow(line, plane, [[0], [0]]), arrow(plane, plane, [[3, 0], [0, 0]])],
        ),
        (
            line_plane_coproduct,
            line,
            [arrow(line, line, [[2]]), arrow(plane, line, [[1, 0]])],
        ),
        (line_pushout, plane, [identity_morphism(plane)] * 2),
        (
            line_pushout,
            plane,
            [
                arrow(plane, plane, [[1, 0], [0, 0]]),
                arrow(plane, plane, [[1, 0], [0, 5]]),
            ],
        ),
        (line_pushout, line, [arrow(plane, line, [[1, 0]])] * 2),
    ]


@pytest.mark.parametrize("index", range(17))
def test_mediating_morphism_of_foreign_cones(index: int) -> None:
    """Test the solver finds the unique map factoring a cone through the result."""
    result, apex, cone = _cones()[index]
    outcome = verify_universal_property(result, apex, cone)
    assert outcome.exists, outcome.morphism_report
    assert outcome.unique
    h = outcome.mediating
    assert h is not None
    for leg, arrow in zip(result.legs, cone):
        if result.is_colimit:
            assert h @ leg.lambda_map == arrow.lambda_map
        else:
            assert leg.lambda_map @ h == arrow.lambda_map
    if result.kind == "terminal":
        assert h == to_terminal(apex, result).lambda_map
        assert h == apex.boundary
    if result.kind == "product":
        assert h == Matrix.vstack(cone[0].lambda_map, cone[1].lambda_map)


def test_foreign_cones_cover_every_shape() -> None:
    """Test at least three foreign cones per limit and colimit shape."""
    kinds = [result.kind for result, _, _ in _cones()]
    for kind in ("pullback", "product", "terminal", "coproduct", "pushout"):
        assert kinds.count(kind) >= 3, kind


def test_cone_that_does_not_commute_has_no_mediating_map() -> None:
    """Test a pair of arrows that disagree on the shared line has no factorisation."""
    line, plane = kernel_line_module(), twisted_plane_module()
    result = pushout(
        CMLMorphism(line, plane, Matrix.from_rows([[1], [0]])),
        CMLMorphism(line, plane, Matrix.from_rows([[1], [0]])),
    )
    cone = [
        identity_morphism(plane),
        CMLMorphism(plane, plane, Matrix.diagonal([2, 1])),
    ]
    outcome = verify_universal_property(result, plane, cone)
    assert not outcome.exists
    assert outcome.mediating is None


@pytest.fixture
def workdir(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> Generator[Path, None, None]:
    """Empty working directory without HLR_* variables."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("HOME", str(tmp_path / "home"))
    for variable in ENV_OVERRIDES:
        monkeypatch.delenv(variable, raising=False)
    yield tmp_path


@pytest.mark.parametrize("command", ["validate", "to-cat1", "roundtrip", "fuzz"])
def test_cli_output_is_byte_stable(workdir: Path, command: str) -> None:
    """Test two runs of the same command print the same bytes."""
    path = workdir / "crossed-dxmod.json"
    path.write_text(dumps(load_example("crossed-dxmod")), encoding="utf-8")
    argv = [command, str(path)]
    if command == "fuzz":
        argv += ["--seed", "3", "--count", "5"]
    first = run_command(argv)
    second = run_command(argv)
    assert first == second
    assert first[0] == 0
