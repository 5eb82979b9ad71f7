"""Application layer: one method per command, each returning a ``CommandResult``."""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Type

from . import library
from .action import (
    LRSAction,
    check_semidirect_equivalence,
    semidirect,
    validate_lrs_action,
)
from .algebra import (
    CommAlgebra,
    HomLeibnizAAlgebra,
    HomLeibnizAlgebra,
    check_hla_homomorphism,
    validate_comm_algebra,
    validate_hom_leibniz,
    validate_hom_leibniz_a_algebra,
)
from .cat1 import (
    Cat1Algebra,
    Cat4Mode,
    cat1_to_cm,
    cm_to_cat1,
    roundtrip_iso_check,
    validate_cat1,
    validate_cat1_morphism,
)
from .category import (
    ConstructionResult,
    CrossedLModule,
    PeifferSign,
    coequalizer,
    coproduct,
    equalizer,
    product,
    pullback,
    pushout,
    terminal,
    validate_cml_morphism,
)
from .crossed import CrossedModule, validate_cm_morphism, validate_crossed_module
from .errors import BaseMismatchError, HLRError, ParseError
from .fuzz import MutationSpec, fuzz_with_site
from .linalg import Matrix, format_rational
from .report import ValidationReport
from .rinehart import HLRAlgebra, check_hlr_homomorphism, validate_hlr, yau_twist
from .serialization import (
    AlgebraDocument,
    TypedMorphism,
    dumps,
    from_document,
    load,
    to_document,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


class ApplicationError(Exception):
    """Base class for application-specific exceptions."""

    pass


class UsageError(ApplicationError):
    """Wrong arguments or the wrong kind of input file."""

    pass


@dataclass
class AppConfig:
    """Application configuration."""

    cat4_mode: Cat4Mode = Cat4Mode.RECONSTRUCTED
    peiffer_sign: PeifferSign = PeifferSign.PRINTED
    output_format: str = "text"
    fuzz_count: int = 1
    fuzz_delta: str = "1"


@dataclass
class CommandResult:
    """Outcome of one command.

    Attributes:
        exit_code: 0 success, 1 validation failure, 2 usage or parse error
        lines: Summary lines printed before the reports
        reports: Validation reports
        document: Document produced by a construction, if any
    """

    exit_code: int
    lines: List[str] = field(default_factory=list)
    reports: List[ValidationReport] = field(default_factory=list)
    document: Optional[AlgebraDocument] = None

    @classmethod
    def from_reports(
        cls,
        reports: List[ValidationReport],
        lines: Optional[List[str]] = None,
        document: Optional[AlgebraDocument] = None,
    ) -> "CommandResult":
        ok = all(r.is_valid for r in reports)
        return cls(EXIT_OK if ok else EXIT_INVALID, lines or [], reports, document)


def render_matrix(m: Matrix) -> str:
    """``[a b; c d]`` with canonical rationals."""
    rows = [" ".join(format_rational(v) for v in m.row(i)) for i in range(m.rows)]
    return "[" + "; ".join(rows) + "]"


def parse_matrix_argument(text: str) -> Matrix:
    """Parse ``"4,0;0,2"`` (rows by ``;``, entries by ``,``).

    Raises:
        UsageError: If the text is not a rectangular array of rationals
    """
    try:
        rows = [
            [entry.strip() for entry in row.split(",")]
            for row in text.split(";")
            if row.strip()
        ]
        return Matrix.from_rows(rows)
    except (ValueError, ZeroDivisionError, HLRError) as e:
        raise UsageError(f"cannot read matrix {text!r}: {e}")


class Application:
    """Runs the commands of the ``hlr`` tool."""

    def __init__(self, config: AppConfig) -> None:
        """Initialize the application.

        Args:
            config: Application configuration
        """
        self.config = config
        self.logger = logging.getLogger(__name__)

    # Input

    def load(self, path: str) -> Tuple[AlgebraDocument, Any]:
        """Read and decode a document file.

        Raises:
            UsageError: If the file cannot be read
            ParseError: If the document is malformed
        """
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e}")
        try:
            return load(text)
        except ParseError as e:
            raise ParseError(e.message, path=f"{path}:{e.path}" if e.path else path)

    def _load_as(self, path: str, expected: Type[Any], kind: str) -> Any:
        _, obj = self.load(path)
        if not isinstance(obj, expected):
            raise UsageError(f"{path}: expected a {kind} document")
        return obj

    def _load_morphism(self, path: str, morphism_kind: str) -> Any:
        obj = self._load_as(path, TypedMorphism, "morphism")
        if obj.morphism_kind != morphism_kind:
            raise UsageError(f"{path}: expected a {morphism_kind} morphism")
        return obj.morphism

    def _load_crossed_l_module(self, path: str) -> CrossedLModule:
        cm = self._load_as(path, CrossedModule, "crossed-module")
        return CrossedLModule(cm.actor, cm)

    # Validation

    def validate_object(self, obj: Any) -> ValidationReport:
        """Run the validator that matches the object's type."""
        if isinstance(obj, TypedMorphism):
            return self.morphism_report(obj)
        if isinstance(obj, Cat1Algebra):
            return validate_cat1(obj, self.config.cat4_mode)
        validators = [
            (CommAlgebra, validate_comm_algebra),
            (HomLeibnizAlgebra, validate_hom_leibniz),
            (HomLeibnizAAlgebra, validate_hom_leibniz_a_algebra),
            (HLRAlgebra, validate_hlr),
            (LRSAction, validate_lrs_action),
            (CrossedModule, validate_crossed_module),
        ]
        for cls, validate in validators:
            if isinstance(obj, cls):
                return validate(obj)
        raise UsageError(f"nothing validates a {type(obj).__name__}")

    def morphism_report(self, m: TypedMorphism) -> ValidationReport:
        """Validate both endpoints, then the morphism between them.

        Endpoint failures are scoped ``source`` and ``target``.
        """
        report = ValidationReport(f"{m.morphism_kind} morphism")
        if isinstance(m.source, CrossedLModule):
            report.extend(validate_crossed_module(m.source.cm), "source")
            report.extend(validate_crossed_module(m.target.cm), "target")
            report.extend(validate_cml_morphism(m.morphism))
            return report
        report.extend(self.validate_object(m.source), "source")
        report.extend(self.validate_object(m.target), "target")
        try:
            hom = self._homomorphism_report(m)
        except BaseMismatchError as e:
            if report.is_valid:
                raise
            report.note(f"map not checked: {e}")
            return report
        report.extend(hom)
        return report

    def _homomorphism_report(self, m: TypedMorphism) -> ValidationReport:
        if m.morphism_kind == "hla":
            return check_hla_homomorphism(m.morphism, m.source, m.target)
        if m.morphism_kind == "hlr":
            return check_hlr_homomorphism(m.morphism, m.source, m.target)
        if m.morphism_kind == "crossed-module":
            return validate_cm_morphism(m.morphism, m.source, m.target)
        return validate_cat1_morphism(m.morphism, m.source, m.target)

    def validate(self, path: str) -> CommandResult:
        doc, obj = self.load(path)
        report = self.validate_object(obj)
        self.logger.debug(f"Validated {doc.kind} from {path}")
        return CommandResult.from_reports([report], [f"{path}: {doc.kind}"])

    def check_morphism(self, paths: Sequence[str]) -> CommandResult:
        reports = []
        for path in paths:
            m = self._load_as(path, TypedMorphism, "morphism")
            combined = ValidationReport(f"{path}: {m.morphism_kind} morphism")
            combined.extend(self.morphism_report(m))
            reports.append(combined)
        return CommandResult.from_reports(reports)

    # Semi-direct products and cat1 conversion

    def semidirect(self, path: str) -> CommandResult:
        act = self._load_as(path, LRSAction, "action")
        action_report, product_report = check_semidirect_equivalence(act)
        lines = [
            f"action valid: {action_report.is_valid}",
            f"semi-direct product valid: {product_report.is_valid}",
        ]
        if action_report.is_valid != product_report.is_valid:
            self.logger.warning("Action and semi-direct product validity disagree")
        return CommandResult.from_reports(
            [action_report, product_report], lines, to_document(semidirect(act))
        )

    def to_cat1(self, path: str) -> CommandResult:
        cm = self._load_as(path, CrossedModule, "crossed-module")
        c = cm_to_cat1(cm)
        report = validate_cat1(c, self.config.cat4_mode)
        lines = [f"source dimension {c.source.dim}, base dimension {c.base.dim}"]
        return CommandResult.from_reports([report], lines, to_document(c))

    def to_cm(self, path: str) -> CommandResult:
        c = self._load_as(path, Cat1Algebra, "cat1")
        cm = cat1_to_cm(c, self.config.cat4_mode)
        lines = [f"kernel of s has dimension {cm.target.dim}"]
        return CommandResult.from_reports(
            [validate_crossed_module(cm)], lines, to_document(cm)
        )

    def roundtrip(self, path: str) -> CommandResult:
        cm = self._load_as(path, CrossedModule, "crossed-module")
        iso = roundtrip_iso_check(cm)
        back = cat1_to_cm(cm_to_cat1(cm), self.config.cat4_mode)
        lines = [
            "round trip is isomorphic to the input via (alpha_M, alpha_L)",
            f"alpha_M = {render_matrix(iso.phi_map)}",
            f"alpha_L = {render_matrix(iso.psi_map)}",
        ]
        document = to_document(TypedMorphism("crossed-module", iso, back, cm))
        return CommandResult.from_reports(
            [validate_cm_morphism(iso, back, cm)], lines, document
        )

    def twist(self, path: str, alpha: str, phi: str) -> CommandResult:
        classical = self._load_as(path, HLRAlgebra, "hlr")
        twisted = yau_twist(
            classical, parse_matrix_argument(alpha), parse_matrix_argument(phi)
        )
        return CommandResult.from_reports(
            [validate_hlr(twisted)], [], to_document(twisted)
        )

    # Limits and colimits

    def construct(self, kind: str, paths: Sequence[str]) -> CommandResult:
        """Run one construction of the crossed L-module category.

        ``equalizer``, ``pullback``, ``coequalizer`` and ``pushout`` take two
        crossed-l-module morphism files; ``product`` and ``coproduct`` take
        two crossed-module files; ``terminal`` takes one hlr file.
        """
        expected = 1 if kind == "terminal" else 2
        if len(paths) != expected:
            raise UsageError(f"{kind} takes {expected} file(s), got {len(paths)}")
        sign = self.config.peiffer_sign
        result: ConstructionResult
        if kind == "terminal":
            result = terminal(self._load_as(paths[0], HLRAlgebra, "hlr"))
        elif kind in ("product", "coproduct"):
            x, y = (self._load_crossed_l_module(p) for p in paths)
            result = product(x, y) if kind == "product" else coproduct(x, y, sign)
        else:
            f, g = (self._load_morphism(p, "crossed-l-module") for p in paths)
            if kind == "equalizer":
                result = equalizer(f, g)
            elif kind == "pullback":
                result = pullback(f, g)
            elif kind == "coequalizer":
                result = coequalizer(f, g)
            elif kind == "pushout":
                result = pushout(f, g, sign)
            else:
                raise UsageError(f"unknown construction {kind!r}")
        return self._construction_result(result)

    def _construction_result(self, result: ConstructionResult) -> CommandResult:
        lines = [f"{result.kind}: dimension {result.obj.dim}"]
        if result.ideal is not None:
            lines.append(
                f"ideal dimension {result.ideal.dim} "
                f"after {result.rounds} closure round(s)"
            )
        reports = [validate_crossed_module(result.obj.cm)]
        for index, leg in enumerate(result.legs, 1):
            leg_report = ValidationReport(f"leg {index}")
            leg_report.extend(validate_cml_morphism(leg))
            lines.append(f"leg {index}: {render_matrix(leg.lambda_map)}")
            reports.append(leg_report)
        return CommandResult.from_reports(reports, lines, to_document(result.obj))

    # Library and fuzzing

    def examples(self, name: Optional[str] = None) -> CommandResult:
        if name is None:
            names = library.example_names()
            width = max(len(n) for n in names)
            lines = [f"{n.ljust(width)}  {library.describe(n)}" for n in names]
            return CommandResult(EXIT_OK, lines)
        try:
            doc = library.load_example(name)
        except HLRError as e:
            raise UsageError(str(e))
        return CommandResult(
            EXIT_OK, [f"{name}: {library.describe(name)}"], document=doc
        )

    def fuzz(
        self,
        path: str,
        seed: int,
        count: Optional[int] = None,
        delta: Optional[str] = None,
        target: Optional[str] = None,
    ) -> CommandResult:
        """Apply seeded single-constant mutations and validate each one.

        With a count of one the mutated document is the command's document.
        """
        doc, _ = self.load(path)
        count = count or self.config.fuzz_count
        delta = delta or self.config.fuzz_delta
        lines: List[str] = []
        mutated: Optional[AlgebraDocument] = None
        detected = 0
        for offset in range(count):
            spec = MutationSpec(seed + offset, delta, target)
            mutated, site = fuzz_with_site(doc, spec)
            try:
                report = self.validate_object(from_document(mutated))
            except HLRError as e:
                lines.append(f"seed {spec.seed}: {site} rejected while decoding ({e})")
                detected += 1
                continue
            if report.is_valid:
                lines.append(f"seed {spec.seed}: {site} undetected")
            else:
                detected += 1
                tags = ", ".join(report.tags())
                lines.append(f"seed {spec.seed}: {site} detected [{tags}]")
        lines.append(f"{detected}/{count} mutation(s) detected")
        self.logger.info(f"Fuzzed {path}: {detected} of {count} detected")
        return CommandResult(EXIT_OK, lines, document=mutated if count == 1 else None)

    # Output

    def render(self, result: CommandResult, include_document: bool = True) -> str:
        """Render a result in the configured format.

        Args:
            result: Command result
            include_document: Append the document when it is not written to a file
        """
        if self.config.output_format == "json":
            data: Dict[str, Any] = {
                "exit_code": result.exit_code,
                "lines": result.lines,
                "reports": [r.to_dict() for r in result.reports],
            }
            if include_document and result.document is not None:
                data["document"] = result.document.to_dict()
            return json.dumps(data, sort_keys=True, indent=2) + "\n"
        parts = list(result.lines) + [r.render_text() for r in result.reports]
        text = "\n".join(parts) + "\n" if parts else ""
        if include_document and result.document is not None:
            text += dumps(result.document)
        return text
