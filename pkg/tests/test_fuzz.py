"""Tests for seeded structure-constant mutations."""

from typing import Any

import pytest

from hlr_toolkit.algebra import validate_hom_leibniz
from hlr_toolkit.crossed import validate_crossed_module
from hlr_toolkit.errors import PreconditionError
from hlr_toolkit.fuzz import (
    MutationSpec,
    fuzz,
    fuzz_with_site,
    mutation_sites,
    site_text,
)
from hlr_toolkit.library import load_example
from hlr_toolkit.serialization import AlgebraDocument, from_document


def _value(payload: Any, site: tuple) -> Any:
    node = payload
    for step in site:
        node = node[step]
    return node


def test_sites_skip_shapes_and_dimensions() -> None:
    """Test only rational strings inside lists count as sites."""
    doc = load_example("leibniz-dim2")
    texts = [site_text(s) for s in mutation_sites(doc.payload)]
    assert len(texts) == 8 + 4
    assert "payload.bracket.coeffs[0][1][1]" in texts
    assert not any("shape" in t for t in texts)
    assert texts == sorted(texts)


def test_fuzz_is_deterministic() -> None:
    """Test the same seed always picks the same site."""
    doc = load_example("crossed-ideal")
    first = fuzz_with_site(doc, MutationSpec(seed=7))
    second = fuzz_with_site(doc, MutationSpec(seed=7))
    assert first == second


def test_fuzz_changes_exactly_one_constant() -> None:
    """Test the mutated document differs from the input at the reported site only."""
    doc = load_example("crossed-dxmod")
    mutated, text = fuzz_with_site(doc, MutationSpec(seed=3, delta="1/2"))
    sites = mutation_sites(doc.payload)
    changed = [s for s in sites if _value(doc.payload, s) != _value(mutated.payload, s)]
    assert [site_text(s) for s in changed] == [text]
    assert mutated.kind == doc.kind


def test_zero_delta_leaves_document_unchanged() -> None:
    """Test a zero shift is the identity."""
    doc = load_example("crossed-ideal")
    assert fuzz(doc, MutationSpec(seed=1, delta=0)) == doc


def test_target_path_exact_and_prefix() -> None:
    """Test exact sites are used verbatim and prefixes limit the choice."""
    doc = load_example("leibniz-dim2")
    mutated, text = fuzz_with_site(
        doc,
        MutationSpec(
            seed=0, delta=1, target_path="payload.bracket.coeffs[0][1][1]"
        ),
    )
    assert text == "payload.bracket.coeffs[0][1][1]"
    assert mutated.payload["bracket"]["coeffs"][0][1][1] == "2"
    _, text = fuzz_with_site(doc, MutationSpec(seed=5, target_path="payload.alpha"))
    assert text.startswith("payload.alpha.rows")
    with pytest.raises(PreconditionError, match="no mutable constant"):
        fuzz(doc, MutationSpec(seed=0, target_path="payload.nowhere"))


def test_document_without_constants() -> None:
    """Test fuzzing needs at least one site."""
    with pytest.raises(PreconditionError, match="no structure constants"):
        fuzz(AlgebraDocument("comm-algebra", {"dim": 0}), MutationSpec(seed=0))


def test_boundary_mutation_is_detected() -> None:
    """Test shifting the ideal boundary into e2 breaks CM1."""
    doc = load_example("crossed-ideal")
    mutated = fuzz(doc, MutationSpec(seed=0, target_path="payload.boundary.rows[1][0]"))
    report = validate_crossed_module(from_document(mutated))
    assert "CM1" in report.tags()


def test_leibniz_seed_one_breaks_multiplicativity() -> None:
    """Test seed 1 on leibniz-dim2 shifts alpha(e1) and is caught as MULT."""
    mutated, site = fuzz_with_site(load_example("leibniz-dim2"), MutationSpec(seed=1))
    assert site == "payload.alpha.rows[1][0]"
    assert mutated.payload["alpha"]["rows"] == [["1", "0"], ["1", "1"]]
    report = validate_hom_leibniz(from_document(mutated))
    assert "MULT" in report.tags()
    assert (("x", 1), ("y", 1)) in [f.witness for f in report.only("MULT").failures]
