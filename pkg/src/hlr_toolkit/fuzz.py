"""Seeded single-constant mutations of documents."""

import copy
import logging
import random
from dataclasses import dataclass
from typing import Any, List, Optional, Tuple, Union

from .errors import PreconditionError
from .linalg import format_rational, to_rational
from .serialization import AlgebraDocument

logger = logging.getLogger(__name__)

PathStep = Union[str, int]
Site = Tuple[PathStep, ...]


@dataclass(frozen=True)
class MutationSpec:
    """Which structure constant to shift and by how much.

    Attributes:
        seed: Seed of the site choice; ignored when ``target_path`` is set
        delta: Amount added to the chosen constant, ``"p/q"`` or int
        target_path: Exact site such as ``payload.bracket.coeffs[0][1][1]``,
            or a prefix such as ``payload.action.left`` limiting the choice
    """

    seed: int
    delta: Any = 1
    target_path: Optional[str] = None


def site_text(site: Site) -> str:
    """Render a site as ``payload.a.b[0][1]``."""
    text = "payload"
    for step in site:
        text += f"[{step}]" if isinstance(step, int) else f".{step}"
    return text


def mutation_sites(payload: Any) -> List[Site]:
    """All rational entries that live inside lists, in rendering order.

    Shapes and dimensions are integers and never count as sites.
    """
    sites: List[Site] = []

    def walk(node: Any, path: Site, in_list: bool) -> None:
        if isinstance(node, dict):
            for key in sorted(node):
                walk(node[key], path + (key,), False)
        elif isinstance(node, list):
            for index, item in enumerate(node):
                walk(item, path + (index,), True)
        elif isinstance(node, str) and in_list:
            sites.append(path)

    walk(payload, (), False)
    return sorted(sites, key=site_text)


def _select(sites: List[Site], spec: MutationSpec) -> Site:
    candidates = sites
    if spec.target_path:
        exact = [s for s in sites if site_text(s) == spec.target_path]
        if exact:
            return exact[0]
        candidates = [
            s
            for s in sites
            if site_text(s).startswith(spec.target_path + ".")
            or site_text(s).startswith(spec.target_path + "[")
        ]
        if not candidates:
            raise PreconditionError(f"no mutable constant under {spec.target_path}")
    return random.Random(spec.seed).choice(candidates)


def fuzz_with_site(
    doc: AlgebraDocument, spec: MutationSpec
) -> Tuple[AlgebraDocument, str]:
    """Shift one constant and report where.

    Returns:
        The mutated document and the rendered site

    Raises:
        PreconditionError: If the document has no structure constants
    """
    sites = mutation_sites(doc.payload)
    if not sites:
        raise PreconditionError(
            f"{doc.kind} document has no structure constants to mutate"
        )
    site = _select(sites, spec)
    payload = copy.deepcopy(doc.payload)
    node: Any = payload
    for step in site[:-1]:
        node = node[step]
    old = to_rational(node[site[-1]])
    node[site[-1]] = format_rational(old + to_rational(spec.delta))
    text = site_text(site)
    logger.debug(f"Mutated {text}: {format_rational(old)} -> {node[site[-1]]}")
    return AlgebraDocument(doc.kind, payload, doc.schema_version), text


def fuzz(doc: AlgebraDocument, spec: MutationSpec) -> AlgebraDocument:
    """Return ``doc`` with exactly one structure constant shifted by ``spec.delta``."""
    return fuzz_with_site(doc, spec)[0]
