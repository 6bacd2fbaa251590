"""End-to-end analysis of one checked-out version of a system."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from msviews.discovery import ProjectManifest, discover
from msviews.extractor import (
    attach_relationships,
    call_site_from_raw,
    classify_entities,
    extract_calls,
    extract_endpoints,
    scan_classes,
)
from msviews.matcher import MatchResult, resolve_system
from msviews.merger import (
    ContextMap,
    MergeResolution,
    DEFAULT_FIELD_THRESHOLD,
    DEFAULT_NAME_THRESHOLD,
    build_context_map,
    build_resolution,
    find_merge_candidates,
)
from msviews.metrics import MetricsReport, compute_report
from msviews.model import Microservice, Persistence, SystemModel, validate_system
from msviews.profiles import LanguageProfile, spring_java_profile


@dataclass
class AnalysisOptions:
    profile: LanguageProfile = field(default_factory=spring_java_profile)
    name_threshold: float = DEFAULT_NAME_THRESHOLD
    field_threshold: float = DEFAULT_FIELD_THRESHOLD
    strict_response_only: bool = False
    parallelism: int = 4


@dataclass
class AnalysisResult:
    system: SystemModel
    match_results: list[MatchResult]
    resolution: MergeResolution
    context_map: ContextMap
    report: MetricsReport
    manifests: list[ProjectManifest]
    warnings: list[str]


def extract_microservice(
    manifest: ProjectManifest, options: AnalysisOptions
) -> tuple[Microservice, list[str]]:
    """Scan one microservice tree into an immutable model fragment."""
    warnings: list[str] = []
    profile = options.profile
    sketches = scan_classes(manifest.root_dir, profile, warnings)
    endpoints = extract_endpoints(sketches, profile, warnings)
    raw_calls = extract_calls(sketches, profile, warnings)
    persistent, transient = classify_entities(
        sketches,
        endpoints,
        profile,
        owner=manifest.microservice_name,
        strict_response_only=options.strict_response_only,
    )
    # Relationships look across the whole entity set of one microservice.
    combined = attach_relationships(persistent + transient)
    persistent = [e for e in combined if e.persistence is not Persistence.TRANSIENT]
    transient = [e for e in combined if e.persistence is Persistence.TRANSIENT]
    ms = Microservice(
        name=manifest.microservice_name,
        source_root=str(manifest.root_dir),
        endpoints=tuple(endpoints),
        calls=tuple(call_site_from_raw(raw) for raw in raw_calls),
        persistent_entities=tuple(persistent),
        transient_entities=tuple(transient),
    )
    return ms, [f"{manifest.microservice_name}: {w}" for w in warnings]


def analyze_tree(
    root: str | Path,
    version_label: str,
    options: AnalysisOptions | None = None,
) -> AnalysisResult:
    """Discover, extract, match, merge and measure one version directory."""
    options = options or AnalysisOptions()
    warnings: list[str] = []
    manifests = discover(root, warnings)

    fragments: list[tuple[Microservice, list[str]]] = []
    if options.parallelism > 1 and len(manifests) > 1:
        with ThreadPoolExecutor(max_workers=options.parallelism) as pool:
            fragments = list(
                pool.map(lambda m: extract_microservice(m, options), manifests)
            )
    else:
        fragments = [extract_microservice(m, options) for m in manifests]

    microservices = [ms for ms, _ in fragments]
    for _, ms_warnings in fragments:
        warnings.extend(ms_warnings)

    system = SystemModel(
        version_label=version_label, microservices=tuple(microservices)
    )
    system, match_results = resolve_system(system)
    for violation in validate_system(system):
        warnings.append(f"model invariant violated: {violation}")

    candidates = find_merge_candidates(
        system,
        name_threshold=options.name_threshold,
        field_threshold=options.field_threshold,
        profile=options.profile,
    )
    resolution = build_resolution(system, candidates)
    context_map = build_context_map(resolution)
    report = compute_report(system, resolution)
    return AnalysisResult(
        system=system,
        match_results=match_results,
        resolution=resolution,
        context_map=context_map,
        report=report,
        manifests=manifests,
        warnings=warnings,
    )
