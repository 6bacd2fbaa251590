"""The seven system-centric metrics and their evolution timeline.

Two metrics quantify the service view (microservice count and resolved
inter-service calls) and five the data view (persistent entities,
transient entities, relationships, entity merge candidates, relationship
merge candidates). Relationship counting is undirected throughout: a link
and its reverse stored together count once, which also makes the identity
``d3 - d5 = |RDE|`` hold by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from msviews.merger import MergeResolution
from msviews.model import EntityRef, Persistence, SystemModel


class DuplicateVersionLabel(Exception):
    pass


def metric_s1(system: SystemModel) -> int:
    """Number of microservices in the system."""
    return len(system.microservices)


def metric_s2(system: SystemModel) -> int:
    """Number of resolved endpoint calls between microservices.

    Every call site counts individually; several sites hitting the same
    endpoint are several connections. Unresolved outbound requests are not
    connections and surface separately in the report supplement.
    """
    return sum(
        1
        for ms in system.microservices
        for call in ms.calls
        if call.resolved_target is not None
    )


def metric_d1(system: SystemModel) -> int:
    """Number of persistent data entities (relational plus non-relational)."""
    return sum(len(ms.persistent_entities) for ms in system.microservices)


def metric_d2(system: SystemModel) -> int:
    """Number of transient (data-transfer) entities."""
    return sum(len(ms.transient_entities) for ms in system.microservices)


def _undirected_pairs(system: SystemModel) -> set[tuple[EntityRef, EntityRef]]:
    pairs: set[tuple[EntityRef, EntityRef]] = set()
    for rel in system.all_relationships():
        a, b = rel.source, rel.destination
        pairs.add((a, b) if a <= b else (b, a))
    return pairs


def metric_d3(system: SystemModel) -> int:
    """Number of relationships between data entities, direction-insensitive.

    Built as |MR| / 2 where MR holds each relationship together with its
    reverse; a pair stored in both directions therefore counts once.
    """
    mirrored: set[tuple[EntityRef, EntityRef]] = set()
    for rel in system.all_relationships():
        mirrored.add((rel.source, rel.destination))
        mirrored.add((rel.destination, rel.source))
    return len(mirrored) // 2


def metric_d4(system: SystemModel, resolution: MergeResolution) -> int:
    """Number of entity merge candidates: total entities minus |DE|."""
    total = metric_d1(system) + metric_d2(system)
    return total - len(resolution.merged_entities)


def metric_d5(system: SystemModel, resolution: MergeResolution) -> int:
    """Number of relationship merge candidates: d3 minus |RDE|."""
    return metric_d3(system) - len(resolution.merged_relationships)


@dataclass(frozen=True)
class MetricsReport:
    version_label: str
    s1_microservices: int
    s2_connections: int
    d1_persistent: int
    d2_transient: int
    d3_relationships: int
    d4_merge_entities: int
    d5_merge_relationships: int
    relational: int = 0
    non_relational: int = 0
    unmatched_calls: int = 0
    context_map_size: int = 0

    def __post_init__(self) -> None:
        values = self.as_row()[1:] + (
            self.relational,
            self.non_relational,
            self.unmatched_calls,
            self.context_map_size,
        )
        if any(v < 0 for v in values):
            raise ValueError("metric values must be non-negative")
        if self.d4_merge_entities > self.d1_persistent + self.d2_transient:
            raise ValueError("d4 cannot exceed the total entity count")
        if self.d5_merge_relationships > self.d3_relationships:
            raise ValueError("d5 cannot exceed d3")
        if self.relational + self.non_relational != self.d1_persistent:
            raise ValueError("relational + non-relational must equal d1")
        expected_map = (
            self.d1_persistent + self.d2_transient - self.d4_merge_entities
        )
        if self.context_map_size != expected_map:
            raise ValueError(
                f"context map size {self.context_map_size} != "
                f"d1 + d2 - d4 = {expected_map}"
            )

    def as_row(self) -> tuple:
        return (
            self.version_label,
            self.s1_microservices,
            self.s2_connections,
            self.d1_persistent,
            self.d2_transient,
            self.d3_relationships,
            self.d4_merge_entities,
            self.d5_merge_relationships,
        )

    def values(self) -> tuple[int, int, int, int, int, int, int]:
        return self.as_row()[1:]


def compute_report(system: SystemModel, resolution: MergeResolution) -> MetricsReport:
    relational = sum(
        1
        for ms in system.microservices
        for e in ms.persistent_entities
        if e.persistence is Persistence.RELATIONAL
    )
    non_relational = sum(
        1
        for ms in system.microservices
        for e in ms.persistent_entities
        if e.persistence is Persistence.NON_RELATIONAL
    )
    unmatched = sum(
        1
        for ms in system.microservices
        for call in ms.calls
        if call.resolved_target is None
    )
    return MetricsReport(
        version_label=system.version_label,
        s1_microservices=metric_s1(system),
        s2_connections=metric_s2(system),
        d1_persistent=metric_d1(system),
        d2_transient=metric_d2(system),
        d3_relationships=metric_d3(system),
        d4_merge_entities=metric_d4(system, resolution),
        d5_merge_relationships=metric_d5(system, resolution),
        relational=relational,
        non_relational=non_relational,
        unmatched_calls=unmatched,
        context_map_size=len(resolution.merged_entities),
    )


METRIC_COLUMNS = ("s1", "s2", "d1", "d2", "d3", "d4", "d5")


@dataclass(frozen=True)
class EvolutionTimeline:
    reports: tuple[MetricsReport, ...]

    @property
    def deltas(self) -> tuple[dict[str, int], ...]:
        """Signed per-metric differences between consecutive versions."""
        out = []
        for before, after in zip(self.reports, self.reports[1:]):
            out.append(
                {
                    name: after.values()[k] - before.values()[k]
                    for k, name in enumerate(METRIC_COLUMNS)
                }
            )
        return tuple(out)


def build_timeline(reports: list[MetricsReport]) -> EvolutionTimeline:
    if not reports:
        raise ValueError("a timeline needs at least one report")
    seen: set[str] = set()
    for report in reports:
        if report.version_label in seen:
            raise DuplicateVersionLabel(report.version_label)
        seen.add(report.version_label)
    return EvolutionTimeline(reports=tuple(reports))


def format_report_table(reports: list[MetricsReport]) -> str:
    """Aligned text table: one metric per row, one version per column."""
    labels = [r.version_label for r in reports]
    rows = [
        ("S1. microservices", [r.s1_microservices for r in reports]),
        ("S2. connections", [r.s2_connections for r in reports]),
        ("D1. persistent entities", [r.d1_persistent for r in reports]),
        ("D2. transient entities", [r.d2_transient for r in reports]),
        ("D3. entity relationships", [r.d3_relationships for r in reports]),
        ("D4. merge candidates", [r.d4_merge_entities for r in reports]),
        ("D5. merge relationships", [r.d5_merge_relationships for r in reports]),
    ]
    name_width = max(len(name) for name, _ in rows)
    widths = [max(len(label), 6) for label in labels]
    lines = [
        "Metric".ljust(name_width)
        + "  "
        + "  ".join(label.rjust(w) for label, w in zip(labels, widths))
    ]
    for name, values in rows:
        lines.append(
            name.ljust(name_width)
            + "  "
            + "  ".join(str(v).rjust(w) for v, w in zip(values, widths))
        )
    return "\n".join(lines)


def format_delta_table(timeline: EvolutionTimeline) -> str:
    """Per-metric deltas between consecutive versions, signed."""
    if len(timeline.reports) < 2:
        return "(single version; no deltas)"
    lines = []
    header = "Delta".ljust(18) + "  " + "  ".join(c.rjust(6) for c in METRIC_COLUMNS)
    lines.append(header)
    for (before, after), delta in zip(
        zip(timeline.reports, timeline.reports[1:]), timeline.deltas
    ):
        label = f"{before.version_label} -> {after.version_label}"
        lines.append(
            label.ljust(18)
            + "  "
            + "  ".join(f"{delta[c]:+d}".rjust(6) for c in METRIC_COLUMNS)
        )
    return "\n".join(lines)
