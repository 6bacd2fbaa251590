"""Serialization of the IR, context map, metrics and viewer documents.

Every writer here is bit-exact: UTF-8, two-space indent, sorted keys, LF
line endings. Identical inputs produce identical bytes, which is what lets
downstream viewers and diffs treat these files as stable interfaces.
"""

from __future__ import annotations

import json
from pathlib import Path

from msviews.merger import (
    ContextMap,
    MergeResolution,
    build_context_map,
    merge_audit_lines,
)
from msviews.metrics import EvolutionTimeline
from msviews.model import (
    CallSite,
    DataEntity,
    Endpoint,
    EntityRef,
    Field,
    HttpMethod,
    Microservice,
    Parameter,
    Persistence,
    Relationship,
    ResolvedTarget,
    SystemModel,
)

SCHEMA_VERSION = "1"

IR_FILENAME = "ir.json"
GRAPH_FILENAME = "graph.json"
CONTEXT_MAP_FILENAME = "context-map.mmd"
TIMELINE_FILENAME = "timeline.csv"


class WriteFailure(Exception):
    pass


def _dump(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# IR document


def _parameter_obj(param: Parameter) -> dict:
    return {"name": param.name, "type": param.type_name}


def _field_obj(f: Field) -> dict:
    return {"collection": f.is_collection, "name": f.name, "type": f.type_name}


def _relationship_obj(rel: Relationship) -> dict:
    return {
        "destination": {
            "owner": rel.destination.owner,
            "qualified_name": rel.destination.qualified_name,
        },
        "source": {
            "owner": rel.source.owner,
            "qualified_name": rel.source.qualified_name,
        },
        "via_field": rel.via_field,
    }


def _entity_obj(entity: DataEntity) -> dict:
    return {
        "fields": [_field_obj(f) for f in entity.fields],
        "name": entity.simple_name,
        "persistence": entity.persistence.value,
        "qualified_name": entity.qualified_name,
        "relationships": [_relationship_obj(r) for r in entity.relationships],
    }


def _endpoint_obj(endpoint: Endpoint) -> dict:
    return {
        "method": endpoint.http_method.value,
        "parameters": [_parameter_obj(p) for p in endpoint.parameters],
        "path": endpoint.url_path,
        "return_type": endpoint.return_type,
    }


def _call_obj(call: CallSite) -> dict:
    resolved = call.resolved_target
    return {
        "endpoint_path": resolved.endpoint_path if resolved else None,
        "method": call.http_method.value,
        "origin": call.origin,
        "path": call.url_path,
        "target": resolved.microservice if resolved else call.target_hint,
    }


def _microservice_obj(ms: Microservice) -> dict:
    return {
        "calls": [_call_obj(c) for c in ms.calls],
        "endpoints": [_endpoint_obj(e) for e in ms.endpoints],
        "name": ms.name,
        "persistent_entities": [_entity_obj(e) for e in ms.persistent_entities],
        "transient_entities": [_entity_obj(e) for e in ms.transient_entities],
    }


def export_ir(system: SystemModel, resolution: MergeResolution) -> str:
    """The IR document: full model plus post-merge context map and audit."""
    context_map = {
        "entities": [
            dict(
                _entity_obj(entity),
                owner=entity.owner,
                provenance=[
                    {"owner": ref.owner, "qualified_name": ref.qualified_name}
                    for ref in resolution.provenance.get(entity.ref, ())
                ],
            )
            for entity in resolution.merged_entities
        ],
        "relationships": [
            _relationship_obj(r) for r in resolution.merged_relationships
        ],
    }
    document = {
        "context_map": context_map,
        "merge_audit": merge_audit_lines(resolution),
        "microservices": [_microservice_obj(ms) for ms in system.microservices],
        "schema_version": SCHEMA_VERSION,
        "version_label": system.version_label,
    }
    return _dump(document)


def import_ir(text: str) -> SystemModel:
    """Rebuild a SystemModel from an IR document.

    The context map and merge audit are derived data and are recomputed
    rather than trusted; only the per-microservice model is read back.
    """
    document = json.loads(text)
    microservices = []
    for ms_obj in document["microservices"]:
        name = ms_obj["name"]
        endpoints = tuple(
            Endpoint(
                http_method=HttpMethod(e["method"]),
                url_path=e["path"],
                return_type=e["return_type"],
                parameters=tuple(
                    Parameter(p["type"], p["name"]) for p in e["parameters"]
                ),
            )
            for e in ms_obj["endpoints"]
        )
        calls = tuple(
            CallSite(
                http_method=HttpMethod(c["method"]),
                url_path=c["path"],
                target_hint=c["target"],
                resolved_target=(
                    ResolvedTarget(c["target"], c["endpoint_path"])
                    if c["endpoint_path"] is not None
                    else None
                ),
                origin=c.get("origin", ""),
            )
            for c in ms_obj["calls"]
        )
        microservices.append(
            Microservice(
                name=name,
                endpoints=endpoints,
                calls=calls,
                persistent_entities=tuple(
                    _entity_from_obj(e, name) for e in ms_obj["persistent_entities"]
                ),
                transient_entities=tuple(
                    _entity_from_obj(e, name) for e in ms_obj["transient_entities"]
                ),
            )
        )
    return SystemModel(
        version_label=document["version_label"],
        microservices=tuple(microservices),
    )


def _entity_from_obj(obj: dict, owner: str) -> DataEntity:
    return DataEntity(
        qualified_name=obj["qualified_name"],
        simple_name=obj["name"],
        owner=owner,
        persistence=Persistence(obj["persistence"]),
        fields=tuple(
            Field(f["type"], f["name"], f["collection"]) for f in obj["fields"]
        ),
        relationships=tuple(
            Relationship(
                source=EntityRef(
                    r["source"]["owner"], r["source"]["qualified_name"]
                ),
                destination=EntityRef(
                    r["destination"]["owner"], r["destination"]["qualified_name"]
                ),
                via_field=r["via_field"],
            )
            for r in obj["relationships"]
        ),
    )


# ---------------------------------------------------------------------------
# Service graph document


def export_graph(system: SystemModel, coupling_threshold: int | None = None) -> str:
    """Viewer graph: one node per microservice, one link per caller/target pair.

    ``dependency_count`` is the number of distinct services a node calls;
    ``call_count`` on a link tallies individual call sites. When a coupling
    threshold is given, nodes exceeding it are annotated for the viewer's
    alert palette.
    """
    tallies: dict[tuple[str, str], int] = {}
    for ms in system.microservices:
        for call in ms.calls:
            if call.resolved_target is None:
                continue
            key = (ms.name, call.resolved_target.microservice)
            tallies[key] = tallies.get(key, 0) + 1

    outgoing: dict[str, set[str]] = {ms.name: set() for ms in system.microservices}
    incoming: dict[str, set[str]] = {ms.name: set() for ms in system.microservices}
    for source, target in tallies:
        outgoing.setdefault(source, set()).add(target)
        incoming.setdefault(target, set()).add(source)

    nodes = []
    for ms in system.microservices:
        node = {
            "dependency_count": len(outgoing[ms.name]),
            "dependents_count": len(incoming[ms.name]),
            "id": ms.name,
            "name": ms.name,
        }
        if coupling_threshold is not None:
            node["over_threshold"] = len(outgoing[ms.name]) > coupling_threshold
        nodes.append(node)

    links = [
        {"call_count": count, "source": source, "target": target}
        for (source, target), count in sorted(tallies.items())
    ]
    document: dict = {
        "links": links,
        "nodes": nodes,
        "schema_version": SCHEMA_VERSION,
    }
    if coupling_threshold is not None:
        document["coupling_threshold"] = coupling_threshold
    return _dump(document)


# ---------------------------------------------------------------------------
# Context map class diagram


def _mermaid_identifier(name: str) -> str:
    cleaned = "".join(c if c.isalnum() or c == "_" else "_" for c in name)
    if not cleaned or cleaned[0].isdigit():
        cleaned = "_" + cleaned
    return cleaned


def _display_names(entities: tuple[DataEntity, ...]) -> dict[EntityRef, str]:
    ordered = sorted(entities, key=lambda e: (e.simple_name, e.ref))
    names: dict[EntityRef, str] = {}
    used: set[str] = set()
    for entity in ordered:
        candidate = _mermaid_identifier(entity.simple_name)
        if candidate in used:
            candidate = _mermaid_identifier(f"{entity.simple_name}_{entity.owner}")
        base, k = candidate, 2
        while candidate in used:
            candidate = f"{base}_{k}"
            k += 1
        used.add(candidate)
        names[entity.ref] = candidate
    return names


def _class_diagram(
    entities: tuple[DataEntity, ...], relationships: list[Relationship]
) -> str:
    names = _display_names(entities)
    lines = ["classDiagram"]
    for entity in sorted(entities, key=lambda e: names[e.ref]):
        lines.append(f"  class {names[entity.ref]} {{")
        for f in entity.fields:
            suffix = "[]" if f.is_collection else ""
            lines.append(f"    {f.type_name}{suffix} {f.name}")
        lines.append("  }")
    relations = sorted(
        f"  {names[r.source]} --> {names[r.destination]} : {r.via_field}"
        for r in relationships
        if r.source in names and r.destination in names
    )
    lines.extend(relations)
    return "\n".join(lines) + "\n"


def export_context_map_mermaid(context_map: ContextMap) -> str:
    """Post-merge context map as a Mermaid class diagram."""
    return _class_diagram(context_map.entities, list(context_map.relationships))


def export_entities_mermaid(entities: tuple[DataEntity, ...]) -> str:
    """Pre-merge class diagram for a single microservice."""
    return _class_diagram(entities, [r for e in entities for r in e.relationships])


# ---------------------------------------------------------------------------
# Timeline


def export_timeline_csv(timeline: EvolutionTimeline) -> str:
    lines = ["version,s1,s2,d1,d2,d3,d4,d5"]
    for report in timeline.reports:
        label, *values = report.as_row()
        lines.append(",".join([label] + [str(v) for v in values]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# File output


def write_artifacts(
    out_dir: str | Path,
    system: SystemModel,
    resolution: MergeResolution,
    timeline: EvolutionTimeline,
    coupling_threshold: int | None = None,
    per_service: bool = False,
) -> list[Path]:
    """Write every artifact for one analyzed version; returns written paths."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        written = []
        artifacts = {
            IR_FILENAME: export_ir(system, resolution),
            GRAPH_FILENAME: export_graph(system, coupling_threshold),
            CONTEXT_MAP_FILENAME: export_context_map_mermaid(
                build_context_map(resolution)
            ),
            TIMELINE_FILENAME: export_timeline_csv(timeline),
        }
        for filename, text in artifacts.items():
            path = out / filename
            path.write_bytes(text.encode("utf-8"))
            written.append(path)
        if per_service:
            service_dir = out / "per-service"
            service_dir.mkdir(parents=True, exist_ok=True)
            for ms in system.microservices:
                path = service_dir / f"{ms.name}.mmd"
                path.write_bytes(
                    export_entities_mermaid(ms.entities).encode("utf-8")
                )
                written.append(path)
        return written
    except OSError as exc:
        raise WriteFailure(str(exc)) from exc
