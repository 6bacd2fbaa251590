"""Intermediate representation of a microservice system.

A system is a set of microservices, each carrying its declared endpoints,
its outbound HTTP call sites, and its persistent/transient data entities.
All containers are canonically sorted on construction so that two models
built from the same facts compare equal and serialize byte-identically.
Instances are immutable and safe to share across threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Iterable


class HttpMethod(str, enum.Enum):
    GET = "GET"
    POST = "POST"
    PUT = "PUT"
    DELETE = "DELETE"
    PATCH = "PATCH"


class Persistence(str, enum.Enum):
    RELATIONAL = "RELATIONAL"
    NON_RELATIONAL = "NON_RELATIONAL"
    TRANSIENT = "TRANSIENT"


@dataclass(frozen=True)
class Parameter:
    """A typed, named parameter of an endpoint or call. Order is declared order."""

    type_name: str
    name: str


@dataclass(frozen=True)
class Field:
    """A data entity attribute. Collections store the element type."""

    type_name: str
    name: str
    is_collection: bool = False


@dataclass(frozen=True, order=True)
class EntityRef:
    """Identity of a data entity: owning microservice plus qualified name.

    Same-named entities in two microservices are distinct objects before
    merging; they only ever become merge *candidates*.
    """

    owner: str
    qualified_name: str


@dataclass(frozen=True)
class Relationship:
    """A directed link from one entity to another, realized by a field."""

    source: EntityRef
    destination: EntityRef
    via_field: str

    def sort_key(self) -> tuple:
        return (self.destination, self.via_field)


@dataclass(frozen=True)
class DataEntity:
    qualified_name: str
    simple_name: str
    owner: str
    persistence: Persistence
    fields: tuple[Field, ...] = ()
    relationships: tuple[Relationship, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "fields", tuple(sorted(self.fields, key=lambda f: f.name))
        )
        object.__setattr__(
            self,
            "relationships",
            tuple(sorted(self.relationships, key=Relationship.sort_key)),
        )

    @property
    def ref(self) -> EntityRef:
        return EntityRef(self.owner, self.qualified_name)

    def with_relationships(self, relationships: Iterable[Relationship]) -> "DataEntity":
        return replace(self, relationships=tuple(relationships))


@dataclass(frozen=True)
class Endpoint:
    """A declared HTTP interface point.

    ``url_path`` keeps the declared template (placeholders like ``{id}``
    preserved); wildcard normalization happens only when matching.
    """

    http_method: HttpMethod
    url_path: str
    return_type: str = "void"
    parameters: tuple[Parameter, ...] = ()
    declaring_unit: str = ""

    def sort_key(self) -> tuple:
        return (self.url_path, self.http_method.value)


@dataclass(frozen=True)
class ResolvedTarget:
    microservice: str
    endpoint_path: str


@dataclass(frozen=True)
class CallSite:
    """An outbound HTTP request site.

    ``url_path`` is stored in normalized wildcard form (literal segments
    lowercased, every placeholder collapsed to ``*``). ``target_hint`` is
    the literal host from the request URL when one was present.
    """

    http_method: HttpMethod
    url_path: str
    return_type: str = "void"
    parameters: tuple[Parameter, ...] = ()
    target_hint: str | None = None
    resolved_target: ResolvedTarget | None = None
    origin: str = ""

    def sort_key(self) -> tuple:
        return (self.origin, self.url_path, self.http_method.value)


@dataclass(frozen=True)
class Microservice:
    name: str
    source_root: str = ""
    endpoints: tuple[Endpoint, ...] = ()
    calls: tuple[CallSite, ...] = ()
    persistent_entities: tuple[DataEntity, ...] = ()
    transient_entities: tuple[DataEntity, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "endpoints", tuple(sorted(self.endpoints, key=Endpoint.sort_key))
        )
        object.__setattr__(
            self, "calls", tuple(sorted(self.calls, key=CallSite.sort_key))
        )
        for attr in ("persistent_entities", "transient_entities"):
            object.__setattr__(
                self,
                attr,
                tuple(sorted(getattr(self, attr), key=lambda e: e.qualified_name)),
            )

    @property
    def entities(self) -> tuple[DataEntity, ...]:
        return self.persistent_entities + self.transient_entities


@dataclass(frozen=True)
class SystemModel:
    version_label: str
    microservices: tuple[Microservice, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "microservices",
            tuple(sorted(self.microservices, key=lambda m: m.name)),
        )

    def microservice(self, name: str) -> Microservice | None:
        for ms in self.microservices:
            if ms.name == name:
                return ms
        return None

    def all_entities(self) -> list[DataEntity]:
        return [e for ms in self.microservices for e in ms.entities]

    def all_relationships(self) -> list[Relationship]:
        return [r for e in self.all_entities() for r in e.relationships]

    def entity_index(self) -> dict[EntityRef, DataEntity]:
        return {e.ref: e for e in self.all_entities()}


def validate_system(model: SystemModel) -> list[str]:
    """Check every structural invariant; return one message per violation.

    Violations are data, not failures: an empty list means the model is valid.
    """
    from msviews.matcher import normalize_path

    violations: list[str] = []
    seen_names: set[str] = set()
    for ms in model.microservices:
        if ms.name in seen_names:
            violations.append(f"duplicate microservice name '{ms.name}'")
        seen_names.add(ms.name)

    entity_refs = {e.ref for e in model.all_entities()}

    for ms in model.microservices:
        persistent = {e.qualified_name for e in ms.persistent_entities}
        transient = {e.qualified_name for e in ms.transient_entities}
        for name in sorted(persistent & transient):
            violations.append(
                f"{ms.name}: entity '{name}' appears as both persistent and transient"
            )
        for entity in ms.persistent_entities:
            if entity.persistence is Persistence.TRANSIENT:
                violations.append(
                    f"{ms.name}: persistent entity '{entity.qualified_name}' "
                    "is flagged TRANSIENT"
                )
        for entity in ms.transient_entities:
            if entity.persistence is not Persistence.TRANSIENT:
                violations.append(
                    f"{ms.name}: transient entity '{entity.qualified_name}' "
                    f"is flagged {entity.persistence.value}"
                )

        seen_endpoints: set[tuple[str, str]] = set()
        for ep in ms.endpoints:
            if not ep.url_path.startswith("/"):
                violations.append(
                    f"{ms.name}: endpoint path '{ep.url_path}' does not start with '/'"
                )
            key = (ep.http_method.value, normalize_path(ep.url_path))
            if key in seen_endpoints:
                violations.append(
                    f"{ms.name}: duplicate endpoint {key[0]} {key[1]}"
                )
            seen_endpoints.add(key)
            for param in ep.parameters:
                if not param.name:
                    violations.append(
                        f"{ms.name}: endpoint {ep.http_method.value} {ep.url_path} "
                        "has a parameter with an empty name"
                    )

        for call in ms.calls:
            if call.resolved_target is not None:
                target = call.resolved_target.microservice
                if model.microservice(target) is None:
                    violations.append(
                        f"{ms.name}: call {call.url_path} resolved to unknown "
                        f"microservice '{target}'"
                    )
                if target == ms.name:
                    violations.append(
                        f"{ms.name}: call {call.url_path} resolved to its own "
                        "microservice"
                    )
            for param in call.parameters:
                if not param.name:
                    violations.append(
                        f"{ms.name}: call {call.url_path} has a parameter with "
                        "an empty name"
                    )

        for entity in ms.entities:
            field_names = [f.name for f in entity.fields]
            for name in sorted({n for n in field_names if field_names.count(n) > 1}):
                violations.append(
                    f"{ms.name}: entity '{entity.qualified_name}' has duplicate "
                    f"field '{name}'"
                )
            for name in field_names:
                if not name:
                    violations.append(
                        f"{ms.name}: entity '{entity.qualified_name}' has a field "
                        "with an empty name"
                    )
            own_fields = {f.name for f in entity.fields}
            for rel in entity.relationships:
                if rel.source != entity.ref:
                    violations.append(
                        f"{ms.name}: entity '{entity.qualified_name}' holds a "
                        f"relationship whose source is {rel.source.qualified_name}"
                    )
                if rel.via_field not in own_fields:
                    violations.append(
                        f"{ms.name}: relationship {entity.qualified_name} -> "
                        f"{rel.destination.qualified_name} names missing field "
                        f"'{rel.via_field}'"
                    )
                if rel.destination not in entity_refs:
                    violations.append(
                        f"{ms.name}: relationship from '{entity.qualified_name}' "
                        f"points at unknown entity "
                        f"'{rel.destination.owner}/{rel.destination.qualified_name}'"
                    )
    return violations
