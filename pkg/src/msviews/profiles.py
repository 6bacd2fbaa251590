"""Framework convention profiles driving the source scanner.

A profile names the annotations and client invocations that mark endpoint
declarations, outbound HTTP calls, persistent entities and data classes in
one framework family. The built-in profile covers Spring-style Java; other
conventions can be loaded from a TOML file without touching the scanner.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

from msviews.model import HttpMethod, Persistence

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


@dataclass(frozen=True)
class EndpointMarker:
    """An annotation declaring an endpoint or a routing prefix.

    ``http_method`` is None for markers that carry the method as an
    attribute (RequestMapping) and for pure class-level markers.
    """

    annotation: str
    path_attribute: str = "value"
    http_method: HttpMethod | None = None
    class_marker: bool = False


@dataclass(frozen=True)
class CallMarker:
    """A client invocation that issues an HTTP request.

    ``http_method`` is None when the method must be read from the call's
    arguments (exchange-style APIs). ``url_argument`` is the position of
    the URL expression in the argument list.
    """

    invocation: str
    http_method: HttpMethod | None
    url_argument: int = 0


@dataclass(frozen=True)
class LanguageProfile:
    name: str
    source_suffixes: tuple[str, ...]
    endpoint_markers: tuple[EndpointMarker, ...]
    call_markers: tuple[CallMarker, ...]
    persistence_markers: dict[str, Persistence]
    data_class_markers: tuple[str, ...]
    collection_types: tuple[str, ...] = (
        "List",
        "Set",
        "Collection",
        "ArrayList",
        "LinkedList",
        "HashSet",
        "Iterable",
    )
    type_synonyms: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for label, items in (
            ("endpoint_markers", [m.annotation for m in self.endpoint_markers]),
            ("call_markers", [m.invocation for m in self.call_markers]),
            ("persistence_markers", list(self.persistence_markers)),
            ("data_class_markers", list(self.data_class_markers)),
        ):
            if not items:
                raise ValueError(f"profile '{self.name}': {label} must not be empty")
            if len(set(items)) != len(items):
                raise ValueError(f"profile '{self.name}': duplicate {label} entries")

    def canonical_type(self, type_name: str) -> str:
        key = type_name.strip().lower()
        return self.type_synonyms.get(key, key)

    def mapping_marker(self, annotation: str) -> EndpointMarker | None:
        for marker in self.endpoint_markers:
            if marker.annotation == annotation and not marker.class_marker:
                return marker
        return None

    def controller_markers(self) -> tuple[str, ...]:
        return tuple(
            m.annotation for m in self.endpoint_markers if m.class_marker
        )


_JAVA_TYPE_SYNONYMS = {
    "integer": "int",
    "int": "int",
    "short": "int",
    "long": "int",
    "biginteger": "int",
    "byte": "int",
    "float": "float",
    "double": "float",
    "bigdecimal": "float",
    "number": "float",
    "boolean": "bool",
    "bool": "bool",
    "string": "string",
    "charsequence": "string",
    "char": "string",
    "character": "string",
    "uuid": "uuid",
    "date": "date",
    "localdate": "date",
    "localdatetime": "date",
    "instant": "date",
    "timestamp": "date",
    "calendar": "date",
}


def spring_java_profile() -> LanguageProfile:
    """Conventions of Spring-style Java services with RestTemplate clients."""
    return LanguageProfile(
        name="spring-java",
        source_suffixes=(".java",),
        endpoint_markers=(
            EndpointMarker("RestController", class_marker=True),
            EndpointMarker("RequestMapping", http_method=None),
            EndpointMarker("GetMapping", http_method=HttpMethod.GET),
            EndpointMarker("PostMapping", http_method=HttpMethod.POST),
            EndpointMarker("PutMapping", http_method=HttpMethod.PUT),
            EndpointMarker("DeleteMapping", http_method=HttpMethod.DELETE),
            EndpointMarker("PatchMapping", http_method=HttpMethod.PATCH),
        ),
        call_markers=(
            CallMarker("getForObject", HttpMethod.GET),
            CallMarker("getForEntity", HttpMethod.GET),
            CallMarker("postForObject", HttpMethod.POST),
            CallMarker("postForEntity", HttpMethod.POST),
            CallMarker("put", HttpMethod.PUT),
            CallMarker("delete", HttpMethod.DELETE),
            CallMarker("exchange", None),
        ),
        persistence_markers={
            "Entity": Persistence.RELATIONAL,
            "Document": Persistence.NON_RELATIONAL,
        },
        data_class_markers=("Data",),
        type_synonyms=dict(_JAVA_TYPE_SYNONYMS),
    )


_BUILTIN_PROFILES = {"spring-java": spring_java_profile}


def get_profile(name: str) -> LanguageProfile:
    try:
        return _BUILTIN_PROFILES[name]()
    except KeyError:
        known = ", ".join(sorted(_BUILTIN_PROFILES))
        raise KeyError(f"unknown profile '{name}' (known: {known})") from None


def load_profile_file(path: str | Path) -> LanguageProfile:
    """Read a profile definition from a TOML document.

    Expected shape::

        name = "my-framework"
        source_suffixes = [".java"]
        data_class_markers = ["Data"]
        [[endpoint_markers]]
        annotation = "GetMapping"
        http_method = "GET"
        [[call_markers]]
        invocation = "getForObject"
        http_method = "GET"
        [persistence_markers]
        Entity = "RELATIONAL"
        [type_synonyms]
        integer = "int"
    """
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    try:
        endpoint_markers = tuple(
            EndpointMarker(
                annotation=m["annotation"],
                path_attribute=m.get("path_attribute", "value"),
                http_method=(
                    HttpMethod(m["http_method"]) if m.get("http_method") else None
                ),
                class_marker=bool(m.get("class_marker", False)),
            )
            for m in data.get("endpoint_markers", [])
        )
        call_markers = tuple(
            CallMarker(
                invocation=m["invocation"],
                http_method=(
                    HttpMethod(m["http_method"]) if m.get("http_method") else None
                ),
                url_argument=int(m.get("url_argument", 0)),
            )
            for m in data.get("call_markers", [])
        )
        persistence_markers = {
            key: Persistence(value)
            for key, value in data.get("persistence_markers", {}).items()
        }
        return LanguageProfile(
            name=data["name"],
            source_suffixes=tuple(data.get("source_suffixes", [".java"])),
            endpoint_markers=endpoint_markers,
            call_markers=call_markers,
            persistence_markers=persistence_markers,
            data_class_markers=tuple(data.get("data_class_markers", [])),
            type_synonyms={
                k.lower(): v for k, v in data.get("type_synonyms", {}).items()
            },
        )
    except (KeyError, ValueError) as exc:
        raise ValueError(f"invalid profile file {path}: {exc}") from exc
