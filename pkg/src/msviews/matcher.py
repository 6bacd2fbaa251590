"""Resolve outbound call sites to declared endpoints across microservices.

Matching is signature-based: HTTP method must agree and the normalized
path templates must match segment-for-segment, a wildcard segment standing
in for exactly one concrete segment on either side. Parameter lists are
deliberately soft (names differ across caller and callee all the time);
parameter count only breaks ties between equally specific candidates.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace

from msviews.model import (
    CallSite,
    Endpoint,
    Microservice,
    ResolvedTarget,
    SystemModel,
)

WILDCARD = "*"

_PLACEHOLDER = re.compile(r"\{[^{}]*\}")
_SCHEME = re.compile(r"^[a-zA-Z][a-zA-Z0-9+.-]*://")


def split_host(raw: str) -> tuple[str | None, str]:
    """Split a URL into (host hint, path part). Ports are dropped from the hint."""
    if not _SCHEME.match(raw):
        return None, raw
    rest = raw.split("://", 1)[1]
    host, sep, path = rest.partition("/")
    host = host.split(":", 1)[0]
    return (host or None), ("/" + path if sep else "/")


def normalize_path(raw: str) -> str:
    """Reduce a path or URL to canonical wildcard-template form.

    Scheme and host are stripped, duplicate slashes collapsed, the trailing
    slash removed (except for the bare root), every ``{...}`` placeholder
    rewritten to ``*`` and literal segments lowercased. Query strings do not
    participate in matching.
    """
    _, path = split_host(raw)
    path = path.split("?", 1)[0]
    path = _PLACEHOLDER.sub(WILDCARD, path)
    segments = [s for s in path.split("/") if s]
    if not segments:
        return "/"
    parts = [s if s == WILDCARD else s.lower() for s in segments]
    return "/" + "/".join(parts)


def segments_match(call_path: str, endpoint_path: str) -> bool:
    """Segment-wise template equality; ``*`` matches exactly one segment."""
    a = call_path.strip("/").split("/") if call_path != "/" else []
    b = endpoint_path.strip("/").split("/") if endpoint_path != "/" else []
    if len(a) != len(b):
        return False
    return all(x == y or x == WILDCARD or y == WILDCARD for x, y in zip(a, b))


def wildcard_count(path: str) -> int:
    return sum(1 for s in path.split("/") if s == WILDCARD)


class Disposition(str, enum.Enum):
    RESOLVED = "RESOLVED"
    UNRESOLVED = "UNRESOLVED"
    AMBIGUOUS_RESOLVED = "AMBIGUOUS_RESOLVED"


@dataclass(frozen=True)
class MatchResult:
    caller: str
    call: CallSite
    matched: tuple[str, Endpoint] | None
    candidates_considered: int
    disposition: Disposition


def _candidates(
    call: CallSite, caller: str, system: SystemModel
) -> list[tuple[Microservice, Endpoint]]:
    scope = [ms for ms in system.microservices if ms.name != caller]
    if call.target_hint:
        hint = call.target_hint.lower()
        known = any(ms.name.lower() == hint for ms in system.microservices)
        # A hint that names nothing we discovered is just a host alias and
        # falls back to the system-wide search; a known hint restricts the
        # scope even when it points back at the caller itself.
        if known:
            scope = [ms for ms in scope if ms.name.lower() == hint]
    found = []
    for ms in scope:
        for ep in ms.endpoints:
            if ep.http_method is not call.http_method:
                continue
            if segments_match(call.url_path, normalize_path(ep.url_path)):
                found.append((ms, ep))
    return found


def match_call(call: CallSite, caller: str, system: SystemModel) -> MatchResult:
    """Match one call against every other microservice's endpoints.

    The most specific candidate (fewest wildcard segments) wins outright.
    When several candidates share the minimal wildcard count the result is
    still usable but flagged AMBIGUOUS_RESOLVED, settled first by closest
    parameter count, then by (microservice name, path) order.
    """
    found = _candidates(call, caller, system)
    if not found:
        return MatchResult(caller, call, None, 0, Disposition.UNRESOLVED)

    def specificity(item: tuple[Microservice, Endpoint]) -> int:
        return wildcard_count(normalize_path(item[1].url_path))

    best = min(specificity(item) for item in found)
    top = [item for item in found if specificity(item) == best]
    if len(top) == 1:
        ms, ep = top[0]
        return MatchResult(caller, call, (ms.name, ep), len(found), Disposition.RESOLVED)

    def tie_break(item: tuple[Microservice, Endpoint]) -> tuple:
        ms, ep = item
        return (
            abs(len(ep.parameters) - len(call.parameters)),
            ms.name,
            normalize_path(ep.url_path),
            ep.url_path,
        )

    ms, ep = min(top, key=tie_break)
    return MatchResult(
        caller, call, (ms.name, ep), len(found), Disposition.AMBIGUOUS_RESOLVED
    )


def resolve_system(system: SystemModel) -> tuple[SystemModel, list[MatchResult]]:
    """Resolve every call site in the model.

    Matched calls get their ``resolved_target`` filled in; unmatched calls
    are kept with an absent target so they stay reportable. The result is
    independent of traversal order: every output container re-sorts.
    """
    results: list[MatchResult] = []
    rebuilt: list[Microservice] = []
    for ms in system.microservices:
        new_calls: list[CallSite] = []
        for call in ms.calls:
            result = match_call(call, ms.name, system)
            results.append(result)
            if result.matched is not None:
                target_name, endpoint = result.matched
                new_calls.append(
                    replace(
                        call,
                        resolved_target=ResolvedTarget(target_name, endpoint.url_path),
                    )
                )
            else:
                new_calls.append(replace(call, resolved_target=None))
        rebuilt.append(replace(ms, calls=tuple(new_calls)))
    results.sort(key=lambda r: (r.caller, r.call.sort_key()))
    return replace(system, microservices=tuple(rebuilt)), results


def unresolved_calls(results: list[MatchResult]) -> list[MatchResult]:
    return [r for r in results if r.disposition is Disposition.UNRESOLVED]
