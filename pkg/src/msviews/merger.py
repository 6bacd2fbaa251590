"""Cross-context entity merging and the holistic context map.

Entities living in different microservices that represent the same concept
are merge candidates. Candidacy needs both a similar name and compatible
fields; accepted pairs are closed transitively with union-find, so chains
of pairwise-similar entities collapse into one group even when the extreme
members would not pair directly.

Name similarity is a deterministic lexical blend (token-set Jaccard and
normalized edit distance, 50/50) rather than a dictionary-based measure,
so runs are reproducible with no external lexical database.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from msviews.model import DataEntity, EntityRef, Relationship, SystemModel
from msviews.profiles import LanguageProfile, spring_java_profile

DEFAULT_NAME_THRESHOLD = 0.85
DEFAULT_FIELD_THRESHOLD = 0.5

_NAME_SUFFIXES = ("dto", "entity", "model", "vo")


def _strip_suffixes(name: str) -> str:
    stripped = name
    while True:
        lowered = stripped.lower()
        for suffix in _NAME_SUFFIXES:
            if lowered.endswith(suffix) and len(stripped) > len(suffix):
                stripped = stripped[: -len(suffix)].rstrip("_-")
                break
        else:
            return stripped or name
        if not stripped:
            return name


def _tokens(name: str) -> frozenset[str]:
    out: list[str] = []
    word = ""
    prev = ""
    for ch in name:
        if not ch.isalnum():
            if word:
                out.append(word)
            word = ""
        elif ch.isupper() and prev and (prev.islower() or prev.isdigit()):
            out.append(word)
            word = ch
        else:
            word += ch
        prev = ch
    if word:
        out.append(word)
    return frozenset(t.lower() for t in out)


def _levenshtein(a: str, b: str) -> int:
    if not a:
        return len(b)
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            current.append(
                min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost)
            )
        previous = current
    return previous[-1]


def _flatten(name: str) -> str:
    return "".join(ch for ch in name.lower() if ch.isalnum())


def name_similarity(a: str, b: str) -> float:
    """Score two entity names in [0, 1]; symmetric, case-insensitive.

    Transfer-object suffixes (Dto, Entity, Model, VO) are stripped before
    comparing, so ``FoodDto`` and ``Food`` are the same name.
    """
    sa, sb = _strip_suffixes(a), _strip_suffixes(b)
    fa, fb = _flatten(sa), _flatten(sb)
    if fa == fb:
        return 1.0
    ta, tb = _tokens(sa), _tokens(sb)
    union = ta | tb
    jaccard = len(ta & tb) / len(union) if union else 1.0
    longest = max(len(fa), len(fb))
    edit = 1.0 - _levenshtein(fa, fb) / longest if longest else 1.0
    return 0.5 * jaccard + 0.5 * edit


def _field_pairs(
    entity: DataEntity, profile: LanguageProfile
) -> frozenset[tuple[str, str]]:
    return frozenset(
        (f.name.lower(), profile.canonical_type(f.type_name)) for f in entity.fields
    )


def field_compatibility(
    a: DataEntity, b: DataEntity, profile: LanguageProfile | None = None
) -> float:
    """Jaccard overlap of (name, canonical type) field pairs in [0, 1].

    Type synonyms (boxed/primitive/textual) collapse before comparing, so
    ``Integer``/``int`` or ``String``/``CharSequence`` agree. An entity
    without fields carries no evidence: it scores 0 against everything but
    itself.
    """
    profile = profile or spring_java_profile()
    pa, pb = _field_pairs(a, profile), _field_pairs(b, profile)
    if not pa or not pb:
        return 1.0 if a == b else 0.0
    return len(pa & pb) / len(pa | pb)


def _fields_subset(
    a: DataEntity, b: DataEntity, profile: LanguageProfile
) -> bool:
    pa, pb = _field_pairs(a, profile), _field_pairs(b, profile)
    return pa <= pb or pb <= pa


def find_merge_candidates(
    system: SystemModel,
    name_threshold: float = DEFAULT_NAME_THRESHOLD,
    field_threshold: float = DEFAULT_FIELD_THRESHOLD,
    profile: LanguageProfile | None = None,
) -> list[tuple[DataEntity, DataEntity]]:
    """All unordered cross-microservice entity pairs that qualify for merging.

    A pair qualifies when the names score at least ``name_threshold`` and
    the fields either score at least ``field_threshold`` or one field set
    contains the other. Entities inside one microservice never pair: a
    same-context duplicate is a different problem than a shared concept.
    """
    if not 0.0 <= name_threshold <= 1.0 or not 0.0 <= field_threshold <= 1.0:
        raise ValueError("similarity thresholds must lie in [0, 1]")
    profile = profile or spring_java_profile()
    entities = sorted(system.all_entities(), key=lambda e: e.ref)
    pairs: list[tuple[DataEntity, DataEntity]] = []
    for i, a in enumerate(entities):
        for b in entities[i + 1 :]:
            if a.owner == b.owner:
                continue
            if name_similarity(a.simple_name, b.simple_name) < name_threshold:
                continue
            if (
                field_compatibility(a, b, profile) >= field_threshold
                or _fields_subset(a, b, profile)
            ):
                pairs.append((a, b))
    return pairs


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[EntityRef, EntityRef] = {}

    def add(self, x: EntityRef) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: EntityRef) -> EntityRef:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: EntityRef, b: EntityRef) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        # Deterministic orientation keeps group membership order-independent.
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra


def _undirected_key(a: EntityRef, b: EntityRef) -> tuple[EntityRef, EntityRef]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class MergeResolution:
    """Outcome of the entity merging phase.

    ``entity_map`` is total and idempotent: members map to their group
    representative, everything else to itself. ``merged_entities`` is its
    image (the post-merge entity set DE); ``merged_relationships`` is the
    post-merge relationship set RDE, de-duplicated on undirected endpoint
    pairs so a link and its reverse never count twice.
    """

    entity_map: dict[EntityRef, DataEntity]
    merged_entities: tuple[DataEntity, ...]
    merged_relationships: tuple[Relationship, ...]
    groups: tuple[tuple[DataEntity, ...], ...]
    provenance: dict[EntityRef, tuple[EntityRef, ...]] = field(default_factory=dict)

    def map_entity(self, ref: EntityRef) -> DataEntity:
        return self.entity_map[ref]

    def map_relationship(self, rel: Relationship) -> Relationship:
        src = self.entity_map[rel.source].ref
        dst = self.entity_map[rel.destination].ref
        a, b = _undirected_key(src, dst)
        return self._canonical[(a, b)]

    @property
    def _canonical(self) -> dict[tuple[EntityRef, EntityRef], Relationship]:
        return {
            _undirected_key(r.source, r.destination): r
            for r in self.merged_relationships
        }

    @property
    def merge_count(self) -> int:
        return sum(len(g) - 1 for g in self.groups)


def build_resolution(
    system: SystemModel, pairs: list[tuple[DataEntity, DataEntity]]
) -> MergeResolution:
    """Close candidate pairs under union-find and pick group representatives.

    The representative is the member with the most fields (ties broken by
    smallest (owner, qualified name)), preserving maximal information in
    the context map.
    """
    index = system.entity_index()
    uf = _UnionFind()
    for ref in index:
        uf.add(ref)
    for a, b in pairs:
        uf.union(a.ref, b.ref)

    members: dict[EntityRef, list[DataEntity]] = defaultdict(list)
    for ref, entity in index.items():
        members[uf.find(ref)].append(entity)

    entity_map: dict[EntityRef, DataEntity] = {}
    groups: list[tuple[DataEntity, ...]] = []
    provenance: dict[EntityRef, tuple[EntityRef, ...]] = {}
    for bucket in members.values():
        bucket.sort(key=lambda e: (-len(e.fields), e.ref))
        representative = bucket[0]
        for entity in bucket:
            entity_map[entity.ref] = representative
        if len(bucket) > 1:
            ordered = tuple(sorted(bucket, key=lambda e: e.ref))
            groups.append(ordered)
            provenance[representative.ref] = tuple(
                e.ref for e in ordered if e.ref != representative.ref
            )
    groups.sort(key=lambda g: g[0].ref)

    merged_entities = tuple(
        sorted({e.ref: e for e in entity_map.values()}.values(), key=lambda e: e.ref)
    )

    by_key: dict[tuple[EntityRef, EntityRef], list[Relationship]] = defaultdict(list)
    for rel in system.all_relationships():
        src = entity_map[rel.source].ref
        dst = entity_map[rel.destination].ref
        by_key[_undirected_key(src, dst)].append(rel)
    merged_relationships = tuple(
        Relationship(
            source=a,
            destination=b,
            via_field=min(r.via_field for r in rels),
        )
        for (a, b), rels in sorted(by_key.items())
    )

    return MergeResolution(
        entity_map=entity_map,
        merged_entities=merged_entities,
        merged_relationships=merged_relationships,
        groups=tuple(groups),
        provenance=provenance,
    )


@dataclass(frozen=True)
class ContextMap:
    """The holistic post-merge data model of the whole system."""

    entities: tuple[DataEntity, ...]
    relationships: tuple[Relationship, ...]
    provenance: dict[EntityRef, tuple[EntityRef, ...]]


def build_context_map(resolution: MergeResolution) -> ContextMap:
    return ContextMap(
        entities=resolution.merged_entities,
        relationships=resolution.merged_relationships,
        provenance=dict(resolution.provenance),
    )


def merge_audit_lines(resolution: MergeResolution) -> list[str]:
    """One ``<rep> <= <member>`` line per absorbed entity."""
    lines = []
    for rep_ref in sorted(resolution.provenance):
        for member in resolution.provenance[rep_ref]:
            lines.append(
                f"{rep_ref.owner}/{rep_ref.qualified_name}"
                f" <= {member.owner}/{member.qualified_name}"
            )
    return lines
