from __future__ import annotations

import random

from msviews.merger import (
    build_context_map,
    build_resolution,
    field_compatibility,
    find_merge_candidates,
    merge_audit_lines,
    name_similarity,
)
from msviews.model import (
    DataEntity,
    Field,
    Microservice,
    Persistence,
    Relationship,
    SystemModel,
)
from support import (
    DEMO_MERGE_PAIR_LABELS,
    demo_system,
    label_of,
    random_system,
    system_with_forced_merges,
)


def _reference_levenshtein(a: str, b: str) -> int:
    # Straightforward full-matrix version, kept independent of the
    # implementation under test.
    rows = len(a) + 1
    cols = len(b) + 1
    table = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        table[i][0] = i
    for j in range(cols):
        table[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            table[i][j] = min(
                table[i - 1][j] + 1, table[i][j - 1] + 1, table[i - 1][j - 1] + cost
            )
    return table[-1][-1]


def test_name_similarity_identity_after_case_fold():
    assert name_similarity("Food", "food") == 1.0


def test_name_similarity_strips_transfer_suffixes():
    assert name_similarity("FoodDto", "Food") == 1.0
    assert name_similarity("FoodDTO", "Food") == 1.0
    assert name_similarity("FoodEntity", "food") == 1.0
    assert name_similarity("FoodModel", "FoodVO") == 1.0


def test_name_similarity_unrelated_names_score_low():
    # Expected value recomputed here with the stated blend formula.
    jaccard = 0.0  # {food, store} vs {order, ticket}
    edit = 1.0 - _reference_levenshtein("foodstore", "orderticket") / 11
    expected = 0.5 * jaccard + 0.5 * edit
    score = name_similarity("FoodStore", "OrderTicket")
    assert abs(score - expected) < 1e-12
    assert score < 0.3


def test_name_similarity_is_symmetric():
    rng = random.Random(7)
    pool = ["Food", "FoodStore", "OrderTicket", "TripSummary", "station_dto", "Price"]
    for _ in range(30):
        a, b = rng.choice(pool), rng.choice(pool)
        assert name_similarity(a, b) == name_similarity(b, a)


def test_name_similarity_handles_snake_case():
    assert name_similarity("food_store", "FoodStore") == 1.0


def test_suffix_only_name_is_not_stripped_to_nothing():
    assert name_similarity("Dto", "Dto") == 1.0
    assert name_similarity("Model", "Food") < 0.85


def _entity(owner, simple, fields, qualified=None):
    return DataEntity(
        qualified_name=qualified or f"x.{owner}.{simple}",
        simple_name=simple,
        owner=owner,
        persistence=Persistence.RELATIONAL,
        fields=tuple(fields),
    )


def test_field_compatibility_identical_sets():
    a = _entity("a", "Food", [Field("UUID", "id"), Field("String", "name")])
    b = _entity("b", "Food", [Field("UUID", "id"), Field("String", "name")])
    assert field_compatibility(a, b) == 1.0


def test_field_compatibility_disjoint_sets():
    a = _entity("a", "Food", [Field("UUID", "id")])
    b = _entity("b", "Food", [Field("String", "name")])
    assert field_compatibility(a, b) == 0.0


def test_field_compatibility_two_thirds_overlap():
    a = _entity("a", "Food", [Field("UUID", "id"), Field("String", "name")])
    b = _entity(
        "b",
        "Food",
        [Field("UUID", "id"), Field("String", "name"), Field("int", "price")],
    )
    assert field_compatibility(a, b) == 2 / 3


def test_field_compatibility_collapses_type_synonyms():
    a = _entity("a", "Food", [Field("Integer", "count"), Field("CharSequence", "name")])
    b = _entity("b", "Food", [Field("int", "count"), Field("String", "name")])
    assert field_compatibility(a, b) == 1.0


def test_zero_field_entity_scores_zero_against_non_identical():
    a = _entity("a", "Food", [])
    b = _entity("b", "Food", [Field("UUID", "id")])
    assert field_compatibility(a, b) == 0.0
    assert field_compatibility(a, a) == 1.0


def _two_service_system(a: DataEntity, b: DataEntity) -> SystemModel:
    return SystemModel(
        "t",
        (
            Microservice(name=a.owner, persistent_entities=(a,)),
            Microservice(name=b.owner, persistent_entities=(b,)),
        ),
    )


def test_identical_entities_across_services_are_candidates():
    a = _entity("svc-a", "Food", [Field("UUID", "id")])
    b = _entity("svc-b", "Food", [Field("UUID", "id")])
    pairs = find_merge_candidates(_two_service_system(a, b))
    assert len(pairs) == 1
    assert {pairs[0][0].owner, pairs[0][1].owner} == {"svc-a", "svc-b"}


def test_single_microservice_system_never_merges():
    entities = (
        _entity("only", "Food", [Field("UUID", "id")]),
        _entity("only", "Food", [Field("UUID", "id")], qualified="y.only.Food"),
    )
    system = SystemModel("t", (Microservice(name="only", persistent_entities=entities),))
    assert find_merge_candidates(system) == []


def test_subset_fields_qualify_even_below_jaccard_threshold():
    a = _entity("svc-a", "Food", [Field("UUID", "id")])
    b = _entity(
        "svc-b",
        "Food",
        [Field("UUID", "id"), Field("String", "n1"), Field("String", "n2")],
    )
    assert field_compatibility(a, b) < 0.5
    assert len(find_merge_candidates(_two_service_system(a, b))) == 1


def test_demo_example_yields_exactly_four_pairs():
    pairs = find_merge_candidates(demo_system())
    labelled = {frozenset({label_of(a), label_of(b)}) for a, b in pairs}
    assert labelled == DEMO_MERGE_PAIR_LABELS


def test_no_candidates_means_identity_resolution():
    a = _entity("svc-a", "Alpha", [Field("UUID", "id")])
    b = _entity("svc-b", "Omega", [Field("String", "name")])
    system = _two_service_system(a, b)
    resolution = build_resolution(system, [])
    assert resolution.groups == ()
    assert len(resolution.merged_entities) == 2
    for entity in system.all_entities():
        assert resolution.entity_map[entity.ref] == entity


def test_demo_example_merges_exactly_one_relationship():
    system = demo_system()
    pairs = find_merge_candidates(system)
    resolution = build_resolution(system, pairs)
    assert len(resolution.merged_entities) == 13
    assert len(resolution.merged_relationships) == 13
    # The one collapsed relationship is PaymentDto -> Coupon from MS-1/MS-2.
    post = {}
    for rel in system.all_relationships():
        src = resolution.entity_map[rel.source].ref
        dst = resolution.entity_map[rel.destination].ref
        key = tuple(sorted((src, dst)))
        post.setdefault(key, []).append(rel)
    collapsed = {k: v for k, v in post.items() if len(v) > 1}
    assert len(collapsed) == 1
    ((key, originals),) = collapsed.items()
    sources = {label_of(system.entity_index()[r.source]) for r in originals}
    destinations = {label_of(system.entity_index()[r.destination]) for r in originals}
    assert sources == {"T-1.1", "T-2.1"}
    assert destinations == {"P-1.3", "P-2.1"}


def test_representative_has_most_fields_with_lexicographic_ties():
    small = _entity("svc-a", "Food", [Field("UUID", "id")])
    big = _entity("svc-b", "Food", [Field("UUID", "id"), Field("String", "name")])
    system = _two_service_system(small, big)
    resolution = build_resolution(system, find_merge_candidates(system))
    assert resolution.entity_map[small.ref] == big

    tied_a = _entity("svc-a", "Food", [Field("UUID", "id")])
    tied_b = _entity("svc-b", "Food", [Field("UUID", "id")])
    system = _two_service_system(tied_a, tied_b)
    resolution = build_resolution(system, find_merge_candidates(system))
    assert resolution.entity_map[tied_b.ref] == tied_a  # smaller (owner, name) wins


def test_entity_map_is_idempotent():
    system = demo_system()
    resolution = build_resolution(system, find_merge_candidates(system))
    for entity in system.all_entities():
        image = resolution.entity_map[entity.ref]
        assert resolution.entity_map[image.ref] == image
    for rel in system.all_relationships():
        image = resolution.map_relationship(rel)
        assert resolution.map_relationship(image) == image


def test_transitive_chains_collapse_into_one_group():
    # a-b and b-c are candidates; a-c alone is not, but union-find closes it.
    a = _entity("svc-a", "Food", [Field("UUID", "id"), Field("String", "name")])
    b = _entity("svc-b", "Food", [Field("UUID", "id")])
    c = _entity(
        "svc-c", "Food", [Field("UUID", "id"), Field("int", "q1"), Field("int", "q2")]
    )
    system = SystemModel(
        "t",
        (
            Microservice(name="svc-a", persistent_entities=(a,)),
            Microservice(name="svc-b", persistent_entities=(b,)),
            Microservice(name="svc-c", persistent_entities=(c,)),
        ),
    )
    pairs = [(a, b), (b, c)]
    resolution = build_resolution(system, pairs)
    assert len(resolution.groups) == 1
    assert len(resolution.groups[0]) == 3
    assert resolution.entity_map[a.ref] == resolution.entity_map[c.ref]


def test_raising_thresholds_never_increases_merges():
    rng = random.Random(99)
    for _ in range(25):
        system = random_system(rng, max_entities=20)
        merge_counts = []
        for threshold in (0.5, 0.7, 0.85, 0.95, 1.0):
            pairs = find_merge_candidates(system, name_threshold=threshold)
            resolution = build_resolution(system, pairs)
            merge_counts.append(resolution.merge_count)
        assert merge_counts == sorted(merge_counts, reverse=True)
        field_counts = []
        for threshold in (0.0, 0.3, 0.6, 1.0):
            pairs = find_merge_candidates(system, field_threshold=threshold)
            resolution = build_resolution(system, pairs)
            field_counts.append(resolution.merge_count)
        assert field_counts == sorted(field_counts, reverse=True)


def test_merge_count_identity_on_any_input():
    rng = random.Random(4242)
    for _ in range(50):
        system = random_system(rng, max_entities=25)
        pairs = find_merge_candidates(system)
        resolution = build_resolution(system, pairs)
        total = len(system.all_entities())
        assert total - len(resolution.merged_entities) == resolution.merge_count


def test_forced_merge_arithmetic_matches_published_instances():
    for total, merges, expected_map in ((31, 11, 20), (209, 139, 70), (108, 32, 76)):
        system = system_with_forced_merges(total, merges)
        pairs = find_merge_candidates(system)
        resolution = build_resolution(system, pairs)
        assert len(system.all_entities()) == total
        assert resolution.merge_count == merges
        assert len(resolution.merged_entities) == expected_map


def test_empty_system_gives_empty_context_map():
    system = SystemModel("t")
    resolution = build_resolution(system, [])
    context = build_context_map(resolution)
    assert context.entities == ()
    assert context.relationships == ()


def test_demo_context_map_has_13_entities_and_13_relationships():
    system = demo_system()
    resolution = build_resolution(system, find_merge_candidates(system))
    context = build_context_map(resolution)
    assert len(context.entities) == 13
    assert len(context.relationships) == 13
    refs = {e.ref for e in context.entities}
    for rel in context.relationships:
        assert rel.source in refs and rel.destination in refs


def test_provenance_lists_absorbed_entities():
    system = demo_system()
    resolution = build_resolution(system, find_merge_candidates(system))
    absorbed = {
        member for members in resolution.provenance.values() for member in members
    }
    assert len(absorbed) == 4
    audit = merge_audit_lines(resolution)
    assert len(audit) == 4
    assert all(" <= " in line for line in audit)


def test_post_merge_self_relationship_is_retained_once():
    a = _entity("svc-a", "Food", [Field("UUID", "id"), Field("Wrap", "wrap")])
    b = _entity("svc-b", "Food", [Field("UUID", "id")])
    # Cross-entity link whose endpoints merge into one representative.
    a = a.with_relationships([Relationship(a.ref, b.ref, "wrap")])
    system = _two_service_system(a, b)
    pairs = find_merge_candidates(system)
    assert pairs
    resolution = build_resolution(system, pairs)
    assert len(resolution.merged_relationships) == 1
    (rel,) = resolution.merged_relationships
    assert rel.source == rel.destination
