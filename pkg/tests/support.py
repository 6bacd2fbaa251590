"""Shared fixtures: the demonstrating example encoded as IR, plus generators."""

from __future__ import annotations

import random
from pathlib import Path

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
    SystemModel,
)

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "corpus"
DEMO_CORPUS = FIXTURES / "demo_corpus"

# The demonstrating example uses positional labels for its entities:
# <P|T>-<microservice>.<ordinal>, P persistent and T transient. This map ties
# each label to the concrete entity used by both fixture encodings.
DEMO_LABELS = {
    "P-1.1": ("MS-1", "demo.orders.Order"),
    "P-1.2": ("MS-1", "demo.orders.OrderItem"),
    "P-1.3": ("MS-1", "demo.orders.Coupon"),
    "T-1.1": ("MS-1", "demo.orders.PaymentDto"),
    "P-2.1": ("MS-2", "demo.bookings.Coupon"),
    "P-2.2": ("MS-2", "demo.bookings.Trip"),
    "P-2.3": ("MS-2", "demo.bookings.Station"),
    "P-2.4": ("MS-2", "demo.bookings.Route"),
    "T-2.1": ("MS-2", "demo.bookings.PaymentDto"),
    "T-2.2": ("MS-2", "demo.bookings.TripSummary"),
    "P-3.1": ("MS-3", "demo.geo.Region"),
    "P-3.3": ("MS-3", "demo.geo.Landmark"),
    "T-3.2": ("MS-3", "demo.geo.StationDto"),
    "P-4.1": ("MS-4", "demo.freight.Route"),
    "P-4.2": ("MS-4", "demo.freight.Shipment"),
    "P-4.3": ("MS-4", "demo.freight.Wagon"),
    "T-4.1": ("MS-4", "demo.freight.ManifestDto"),
}

DEMO_MERGE_PAIR_LABELS = {
    frozenset({"T-1.1", "T-2.1"}),
    frozenset({"P-1.3", "P-2.1"}),
    frozenset({"P-2.3", "T-3.2"}),
    frozenset({"P-2.4", "P-4.1"}),
}


def label_of(entity: DataEntity) -> str | None:
    for label, (owner, qualified) in DEMO_LABELS.items():
        if entity.owner == owner and entity.qualified_name == qualified:
            return label
    return None


def _entity(
    owner: str,
    qualified: str,
    persistence: Persistence,
    fields: list[Field],
    relationships: list[tuple[str, str]] = (),
) -> DataEntity:
    """relationships: (destination qualified name, via field) within ``owner``."""
    simple = qualified.rsplit(".", 1)[-1]
    source = EntityRef(owner, qualified)
    return DataEntity(
        qualified_name=qualified,
        simple_name=simple,
        owner=owner,
        persistence=persistence,
        fields=tuple(fields),
        relationships=tuple(
            Relationship(source, EntityRef(owner, dest), via)
            for dest, via in relationships
        ),
    )


def demo_system() -> SystemModel:
    """The demonstrating example encoded directly as IR, calls unresolved."""
    rel = Persistence.RELATIONAL
    doc = Persistence.NON_RELATIONAL
    tra = Persistence.TRANSIENT

    ms1 = Microservice(
        name="MS-1",
        endpoints=(
            Endpoint(
                HttpMethod.GET,
                "/orders/{id}/payment",
                "PaymentDto",
                (Parameter("String", "id"),),
            ),
        ),
        calls=(
            CallSite(
                HttpMethod.GET,
                "/payments/*",
                "PaymentDto",
                (Parameter("unknown", "arg1"),),
                target_hint="MS-2",
                origin="OrdersController.java:20",
            ),
        ),
        persistent_entities=(
            _entity(
                "MS-1",
                "demo.orders.Order",
                rel,
                [
                    Field("UUID", "id"),
                    Field("Date", "createdAt"),
                    Field("OrderItem", "items", True),
                    Field("Coupon", "coupon"),
                ],
                [("demo.orders.OrderItem", "items"), ("demo.orders.Coupon", "coupon")],
            ),
            _entity(
                "MS-1",
                "demo.orders.OrderItem",
                rel,
                [Field("UUID", "id"), Field("String", "sku"), Field("int", "quantity")],
            ),
            _entity(
                "MS-1",
                "demo.orders.Coupon",
                rel,
                [
                    Field("UUID", "id"),
                    Field("String", "code"),
                    Field("BigDecimal", "discount"),
                ],
            ),
        ),
        transient_entities=(
            _entity(
                "MS-1",
                "demo.orders.PaymentDto",
                tra,
                [Field("BigDecimal", "amount"), Field("Coupon", "coupon")],
                [("demo.orders.Coupon", "coupon")],
            ),
        ),
    )

    ms2 = Microservice(
        name="MS-2",
        endpoints=(
            Endpoint(
                HttpMethod.GET,
                "/payments/{id}",
                "PaymentDto",
                (Parameter("String", "id"),),
            ),
            Endpoint(
                HttpMethod.GET,
                "/trips/{id}",
                "TripSummary",
                (Parameter("String", "id"),),
            ),
            Endpoint(
                HttpMethod.GET,
                "/routes/{code}",
                "Route",
                (Parameter("String", "code"),),
            ),
        ),
        persistent_entities=(
            _entity(
                "MS-2",
                "demo.bookings.Coupon",
                doc,
                [Field("UUID", "id"), Field("String", "code")],
            ),
            _entity(
                "MS-2",
                "demo.bookings.Trip",
                doc,
                [
                    Field("UUID", "id"),
                    Field("Date", "departure"),
                    Field("Route", "route"),
                    Field("Coupon", "coupon"),
                ],
                [("demo.bookings.Route", "route"), ("demo.bookings.Coupon", "coupon")],
            ),
            _entity(
                "MS-2",
                "demo.bookings.Station",
                doc,
                [
                    Field("UUID", "id"),
                    Field("String", "name"),
                    Field("double", "elevation"),
                ],
            ),
            _entity(
                "MS-2",
                "demo.bookings.Route",
                doc,
                [
                    Field("UUID", "id"),
                    Field("String", "code"),
                    Field("Station", "stops", True),
                ],
                [("demo.bookings.Station", "stops")],
            ),
        ),
        transient_entities=(
            _entity(
                "MS-2",
                "demo.bookings.PaymentDto",
                tra,
                [Field("BigDecimal", "amount"), Field("Coupon", "coupon")],
                [("demo.bookings.Coupon", "coupon")],
            ),
            _entity(
                "MS-2",
                "demo.bookings.TripSummary",
                tra,
                [
                    Field("String", "title"),
                    Field("Trip", "trip"),
                    Field("Station", "departureStation"),
                ],
                [
                    ("demo.bookings.Trip", "trip"),
                    ("demo.bookings.Station", "departureStation"),
                ],
            ),
        ),
    )

    ms3 = Microservice(
        name="MS-3",
        endpoints=(
            Endpoint(
                HttpMethod.GET,
                "/stations/{id}",
                "StationDto",
                (Parameter("String", "id"),),
            ),
        ),
        calls=(
            CallSite(
                HttpMethod.GET,
                "/trips/*",
                "Object",
                (Parameter("unknown", "arg1"),),
                target_hint="MS-2",
                origin="GeoController.java:24",
            ),
        ),
        persistent_entities=(
            _entity(
                "MS-3",
                "demo.geo.Region",
                rel,
                [
                    Field("UUID", "id"),
                    Field("String", "name"),
                    Field("Landmark", "landmarks", True),
                ],
                [("demo.geo.Landmark", "landmarks")],
            ),
            _entity(
                "MS-3",
                "demo.geo.Landmark",
                rel,
                [Field("UUID", "id"), Field("String", "label")],
            ),
        ),
        transient_entities=(
            _entity(
                "MS-3",
                "demo.geo.StationDto",
                tra,
                [
                    Field("UUID", "id"),
                    Field("String", "name"),
                    Field("Region", "region"),
                ],
                [("demo.geo.Region", "region")],
            ),
        ),
    )

    ms4 = Microservice(
        name="MS-4",
        endpoints=(
            Endpoint(
                HttpMethod.GET,
                "/shipments/{id}/manifest",
                "ManifestDto",
                (Parameter("String", "id"),),
            ),
        ),
        calls=(
            CallSite(
                HttpMethod.GET,
                "/routes/*",
                "Object",
                (Parameter("unknown", "arg1"),),
                target_hint="MS-2",
                origin="FreightController.java:24",
            ),
        ),
        persistent_entities=(
            _entity(
                "MS-4",
                "demo.freight.Route",
                rel,
                [Field("UUID", "id"), Field("String", "code")],
            ),
            _entity(
                "MS-4",
                "demo.freight.Shipment",
                rel,
                [
                    Field("UUID", "id"),
                    Field("double", "weight"),
                    Field("Route", "route"),
                    Field("Wagon", "wagons", True),
                ],
                [("demo.freight.Route", "route"), ("demo.freight.Wagon", "wagons")],
            ),
            _entity(
                "MS-4",
                "demo.freight.Wagon",
                rel,
                [Field("UUID", "id"), Field("int", "axles")],
            ),
        ),
        transient_entities=(
            _entity(
                "MS-4",
                "demo.freight.ManifestDto",
                tra,
                [Field("String", "reference"), Field("Shipment", "shipment")],
                [("demo.freight.Shipment", "shipment")],
            ),
        ),
    )

    return SystemModel(version_label="demo", microservices=(ms1, ms2, ms3, ms4))


# ---------------------------------------------------------------------------
# Random system generation

_CONCEPTS = [
    "Order",
    "Ticket",
    "Station",
    "Route",
    "Food",
    "Price",
    "Account",
    "Voucher",
    "Seat",
    "Luggage",
    "Invoice",
    "Contact",
]
_SUFFIXES = ["", "", "Dto", "Entity", "Model"]
_FIELD_POOL = [
    Field("UUID", "id"),
    Field("String", "name"),
    Field("String", "code"),
    Field("int", "count"),
    Field("BigDecimal", "amount"),
    Field("Date", "createdAt"),
    Field("boolean", "active"),
]


def random_system(rng: random.Random, max_entities: int = 30) -> SystemModel:
    """A small random system with plausible merge collisions and relationships."""
    ms_count = rng.randint(2, 5)
    ms_names = [f"svc-{chr(ord('a') + i)}" for i in range(ms_count)]
    per_ms: dict[str, list[DataEntity]] = {name: [] for name in ms_names}
    total = rng.randint(0, max_entities)
    for index in range(total):
        owner = rng.choice(ms_names)
        concept = rng.choice(_CONCEPTS)
        suffix = rng.choice(_SUFFIXES)
        simple = concept + suffix
        # Unique package segment keeps qualified names distinct per owner
        # while the simple name stays the last segment.
        qualified = f"gen.{owner.replace('-', '')}.p{index}.{simple}"
        share_fields = rng.random() < 0.7
        if share_fields:
            field_count = rng.randint(0, 4)
            fields = rng.sample(_FIELD_POOL, field_count)
        else:
            fields = [Field("String", f"extra{rng.randint(0, 99)}")]
        persistence = rng.choice(
            [
                Persistence.RELATIONAL,
                Persistence.NON_RELATIONAL,
                Persistence.TRANSIENT,
            ]
        )
        per_ms[owner].append(
            DataEntity(
                qualified_name=qualified,
                simple_name=simple,
                owner=owner,
                persistence=persistence,
                fields=tuple(fields),
            )
        )

    microservices = []
    for name in ms_names:
        entities = per_ms[name]
        # Random intra-service relationships, including mutual pairs.
        with_rels = []
        for entity in entities:
            rels = []
            for other in entities:
                if other.qualified_name == entity.qualified_name:
                    continue
                if rng.random() < 0.15 and entity.fields:
                    rels.append(
                        Relationship(
                            entity.ref, other.ref, entity.fields[0].name
                        )
                    )
            with_rels.append(entity.with_relationships(rels[:2]))
        persistent = tuple(
            e for e in with_rels if e.persistence is not Persistence.TRANSIENT
        )
        transient = tuple(
            e for e in with_rels if e.persistence is Persistence.TRANSIENT
        )
        microservices.append(
            Microservice(
                name=name,
                persistent_entities=persistent,
                transient_entities=transient,
            )
        )
    return SystemModel(version_label="random", microservices=tuple(microservices))


def system_with_forced_merges(
    total: int, merges: int, ms_count: int = 12
) -> SystemModel:
    """A system of ``total`` entities engineered to merge exactly ``merges`` times.

    Identical concepts are copied into distinct microservices; every copy
    pair scores 1.0 on name and fields, so union-find collapses each
    concept's copies into one group of (copies) members.
    """
    distinct = total - merges
    if distinct <= 0:
        raise ValueError("total must exceed merges")
    copies = [1] * distinct
    for k in range(merges):
        copies[k % distinct] += 1
    assert max(copies) <= ms_count, "not enough microservices for a group"

    per_ms: dict[str, list[DataEntity]] = {
        f"svc-{i:02d}": [] for i in range(ms_count)
    }
    names = sorted(per_ms)
    for concept_index, copy_count in enumerate(copies):
        simple = f"Concept{concept_index}"
        fields = (Field("UUID", "id"), Field("String", "name"))
        for k in range(copy_count):
            owner = names[(concept_index + k) % ms_count]
            per_ms[owner].append(
                DataEntity(
                    qualified_name=f"gen.{owner}.c{concept_index}.{simple}",
                    simple_name=simple,
                    owner=owner,
                    persistence=Persistence.RELATIONAL,
                    fields=fields,
                )
            )
    microservices = tuple(
        Microservice(name=name, persistent_entities=tuple(per_ms[name]))
        for name in names
    )
    return SystemModel(version_label="forced", microservices=microservices)
