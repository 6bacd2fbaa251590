from __future__ import annotations

import textwrap

import pytest

from msviews.discovery import (
    Evidence,
    MalformedDocument,
    RootNotFound,
    discover,
    parse_compose,
)
from support import CORPUS, DEMO_CORPUS


def _write(tmp_path, rel, content):
    path = tmp_path / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(textwrap.dedent(content), encoding="utf-8")
    return path


def test_empty_directory_discovers_nothing(tmp_path):
    assert discover(tmp_path) == []


def test_missing_root_raises():
    with pytest.raises(RootNotFound):
        discover("/nonexistent/definitely/not/here")


def test_parse_compose_build_string_and_image_only(tmp_path):
    compose = _write(
        tmp_path,
        "docker-compose.yml",
        """
        services:
          a:
            build: ./a
          b:
            image: redis:7
        """,
    )
    entries = parse_compose(compose)
    assert [(name, ctx.name if ctx else None) for name, ctx in entries] == [
        ("a", "a"),
        ("b", None),
    ]


def test_parse_compose_zero_services(tmp_path):
    compose = _write(tmp_path, "docker-compose.yml", "services: {}\n")
    assert parse_compose(compose) == []


def test_parse_compose_nested_context_keys():
    entries = parse_compose(CORPUS / "docker-compose.yml")
    with_context = [(name, ctx) for name, ctx in entries if ctx is not None]
    assert len(with_context) == 4
    assert sorted(name for name, _ in with_context) == [
        "catalog-svc",
        "gateway-svc",
        "inventory-svc",
        "pricing-svc",
    ]


def test_parse_compose_legacy_top_level_layout(tmp_path):
    compose = _write(
        tmp_path,
        "docker-compose.yml",
        """
        web:
          build: ./web
        cache:
          image: redis:7
        """,
    )
    (tmp_path / "web").mkdir()
    entries = parse_compose(compose)
    assert [name for name, ctx in entries if ctx] == ["web"]


def test_parse_compose_malformed_document(tmp_path):
    compose = _write(tmp_path, "docker-compose.yml", "services: [not, a, mapping\n")
    with pytest.raises(MalformedDocument):
        parse_compose(compose)
    scalar = _write(tmp_path, "other-compose.yml", "'just a string'\n")
    compose2 = tmp_path / "docker-compose.other.yml"
    compose2.write_text("just a string\n", encoding="utf-8")
    with pytest.raises(MalformedDocument):
        parse_compose(compose2)


def test_fixture_corpus_discovers_four_services():
    manifests = discover(CORPUS)
    assert [m.microservice_name for m in manifests] == [
        "catalog-svc",
        "gateway-svc",
        "inventory-svc",
        "pricing-svc",
    ]
    # Compose entry and Maven module agree on every directory.
    assert all(m.evidence is Evidence.BOTH for m in manifests)
    assert all(m.root_dir.is_dir() for m in manifests)


def test_demo_corpus_discovers_compose_only_services():
    manifests = discover(DEMO_CORPUS)
    assert [m.microservice_name for m in manifests] == ["MS-1", "MS-2", "MS-3", "MS-4"]
    assert all(m.evidence is Evidence.COMPOSE_SERVICE for m in manifests)


def test_discovery_is_deterministic():
    assert discover(CORPUS) == discover(CORPUS)


def test_compose_name_takes_precedence_over_directory_name(tmp_path):
    _write(
        tmp_path,
        "docker-compose.yml",
        """
        services:
          billing:
            build: ./billing-service
        """,
    )
    _write(
        tmp_path,
        "billing-service/pom.xml",
        "<project><modelVersion>4.0.0</modelVersion></project>",
    )
    _write(
        tmp_path,
        "billing-service/src/main/java/App.java",
        """
        public class App {
            public static void main(String[] args) { }
        }
        """,
    )
    (manifest,) = discover(tmp_path)
    assert manifest.microservice_name == "billing"
    assert manifest.evidence is Evidence.BOTH


def test_build_manifest_fallback_without_compose(tmp_path):
    _write(
        tmp_path,
        "orders/pom.xml",
        "<project><modelVersion>4.0.0</modelVersion></project>",
    )
    _write(
        tmp_path,
        "orders/src/main/java/OrdersApp.java",
        """
        public class OrdersApp {
            public static void main(String[] args) { }
        }
        """,
    )
    # A library module without an entry point must not count.
    _write(
        tmp_path,
        "commons/pom.xml",
        "<project><modelVersion>4.0.0</modelVersion></project>",
    )
    _write(
        tmp_path,
        "commons/src/main/java/Util.java",
        """
        public class Util {
            public static int one() { return 1; }
        }
        """,
    )
    manifests = discover(tmp_path)
    assert [(m.microservice_name, m.evidence) for m in manifests] == [
        ("orders", Evidence.BUILD_MANIFEST)
    ]


def test_python_service_is_discovered_for_counting(tmp_path):
    _write(tmp_path, "voucher/requirements.txt", "flask==2.0\n")
    _write(
        tmp_path,
        "voucher/app.py",
        """
        from flask import Flask
        app = Flask(__name__)
        if __name__ == "__main__":
            app.run()
        """,
    )
    (manifest,) = discover(tmp_path)
    assert manifest.microservice_name == "voucher"
    assert manifest.evidence is Evidence.BUILD_MANIFEST


def test_non_jvm_service_counts_with_empty_extraction(tmp_path):
    from msviews.pipeline import analyze_tree

    _write(
        tmp_path,
        "orders/pom.xml",
        "<project><modelVersion>4.0.0</modelVersion></project>",
    )
    _write(
        tmp_path,
        "orders/src/main/java/OrdersApp.java",
        """
        public class OrdersApp {
            public static void main(String[] args) { }
        }
        """,
    )
    _write(tmp_path, "voucher/requirements.txt", "flask==2.0\n")
    _write(
        tmp_path,
        "voucher/app.py",
        """
        from flask import Flask
        app = Flask(__name__)
        app.run()
        """,
    )
    result = analyze_tree(tmp_path, "mixed")
    assert result.report.s1_microservices == 2
    voucher = result.system.microservice("voucher")
    assert voucher is not None
    assert voucher.entities == ()
    assert voucher.endpoints == ()


def test_unreadable_compose_is_skipped_with_warning(tmp_path):
    _write(tmp_path, "docker-compose.yml", "services: [broken\n")
    _write(
        tmp_path,
        "svc/pom.xml",
        "<project><modelVersion>4.0.0</modelVersion></project>",
    )
    _write(
        tmp_path,
        "svc/src/main/java/App.java",
        """
        public class App {
            public static void main(String[] args) { }
        }
        """,
    )
    warnings: list[str] = []
    manifests = discover(tmp_path, warnings)
    assert [m.microservice_name for m in manifests] == ["svc"]
    assert len(warnings) == 1
