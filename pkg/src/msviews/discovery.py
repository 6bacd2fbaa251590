"""Find standalone microservice projects inside a repository tree.

Two evidence sources: services declared in docker-compose files whose
build context resolves to a subdirectory, and subdirectories carrying a
recognized build manifest together with an application entry point. The
compose file is authoritative for names when both agree on a directory.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

import yaml


class RootNotFound(Exception):
    pass


class MalformedDocument(Exception):
    pass


class UnreadableManifest(Exception):
    """A deployment file that could not be read; recorded, never fatal."""

    def __init__(self, path: Path, reason: str):
        super().__init__(f"skipped unreadable manifest {path}: {reason}")
        self.path = path


class Evidence(str, enum.Enum):
    COMPOSE_SERVICE = "COMPOSE_SERVICE"
    BUILD_MANIFEST = "BUILD_MANIFEST"
    BOTH = "BOTH"


@dataclass(frozen=True)
class ProjectManifest:
    microservice_name: str
    root_dir: Path
    evidence: Evidence


def parse_compose(file: str | Path) -> list[tuple[str, Path | None]]:
    """Service entries of a compose document as (name, build context) pairs.

    Image-only services come back with an absent context; callers exclude
    them from discovery. Both the top-level ``services:`` layout and the
    legacy flat layout are understood, and ``build`` may be a plain string
    or a mapping with a ``context`` key.
    """
    path = Path(file)
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except (yaml.YAMLError, UnicodeDecodeError) as exc:
        raise MalformedDocument(f"{path}: {exc}") from exc
    if data is None:
        return []
    if not isinstance(data, dict):
        raise MalformedDocument(f"{path}: compose document is not a mapping")

    services = data.get("services")
    if not isinstance(services, dict):
        # Legacy layout: service definitions at the top level.
        services = {
            key: value
            for key, value in data.items()
            if isinstance(value, dict) and ("build" in value or "image" in value)
        }

    entries: list[tuple[str, Path | None]] = []
    for name in sorted(services):
        definition = services[name]
        if not isinstance(definition, dict):
            continue
        build = definition.get("build")
        context: str | None = None
        if isinstance(build, str):
            context = build
        elif isinstance(build, dict):
            raw = build.get("context")
            if isinstance(raw, str):
                context = raw
        if context is None:
            entries.append((str(name), None))
        else:
            entries.append((str(name), (path.parent / context).resolve()))
    return entries


_BUILD_MANIFESTS = (
    "pom.xml",
    "build.gradle",
    "build.gradle.kts",
    "package.json",
    "requirements.txt",
    "setup.py",
    "go.mod",
)

_SKIP_DIRS = {".git", "node_modules", "target", "build", "dist", "__pycache__"}


def _java_entry_point(directory: Path) -> bool:
    for source in directory.rglob("*.java"):
        if any(part in _SKIP_DIRS for part in source.parts):
            continue
        try:
            text = source.read_text(encoding="utf-8", errors="replace")
        except OSError:
            continue
        if "@SpringBootApplication" in text or "static void main" in text:
            return True
    return False


def _python_entry_point(directory: Path) -> bool:
    for source in directory.rglob("*.py"):
        try:
            text = source.read_text(encoding="utf-8", errors="replace")
        except OSError:
            continue
        if "__main__" in text or "app.run(" in text or "Flask(" in text:
            return True
    return False


def _node_entry_point(directory: Path) -> bool:
    import json

    try:
        data = json.loads((directory / "package.json").read_text(encoding="utf-8"))
    except (OSError, ValueError):
        return False
    return bool(data.get("main") or data.get("scripts", {}).get("start"))


def _go_entry_point(directory: Path) -> bool:
    for source in directory.rglob("*.go"):
        try:
            if "func main(" in source.read_text(encoding="utf-8", errors="replace"):
                return True
        except OSError:
            continue
    return False


def _has_entry_point(directory: Path, manifest: str) -> bool:
    if manifest in ("pom.xml", "build.gradle", "build.gradle.kts"):
        return _java_entry_point(directory)
    if manifest == "package.json":
        return _node_entry_point(directory)
    if manifest in ("requirements.txt", "setup.py"):
        return _python_entry_point(directory)
    if manifest == "go.mod":
        return _go_entry_point(directory)
    return False


def _manifest_directories(root: Path) -> list[Path]:
    """Deepest-first-stopping walk: once a directory qualifies, its children
    are not considered separate projects."""
    found: list[Path] = []

    def walk(directory: Path) -> None:
        try:
            children = sorted(p for p in directory.iterdir() if p.is_dir())
        except OSError:
            return
        for child in children:
            if child.name.startswith(".") or child.name in _SKIP_DIRS:
                continue
            qualifies = False
            for manifest in _BUILD_MANIFESTS:
                if (child / manifest).is_file() and _has_entry_point(child, manifest):
                    qualifies = True
                    break
            if qualifies:
                found.append(child)
            else:
                walk(child)

    walk(root)
    return found


def find_compose_files(root: Path) -> list[Path]:
    """docker-compose*.yml/yaml in the root and its immediate subdirectories."""
    patterns = ("docker-compose*.yml", "docker-compose*.yaml")
    files = {p for pattern in patterns for p in root.glob(pattern)}
    for child in root.iterdir():
        if child.is_dir() and not child.name.startswith("."):
            for pattern in patterns:
                files.update(child.glob(pattern))
    return sorted(files)


def discover(
    root: str | Path, warnings: list[str] | None = None
) -> list[ProjectManifest]:
    """One manifest per detected microservice under ``root``.

    Compose-declared services whose build context exists take precedence;
    build-manifest scanning fills in services the compose files miss
    (including non-JVM ones, which later extraction may leave empty).
    Repeated runs over an unchanged tree return the same sorted list.
    """
    root = Path(root)
    if not root.exists() or not root.is_dir():
        raise RootNotFound(str(root))
    root = root.resolve()

    by_dir: dict[Path, ProjectManifest] = {}
    claimed_names: set[str] = set()

    for compose in find_compose_files(root):
        try:
            entries = parse_compose(compose)
        except (MalformedDocument, OSError) as exc:
            if warnings is not None:
                warnings.append(str(UnreadableManifest(compose, str(exc))))
            continue
        for name, context in entries:
            if context is None or not context.is_dir():
                continue
            if name in claimed_names:
                continue
            if context in by_dir:
                continue
            by_dir[context] = ProjectManifest(name, context, Evidence.COMPOSE_SERVICE)
            claimed_names.add(name)

    for directory in _manifest_directories(root):
        directory = directory.resolve()
        if directory in by_dir:
            existing = by_dir[directory]
            by_dir[directory] = ProjectManifest(
                existing.microservice_name, directory, Evidence.BOTH
            )
            continue
        name = directory.name
        if name in claimed_names:
            continue
        by_dir[directory] = ProjectManifest(name, directory, Evidence.BUILD_MANIFEST)
        claimed_names.add(name)

    return sorted(by_dir.values(), key=lambda m: m.microservice_name)
