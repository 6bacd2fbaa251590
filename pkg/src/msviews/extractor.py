"""Convention-driven source scanning for one microservice.

The scanner is lexical, not a full grammar parser: it recognizes type
declarations, annotations, field declarations, method signatures and
string literals, which is all that framework-convention code needs. A
profile names the conventions, so other frameworks stay addable without
touching the scanning machinery.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from msviews.model import (
    CallSite,
    DataEntity,
    Endpoint,
    Field,
    HttpMethod,
    Parameter,
    Persistence,
    Relationship,
)
from msviews.matcher import normalize_path, split_host
from msviews.profiles import LanguageProfile

_MODIFIERS = {
    "public",
    "private",
    "protected",
    "static",
    "final",
    "abstract",
    "default",
    "native",
    "synchronized",
    "transient",
    "volatile",
    "strictfp",
}

_SKIP_DIR_PARTS = {".git", "target", "build", "node_modules", "__pycache__", "out"}


class ConflictingMapping(Exception):
    """Two handlers in one microservice declare the same method and path."""


@dataclass(frozen=True)
class RawCall:
    """An outbound request site before target resolution.

    ``url_expression`` keeps literal URL text with every concatenated or
    interpolated segment replaced by the placeholder token ``{*}``.
    """

    http_method: HttpMethod
    url_expression: str
    return_type: str
    origin: str

    @property
    def target_hint(self) -> str | None:
        host, _ = split_host(self.url_expression)
        return host


@dataclass(frozen=True)
class ParamSketch:
    type_name: str
    name: str
    annotations: tuple[str, ...] = ()


@dataclass(frozen=True)
class MethodSketch:
    name: str
    return_type: str
    parameters: tuple[ParamSketch, ...] = ()
    annotations: tuple[str, ...] = ()
    line: int = 0


@dataclass(frozen=True)
class ClassSketch:
    """One top-level type declaration, captured without full parsing."""

    qualified_name: str
    simple_name: str
    annotations: tuple[str, ...]
    fields: tuple[Field, ...]
    methods: tuple[MethodSketch, ...]
    file: str
    line: int = 0
    body: str = ""
    body_line: int = 1

    def __post_init__(self) -> None:
        if self.simple_name != self.qualified_name.rsplit(".", 1)[-1]:
            raise ValueError(
                f"simple name '{self.simple_name}' is not the last segment of "
                f"'{self.qualified_name}'"
            )

    @property
    def annotation_names(self) -> frozenset[str]:
        return frozenset(_annotation_name(a) for a in self.annotations)

    @property
    def method_signatures(self) -> tuple[tuple[str, str, tuple[str, ...]], ...]:
        return tuple(
            (m.name, m.return_type, tuple(p.type_name for p in m.parameters))
            for m in self.methods
        )


def _annotation_name(raw: str) -> str:
    name = raw.lstrip("@").split("(", 1)[0].strip()
    return name.rsplit(".", 1)[-1]


def _annotation_args(raw: str) -> str:
    if "(" not in raw:
        return ""
    return raw.split("(", 1)[1].rstrip()[:-1]


# ---------------------------------------------------------------------------
# Lexical scanning


def _clean_source(text: str) -> tuple[str, list[bool]]:
    """Blank out comments (newlines kept) and mark string/char literal chars."""
    chars = list(text)
    literal = [False] * len(text)
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                chars[i] = " "
                i += 1
        elif c == "/" and i + 1 < n and text[i + 1] == "*":
            chars[i] = chars[i + 1] = " "
            i += 2
            while i < n and not (text[i] == "*" and i + 1 < n and text[i + 1] == "/"):
                if text[i] != "\n":
                    chars[i] = " "
                i += 1
            if i < n:
                chars[i] = " "
                if i + 1 < n:
                    chars[i + 1] = " "
                i += 2
        elif c in "\"'":
            quote = c
            literal[i] = True
            i += 1
            while i < n:
                literal[i] = True
                if text[i] == "\\":
                    if i + 1 < n:
                        literal[i + 1] = True
                    i += 2
                    continue
                if text[i] == quote:
                    i += 1
                    break
                i += 1
        else:
            i += 1
    return "".join(chars), literal


def _matching_brace(text: str, literal: list[bool], open_index: int) -> int:
    depth = 0
    for i in range(open_index, len(text)):
        if literal[i]:
            continue
        if text[i] == "{":
            depth += 1
        elif text[i] == "}":
            depth -= 1
            if depth == 0:
                return i
    return len(text) - 1


def _matching_paren(text: str, literal: list[bool], open_index: int) -> int:
    depth = 0
    for i in range(open_index, len(text)):
        if literal[i]:
            continue
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i
    return len(text) - 1


def _find_annotations(
    text: str, literal: list[bool], start: int, end: int
) -> list[tuple[int, int, str]]:
    """All ``@Name(...)`` spans in [start, end) as (begin, stop, raw text)."""
    found = []
    i = start
    while i < end:
        if text[i] == "@" and not literal[i]:
            m = re.match(r"@\s*([A-Za-z_][\w.]*)", text[i:end])
            if m:
                stop = i + m.end()
                j = stop
                while j < end and text[j].isspace():
                    j += 1
                if j < end and text[j] == "(" and not literal[j]:
                    stop = _matching_paren(text, literal, j) + 1
                found.append((i, stop, text[i:stop]))
                i = stop
                continue
        i += 1
    return found


def _split_top_level(text: str, separator: str) -> list[str]:
    parts = []
    depth_round = depth_angle = depth_square = 0
    current = ""
    in_string: str | None = None
    i = 0
    while i < len(text):
        c = text[i]
        if in_string:
            current += c
            if c == "\\":
                if i + 1 < len(text):
                    current += text[i + 1]
                    i += 2
                    continue
            elif c == in_string:
                in_string = None
            i += 1
            continue
        if c in "\"'":
            in_string = c
        elif c == "(":
            depth_round += 1
        elif c == ")":
            depth_round -= 1
        elif c == "<":
            depth_angle += 1
        elif c == ">":
            depth_angle = max(0, depth_angle - 1)
        elif c == "[":
            depth_square += 1
        elif c == "]":
            depth_square -= 1
        if (
            c == separator
            and depth_round == 0
            and depth_angle == 0
            and depth_square == 0
        ):
            parts.append(current)
            current = ""
        else:
            current += c
        i += 1
    parts.append(current)
    return parts


def _collapse_generics(text: str) -> str:
    out = []
    depth = 0
    for c in text:
        if c == "<":
            depth += 1
        elif c == ">":
            depth = max(0, depth - 1)
        if depth and c.isspace():
            continue
        out.append(c)
    return "".join(out)


def parse_type(text: str, profile: LanguageProfile) -> tuple[str, bool]:
    """Reduce a declared type to (type text, collection flag).

    Collection and array declarations unwrap to their element type,
    recursively, so ``List<Set<Food>>`` yields ``("Food", True)``. Other
    generics (maps, wrappers) keep their full text.
    """
    text = re.sub(r"\?\s+(extends|super)\s+", "", text.strip())
    text = _collapse_generics(text).replace("...", "[]")
    is_collection = False
    while text.endswith("[]"):
        text = text[: -2].strip()
        is_collection = True
    m = re.match(r"^([\w.]+)<(.*)>$", text)
    if m:
        outer = m.group(1).rsplit(".", 1)[-1]
        if outer in profile.collection_types:
            inner = _split_top_level(m.group(2), ",")[0].strip().lstrip("? ")
            if inner:
                element, _ = parse_type(inner, profile)
                return element, True
            return outer, True
    return text, is_collection


def _referenced_names(type_text: str) -> set[str]:
    """Every type identifier mentioned anywhere in a declared type."""
    names = set()
    for token in re.findall(r"[A-Za-z_][\w.]*", type_text):
        names.add(token.rsplit(".", 1)[-1])
    return names


def _parse_parameters(params_text: str, profile: LanguageProfile) -> list[ParamSketch]:
    params: list[ParamSketch] = []
    for chunk in _split_top_level(params_text, ","):
        chunk = chunk.strip()
        if not chunk:
            continue
        annotations = []
        spans = _find_annotations(chunk, [False] * len(chunk), 0, len(chunk))
        cut = 0
        for begin, stop, raw in spans:
            if begin >= cut:
                annotations.append(raw)
                cut = stop
        rest = chunk[cut:].strip()
        tokens = _collapse_generics(rest).split()
        tokens = [t for t in tokens if t not in _MODIFIERS]
        if len(tokens) < 2:
            continue
        name = tokens[-1]
        type_text = " ".join(tokens[:-1])
        if name.startswith("[]"):  # array brackets attached to the name
            type_text += "[]"
            name = name.lstrip("[]")
        params.append(ParamSketch(type_text, name, tuple(annotations)))
    return params


def _parse_field_member(
    declaration: str, profile: LanguageProfile
) -> list[Field]:
    head = _split_top_level(declaration, "=")[0].strip()
    if "(" in head:
        return []
    head = _collapse_generics(head)
    declarators = _split_top_level(head, ",")
    first = declarators[0].split()
    tokens = [t for t in first if t not in _MODIFIERS]
    if "static" in first:
        return []
    if len(tokens) < 2:
        return []
    type_text = " ".join(tokens[:-1])
    type_name, is_collection = parse_type(type_text, profile)
    fields = [Field(type_name, tokens[-1], is_collection)]
    for extra in declarators[1:]:
        extra_name = extra.split("=")[0].strip()
        if re.fullmatch(r"[A-Za-z_]\w*", extra_name):
            fields.append(Field(type_name, extra_name, is_collection))
    return fields


def _parse_method_member(
    header: str, simple_name: str, line: int, profile: LanguageProfile
) -> MethodSketch | None:
    mask = [False] * len(header)
    spans = _find_annotations(header, mask, 0, len(header))
    starts = {begin: (stop, raw) for begin, stop, raw in spans}

    # Consume leading annotations (interleaved with modifiers) so that
    # parameter annotations stay inside the parameter list.
    annotations: list[str] = []
    i, n = 0, len(header)
    while i < n:
        if header[i].isspace():
            i += 1
            continue
        if header[i] == "@" and i in starts:
            stop, raw = starts[i]
            annotations.append(raw)
            i = stop
            continue
        word = re.match(r"[A-Za-z_]\w*", header[i:])
        if word and word.group(0) in _MODIFIERS:
            i += word.end()
            continue
        break
    rest = header[i:]
    open_paren = rest.find("(")
    if open_paren < 0:
        return None
    close_paren = _matching_paren(rest, [False] * len(rest), open_paren)
    before = rest[:open_paren].strip()
    params_text = rest[open_paren + 1 : close_paren]
    m = re.search(r"([A-Za-z_]\w*)\s*$", before)
    if not m:
        return None
    name = m.group(1)
    prefix = before[: m.start()].strip()
    tokens = [t for t in _collapse_generics(prefix).split() if t not in _MODIFIERS]
    tokens = [t for t in tokens if not (t.startswith("<") and t.endswith(">"))]
    if not tokens:
        if name == simple_name:  # constructor
            return None
        return_type = "void"
    else:
        return_type = tokens[-1]
    return MethodSketch(
        name=name,
        return_type=return_type,
        parameters=tuple(_parse_parameters(params_text, profile)),
        annotations=tuple(annotations),
        line=line,
    )


def _line_of(text: str, index: int) -> int:
    return text.count("\n", 0, index) + 1


def _scan_file(
    path: Path, rel: str, profile: LanguageProfile
) -> list[ClassSketch]:
    raw = path.read_text(encoding="utf-8", errors="replace")
    text, literal = _clean_source(raw)

    package = ""
    pkg_match = re.search(r"^\s*package\s+([\w.]+)\s*;", text, re.M)
    if pkg_match:
        package = pkg_match.group(1)

    sketches: list[ClassSketch] = []
    depth = 0
    previous_end = 0
    i = 0
    while i < len(text):
        if not literal[i]:
            c = text[i]
            if c == "{":
                depth += 1
            elif c == "}":
                depth -= 1
            elif depth == 0 and c in "cier":
                m = re.match(r"(class|interface|enum|record)\s+([A-Za-z_]\w*)", text[i:])
                if m and (i == 0 or not (text[i - 1].isalnum() or text[i - 1] in "._$")):
                    simple = m.group(2)
                    body_open = text.find("{", i + m.end())
                    while body_open != -1 and literal[body_open]:
                        body_open = text.find("{", body_open + 1)
                    if body_open == -1:
                        break
                    body_close = _matching_brace(text, literal, body_open)
                    header_cut = previous_end
                    for j in range(body_open - 1, previous_end - 1, -1):
                        if text[j] in ";}" and not literal[j]:
                            prefix = text[previous_end : j + 1]
                            if prefix.count("(") == prefix.count(")"):
                                header_cut = j + 1
                                break
                    annotations = [
                        a
                        for _, _, a in _find_annotations(text, literal, header_cut, i)
                    ]
                    sketches.append(
                        _build_sketch(
                            text,
                            literal,
                            package,
                            simple,
                            tuple(annotations),
                            body_open,
                            body_close,
                            rel,
                            _line_of(text, i),
                            profile,
                        )
                    )
                    previous_end = body_close + 1
                    i = body_close + 1
                    depth = 0
                    continue
        i += 1
    return sketches


def _build_sketch(
    text: str,
    literal: list[bool],
    package: str,
    simple: str,
    annotations: tuple[str, ...],
    body_open: int,
    body_close: int,
    rel: str,
    line: int,
    profile: LanguageProfile,
) -> ClassSketch:
    fields: list[Field] = []
    methods: list[MethodSketch] = []
    i = body_open + 1
    member_start = i
    paren_depth = 0
    while i < body_close:
        if literal[i]:
            i += 1
            continue
        c = text[i]
        if c == "(":
            paren_depth += 1
        elif c == ")":
            paren_depth = max(0, paren_depth - 1)
        elif c == ";" and paren_depth == 0:
            member = text[member_start:i]
            fields.extend(_member_fields(member, profile))
            maybe = _member_method(member, simple, text, member_start, profile)
            if maybe:
                methods.append(maybe)
            member_start = i + 1
        elif c == "{" and paren_depth == 0:
            close = _matching_brace(text, literal, i)
            header = text[member_start:i]
            if "=" in _head_before_paren(header):
                # field initialized with an anonymous block; declarator precedes '='
                fields.extend(_member_fields(header, profile))
                end = text.find(";", close)
                member_start = (end + 1) if end != -1 else close + 1
                i = member_start
                continue
            if not re.search(r"\b(class|interface|enum|record)\b", header):
                maybe = _member_method(header, simple, text, member_start, profile)
                if maybe:
                    methods.append(maybe)
            i = close + 1
            member_start = i
            continue
        i += 1

    qualified = f"{package}.{simple}" if package else simple
    return ClassSketch(
        qualified_name=qualified,
        simple_name=simple,
        annotations=annotations,
        fields=tuple(fields),
        methods=tuple(methods),
        file=rel,
        line=line,
        body=text[body_open + 1 : body_close],
        body_line=_line_of(text, body_open),
    )


def _head_before_paren(text: str) -> str:
    paren = text.find("(")
    return text if paren < 0 else text[:paren]


def _member_fields(member: str, profile: LanguageProfile) -> list[Field]:
    mask = [False] * len(member)
    spans = _find_annotations(member, mask, 0, len(member))
    cleaned = member
    for begin, stop, _ in reversed(spans):
        cleaned = cleaned[:begin] + " " * (stop - begin) + cleaned[stop:]
    cleaned = cleaned.strip()
    if not cleaned or "(" in _split_top_level(cleaned, "=")[0]:
        return []
    return _parse_field_member(cleaned, profile)


def _member_method(
    member: str, simple: str, text: str, offset: int, profile: LanguageProfile
) -> MethodSketch | None:
    head = _head_before_paren(member)
    if "(" not in member or "=" in head:
        return None
    return _parse_method_member(
        member, simple, _line_of(text, offset + len(member) - len(member.lstrip())),
        profile,
    )


def scan_classes(
    ms_root: str | Path,
    profile: LanguageProfile,
    warnings: list[str] | None = None,
) -> list[ClassSketch]:
    """One sketch per top-level type declaration under ``ms_root``.

    Unreadable files are skipped with a warning record; nothing here is
    fatal. Results are sorted by (file, line) so re-scans of an unchanged
    tree are identical.
    """
    root = Path(ms_root)
    if not root.exists():
        raise FileNotFoundError(f"microservice root does not exist: {root}")
    sketches: list[ClassSketch] = []
    files = sorted(
        p
        for suffix in profile.source_suffixes
        for p in root.rglob(f"*{suffix}")
        if not _skipped(p.relative_to(root))
    )
    for path in files:
        rel = path.relative_to(root).as_posix()
        try:
            sketches.extend(_scan_file(path, rel, profile))
        except OSError as exc:
            if warnings is not None:
                warnings.append(f"skipped unreadable file {path}: {exc}")
    sketches.sort(key=lambda s: (s.file, s.line, s.qualified_name))
    return sketches


def _skipped(rel: Path) -> bool:
    parts = rel.parts
    if any(part in _SKIP_DIR_PARTS or part.startswith(".") for part in parts[:-1]):
        return True
    # Maven convention: src/test trees hold test doubles, not service code.
    for a, b in zip(parts, parts[1:]):
        if a == "src" and b == "test":
            return True
    return False


# ---------------------------------------------------------------------------
# Endpoint extraction


def _marker_path(args: str, marker_path_attr: str) -> str:
    keyed = re.search(
        rf"(?:{marker_path_attr}|path)\s*=\s*\{{?\s*\"([^\"]*)\"", args
    )
    if keyed:
        return keyed.group(1)
    bare = re.match(r"\s*\{?\s*\"([^\"]*)\"", args)
    if bare:
        return bare.group(1)
    return ""


def _join_paths(base: str, tail: str) -> str:
    combined = "/".join(p.strip("/") for p in (base, tail) if p and p.strip("/"))
    return "/" + combined if combined else "/"


def _request_mapping_method(args: str) -> HttpMethod | None:
    m = re.search(r"method\s*=\s*\{?\s*RequestMethod\.(\w+)", args)
    if not m:
        return None
    try:
        return HttpMethod(m.group(1))
    except ValueError:
        return None


def _endpoint_parameters(
    method: MethodSketch, profile: LanguageProfile
) -> list[Parameter]:
    params: list[Parameter] = []
    for p in method.parameters:
        names = {_annotation_name(a) for a in p.annotations}
        if not names & {"PathVariable", "RequestParam"}:
            continue
        name = p.name
        for a in p.annotations:
            if _annotation_name(a) in {"PathVariable", "RequestParam"}:
                args = _annotation_args(a)
                m = re.search(r"(?:^|value\s*=\s*|name\s*=\s*)\"([^\"]+)\"", args)
                if m:
                    name = m.group(1)
                break
        type_name, is_collection = parse_type(p.type_name, profile)
        params.append(Parameter(type_name + ("[]" if is_collection else ""), name))
    return params


def extract_endpoints(
    sketches: list[ClassSketch],
    profile: LanguageProfile,
    warnings: list[str] | None = None,
) -> list[Endpoint]:
    """Endpoints of controller-marked classes, class and method paths composed.

    A duplicate (method, normalized path) pair raises ConflictingMapping
    unless a warning sink is supplied, in which case the first declaration
    wins and the conflict is recorded.
    """
    controllers = set(profile.controller_markers())
    endpoints: list[Endpoint] = []
    seen: dict[tuple[str, str], str] = {}
    for sketch in sketches:
        if not (sketch.annotation_names & controllers):
            continue
        base = ""
        for raw in sketch.annotations:
            marker = profile.mapping_marker(_annotation_name(raw))
            if marker is not None:
                base = _marker_path(_annotation_args(raw), marker.path_attribute)
                break
        for method in sketch.methods:
            for raw in method.annotations:
                marker = profile.mapping_marker(_annotation_name(raw))
                if marker is None:
                    continue
                args = _annotation_args(raw)
                http = marker.http_method or _request_mapping_method(args)
                if http is None:
                    continue
                path = _join_paths(base, _marker_path(args, marker.path_attribute))
                endpoint = Endpoint(
                    http_method=http,
                    url_path=path,
                    return_type=_collapse_generics(method.return_type),
                    parameters=tuple(_endpoint_parameters(method, profile)),
                    declaring_unit=f"{sketch.file}:{method.line}",
                )
                key = (http.value, normalize_path(path))
                if key in seen:
                    message = (
                        f"conflicting mapping {key[0]} {key[1]} declared by "
                        f"{seen[key]} and {endpoint.declaring_unit}"
                    )
                    if warnings is None:
                        raise ConflictingMapping(message)
                    warnings.append(message)
                    continue
                seen[key] = endpoint.declaring_unit
                endpoints.append(endpoint)
                break
    endpoints.sort(key=Endpoint.sort_key)
    return endpoints


# ---------------------------------------------------------------------------
# Call extraction

_RECEIVER_HINT = re.compile(r"(template|rest|client|http)", re.I)
_AMBIGUOUS_INVOCATIONS = {"put", "delete"}


def _literal_content(chunk: str) -> str | None:
    chunk = chunk.strip()
    m = re.fullmatch(r'"((?:[^"\\]|\\.)*)"', chunk, re.S)
    if not m:
        return None
    return m.group(1).replace('\\"', '"').replace("\\\\", "\\")


def _url_from_expression(expression: str) -> str | None:
    parts = []
    saw_literal = False
    for chunk in _split_top_level(expression, "+"):
        content = _literal_content(chunk)
        if content is None:
            parts.append("{*}")
        else:
            saw_literal = True
            parts.append(content)
    if not saw_literal:
        return None
    url = "".join(parts)
    return url or None


def extract_calls(
    sketches: list[ClassSketch],
    profile: LanguageProfile,
    warnings: list[str] | None = None,
) -> list[RawCall]:
    """Every HTTP client invocation site found in the sketches' bodies."""
    calls: list[RawCall] = []
    for sketch in sketches:
        body = sketch.body
        _, mask = _clean_source(body)
        for marker in profile.call_markers:
            for m in re.finditer(rf"\.\s*{marker.invocation}\s*\(", body):
                if mask[m.start()]:
                    continue
                open_paren = m.end() - 1
                close = _matching_paren(body, mask, open_paren)
                args = _split_top_level(body[open_paren + 1 : close], ",")
                if marker.url_argument >= len(args):
                    continue
                receiver = _receiver_before(body, m.start())
                http = marker.http_method
                if http is None:
                    http = _exchange_method(body[open_paren : close + 1])
                    if http is None:
                        continue
                elif marker.invocation in _AMBIGUOUS_INVOCATIONS:
                    if not _RECEIVER_HINT.search(receiver):
                        continue
                url = _url_from_expression(args[marker.url_argument])
                if url is None:
                    if warnings is not None and _RECEIVER_HINT.search(receiver):
                        warnings.append(
                            f"{sketch.file}: skipped {marker.invocation} call with "
                            "no literal URL segment"
                        )
                    continue
                if not _looks_like_url(url) and not _RECEIVER_HINT.search(receiver):
                    continue
                calls.append(
                    RawCall(
                        http_method=http,
                        url_expression=url,
                        return_type=_response_type(body[open_paren + 1 : close]),
                        origin=f"{sketch.file}:{_line_of(body, m.start()) + sketch.body_line - 1}",
                    )
                )
    calls.sort(key=lambda c: (c.origin, c.url_expression))
    return calls


def _looks_like_url(url: str) -> bool:
    return "://" in url or url.startswith("/")


def _receiver_before(body: str, dot_index: int) -> str:
    i = dot_index - 1
    while i >= 0 and body[i].isspace():
        i -= 1
    end = i + 1
    while i >= 0 and (body[i].isalnum() or body[i] in "_$."):
        i -= 1
    return body[i + 1 : end]


def _exchange_method(args_text: str) -> HttpMethod | None:
    m = re.search(r"HttpMethod\.(GET|POST|PUT|DELETE|PATCH)\b", args_text)
    return HttpMethod(m.group(1)) if m else None


def _response_type(args_text: str) -> str:
    m = re.search(r"([\w.]+)\.class", args_text)
    if m:
        return m.group(1).rsplit(".", 1)[-1]
    m = re.search(r"ParameterizedTypeReference\s*<(.+?)>\s*\(", args_text)
    if m:
        return _collapse_generics(m.group(1))
    return "void"


def call_site_from_raw(raw: RawCall) -> CallSite:
    """Normalize a raw call into the IR call-site form used for matching."""
    host, _ = split_host(raw.url_expression)
    path = normalize_path(raw.url_expression)
    placeholders = sum(1 for seg in path.split("/") if seg == "*")
    return CallSite(
        http_method=raw.http_method,
        url_path=path,
        return_type=raw.return_type,
        parameters=tuple(
            Parameter("unknown", f"arg{i + 1}") for i in range(placeholders)
        ),
        target_hint=host,
        origin=raw.origin,
    )


# ---------------------------------------------------------------------------
# Entity classification


def _has_accessors(sketch: ClassSketch) -> bool:
    names = [m.name for m in sketch.methods]
    has_getter = any(re.match(r"(get|is)[A-Z]", n) for n in names)
    has_setter = any(re.match(r"set[A-Z]", n) for n in names)
    return has_getter and has_setter


def _endpoint_referenced_types(
    sketches: list[ClassSketch],
    profile: LanguageProfile,
    strict_response_only: bool,
) -> set[str]:
    controllers = set(profile.controller_markers())
    names: set[str] = set()
    for sketch in sketches:
        if not (sketch.annotation_names & controllers):
            continue
        for method in sketch.methods:
            is_handler = any(
                profile.mapping_marker(_annotation_name(a)) is not None
                for a in method.annotations
            )
            if not is_handler:
                continue
            names |= _referenced_names(method.return_type)
            if not strict_response_only:
                for p in method.parameters:
                    names |= _referenced_names(p.type_name)
    return names


def classify_entities(
    sketches: list[ClassSketch],
    endpoints: list[Endpoint],
    profile: LanguageProfile,
    owner: str,
    strict_response_only: bool = False,
) -> tuple[list[DataEntity], list[DataEntity]]:
    """Partition sketches into persistent and transient data entities.

    Persistence-marked classes become persistent entities, flavored by the
    marker family. Data-class-marked or accessor-bearing classes that some
    endpoint consumes or produces become transient entities. Everything
    else is not a data entity at all.
    """
    referenced = _endpoint_referenced_types(sketches, profile, strict_response_only)
    for endpoint in endpoints:
        referenced |= _referenced_names(endpoint.return_type)
        if not strict_response_only:
            for param in endpoint.parameters:
                referenced |= _referenced_names(param.type_name)

    persistent: list[DataEntity] = []
    transient: list[DataEntity] = []
    for sketch in sketches:
        flavor = None
        for marker, persistence in profile.persistence_markers.items():
            if marker in sketch.annotation_names:
                flavor = persistence
                break
        if flavor is not None:
            persistent.append(
                DataEntity(
                    qualified_name=sketch.qualified_name,
                    simple_name=sketch.simple_name,
                    owner=owner,
                    persistence=flavor,
                    fields=sketch.fields,
                )
            )
            continue
        is_data_class = bool(
            sketch.annotation_names & set(profile.data_class_markers)
        ) or _has_accessors(sketch)
        if is_data_class and sketch.simple_name in referenced:
            transient.append(
                DataEntity(
                    qualified_name=sketch.qualified_name,
                    simple_name=sketch.simple_name,
                    owner=owner,
                    persistence=Persistence.TRANSIENT,
                    fields=sketch.fields,
                )
            )
    persistent.sort(key=lambda e: e.qualified_name)
    transient.sort(key=lambda e: e.qualified_name)
    return persistent, transient


# ---------------------------------------------------------------------------
# Relationships


def extract_relationships(entities: list[DataEntity]) -> list[Relationship]:
    """Relationships between entities of one microservice.

    A field whose type (or collection element type) names another detected
    entity of the same microservice yields one relationship; primitive and
    unknown types yield nothing. Key-valued logical links (an id field
    holding another entity's key) are intentionally not extracted.
    """
    by_simple: dict[str, DataEntity] = {}
    for entity in sorted(entities, key=lambda e: e.qualified_name):
        by_simple.setdefault(entity.simple_name, entity)
    relationships: list[Relationship] = []
    for entity in entities:
        for f in entity.fields:
            target = by_simple.get(f.type_name.rsplit(".", 1)[-1])
            if target is None or target.ref == entity.ref:
                continue
            relationships.append(
                Relationship(
                    source=entity.ref,
                    destination=target.ref,
                    via_field=f.name,
                )
            )
    return relationships


def attach_relationships(entities: list[DataEntity]) -> list[DataEntity]:
    """Rebuild entities with their intra-service relationships filled in."""
    relationships = extract_relationships(entities)
    by_source: dict = {}
    for rel in relationships:
        by_source.setdefault(rel.source, []).append(rel)
    return [e.with_relationships(by_source.get(e.ref, [])) for e in entities]
