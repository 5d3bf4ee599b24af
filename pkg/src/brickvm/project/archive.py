"""Zip archive reading and canonical writing.

An archive is a zip holding ``code.xml`` plus ``images/`` and ``sounds/``
members. Writing is canonical and therefore byte-stable: attributes are
alphabetized, indentation is two spaces with LF endings, zip entries are
stored uncompressed in sorted order with a fixed timestamp, and asset
members are content-addressed (the model owns asset bytes, not file names).
Loading anything save_project wrote, then saving it again, reproduces the
archive byte for byte.
"""

from __future__ import annotations

import hashlib
import io
import xml.etree.ElementTree as ET
import zipfile
from pathlib import Path
from typing import IO, Union

from PIL import Image, UnidentifiedImageError

from ..formula import parse_formula, serialize_formula
from ..formula.errors import FormulaError
from ..values import Value, to_text
from .errors import (
    MalformedArchiveError,
    MalformedXmlError,
    MissingAssetError,
    SchemaViolationError,
)
from .model import (
    Brick,
    Look,
    Project,
    ProjectHeader,
    Scene,
    Script,
    SoundRef,
    SpriteObject,
)
from .validate import validate_project

PathOrFile = Union[str, Path, IO[bytes]]

_FIXED_ZIP_DATE = (1980, 1, 1, 0, 0, 0)


# --- canonical XML writing ----------------------------------------------------

def _escape(text: str, quote: bool) -> str:
    text = text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    if quote:
        text = text.replace('"', "&quot;").replace("\n", "&#10;").replace("\t", "&#9;")
    return text


def _write_element(out: list, tag: str, attrs: dict, children: list, text: str,
                   indent: int) -> None:
    pad = "  " * indent
    attr_text = "".join(
        f' {name}="{_escape(str(attrs[name]), quote=True)}"' for name in sorted(attrs)
    )
    if text:
        out.append(f"{pad}<{tag}{attr_text}>{_escape(text, quote=False)}</{tag}>")
    elif children:
        out.append(f"{pad}<{tag}{attr_text}>")
        for child in children:
            _write_element(out, *child, indent + 1)
        out.append(f"{pad}</{tag}>")
    else:
        out.append(f"{pad}<{tag}{attr_text}/>")


def _el(tag: str, attrs: dict | None = None, children: list | None = None,
        text: str = "") -> tuple:
    return (tag, attrs or {}, children or [], text)


# --- value encoding -----------------------------------------------------------

def _value_attrs(value: Value) -> dict:
    if isinstance(value, bool):
        return {"type": "boolean", "value": "true" if value else "false"}
    if isinstance(value, str):
        return {"type": "text", "value": value}
    return {"type": "number", "value": _number_text(float(value))}


def _number_text(f: float) -> str:
    # exact round-trip for every finite double, including non-shortest ones
    if f != f or f in (float("inf"), float("-inf")):
        return repr(f)
    text = to_text(f)
    try:
        if float(text) == f:
            return text
    except ValueError:
        pass
    return f.hex()


def _parse_value(el: ET.Element, path: str) -> Value:
    vtype = el.get("type")
    raw = el.get("value")
    if vtype is None or raw is None:
        raise SchemaViolationError(path, "value needs type and value attributes")
    if vtype == "boolean":
        if raw not in ("true", "false"):
            raise SchemaViolationError(path, f"bad boolean {raw!r}")
        return raw == "true"
    if vtype == "text":
        return raw
    if vtype == "number":
        try:
            return float.fromhex(raw) if raw.startswith(("0x", "-0x")) else float(raw)
        except ValueError:
            raise SchemaViolationError(path, f"bad number {raw!r}")
    raise SchemaViolationError(path, f"unknown value type {vtype!r}")


# --- model -> XML tree --------------------------------------------------------

def _variables_element(variables: dict) -> tuple | None:
    if not variables:
        return None
    children = [
        _el("variable", {"name": name, **_value_attrs(variables[name])})
        for name in sorted(variables)
    ]
    return _el("variables", children=children)


def _lists_element(lists: dict) -> tuple | None:
    if not lists:
        return None
    children = [
        _el("list", {"name": name},
            [_el("item", _value_attrs(item)) for item in lists[name]])
        for name in sorted(lists)
    ]
    return _el("lists", children=children)


def _asset_path(kind: str, data: bytes) -> str:
    digest = hashlib.sha1(data).hexdigest()[:16]
    return f"images/{digest}.png" if kind == "look" else f"sounds/{digest}.dat"


def _brick_element(brick: Brick) -> tuple:
    from .catalog import BRICK_SPECS

    spec = BRICK_SPECS[brick.kind]
    attrs = {"kind": brick.kind}
    for opt in spec.options:
        attrs[opt] = brick.options[opt]
    children = [
        _el("formula", {"slot": slot}, text=serialize_formula(brick.formulas[slot]))
        for slot in spec.slots
    ]
    return _el("brick", attrs, children)


def _script_element(script: Script) -> tuple:
    attrs = {"hat": script.hat}
    if script.message:
        attrs["message"] = script.message
    return _el("script", attrs, [_brick_element(b) for b in script.bricks])


def _object_element(obj: SpriteObject) -> tuple:
    children = []
    if obj.looks:
        children.append(_el("looks", children=[
            _el("look", {"file": _asset_path("look", l.data), "name": l.name})
            for l in obj.looks
        ]))
    if obj.sounds:
        children.append(_el("sounds", children=[
            _el("sound", {"file": _asset_path("sound", s.data), "name": s.name})
            for s in obj.sounds
        ]))
    for section in (_variables_element(obj.variables), _lists_element(obj.lists)):
        if section:
            children.append(section)
    if obj.scripts:
        children.append(_el("scripts", children=[
            _script_element(s) for s in obj.scripts
        ]))
    return _el("object", {"name": obj.name}, children)


def _project_xml(project: Project) -> bytes:
    header = project.header
    header_el = _el("header", children=[
        _el("language_version", text=str(header.language_version)),
        _el("name", text=header.name),
        _el("stage_height", text=str(header.stage_height)),
        _el("stage_width", text=str(header.stage_width)),
    ])
    children = [header_el]
    for section in (_variables_element(project.variables),
                    _lists_element(project.lists)):
        if section:
            children.append(section)
    children.append(_el("scenes", children=[
        _el("scene", {"name": scene.name},
            [_object_element(o) for o in scene.objects])
        for scene in project.scenes
    ]))
    lines: list[str] = ['<?xml version="1.0" encoding="UTF-8"?>']
    _write_element(lines, *_el("program", children=children), 0)
    return ("\n".join(lines) + "\n").encode("utf-8")


# --- save ---------------------------------------------------------------------

def save_project(project: Project, target: PathOrFile) -> None:
    validate_project(project)
    members: dict[str, bytes] = {"code.xml": _project_xml(project)}
    for scene in project.scenes:
        for obj in scene.objects:
            for look in obj.looks:
                members[_asset_path("look", look.data)] = look.data
            for sound in obj.sounds:
                members[_asset_path("sound", sound.data)] = sound.data
    buffer = io.BytesIO()
    with zipfile.ZipFile(buffer, "w", zipfile.ZIP_STORED) as zf:
        for name in sorted(members):
            info = zipfile.ZipInfo(name, date_time=_FIXED_ZIP_DATE)
            info.external_attr = 0o644 << 16
            zf.writestr(info, members[name])
    data = buffer.getvalue()
    if isinstance(target, (str, Path)):
        Path(target).write_bytes(data)
    else:
        target.write(data)


def project_to_bytes(project: Project) -> bytes:
    out = io.BytesIO()
    save_project(project, out)
    return out.getvalue()


def canonical_object_text(obj: SpriteObject) -> str:
    """The object's canonical XML fragment; asset references are content
    hashes, so structurally equal objects always serialize identically."""
    lines: list = []
    _write_element(lines, *_object_element(obj), 0)
    return "\n".join(lines) + "\n"


# --- load ---------------------------------------------------------------------

def _require(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise SchemaViolationError(path, message)


def _only_children(el: ET.Element, allowed: tuple, path: str) -> None:
    for child in el:
        if child.tag not in allowed:
            raise SchemaViolationError(path, f"unexpected element <{child.tag}>")


def _load_variables(el: ET.Element, path: str) -> dict:
    out: dict[str, Value] = {}
    _only_children(el, ("variable",), path)
    for var in el:
        name = var.get("name")
        _require(bool(name), path, "variable needs a name")
        _require(name not in out, path, f"duplicate variable {name!r}")
        out[name] = _parse_value(var, f"{path} > variable {name!r}")
    return out


def _load_lists(el: ET.Element, path: str) -> dict:
    out: dict[str, list] = {}
    _only_children(el, ("list",), path)
    for lst in el:
        name = lst.get("name")
        _require(bool(name), path, "list needs a name")
        _require(name not in out, path, f"duplicate list {name!r}")
        _only_children(lst, ("item",), f"{path} > list {name!r}")
        out[name] = [
            _parse_value(item, f"{path} > list {name!r} > item {i}")
            for i, item in enumerate(lst)
        ]
    return out


def _load_brick(el: ET.Element, path: str) -> Brick:
    from .catalog import BRICK_SPECS

    kind = el.get("kind")
    _require(bool(kind), path, "brick needs a kind")
    spec = BRICK_SPECS.get(kind)
    if spec is None:
        raise SchemaViolationError(path, f"unknown brick kind {kind!r}")
    options = {}
    for attr, value in el.attrib.items():
        if attr == "kind":
            continue
        _require(attr in spec.options, path, f"unexpected attribute {attr!r}")
        options[attr] = value
    formulas = {}
    _only_children(el, ("formula",), path)
    for child in el:
        slot = child.get("slot")
        _require(bool(slot), path, "formula needs a slot")
        _require(slot in spec.slots, path, f"unexpected formula slot {slot!r}")
        _require(slot not in formulas, path, f"duplicate formula slot {slot!r}")
        try:
            formulas[slot] = parse_formula(child.text or "")
        except FormulaError as err:
            raise SchemaViolationError(f"{path} > slot {slot!r}", str(err))
    return Brick(kind, formulas, options)


def _load_script(el: ET.Element, path: str) -> Script:
    hat = el.get("hat")
    _require(bool(hat), path, "script needs a hat")
    for attr in el.attrib:
        _require(attr in ("hat", "message"), path, f"unexpected attribute {attr!r}")
    _only_children(el, ("brick",), path)
    bricks = [_load_brick(b, f"{path} > brick {i}") for i, b in enumerate(el)]
    return Script(hat, bricks, el.get("message", ""))


def _read_asset(zf: zipfile.ZipFile, file_path: str | None, path: str) -> bytes:
    _require(bool(file_path), path, "asset reference needs a file")
    try:
        return zf.read(file_path)
    except KeyError:
        raise MissingAssetError(file_path)


def _load_object(el: ET.Element, zf: zipfile.ZipFile, path: str,
                 used: set) -> SpriteObject:
    name = el.get("name")
    _require(bool(name), path, "object needs a name")
    path = f"{path} > object {name!r}"
    _only_children(el, ("looks", "sounds", "variables", "lists", "scripts"), path)
    obj = SpriteObject(name)
    for section in el:
        if section.tag == "looks":
            _only_children(section, ("look",), path)
            for look_el in section:
                lname = look_el.get("name")
                _require(bool(lname), path, "look needs a name")
                file_path = look_el.get("file")
                data = _read_asset(zf, file_path, f"{path} > look {lname!r}")
                used.add(file_path)
                try:
                    with Image.open(io.BytesIO(data)) as img:
                        if img.format != "PNG":
                            raise SchemaViolationError(
                                f"{path} > look {lname!r}",
                                f"asset {file_path!r} is not a PNG")
                        width, height = img.size
                except UnidentifiedImageError:
                    raise SchemaViolationError(
                        f"{path} > look {lname!r}",
                        f"asset {file_path!r} is not a decodable image")
                obj.looks.append(Look(lname, data, width, height))
        elif section.tag == "sounds":
            _only_children(section, ("sound",), path)
            for sound_el in section:
                sname = sound_el.get("name")
                _require(bool(sname), path, "sound needs a name")
                file_path = sound_el.get("file")
                data = _read_asset(zf, file_path, f"{path} > sound {sname!r}")
                used.add(file_path)
                obj.sounds.append(SoundRef(sname, data))
        elif section.tag == "variables":
            obj.variables = _load_variables(section, path)
        elif section.tag == "lists":
            obj.lists = _load_lists(section, path)
        elif section.tag == "scripts":
            _only_children(section, ("script",), path)
            obj.scripts = [
                _load_script(s, f"{path} > script {i}") for i, s in enumerate(section)
            ]
    return obj


def _load_header(el: ET.Element) -> ProjectHeader:
    fields = {}
    _only_children(
        el, ("language_version", "name", "stage_height", "stage_width"), "header")
    for child in el:
        fields[child.tag] = child.text or ""
    for required in ("name", "stage_width", "stage_height"):
        _require(required in fields, "header", f"missing <{required}>")
    try:
        width = int(fields["stage_width"])
        height = int(fields["stage_height"])
        version = int(fields.get("language_version", "1"))
    except ValueError:
        raise SchemaViolationError("header", "stage dimensions must be integers")
    return ProjectHeader(fields["name"], width, height, version)


def load_project(source: PathOrFile) -> Project:
    try:
        zf = zipfile.ZipFile(source)
    except (zipfile.BadZipFile, OSError, ValueError) as err:
        raise MalformedArchiveError(f"not a readable zip archive: {err}")
    with zf:
        names = set(zf.namelist())
        if "code.xml" not in names:
            raise MalformedArchiveError("archive has no code.xml")
        try:
            root = ET.fromstring(zf.read("code.xml"))
        except ET.ParseError as err:
            raise MalformedXmlError(str(err))
        if root.tag != "program":
            raise SchemaViolationError("program", f"root is <{root.tag}>")
        _only_children(root, ("header", "variables", "lists", "scenes"), "program")
        header_el = root.find("header")
        _require(header_el is not None, "program", "missing <header>")
        project = Project(header=_load_header(header_el))
        used: set[str] = {"code.xml"}
        for section in root:
            if section.tag == "variables":
                project.variables = _load_variables(section, "variables")
            elif section.tag == "lists":
                project.lists = _load_lists(section, "lists")
            elif section.tag == "scenes":
                _only_children(section, ("scene",), "scenes")
                for scene_el in section:
                    sname = scene_el.get("name")
                    _require(bool(sname), "scenes", "scene needs a name")
                    _only_children(scene_el, ("object",), f"scene {sname!r}")
                    scene = Scene(sname)
                    for obj_el in scene_el:
                        scene.objects.append(
                            _load_object(obj_el, zf, f"scene {sname!r}", used))
                    project.scenes.append(scene)
        for member in sorted(names - used):
            if member.endswith("/"):
                continue
            project.diagnostics.append(f"unused archive member {member!r}")
    validate_project(project)
    return project
