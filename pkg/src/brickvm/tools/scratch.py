"""Importer for zipped Scratch 3 projects.

The mapping table below is the whole contract: every source block either
converts to bricks/formula nodes with the same runtime meaning, or it is
replaced by a ``Note`` brick (statements) / a literal ``0`` (reporters)
and listed in the conversion report. Shadow blocks (menus, prototypes)
are plumbing, not code, and are excluded from the accounting. The
invariant ``mapped + unsupported == total non-shadow blocks`` holds by
construction: each source block is recorded exactly once, in whichever
role it was first encountered.

Coordinates, directions, sizes, and the 480x360 stage carry over 1:1;
both systems are stage-centered with y growing upward and direction 90
pointing right. Custom blocks are inlined at each call site; recursive
calls are reported unsupported instead of expanded.
"""

from __future__ import annotations

import io
import json
import zipfile
from dataclasses import dataclass, field

from PIL import Image

from ..formula.ast import (
    BinaryOp,
    BooleanLiteral,
    FormulaTree,
    FunctionCall,
    ListRef,
    NumberLiteral,
    PropertyRef,
    TextLiteral,
    UnaryOp,
    VariableRef,
)
from ..project.model import (
    Brick,
    Look,
    Project,
    ProjectHeader,
    Scene,
    SoundRef,
    SpriteObject,
    Script,
)
from ..project.validate import validate_project
from .errors import MalformedSourceError

STAGE_WIDTH = 480
STAGE_HEIGHT = 360

# Answer storage for ask-and-wait; declared as a global on first use.
ANSWER_VARIABLE = "answer"

# Inline expansion guard. Non-recursive call graphs deeper than this are
# reported unsupported rather than expanded without bound.
MAX_INLINE_DEPTH = 32

_HATS = {
    "event_whenflagclicked": "WhenProgramStarted",
    "event_whenbroadcastreceived": "WhenBroadcastReceived",
    "event_whenthisspriteclicked": "WhenTapped",
    "event_whenstageclicked": "WhenTapped",
    "control_start_as_clone": "WhenCloned",
}

_MATHOPS = {
    "abs": "abs",
    "floor": "floor",
    "ceiling": "ceil",
    "sqrt": "sqrt",
    "sin": "sin",
    "cos": "cos",
    "tan": "tan",
    "asin": "arcsin",
    "acos": "arccos",
    "atan": "arctan",
    "ln": "ln",
    "log": "log",
}


@dataclass
class ConversionReport:
    """What the converter did with every source block."""

    mapped: int = 0
    unsupported: list[tuple[str, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.mapped + len(self.unsupported)

    def text(self) -> str:
        lines = [f"mapped={self.mapped}", f"unsupported={len(self.unsupported)}"]
        for what, where in self.unsupported:
            lines.append(f"unsupported_block\t{what}\t{where}")
        for message in self.warnings:
            lines.append(f"warning\t{message}")
        return "\n".join(lines) + "\n"


def convert_scratch(source, name: str = "converted") -> tuple[Project, ConversionReport]:
    """Convert a Scratch 3 archive into a runnable project plus report.

    ``source`` is a path, bytes, or binary file object holding the
    zipped archive. Partially convertible projects still succeed; the
    report lists every block that did not make it across.
    """
    if isinstance(source, bytes):
        source = io.BytesIO(source)
    try:
        archive = zipfile.ZipFile(source)
    except (zipfile.BadZipFile, OSError) as exc:
        raise MalformedSourceError(f"not a readable archive: {exc}") from exc

    with archive:
        try:
            manifest = json.loads(archive.read("project.json"))
        except KeyError:
            raise MalformedSourceError("archive has no project manifest") from None
        except ValueError as exc:
            raise MalformedSourceError(f"project manifest is not JSON: {exc}") from exc

        targets = manifest.get("targets")
        if not isinstance(targets, list) or not targets:
            raise MalformedSourceError("manifest lists no targets")
        stages = [t for t in targets if t.get("isStage")]
        if len(stages) != 1:
            raise MalformedSourceError("manifest must hold exactly one stage")

        report = ConversionReport()
        project = Project(
            header=ProjectHeader(name, STAGE_WIDTH, STAGE_HEIGHT),
            scenes=[Scene("Scene 1")],
        )
        sprites = [t for t in targets if not t.get("isStage")]
        sprites.sort(key=lambda t: t.get("layerOrder", 0))

        taken_names: set[str] = set()
        for tgt in stages + sprites:
            conv = _TargetConverter(tgt, archive, project, report, taken_names)
            project.scenes[0].objects.append(conv.build())
            report.mapped += len(conv.mapped_ids)

    _declare_missing_refs(project, report)
    validate_project(project)
    return project, report


def _unique_name(taken: set[str], base: str, fallback: str) -> str:
    name = base or fallback
    if name in taken:
        k = 2
        while f"{name} ({k})" in taken:
            k += 1
        name = f"{name} ({k})"
    taken.add(name)
    return name


def _as_value(raw):
    if isinstance(raw, bool):
        return raw
    if isinstance(raw, (int, float)):
        return float(raw)
    return str(raw)


def _placeholder_png() -> bytes:
    img = Image.new("RGBA", (32, 32), (128, 128, 128, 255))
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def _number(value: float) -> NumberLiteral:
    return NumberLiteral(float(value))


class _TargetConverter:
    """Converts one sb3 target (stage or sprite) into a SpriteObject."""

    def __init__(self, target: dict, archive: zipfile.ZipFile,
                 project: Project, report: ConversionReport,
                 taken_names: set[str]):
        self.target = target
        self.archive = archive
        self.project = project
        self.report = report
        self.is_stage = bool(target.get("isStage"))
        fallback = "Stage" if self.is_stage else "sprite"
        self.name = _unique_name(taken_names, str(target.get("name", "")), fallback)
        blocks = target.get("blocks")
        self.blocks: dict = blocks if isinstance(blocks, dict) else {}
        self.mapped_ids: set[str] = set()
        self.unsupported_ids: set[str] = set()
        self.procs: dict[str, tuple[str, str]] = {}  # proccode -> (def id, prototype id)
        self.proc_stack: list[str] = []
        self.look_names: set[str] = set()
        self.sound_names: set[str] = set()

    # -- accounting ------------------------------------------------------

    def _ok(self, block_id: str) -> None:
        if block_id not in self.unsupported_ids:
            self.mapped_ids.add(block_id)

    def _unsupported(self, block_id: str, what: str) -> None:
        if block_id in self.mapped_ids or block_id in self.unsupported_ids:
            return
        self.unsupported_ids.add(block_id)
        self.report.unsupported.append((what, f"{self.name} > {block_id}"))

    def _note(self, block_id: str, what: str) -> list[Brick]:
        self._unsupported(block_id, what)
        return [Brick("Note", options={"text": f"unsupported: {what}"})]

    # -- target assembly --------------------------------------------------

    def build(self) -> SpriteObject:
        obj = SpriteObject(self.name)
        self._convert_costumes(obj)
        self._convert_sounds(obj)
        self._convert_variables(obj)

        pose = self._pose_script()
        if pose is not None:
            obj.scripts.append(pose)
        for block_id, block in self.blocks.items():
            if not isinstance(block, dict) or block.get("shadow"):
                continue
            if not block.get("topLevel"):
                continue
            opcode = block.get("opcode", "")
            if opcode == "procedures_prototype":
                continue
            if opcode == "procedures_definition":
                self._register_definition(block_id, block)
        for block_id, block in self.blocks.items():
            if not isinstance(block, dict) or block.get("shadow"):
                continue
            if not block.get("topLevel"):
                continue
            script = self._convert_hat(block_id, block)
            if script is not None:
                obj.scripts.append(script)
        self._flush_uncalled_definitions()
        self._sweep_unconverted()
        return obj

    def _convert_costumes(self, obj: SpriteObject) -> None:
        taken: set[str] = set()
        for i, costume in enumerate(self.target.get("costumes", ())):
            if not isinstance(costume, dict):
                continue
            name = _unique_name(taken, str(costume.get("name", "")), f"costume {i + 1}")
            data = self._costume_png(costume, name)
            obj.looks.append(Look.from_png(name, data))
            self.look_names.add(name)

    def _costume_png(self, costume: dict, name: str) -> bytes:
        fmt = str(costume.get("dataFormat", "")).lower()
        md5ext = costume.get("md5ext") or f"{costume.get('assetId', '')}.{fmt}"
        try:
            raw = self.archive.read(md5ext)
        except KeyError:
            self.report.warnings.append(
                f"{self.name}: costume {name!r} asset {md5ext!r} missing, "
                "using placeholder")
            return _placeholder_png()
        if fmt == "svg":
            self.report.warnings.append(
                f"{self.name}: costume {name!r} is a vector image, "
                "using placeholder")
            return _placeholder_png()
        try:
            img = Image.open(io.BytesIO(raw))
            img = img.convert("RGBA")
        except Exception:
            self.report.warnings.append(
                f"{self.name}: costume {name!r} could not be decoded, "
                "using placeholder")
            return _placeholder_png()
        resolution = costume.get("bitmapResolution") or 1
        if resolution > 1:
            img = img.resize(
                (max(1, round(img.width / resolution)),
                 max(1, round(img.height / resolution))),
                Image.LANCZOS)
        buf = io.BytesIO()
        img.save(buf, format="PNG")
        return buf.getvalue()

    def _convert_sounds(self, obj: SpriteObject) -> None:
        taken: set[str] = set()
        for i, sound in enumerate(self.target.get("sounds", ())):
            if not isinstance(sound, dict):
                continue
            name = _unique_name(taken, str(sound.get("name", "")), f"sound {i + 1}")
            fmt = str(sound.get("dataFormat", "")).lower()
            md5ext = sound.get("md5ext") or f"{sound.get('assetId', '')}.{fmt}"
            try:
                data = self.archive.read(md5ext)
            except KeyError:
                self.report.warnings.append(
                    f"{self.name}: sound {name!r} asset {md5ext!r} missing, skipped")
                continue
            obj.sounds.append(SoundRef(name, data))
            self.sound_names.add(name)

    def _convert_variables(self, obj: SpriteObject) -> None:
        into_vars = self.project.variables if self.is_stage else obj.variables
        into_lists = self.project.lists if self.is_stage else obj.lists
        for entry in (self.target.get("variables") or {}).values():
            if isinstance(entry, list) and len(entry) >= 2:
                into_vars[str(entry[0])] = _as_value(entry[1])
        for entry in (self.target.get("lists") or {}).values():
            if isinstance(entry, list) and len(entry) >= 2 and isinstance(entry[1], list):
                into_lists[str(entry[0])] = [_as_value(v) for v in entry[1]]

    def _pose_script(self) -> Script | None:
        """Initial placement matching the sprite's saved pose.

        Synthesized, so its bricks stay out of the block accounting.
        """
        bricks: list[Brick] = []
        tgt = self.target
        if not self.is_stage:
            bricks.append(Brick("PlaceAt", formulas={
                "x": _number(tgt.get("x", 0) or 0),
                "y": _number(tgt.get("y", 0) or 0),
            }))
            bricks.append(Brick("PointInDirection", formulas={
                "degrees": _number(tgt.get("direction", 90) or 0),
            }))
            size = tgt.get("size", 100)
            if size != 100:
                bricks.append(Brick("SetSize", formulas={"percent": _number(size)}))
            if tgt.get("visible", True) is False:
                bricks.append(Brick("Hide"))
        current = tgt.get("currentCostume", 0)
        costumes = self.target.get("costumes", ())
        if isinstance(current, int) and 0 < current < len(costumes):
            look = str(costumes[current].get("name", ""))
            if look in self.look_names:
                bricks.append(Brick("SetLook", options={"look": look}))
        if not bricks:
            return None
        return Script("WhenProgramStarted", bricks)

    # -- scripts -----------------------------------------------------------

    def _register_definition(self, def_id: str, block: dict) -> None:
        proto_ref = (block.get("inputs") or {}).get("custom_block")
        proto_id = proto_ref[1] if isinstance(proto_ref, list) and len(proto_ref) > 1 else None
        proto = self.blocks.get(proto_id)
        if not isinstance(proto, dict):
            self._unsupported(def_id, "procedures_definition")
            return
        proccode = str((proto.get("mutation") or {}).get("proccode", ""))
        self.procs[proccode] = (def_id, proto_id)

    def _convert_hat(self, block_id: str, block: dict) -> Script | None:
        opcode = block.get("opcode", "")
        hat = _HATS.get(opcode)
        if hat is None:
            return None
        self._ok(block_id)
        message = ""
        if hat == "WhenBroadcastReceived":
            message = self._broadcast_name(self._field(block, "BROADCAST_OPTION"))
        bricks = self._chain(block.get("next"), {})
        return Script(hat, bricks, message=message)

    def _flush_uncalled_definitions(self) -> None:
        # Dead definitions still get their bodies accounted for: convert
        # into the void so each block lands in mapped or unsupported.
        for proccode, (def_id, _proto_id) in self.procs.items():
            if def_id in self.mapped_ids:
                continue
            self._ok(def_id)
            self.proc_stack.append(proccode)
            try:
                self._chain(self.blocks[def_id].get("next"), {})
            finally:
                self.proc_stack.pop()

    def _sweep_unconverted(self) -> None:
        for block_id, block in self.blocks.items():
            if not isinstance(block, dict) or block.get("shadow"):
                continue
            if block_id in self.mapped_ids or block_id in self.unsupported_ids:
                continue
            self._unsupported(block_id, block.get("opcode", "unknown"))

    def _chain(self, block_id, env: dict) -> list[Brick]:
        bricks: list[Brick] = []
        seen: set[str] = set()
        while isinstance(block_id, str) and block_id not in seen:
            seen.add(block_id)
            block = self.blocks.get(block_id)
            if not isinstance(block, dict):
                break
            bricks.extend(self._statement(block_id, block, env))
            block_id = block.get("next")
        return bricks

    def _statement(self, block_id: str, block: dict, env: dict) -> list[Brick]:
        opcode = block.get("opcode", "")
        handler = _STATEMENTS.get(opcode)
        if handler is None:
            return self._note(block_id, opcode)
        return handler(self, block_id, block, env)

    # -- inputs ------------------------------------------------------------

    def _field(self, block: dict, key: str) -> str:
        entry = (block.get("fields") or {}).get(key)
        if isinstance(entry, list) and entry:
            return str(entry[0])
        return ""

    def _input_raw(self, block: dict, key: str):
        entry = (block.get("inputs") or {}).get(key)
        if isinstance(entry, list) and len(entry) > 1:
            return entry[1]
        return None

    def _expr(self, block: dict, key: str, default: FormulaTree, env: dict) -> FormulaTree:
        raw = self._input_raw(block, key)
        if raw is None:
            return default
        if isinstance(raw, str):
            return self._reporter(raw, env)
        if isinstance(raw, list):
            return self._literal(raw)
        return default

    def _literal(self, arr: list) -> FormulaTree:
        kind = arr[0] if arr else 10
        value = arr[1] if len(arr) > 1 else ""
        if kind in (4, 5, 6, 7, 8):
            try:
                return NumberLiteral(float(value))
            except (TypeError, ValueError):
                return TextLiteral(str(value))
        if kind == 12:
            return VariableRef(str(value))
        if kind == 13:
            return ListRef(str(value))
        return TextLiteral(str(value))

    def _substack(self, block: dict, key: str, env: dict) -> list[Brick]:
        raw = self._input_raw(block, key)
        if isinstance(raw, str):
            return self._chain(raw, env)
        return []

    def _menu_value(self, block: dict, input_key: str, field_key: str) -> str | None:
        """Resolve a dropdown input. None means the slot is computed."""
        raw = self._input_raw(block, input_key)
        if isinstance(raw, list):
            if len(raw) > 1:
                return str(raw[1])
            return None
        if not isinstance(raw, str):
            return None
        menu = self.blocks.get(raw)
        if isinstance(menu, dict) and menu.get("shadow"):
            return self._field(menu, field_key)
        return None

    def _broadcast_name(self, raw: str) -> str:
        if raw:
            return raw
        self.report.warnings.append(
            f"{self.name}: blank broadcast name replaced with '(blank)'")
        return "(blank)"

    # -- reporters -----------------------------------------------------------

    def _reporter(self, block_id: str, env: dict) -> FormulaTree:
        block = self.blocks.get(block_id)
        if not isinstance(block, dict):
            return NumberLiteral(0.0)
        opcode = block.get("opcode", "")
        handler = _REPORTERS.get(opcode)
        tree = handler(self, block, env) if handler is not None else None
        if tree is None:
            self._unsupported(block_id, opcode)
            return NumberLiteral(0.0)
        self._ok(block_id)
        return tree

    def _needs_answer(self) -> None:
        self.project.variables.setdefault(ANSWER_VARIABLE, "")


# ---------------------------------------------------------------------------
# statement handlers


def _simple(kind: str, **slots):
    """Statement whose formula slots map 1:1 onto sb3 inputs."""

    def handler(conv: _TargetConverter, block_id, block, env):
        conv._ok(block_id)
        formulas = {
            slot: conv._expr(block, key, _number(0), env)
            for slot, key in slots.items()
        }
        return [Brick(kind, formulas=formulas)]

    return handler


def _bare(kind: str):
    def handler(conv: _TargetConverter, block_id, block, env):
        conv._ok(block_id)
        return [Brick(kind)]

    return handler


def _st_wait(conv, block_id, block, env):
    conv._ok(block_id)
    return [Brick("Wait", formulas={
        "seconds": conv._expr(block, "DURATION", _number(0), env)})]


def _st_repeat(conv, block_id, block, env):
    conv._ok(block_id)
    times = conv._expr(block, "TIMES", _number(0), env)
    body = conv._substack(block, "SUBSTACK", env)
    return [Brick("Repeat", formulas={"times": times}), *body, Brick("EndOfLoop")]


def _st_forever(conv, block_id, block, env):
    conv._ok(block_id)
    body = conv._substack(block, "SUBSTACK", env)
    return [Brick("Forever"), *body, Brick("EndOfLoop")]


def _st_if(conv, block_id, block, env):
    conv._ok(block_id)
    cond = conv._expr(block, "CONDITION", BooleanLiteral(False), env)
    body = conv._substack(block, "SUBSTACK", env)
    return [Brick("If", formulas={"condition": cond}), *body, Brick("EndOfIf")]


def _st_if_else(conv, block_id, block, env):
    conv._ok(block_id)
    cond = conv._expr(block, "CONDITION", BooleanLiteral(False), env)
    then = conv._substack(block, "SUBSTACK", env)
    other = conv._substack(block, "SUBSTACK2", env)
    return [Brick("If", formulas={"condition": cond}), *then,
            Brick("Else"), *other, Brick("EndOfIf")]


def _st_clone(conv, block_id, block, env):
    who = conv._menu_value(block, "CLONE_OPTION", "CLONE_OPTION")
    if who != "_myself_":
        return conv._note(block_id, "control_create_clone_of (other sprite)")
    conv._ok(block_id)
    return [Brick("Clone")]


def _st_broadcast(kind: str):
    def handler(conv, block_id, block, env):
        raw = conv._input_raw(block, "BROADCAST_INPUT")
        if not isinstance(raw, list) or len(raw) < 2:
            return conv._note(block_id, f"{block.get('opcode')} (computed message)")
        conv._ok(block_id)
        message = conv._broadcast_name(str(raw[1]))
        return [Brick(kind, options={"message": message})]

    return handler


def _st_switch_costume(conv, block_id, block, env):
    look = conv._menu_value(block, "COSTUME", "COSTUME")
    if look is None:
        return conv._note(block_id, "looks_switchcostumeto (computed costume)")
    if look not in conv.look_names:
        return conv._note(block_id, f"looks_switchcostumeto (no costume {look!r})")
    conv._ok(block_id)
    return [Brick("SetLook", options={"look": look})]


def _st_say_for_secs(kind: str):
    def handler(conv, block_id, block, env):
        conv._ok(block_id)
        return [
            Brick(kind, formulas={
                "text": conv._expr(block, "MESSAGE", TextLiteral(""), env)}),
            Brick("Wait", formulas={
                "seconds": conv._expr(block, "SECS", _number(0), env)}),
            Brick(kind, formulas={"text": TextLiteral("")}),
        ]

    return handler


def _st_say(kind: str):
    def handler(conv, block_id, block, env):
        conv._ok(block_id)
        return [Brick(kind, formulas={
            "text": conv._expr(block, "MESSAGE", TextLiteral(""), env)})]

    return handler


def _st_set_effect(conv, block_id, block, env):
    effect = conv._field(block, "EFFECT").upper()
    value = conv._expr(block, "VALUE", _number(0), env)
    conv_map = {
        # Scratch brightness is a -100..100 offset from neutral.
        "GHOST": ("SetTransparency", "percent", value),
        "BRIGHTNESS": ("SetBrightness", "percent",
                       BinaryOp("add", value, _number(100))),
    }
    if effect not in conv_map:
        return conv._note(block_id, f"looks_seteffectto ({effect})")
    kind, slot, tree = conv_map[effect]
    conv._ok(block_id)
    return [Brick(kind, formulas={slot: tree})]


def _st_change_effect(conv, block_id, block, env):
    effect = conv._field(block, "EFFECT").upper()
    kinds = {"GHOST": "ChangeTransparencyBy", "BRIGHTNESS": "ChangeBrightnessBy"}
    if effect not in kinds:
        return conv._note(block_id, f"looks_changeeffectby ({effect})")
    conv._ok(block_id)
    return [Brick(kinds[effect], formulas={
        "amount": conv._expr(block, "CHANGE", _number(0), env)})]


def _st_clear_effects(conv, block_id, block, env):
    conv._ok(block_id)
    return [
        Brick("SetTransparency", formulas={"percent": _number(0)}),
        Brick("SetBrightness", formulas={"percent": _number(100)}),
    ]


def _st_front_back(conv, block_id, block, env):
    conv._ok(block_id)
    if conv._field(block, "FRONT_BACK") == "back":
        return [Brick("GoBackLayers", formulas={"layers": _number(1_000_000)})]
    return [Brick("ComeToFront")]


def _st_fwd_back_layers(conv, block_id, block, env):
    if conv._field(block, "FORWARD_BACKWARD") != "backward":
        return conv._note(block_id, "looks_goforwardbackwardlayers (forward)")
    conv._ok(block_id)
    return [Brick("GoBackLayers", formulas={
        "layers": conv._expr(block, "NUM", _number(0), env)})]


def _st_variable(kind: str, slot: str, input_key: str):
    def handler(conv, block_id, block, env):
        conv._ok(block_id)
        return [Brick(kind,
                      formulas={slot: conv._expr(block, input_key,
                                                 TextLiteral(""), env)},
                      options={"variable": conv._field(block, "VARIABLE")})]

    return handler


def _st_show_variable(kind: str):
    def handler(conv, block_id, block, env):
        conv._ok(block_id)
        return [Brick(kind, options={"variable": conv._field(block, "VARIABLE")})]

    return handler


def _st_delete_of_list(conv, block_id, block, env):
    index = conv._expr(block, "INDEX", _number(0), env)
    if isinstance(index, TextLiteral) and index.value in ("all", "last"):
        return conv._note(block_id, f"data_deleteoflist ({index.value})")
    conv._ok(block_id)
    return [Brick("DeleteFromList", formulas={"index": index},
                  options={"list": conv._field(block, "LIST")})]


def _st_list(kind: str, **slots):
    def handler(conv, block_id, block, env):
        conv._ok(block_id)
        formulas = {
            slot: conv._expr(block, key, TextLiteral(""), env)
            for slot, key in slots.items()
        }
        return [Brick(kind, formulas=formulas,
                      options={"list": conv._field(block, "LIST")})]

    return handler


def _st_play_sound(conv, block_id, block, env):
    sound = conv._menu_value(block, "SOUND_MENU", "SOUND_MENU")
    if sound is None:
        return conv._note(block_id, "sound_play (computed sound)")
    if sound not in conv.sound_names:
        return conv._note(block_id, f"sound_play (no sound {sound!r})")
    conv._ok(block_id)
    return [Brick("StartSound", options={"sound": sound})]


def _st_ask(conv, block_id, block, env):
    conv._ok(block_id)
    conv._needs_answer()
    return [Brick("Ask",
                  formulas={"question": conv._expr(block, "QUESTION",
                                                   TextLiteral(""), env)},
                  options={"variable": ANSWER_VARIABLE})]


def _st_call(conv, block_id, block, env):
    mutation = block.get("mutation") or {}
    proccode = str(mutation.get("proccode", ""))
    proc = conv.procs.get(proccode)
    if proc is None:
        return conv._note(block_id, f"undefined custom block {proccode!r}")
    if proccode in conv.proc_stack:
        return conv._note(block_id, f"recursive custom block {proccode!r}")
    if len(conv.proc_stack) >= MAX_INLINE_DEPTH:
        return conv._note(block_id, "custom block nesting too deep")

    def_id, proto_id = proc
    proto = conv.blocks.get(proto_id) or {}
    try:
        arg_ids = json.loads((block.get("mutation") or {}).get("argumentids", "[]"))
        arg_names = json.loads((proto.get("mutation") or {}).get("argumentnames", "[]"))
    except ValueError:
        return conv._note(block_id, f"malformed custom block {proccode!r}")
    call_env = {
        str(name): conv._expr(block, str(arg_id), TextLiteral(""), env)
        for name, arg_id in zip(arg_names, arg_ids)
    }
    conv._ok(block_id)
    conv._ok(def_id)
    conv.proc_stack.append(proccode)
    try:
        return conv._chain(conv.blocks.get(def_id, {}).get("next"), call_env)
    finally:
        conv.proc_stack.pop()


_STATEMENTS = {
    "control_wait": _st_wait,
    "control_repeat": _st_repeat,
    "control_forever": _st_forever,
    "control_if": _st_if,
    "control_if_else": _st_if_else,
    "control_create_clone_of": _st_clone,
    "control_delete_this_clone": _bare("DeleteThisClone"),
    "event_broadcast": _st_broadcast("Broadcast"),
    "event_broadcastandwait": _st_broadcast("BroadcastAndWait"),
    "motion_gotoxy": _simple("PlaceAt", x="X", y="Y"),
    "motion_setx": _simple("SetX", x="X"),
    "motion_sety": _simple("SetY", y="Y"),
    "motion_changexby": _simple("ChangeXBy", dx="DX"),
    "motion_changeyby": _simple("ChangeYBy", dy="DY"),
    "motion_movesteps": _simple("MoveSteps", steps="STEPS"),
    "motion_turnright": _simple("TurnRight", degrees="DEGREES"),
    "motion_turnleft": _simple("TurnLeft", degrees="DEGREES"),
    "motion_pointindirection": _simple("PointInDirection", degrees="DIRECTION"),
    "motion_glidesecstoxy": _simple("GlideTo", x="X", y="Y", seconds="SECS"),
    "motion_ifonedgebounce": _bare("IfOnEdgeBounce"),
    "looks_switchcostumeto": _st_switch_costume,
    "looks_nextcostume": _bare("NextLook"),
    "looks_show": _bare("Show"),
    "looks_hide": _bare("Hide"),
    "looks_setsizeto": _simple("SetSize", percent="SIZE"),
    "looks_changesizeby": _simple("ChangeSizeBy", amount="CHANGE"),
    "looks_say": _st_say("Say"),
    "looks_think": _st_say("Think"),
    "looks_sayforsecs": _st_say_for_secs("Say"),
    "looks_thinkforsecs": _st_say_for_secs("Think"),
    "looks_seteffectto": _st_set_effect,
    "looks_changeeffectby": _st_change_effect,
    "looks_cleargraphiceffects": _st_clear_effects,
    "looks_gotofrontback": _st_front_back,
    "looks_goforwardbackwardlayers": _st_fwd_back_layers,
    "data_setvariableto": _st_variable("SetVariable", "value", "VALUE"),
    "data_changevariableby": _st_variable("ChangeVariable", "delta", "VALUE"),
    "data_showvariable": _st_show_variable("ShowVariable"),
    "data_hidevariable": _st_show_variable("HideVariable"),
    "data_addtolist": _st_list("AddToList", value="ITEM"),
    "data_deleteoflist": _st_delete_of_list,
    "data_insertatlist": _st_list("InsertIntoList", index="INDEX", value="ITEM"),
    "data_replaceitemoflist": _st_list("ReplaceItemInList", index="INDEX", value="ITEM"),
    "sound_play": _st_play_sound,
    "sound_stopallsounds": _bare("StopAllSounds"),
    "sound_setvolumeto": _simple("SetVolume", percent="VOLUME"),
    "sensing_askandwait": _st_ask,
    "procedures_call": _st_call,
}


# ---------------------------------------------------------------------------
# reporter handlers


def _rp_binary(op: str, key1: str, key2: str, default: FormulaTree):
    def handler(conv, block, env):
        return BinaryOp(op,
                        conv._expr(block, key1, default, env),
                        conv._expr(block, key2, default, env))

    return handler


def _rp_not(conv, block, env):
    return UnaryOp("not", conv._expr(block, "OPERAND", BooleanLiteral(False), env))


def _rp_call(func: str, *keys: str):
    def handler(conv, block, env):
        args = tuple(conv._expr(block, key, _number(0), env) for key in keys)
        return FunctionCall(func, args)

    return handler


def _rp_join(conv, block, env):
    return FunctionCall("join", (
        conv._expr(block, "STRING1", TextLiteral(""), env),
        conv._expr(block, "STRING2", TextLiteral(""), env)))


def _rp_letter(conv, block, env):
    return FunctionCall("letter", (
        conv._expr(block, "LETTER", _number(1), env),
        conv._expr(block, "STRING", TextLiteral(""), env)))


def _rp_length(conv, block, env):
    return FunctionCall("length",
                        (conv._expr(block, "STRING", TextLiteral(""), env),))


def _rp_mathop(conv, block, env):
    op = conv._field(block, "OPERATOR")
    num = conv._expr(block, "NUM", _number(0), env)
    if op in _MATHOPS:
        return FunctionCall(_MATHOPS[op], (num,))
    if op == "e ^":
        return FunctionCall("exp", (num,))
    if op == "10 ^":
        return FunctionCall("power", (_number(10), num))
    return None


def _rp_item_of_list(conv, block, env):
    return FunctionCall("element", (
        conv._expr(block, "INDEX", _number(1), env),
        ListRef(conv._field(block, "LIST"))))


def _rp_length_of_list(conv, block, env):
    return FunctionCall("number_of_items", (ListRef(conv._field(block, "LIST")),))


def _rp_list_contains(conv, block, env):
    return FunctionCall("contains", (
        ListRef(conv._field(block, "LIST")),
        conv._expr(block, "ITEM", TextLiteral(""), env)))


def _rp_property(prop: str):
    def handler(conv, block, env):
        return PropertyRef(prop)

    return handler


def _rp_costume_number(conv, block, env):
    if conv._field(block, "NUMBER_NAME") == "number":
        return PropertyRef("look_number")
    return None


def _rp_answer(conv, block, env):
    conv._needs_answer()
    return VariableRef(ANSWER_VARIABLE)


def _rp_argument(conv, block, env):
    name = conv._field(block, "VALUE")
    return env.get(name, TextLiteral(""))


_REPORTERS = {
    "operator_add": _rp_binary("add", "NUM1", "NUM2", _number(0)),
    "operator_subtract": _rp_binary("subtract", "NUM1", "NUM2", _number(0)),
    "operator_multiply": _rp_binary("multiply", "NUM1", "NUM2", _number(0)),
    "operator_divide": _rp_binary("divide", "NUM1", "NUM2", _number(0)),
    "operator_mod": _rp_binary("mod", "NUM1", "NUM2", _number(0)),
    "operator_gt": _rp_binary("greater", "OPERAND1", "OPERAND2", TextLiteral("")),
    "operator_lt": _rp_binary("less", "OPERAND1", "OPERAND2", TextLiteral("")),
    "operator_equals": _rp_binary("equal", "OPERAND1", "OPERAND2", TextLiteral("")),
    "operator_and": _rp_binary("and", "OPERAND1", "OPERAND2", BooleanLiteral(False)),
    "operator_or": _rp_binary("or", "OPERAND1", "OPERAND2", BooleanLiteral(False)),
    "operator_not": _rp_not,
    "operator_round": _rp_call("round", "NUM"),
    "operator_random": _rp_call("random", "FROM", "TO"),
    "operator_mathop": _rp_mathop,
    "operator_join": _rp_join,
    "operator_letter_of": _rp_letter,
    "operator_length": _rp_length,
    "data_itemoflist": _rp_item_of_list,
    "data_lengthoflist": _rp_length_of_list,
    "data_listcontainsitem": _rp_list_contains,
    "motion_xposition": _rp_property("position_x"),
    "motion_yposition": _rp_property("position_y"),
    "motion_direction": _rp_property("direction"),
    "looks_size": _rp_property("size"),
    "looks_costumenumbername": _rp_costume_number,
    "sensing_answer": _rp_answer,
    "argument_reporter_string_number": _rp_argument,
    "argument_reporter_boolean": _rp_argument,
}


# ---------------------------------------------------------------------------
# post-pass


def _formula_nodes(tree: FormulaTree):
    stack = [tree]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, UnaryOp):
            stack.append(node.operand)
        elif isinstance(node, BinaryOp):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, FunctionCall):
            stack.extend(node.args)


def _declare_missing_refs(project: Project, report: ConversionReport) -> None:
    """Promote dangling variable/list references to fresh globals.

    A Scratch sprite may reference another sprite's local variable by
    name; after conversion that name resolves per object scope, so any
    reference not covered there gets declared globally.
    """
    for scene in project.scenes:
        for obj in scene.objects:
            var_scope = set(project.variables) | set(obj.variables)
            list_scope = set(project.lists) | set(obj.lists)
            for script in obj.scripts:
                for brick in script.bricks:
                    option_var = brick.options.get("variable")
                    if option_var is not None and option_var not in var_scope:
                        project.variables[option_var] = 0.0
                        var_scope.add(option_var)
                        report.warnings.append(
                            f"declared missing variable {option_var!r} globally")
                    option_list = brick.options.get("list")
                    if option_list is not None and option_list not in list_scope:
                        project.lists[option_list] = []
                        list_scope.add(option_list)
                        report.warnings.append(
                            f"declared missing list {option_list!r} globally")
                    for tree in brick.formulas.values():
                        for node in _formula_nodes(tree):
                            if isinstance(node, VariableRef) and node.name not in var_scope:
                                project.variables[node.name] = 0.0
                                var_scope.add(node.name)
                                report.warnings.append(
                                    f"declared missing variable {node.name!r} globally")
                            elif isinstance(node, ListRef) and node.name not in list_scope:
                                project.lists[node.name] = []
                                list_scope.add(node.name)
                                report.warnings.append(
                                    f"declared missing list {node.name!r} globally")
