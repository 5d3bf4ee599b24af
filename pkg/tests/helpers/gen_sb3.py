"""Builders for synthetic Scratch 3 archives used by converter tests."""

from __future__ import annotations

import io
import json
import zipfile

from PIL import Image


def png_asset(width: int = 4, height: int = 4,
              color: tuple = (200, 40, 40, 255)) -> bytes:
    img = Image.new("RGBA", (width, height), color)
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def num(value) -> list:
    return [1, [4, str(value)]]


def text(value: str) -> list:
    return [1, [10, str(value)]]


def var_input(name: str) -> list:
    return [3, [12, name, f"vid_{name}"], [4, "0"]]


def block_input(block_id: str) -> list:
    return [3, block_id, [4, "0"]]


def bool_input(block_id: str) -> list:
    return [2, block_id]


def substack(block_id: str) -> list:
    return [2, block_id]


def broadcast_input(name: str) -> list:
    return [1, [11, name, f"bid_{name}"]]


class Blocks:
    """Accumulates a target's block dict with linked-list plumbing."""

    def __init__(self, prefix: str = "b"):
        self.blocks: dict = {}
        self.prefix = prefix
        self._n = 0

    def _next_id(self) -> str:
        self._n += 1
        return f"{self.prefix}{self._n}"

    def add(self, opcode: str, *, inputs=None, fields=None, top=False,
            shadow=False, mutation=None, block_id=None) -> str:
        bid = block_id or self._next_id()
        block = {
            "opcode": opcode,
            "next": None,
            "parent": None,
            "inputs": inputs or {},
            "fields": fields or {},
            "shadow": shadow,
            "topLevel": top,
        }
        if mutation is not None:
            block["mutation"] = mutation
        self.blocks[bid] = block
        return bid

    def hat(self, opcode: str, *, fields=None) -> str:
        return self.add(opcode, fields=fields, top=True)

    def stmt(self, prev_id: str, opcode: str, *, inputs=None, fields=None,
             mutation=None) -> str:
        bid = self.add(opcode, inputs=inputs, fields=fields, mutation=mutation)
        self.blocks[prev_id]["next"] = bid
        self.blocks[bid]["parent"] = prev_id
        return bid

    def menu(self, opcode: str, field_key: str, value: str) -> str:
        return self.add(opcode, fields={field_key: [value, None]}, shadow=True)

    def arg_reporter(self, name: str) -> str:
        return self.add("argument_reporter_string_number",
                        fields={"VALUE": [name, None]})

    def definition(self, proccode: str, arg_names: list[str],
                   arg_ids: list[str]) -> tuple[str, str]:
        """Custom block definition; returns (definition id, prototype id)."""
        proto = self.add("procedures_prototype", shadow=True, mutation={
            "proccode": proccode,
            "argumentids": json.dumps(arg_ids),
            "argumentnames": json.dumps(arg_names),
        })
        def_id = self.add("procedures_definition", top=True,
                          inputs={"custom_block": [1, proto]})
        for arg_id, arg_name in zip(arg_ids, arg_names):
            self.blocks[f"argrep_{arg_id}"] = {
                "opcode": "argument_reporter_string_number",
                "next": None,
                "parent": proto,
                "inputs": {},
                "fields": {"VALUE": [arg_name, None]},
                "shadow": True,
                "topLevel": False,
            }
        return def_id, proto

    def call(self, prev_id: str, proccode: str, arg_ids: list[str],
             arg_inputs: list) -> str:
        return self.stmt(prev_id, "procedures_call",
                         inputs=dict(zip(arg_ids, arg_inputs)),
                         mutation={
                             "proccode": proccode,
                             "argumentids": json.dumps(arg_ids),
                         })


def costume(name: str, md5ext: str, resolution: int = 1,
            data_format: str = "png") -> dict:
    return {
        "name": name,
        "dataFormat": data_format,
        "md5ext": md5ext,
        "assetId": md5ext.split(".")[0],
        "bitmapResolution": resolution,
        "rotationCenterX": 0,
        "rotationCenterY": 0,
    }


def sound(name: str, md5ext: str) -> dict:
    return {
        "name": name,
        "dataFormat": md5ext.split(".")[-1],
        "md5ext": md5ext,
        "assetId": md5ext.split(".")[0],
    }


def stage(blocks: Blocks | None = None, *, variables=None, lists=None,
          costumes=None, sounds=None, broadcasts=None) -> dict:
    return {
        "isStage": True,
        "name": "Stage",
        "variables": variables or {},
        "lists": lists or {},
        "broadcasts": broadcasts or {},
        "blocks": blocks.blocks if blocks else {},
        "costumes": costumes or [],
        "sounds": sounds or [],
        "currentCostume": 0,
        "layerOrder": 0,
    }


def sprite(name: str, blocks: Blocks | None = None, *, x=0, y=0, size=100,
           direction=90, visible=True, current_costume=0, layer=1,
           variables=None, lists=None, costumes=None, sounds=None) -> dict:
    return {
        "isStage": False,
        "name": name,
        "variables": variables or {},
        "lists": lists or {},
        "blocks": blocks.blocks if blocks else {},
        "costumes": costumes or [],
        "sounds": sounds or [],
        "x": x,
        "y": y,
        "size": size,
        "direction": direction,
        "visible": visible,
        "currentCostume": current_costume,
        "layerOrder": layer,
    }


def make_sb3(*targets: dict, assets: dict | None = None,
             manifest_extra: dict | None = None) -> bytes:
    manifest = {
        "targets": list(targets),
        "monitors": [],
        "extensions": [],
        "meta": {"semver": "3.0.0", "vm": "1.0.0", "agent": ""},
    }
    if manifest_extra:
        manifest.update(manifest_extra)
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w") as zf:
        zf.writestr("project.json", json.dumps(manifest))
        for path, data in (assets or {}).items():
            zf.writestr(path, data)
    return buf.getvalue()
