"""Content identity for project elements.

Two elements are "the same part" when their fingerprints match. Object
fingerprints hash the canonical serialization, so attribute order,
whitespace, and archive file naming can never split identical elements.
Merge-collision suffixes (`name (2)`) are transparent: a renamed copy
keeps the identity of the element it was renamed from.
"""

from __future__ import annotations

import hashlib
import re

from ..project.archive import canonical_object_text
from ..project.model import Look, Project, SoundRef, SpriteObject

_SUFFIX = re.compile(r"^(.*) \(\d+\)$")


def base_name(name: str) -> str:
    match = _SUFFIX.match(name)
    return match.group(1) if match else name


def _sha(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def object_fingerprint(obj: SpriteObject) -> str:
    normalized = SpriteObject(
        name=base_name(obj.name), looks=obj.looks, sounds=obj.sounds,
        scripts=obj.scripts, variables=obj.variables, lists=obj.lists)
    return _sha(canonical_object_text(normalized))


def look_fingerprint(look: Look) -> str:
    return _sha(f"{look.name}\n{hashlib.sha256(look.data).hexdigest()}")


def sound_fingerprint(sound: SoundRef) -> str:
    return _sha(f"{sound.name}\n{hashlib.sha256(sound.data).hexdigest()}")


def project_fingerprints(project: Project) -> frozenset[str]:
    """Every element identity in the project, as tagged hashes.

    Bare placeholder objects carry no content and contribute nothing;
    scenes are containers, not elements.
    """
    fps: set[str] = set()
    for name in project.variables:
        fps.add(f"variable:global:{name}")
    for name in project.lists:
        fps.add(f"list:global:{name}")
    for scene in project.scenes:
        for obj in scene.objects:
            if obj.is_bare():
                continue
            fps.add("object:" + object_fingerprint(obj))
            scope = base_name(obj.name)
            for look in obj.looks:
                fps.add("look:" + look_fingerprint(look))
            for sound in obj.sounds:
                fps.add("sound:" + sound_fingerprint(sound))
            for name in obj.variables:
                fps.add(f"variable:{scope}:{name}")
            for name in obj.lists:
                fps.add(f"list:{scope}:{name}")
    return frozenset(fps)
