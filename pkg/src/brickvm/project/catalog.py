"""The brick catalog: every kind the language knows.

Each brick kind carries its category (a pure function of kind), its formula
slots in evaluation order, its non-formula option attributes, its code-view
template, and its structural role for begin/end pairing. The seven
categories and their order are fixed; per-category statistics and the
palette follow this table. Semantics live in docs/bricks.md and
runtime/bricks.py.
"""

from __future__ import annotations

from dataclasses import dataclass, field

CATEGORIES = ("Event", "Control", "Motion", "Sound", "Looks", "Pen", "Data")

HAT_KINDS = (
    "WhenProgramStarted",
    "WhenTapped",
    "WhenBroadcastReceived",
    "WhenPhysicalCollision",
    "WhenCloned",
)

HAT_TEMPLATES = {
    "WhenProgramStarted": "When program started",
    "WhenTapped": "When tapped",
    "WhenBroadcastReceived": 'When broadcast received "{message}"',
    "WhenPhysicalCollision": "When physical collision with anything",
    "WhenCloned": "When cloned",
}

MOTION_TYPES = ("none", "static", "dynamic")

# how motion types read in the code view: a static body is one others
# bounce off, a dynamic body bounces around under gravity
MOTION_TYPE_DISPLAY = {
    "none": "none",
    "static": "others bounce off it",
    "dynamic": "bouncing with gravity",
}


@dataclass(frozen=True)
class BrickSpec:
    kind: str
    category: str
    slots: tuple[str, ...] = ()
    options: tuple[str, ...] = ()
    template: str = ""
    opens: str | None = None   # "loop" | "if"
    closes: str | None = None  # "loop" | "if"
    mid: str | None = None     # "if" for Else
    option_values: dict = field(default_factory=dict)  # option -> allowed values


def _b(kind, category, slots=(), options=(), template="", **kw):
    return BrickSpec(kind, category, tuple(slots), tuple(options), template, **kw)


_BRICKS = [
    # Event
    _b("Broadcast", "Event", options=("message",), template='Broadcast "{message}"'),
    _b("BroadcastAndWait", "Event", options=("message",),
       template='Broadcast "{message}" and wait'),
    # Control
    _b("Wait", "Control", slots=("seconds",), template="Wait {seconds} seconds"),
    _b("Forever", "Control", template="Forever", opens="loop"),
    _b("Repeat", "Control", slots=("times",), template="Repeat {times} times",
       opens="loop"),
    _b("EndOfLoop", "Control", template="End of loop", closes="loop"),
    _b("If", "Control", slots=("condition",), template="If {condition}", opens="if"),
    _b("Else", "Control", template="Else", mid="if"),
    _b("EndOfIf", "Control", template="End of if", closes="if"),
    _b("Clone", "Control", template="Create clone of yourself"),
    _b("DeleteThisClone", "Control", template="Delete this clone"),
    _b("SwitchScene", "Control", options=("scene",),
       template='Switch to scene "{scene}"'),
    _b("Note", "Control", options=("text",), template="Note: {text}"),
    # Motion
    _b("PlaceAt", "Motion", slots=("x", "y"), template="Place at X: {x} Y: {y}"),
    _b("SetX", "Motion", slots=("x",), template="Set X to {x}"),
    _b("SetY", "Motion", slots=("y",), template="Set Y to {y}"),
    _b("ChangeXBy", "Motion", slots=("dx",), template="Change X by {dx}"),
    _b("ChangeYBy", "Motion", slots=("dy",), template="Change Y by {dy}"),
    _b("MoveSteps", "Motion", slots=("steps",), template="Move {steps} steps"),
    _b("TurnLeft", "Motion", slots=("degrees",),
       template="Turn left {degrees} degrees"),
    _b("TurnRight", "Motion", slots=("degrees",),
       template="Turn right {degrees} degrees"),
    _b("PointInDirection", "Motion", slots=("degrees",),
       template="Point in direction {degrees} degrees"),
    _b("GlideTo", "Motion", slots=("x", "y", "seconds"),
       template="Glide to X: {x} Y: {y} in {seconds} seconds"),
    _b("IfOnEdgeBounce", "Motion", template="If on edge bounce"),
    _b("ComeToFront", "Motion", template="Come to front"),
    _b("GoBackLayers", "Motion", slots=("layers",),
       template="Go back {layers} layers"),
    _b("SetMotionType", "Motion", options=("motion_type",),
       template="Set motion type to {motion_type}",
       option_values={"motion_type": MOTION_TYPES}),
    _b("SetVelocity", "Motion", slots=("vx", "vy"),
       template="Set velocity to X: {vx} Y: {vy} steps/second"),
    _b("SetGravity", "Motion", slots=("gx", "gy"),
       template="Set gravity for all objects to X: {gx} Y: {gy}"),
    _b("SetMass", "Motion", slots=("mass",), template="Set mass to {mass}"),
    _b("SetBounceFactor", "Motion", slots=("factor",),
       template="Set bounce factor to {factor}"),
    _b("SetFriction", "Motion", slots=("friction",),
       template="Set friction to {friction}"),
    # Sound
    _b("StartSound", "Sound", options=("sound",), template='Start sound "{sound}"'),
    _b("StopAllSounds", "Sound", template="Stop all sounds"),
    _b("SetVolume", "Sound", slots=("percent",), template="Set volume to {percent}%"),
    _b("Vibrate", "Sound", slots=("seconds",), template="Vibrate for {seconds} seconds"),
    # Looks
    _b("SetLook", "Looks", options=("look",), template='Switch to look "{look}"'),
    _b("NextLook", "Looks", template="Next look"),
    _b("Show", "Looks", template="Show"),
    _b("Hide", "Looks", template="Hide"),
    _b("SetSize", "Looks", slots=("percent",), template="Set size to {percent}%"),
    _b("ChangeSizeBy", "Looks", slots=("amount",), template="Change size by {amount}"),
    _b("SetTransparency", "Looks", slots=("percent",),
       template="Set transparency to {percent}%"),
    _b("ChangeTransparencyBy", "Looks", slots=("amount",),
       template="Change transparency by {amount}"),
    _b("SetBrightness", "Looks", slots=("percent",),
       template="Set brightness to {percent}%"),
    _b("ChangeBrightnessBy", "Looks", slots=("amount",),
       template="Change brightness by {amount}"),
    _b("Say", "Looks", slots=("text",), template="Say {text}"),
    _b("Think", "Looks", slots=("text",), template="Think {text}"),
    _b("Ask", "Looks", slots=("question",), options=("variable",),
       template='Ask {question} and store in "{variable}"'),
    # Pen
    _b("PenDown", "Pen", template="Pen down"),
    _b("PenUp", "Pen", template="Pen up"),
    _b("SetPenSize", "Pen", slots=("size",), template="Set pen size to {size}"),
    _b("SetPenColor", "Pen", slots=("red", "green", "blue"),
       template="Set pen color to R: {red} G: {green} B: {blue}"),
    _b("Stamp", "Pen", template="Stamp"),
    # Data
    _b("SetVariable", "Data", slots=("value",), options=("variable",),
       template='Set variable "{variable}" to {value}'),
    _b("ChangeVariable", "Data", slots=("delta",), options=("variable",),
       template='Change variable "{variable}" by {delta}'),
    _b("ShowVariable", "Data", options=("variable",),
       template='Show variable "{variable}"'),
    _b("HideVariable", "Data", options=("variable",),
       template='Hide variable "{variable}"'),
    _b("AddToList", "Data", slots=("value",), options=("list",),
       template='Add {value} to list "{list}"'),
    _b("DeleteFromList", "Data", slots=("index",), options=("list",),
       template='Delete item {index} from list "{list}"'),
    _b("InsertIntoList", "Data", slots=("index", "value"), options=("list",),
       template='Insert {value} at {index} of list "{list}"'),
    _b("ReplaceItemInList", "Data", slots=("index", "value"), options=("list",),
       template='Replace item {index} of list "{list}" with {value}'),
]

BRICK_SPECS: dict[str, BrickSpec] = {spec.kind: spec for spec in _BRICKS}


def brick_category(kind: str) -> str:
    return BRICK_SPECS[kind].category
