"""The closed identifier vocabulary of the formula language.

Identifiers are matched case-insensitively on parse. Each entry maps every
accepted surface spelling to a canonical internal id; the serializer emits
the single canonical surface form (uppercase, sensor names in the
axis-first style shown by the stage code view, e.g. ``X_INCLINATION``).
"""

from __future__ import annotations

# canonical sensor id -> canonical surface spelling
SENSOR_SURFACE = {
    "inclination_x": "X_INCLINATION",
    "inclination_y": "Y_INCLINATION",
    "acceleration_x": "X_ACCELERATION",
    "acceleration_y": "Y_ACCELERATION",
    "acceleration_z": "Z_ACCELERATION",
    "loudness": "LOUDNESS",
    "compass_direction": "COMPASS_DIRECTION",
    "latitude": "LATITUDE",
    "longitude": "LONGITUDE",
    "altitude": "ALTITUDE",
    "face_detected": "FACE_DETECTED",
    "face_size": "FACE_SIZE",
    "face_position_x": "X_FACE_POSITION",
    "face_position_y": "Y_FACE_POSITION",
}

# accepted alias spelling (lowercase) -> canonical sensor id
SENSOR_ALIASES: dict[str, str] = {}
for _id, _surface in SENSOR_SURFACE.items():
    SENSOR_ALIASES[_id] = _id
    SENSOR_ALIASES[_surface.lower()] = _id

PROPERTY_SURFACE = {
    "position_x": "POSITION_X",
    "position_y": "POSITION_Y",
    "direction": "DIRECTION",
    "size": "SIZE",
    "transparency": "TRANSPARENCY",
    "brightness": "BRIGHTNESS",
    "look_number": "LOOK_NUMBER",
    "layer": "LAYER",
}

PROPERTY_ALIASES = {name: name for name in PROPERTY_SURFACE}

# function name -> arity
FUNCTIONS = {
    "sin": 1,
    "cos": 1,
    "tan": 1,
    "arcsin": 1,
    "arccos": 1,
    "arctan": 1,
    "ln": 1,
    "log": 1,
    "abs": 1,
    "round": 1,
    "floor": 1,
    "ceil": 1,
    "sqrt": 1,
    "exp": 1,
    "power": 2,
    "mod": 2,
    "min": 2,
    "max": 2,
    "random": 2,
    "length": 1,
    "letter": 2,
    "join": 2,
    "element": 2,
    "contains": 2,
    "number_of_items": 1,
}

# keyword constants; TRUE/FALSE parse to boolean literals, PI to a number
CONSTANTS = ("true", "false", "pi")

KEYWORD_OPERATORS = ("and", "or", "not", "mod")
