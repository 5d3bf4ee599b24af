"""brickvm: a headless runtime and toolchain for zipped brick-program archives.

Subpackages:

* ``formula``  - expression language: parse, serialize, evaluate
* ``project``  - archive model, load/save, validation, statistics, code view
* ``physics``  - convex hulls, SAT contacts, impulse stepping
* ``sensors``  - device timelines and per-frame input assembly
* ``runtime``  - the cooperative frame interpreter
* ``tools``    - project merge and sb3 conversion
* ``gateway``  - CLI and the interactive frame-stream service
"""

__version__ = "0.1.0"
