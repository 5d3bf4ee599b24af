"""Bodies, the world, and the per-frame physics step.

Every object instance owns a body; the body is the single store for its
stage transform (position, direction, scale). Motion types: "none" bodies
are pure transforms and never generate contacts, "static" bodies collide
but never move, "dynamic" bodies integrate under gravity and resolve
impulses.

Step order, one substep per frame: integrate dynamics (v += g*dt, then
x += v*dt), detect contacts (sorted-interval sweep on x, then SAT),
resolve velocities (restitution = product of bounce factors, friction =
product of the two coefficients damping tangential relative velocity),
then separate overlaps positionally. The correction per pass is
max(0.2 * (penetration - slop), penetration - 0.5): the 0.2 fraction keeps
resting contacts soft, the second term caps the residual at 0.5 stage
units so deep overlaps are pushed out at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .hull import ConvexHull
from .sat import Contact, polygon_aabb, sat_collide, transform_hull

DT = 1.0 / 60.0
CORRECTION_FRACTION = 0.2
PENETRATION_SLOP = 0.01
MAX_RESIDUAL = 0.5
CORRECTION_PASSES = 3

MOTION_NONE = "none"
MOTION_STATIC = "static"
MOTION_DYNAMIC = "dynamic"


@dataclass
class PhysicsBody:
    body_id: int
    x: float = 0.0
    y: float = 0.0
    direction: float = 0.0      # degrees clockwise from up
    scale: float = 1.0
    hull: ConvexHull = ConvexHull(())
    width: float = 0.0          # look pixel dimensions behind the hull
    height: float = 0.0
    motion_type: str = MOTION_NONE
    mass: float = 1.0
    velocity_x: float = 0.0
    velocity_y: float = 0.0
    bounce_factor: float = 0.8
    friction: float = 0.2

    _version: int = field(default=0, repr=False)
    _cached_version: int = field(default=-1, repr=False)
    _cached_points: tuple = field(default=(), repr=False)

    def move_to(self, x: float, y: float) -> None:
        self.x, self.y = x, y
        self._version += 1

    def turn_to(self, direction: float) -> None:
        self.direction = direction
        self._version += 1

    def rescale(self, scale: float) -> None:
        self.scale = scale
        self._version += 1

    def set_hull(self, hull: ConvexHull, width: float, height: float) -> None:
        self.hull, self.width, self.height = hull, width, height
        self._version += 1

    def set_motion_type(self, motion_type: str) -> None:
        self.motion_type = motion_type
        if motion_type != MOTION_DYNAMIC:
            self.velocity_x = self.velocity_y = 0.0

    def set_velocity(self, vx: float, vy: float) -> None:
        if self.motion_type == MOTION_DYNAMIC:
            self.velocity_x, self.velocity_y = vx, vy

    @property
    def inv_mass(self) -> float:
        if self.motion_type != MOTION_DYNAMIC or self.mass <= 0.0:
            return 0.0
        return 1.0 / self.mass

    def world_points(self) -> tuple:
        if self._cached_version != self._version:
            self._cached_points = transform_hull(
                self.hull, self.width, self.height,
                self.x, self.y, self.direction, self.scale)
            self._cached_version = self._version
        return self._cached_points


@dataclass
class PhysicsWorld:
    gravity_x: float = 0.0
    gravity_y: float = 0.0
    bodies: dict[int, PhysicsBody] = field(default_factory=dict)
    contacts: list[Contact] = field(default_factory=list)

    def add_body(self, body_id: int) -> PhysicsBody:
        body = PhysicsBody(body_id)
        self.bodies[body_id] = body
        return body

    def remove_body(self, body_id: int) -> None:
        self.bodies.pop(body_id, None)

    def set_gravity(self, gx: float, gy: float) -> None:
        self.gravity_x, self.gravity_y = gx, gy

    def query_collisions(self, body_id: int) -> list[Contact]:
        return [c for c in self.contacts
                if body_id in (c.body_a, c.body_b)]


def _candidate_pairs(world: PhysicsWorld) -> list[tuple[PhysicsBody, PhysicsBody]]:
    boxed = []
    for body_id in sorted(world.bodies):
        body = world.bodies[body_id]
        if body.motion_type == MOTION_NONE or not body.hull:
            continue
        boxed.append((body, polygon_aabb(body.world_points())))
    boxed.sort(key=lambda entry: entry[1][0])  # sweep along x
    pairs = []
    for i, (body_a, box_a) in enumerate(boxed):
        for body_b, box_b in boxed[i + 1:]:
            if box_b[0] > box_a[2]:
                break
            if box_a[1] > box_b[3] or box_b[1] > box_a[3]:
                continue
            if MOTION_DYNAMIC not in (body_a.motion_type, body_b.motion_type):
                continue
            if body_a.body_id < body_b.body_id:
                pairs.append((body_a, body_b))
            else:
                pairs.append((body_b, body_a))
    pairs.sort(key=lambda pair: (pair[0].body_id, pair[1].body_id))
    return pairs


def _resolve_velocity(a: PhysicsBody, b: PhysicsBody, normal) -> None:
    inv_sum = a.inv_mass + b.inv_mass
    if inv_sum == 0.0:
        return
    nx, ny = normal
    rel_x = b.velocity_x - a.velocity_x
    rel_y = b.velocity_y - a.velocity_y
    rel_n = rel_x * nx + rel_y * ny
    if rel_n < 0.0:  # approaching along the contact normal
        restitution = a.bounce_factor * b.bounce_factor
        j = -(1.0 + restitution) * rel_n / inv_sum
        a.velocity_x -= j * nx * a.inv_mass
        a.velocity_y -= j * ny * a.inv_mass
        b.velocity_x += j * nx * b.inv_mass
        b.velocity_y += j * ny * b.inv_mass
    tx, ty = -ny, nx
    rel_t = ((b.velocity_x - a.velocity_x) * tx
             + (b.velocity_y - a.velocity_y) * ty)
    grip = min(1.0, a.friction * b.friction)
    if rel_t != 0.0 and grip > 0.0:
        jt = -rel_t * grip / inv_sum
        a.velocity_x -= jt * tx * a.inv_mass
        a.velocity_y -= jt * ty * a.inv_mass
        b.velocity_x += jt * tx * b.inv_mass
        b.velocity_y += jt * ty * b.inv_mass


def _separate(a: PhysicsBody, b: PhysicsBody, normal, penetration: float) -> None:
    inv_sum = a.inv_mass + b.inv_mass
    if inv_sum == 0.0 or penetration <= PENETRATION_SLOP:
        return
    move = max(CORRECTION_FRACTION * (penetration - PENETRATION_SLOP),
               penetration - MAX_RESIDUAL)
    nx, ny = normal
    share_a = a.inv_mass / inv_sum
    share_b = b.inv_mass / inv_sum
    if share_a:
        a.move_to(a.x - nx * move * share_a, a.y - ny * move * share_a)
    if share_b:
        b.move_to(b.x + nx * move * share_b, b.y + ny * move * share_b)


def physics_step(world: PhysicsWorld, dt: float = DT) -> list[Contact]:
    for body_id in sorted(world.bodies):
        body = world.bodies[body_id]
        if body.motion_type != MOTION_DYNAMIC:
            continue
        body.velocity_x += world.gravity_x * dt
        body.velocity_y += world.gravity_y * dt
        if body.velocity_x or body.velocity_y:
            body.move_to(body.x + body.velocity_x * dt,
                         body.y + body.velocity_y * dt)

    pairs = _candidate_pairs(world)
    contacts: list[Contact] = []
    colliding: list[tuple[PhysicsBody, PhysicsBody]] = []
    for a, b in pairs:
        hit = sat_collide(a.world_points(), b.world_points())
        if hit is None:
            continue
        normal, penetration = hit
        contacts.append(Contact(a.body_id, b.body_id, normal, penetration))
        colliding.append((a, b))
        _resolve_velocity(a, b, normal)

    for contact, (a, b) in zip(contacts, colliding):
        _separate(a, b, contact.normal, contact.penetration)
    for _ in range(CORRECTION_PASSES - 1):
        any_moved = False
        for a, b in colliding:
            hit = sat_collide(a.world_points(), b.world_points())
            if hit is None:
                continue
            normal, penetration = hit
            if penetration > MAX_RESIDUAL:
                _separate(a, b, normal, penetration)
                any_moved = True
        if not any_moved:
            break

    world.contacts = contacts
    return contacts
