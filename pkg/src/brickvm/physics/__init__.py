"""2D rigid-body physics: hull shapes, contacts, impulse resolution."""

from .hull import ConvexHull, compute_convex_hull, mask_from_png
from .sat import Contact, sat_collide, transform_hull
from .world import PhysicsBody, PhysicsWorld, physics_step

__all__ = [
    "ConvexHull",
    "Contact",
    "PhysicsBody",
    "PhysicsWorld",
    "compute_convex_hull",
    "mask_from_png",
    "physics_step",
    "sat_collide",
    "transform_hull",
]
