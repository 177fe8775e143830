"""The coffee-cup caustic, three ways.

Horizontal light reflected inside a circular mirror concentrates on half
a nephroid.  The tilted-coframe formula gives that caustic in closed
form (R1 = (3/4) cos theta for the unit circle); intersecting
neighbouring reflected rays recovers the same curve numerically.  The
script measures the gap between the two and draws mirror, rays and
caustic together.
"""

import math
import os

import numpy as np

from caustics.caustic import TiltField, caustic_curve
from caustics.inclination import AngleInterval, circle
from caustics.oracle import envelope_numeric, hausdorff_distance, rays_from_tilt
from caustics.svg import write_scene

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

mirror = circle(1.0)
window = AngleInterval(0.01, math.pi - 0.01, 801)
tilt = TiltField.reflection()

# Closed form: one caustic vertex per mirror sample, plus the radius law.
closed = caustic_curve(mirror, tilt, window)
theta = np.array([s.source_theta for s in closed])
radius_defect = np.max(np.abs(
    np.array([s.caustic_radius for s in closed]) - 0.75 * np.cos(theta)
))
print(f"caustic radius vs (3/4)cos(theta): {radius_defect:.2e}")

# Numeric envelope: emit the reflected rays and intersect neighbours.
# The two polylines are compared away from the caustic's cusp, where
# consecutive rays are nearly parallel and the intersection blows up.
family = rays_from_tilt(mirror, tilt, window)
envelope = envelope_numeric(family)
grid = np.concatenate(([window.lo], envelope.parameters))
at_midpoints = caustic_curve(mirror, tilt, grid)[1:]
closed_pts = np.array([s.position for s in at_midpoints])
radii = np.array([s.caustic_radius for s in at_midpoints])
flips = np.flatnonzero(np.sign(radii[:-1]) != np.sign(radii[1:]))
cusps = 0.5 * (closed_pts[flips] + closed_pts[flips + 1])
gap = hausdorff_distance(envelope.points, closed_pts, exclusions=cusps)
print(f"envelope vs closed form (cusp disks removed): {gap:.2e}")

# Scene: the mirror arc, a sparse fan of reflected rays, both caustics.
mirror_pts = np.array([
    (s.base[0], s.base[1]) for s in family.rays
])
fan = []
for ray in family.rays[::40]:
    base = np.asarray(ray.base, dtype=float)
    fan.append(np.vstack([base, base + 1.2 * np.asarray(ray.direction)]))
write_scene(
    os.path.join(OUT, "nephroid.svg"),
    mirror=[mirror_pts],
    caustic=[np.array([s.position for s in closed]), envelope.points],
    rays=fan,
    cusps=cusps,
)
print(f"wrote {os.path.join(OUT, 'nephroid.svg')}")
