"""
Footprint of one tilted camera
==============================

A node at height ``z`` looking along azimuth ``theta`` with tilt ``gamma``
sees a trapezoid on the ground. This script builds one, checks the two
volume formulas against each other, and shows how the area grows with tilt.
"""

import math

import numpy as np

from wmsncover import ModelParams, SensorPose, covers_point, footprint, near_far, volume

# half-angles: 22.5 deg horizontal, 30 deg vertical, tilt capped at 50 deg
params = ModelParams.from_degrees(22.5, 30.0, 50.0)
pose = SensorPose(x=100.0, y=100.0, z=10.0, theta=math.radians(30), gamma=math.radians(45))

near, far, d1, d2 = near_far(pose, params)
print(f"near edge {near:.3f}, far edge {far:.3f}, corner distances {d1:.3f} / {d2:.3f}")

fp = footprint(pose, params)
print("vertices D1..D4:")
print(np.round(fp.vertices, 3))
print(f"area {fp.area:.3f}, trapezoid height {fp.height:.3f}")

# volume S*z and the closed form in d1/d2 agree
v_closed = pose.z / 2 * (fp.d2 + fp.d1) * (fp.d2 - fp.d1) * math.sin(2 * params.alpha)
print(f"volume {volume(pose, params):.6f} vs closed form {v_closed:.6f}")

# the ground projection of the camera is in front of the near edge, so not covered
print("covers own projection:", covers_point(pose, params, (pose.x, pose.y)))
print("covers footprint centroid:", covers_point(pose, params, fp.centroid))

###############################################################################
# Area versus tilt
# ----------------
# Raising the tilt pushes the far edge out faster than the near edge, so the
# footprint area grows monotonically up to the tilt cap.

for deg in range(30, 51, 5):
    a = footprint(pose.with_gamma(math.radians(deg)), params).area
    print(f"gamma = {deg:2d} deg -> area {a:8.1f}")
