"""
Finding and moving redundant nodes
==================================

Greedy set cover picks the nodes needed to keep the post-tilt coverage; the
rest are redundant. Each redundant node is then sent to the densest patch of
uncovered cells, and the move is kept only if it adds coverage.

A smaller region is used here so that footprints overlap and some nodes are
actually redundant.
"""

from wmsncover import tilt
from wmsncover.cover import greedy_set_cover
from wmsncover.grid import CoverageState
from wmsncover.harness import ExperimentConfig, deploy_random
from wmsncover.relocate import relocate_all

cfg = ExperimentConfig(nodes=60, width=200, height=200, seed=1)
params, region = cfg.params, cfg.region

poses = tilt.optimize_all(deploy_random(cfg), params, region)
state = CoverageState.from_poses(poses, params, region)
eta = state.coverage_ratio()

solution = greedy_set_cover(state.family, region.universe(), eta)
print(f"post-tilt coverage {eta:.4f}: {solution.m_prime} working nodes, {len(solution.redundant)} redundant")
print("selection order (first 10):", solution.selected[:10])
print("marginal gains  (first 10):", solution.gains[:10])

plan = relocate_all(solution, state, poses, params, region)
for m in plan.moves:
    print(
        f"node {m.node:2d}: ({m.old_pose.x:6.1f}, {m.old_pose.y:6.1f}) -> "
        f"({m.new_pose.x:6.1f}, {m.new_pose.y:6.1f}), +{m.cells_gained} cells"
    )
print(f"rejected moves: {len(plan.rejected)}")
print(f"coverage after relocation {plan.state.coverage_ratio():.4f}")
