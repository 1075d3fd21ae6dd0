"""Experiment pipeline: random deployment, tilt tuning, set cover, relocation.

Every run is fully determined by its :class:`ExperimentConfig`. Random draws
come from NumPy's ``Generator`` over the 64-bit PCG64 bit generator, seeded
with the config seed and consumed in a fixed order (all x, then y, z, theta,
gamma).
"""

from __future__ import annotations

import io
import math
import os
import platform
import tempfile
import time
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import scipy

from . import __version__, cover, relocate, tilt
from .geometry import DomainError, ModelParams, PredicateMode, SensorPose
from .grid import CoverageState, Region, analytic_min_nodes, node_cells

PHASES = ("initial", "tilted", "final")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    """Run settings. Angles are in degrees here and converted on use.

    The defaults read the tabulated FOV angles (45 and 60 degrees) as full
    angles, giving half-angles of 22.5 and 30 degrees.
    """

    nodes: int = 100
    width: float = 500.0
    height: float = 500.0
    cell_size: float = 1.0
    alpha_deg: float = 22.5
    beta_deg: float = 30.0
    kmax_deg: float = 50.0
    zmin: float = 5.0
    zmax: float = 13.0
    seed: int = 0
    target_eta: float | None = None
    """Explicit set-cover target; ``None`` uses the post-tilt coverage."""
    predicate: PredicateMode = "quad"
    out: str | None = None

    def __post_init__(self) -> None:
        if self.nodes < 0:
            raise ConfigError(f"nodes must be >= 0, got {self.nodes}")
        if not 0 < self.zmin <= self.zmax:
            raise ConfigError(f"need 0 < zmin <= zmax, got {self.zmin}, {self.zmax}")
        if self.predicate not in ("quad", "annular"):
            raise ConfigError(f"predicate must be 'quad' or 'annular', got {self.predicate!r}")
        if self.target_eta is not None and not 0.0 <= self.target_eta <= 1.0:
            raise ConfigError(f"target_eta must lie in [0, 1], got {self.target_eta}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        try:
            self.params
            self.region
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def params(self) -> ModelParams:
        return ModelParams.from_degrees(self.alpha_deg, self.beta_deg, self.kmax_deg)

    @property
    def region(self) -> Region:
        return Region(self.width, self.height, self.cell_size)

    @classmethod
    def literal_table1(cls, **overrides) -> "ExperimentConfig":
        """Tabulated angles taken as half-angles. Always fails validation."""
        return cls(**{"alpha_deg": 45.0, "beta_deg": 60.0, "kmax_deg": 50.0, **overrides})


@dataclass
class RunReport:
    seed: int
    nodes: int
    eta: dict[str, float]
    covered_cells: dict[str, int]
    total_cells: int
    target_eta: float
    m_prime: int
    analytic_m: float | None
    redundant: int
    moves_accepted: int
    moves_rejected: int
    cover_shortfall: bool
    wall_time: dict[str, float] = field(default_factory=dict)

    @property
    def analytic_m_ceil(self) -> int | None:
        return None if self.analytic_m is None else math.ceil(self.analytic_m - 1e-9)

    @property
    def tilt_regressed(self) -> bool:
        return self.eta["tilted"] < self.eta["initial"]


@dataclass
class RunResult:
    report: RunReport
    poses: dict[str, list[SensorPose]]
    states: dict[str, CoverageState]
    solution: cover.CoverSolution
    plan: relocate.RelocationPlan


def deploy_random(config: ExperimentConfig) -> list[SensorPose]:
    n = config.nodes
    params = config.params
    rng = np.random.Generator(np.random.PCG64(config.seed))
    x = rng.uniform(0.0, config.width, n)
    y = rng.uniform(0.0, config.height, n)
    z = rng.uniform(config.zmin, config.zmax, n)
    theta = rng.uniform(0.0, 2.0 * math.pi, n)
    gamma = rng.uniform(params.beta, params.k_max, n)
    return [
        SensorPose(float(x[i]), float(y[i]), float(z[i]), float(theta[i]), float(gamma[i]))
        for i in range(n)
    ]


def mean_in_region_area(state: CoverageState) -> float:
    """Average per-node covered area, counting only cells inside the region."""
    if not state.family:
        return 0.0
    cells = np.mean([len(f) for f in state.family])
    return float(cells) * state.region.cell_size**2


def run_pipeline(config: ExperimentConfig, write: bool = True) -> RunResult:
    """Deploy, tune tilts, select a cover, relocate redundant nodes.

    Artifacts are written to ``config.out`` when it is set and ``write`` is true.
    """
    params, region, mode = config.params, config.region, config.predicate
    timing: dict[str, float] = {}

    t0 = time.perf_counter()
    initial = deploy_random(config)
    s_initial = CoverageState.from_poses(initial, params, region, mode)
    timing["initial"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    tilted = tilt.optimize_all(initial, params, region)
    s_tilted = s_initial.copy()
    for i, (a, b) in enumerate(zip(initial, tilted)):
        if a != b:
            s_tilted.update_node(i, node_cells(b, params, region, mode))
    timing["tilted"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    eta_tilted = s_tilted.coverage_ratio()
    target = eta_tilted if config.target_eta is None else config.target_eta
    solution = cover.greedy_set_cover(s_tilted.family, region.universe(), target)
    timing["cover"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    plan = relocate.relocate_all(solution, s_tilted, tilted, params, region, mode)
    s_final = plan.state
    timing["final"] = time.perf_counter() - t0

    states = {"initial": s_initial, "tilted": s_tilted, "final": s_final}
    eta = {k: s.coverage_ratio() for k, s in states.items()}
    assert eta["final"] >= eta["tilted"]

    s_mean = mean_in_region_area(s_tilted)
    try:
        m = analytic_min_nodes(min(target, 1.0 - 1e-12), s_mean, region.area)
    except DomainError:
        m = None

    report = RunReport(
        seed=config.seed,
        nodes=config.nodes,
        eta=eta,
        covered_cells={k: s.covered_count() for k, s in states.items()},
        total_cells=region.n_cells,
        target_eta=target,
        m_prime=solution.m_prime,
        analytic_m=m,
        redundant=len(solution.redundant),
        moves_accepted=len(plan.moves),
        moves_rejected=len(plan.rejected),
        cover_shortfall=solution.shortfall,
        wall_time=timing,
    )
    result = RunResult(
        report=report,
        poses={"initial": initial, "tilted": tilted, "final": plan.poses},
        states=states,
        solution=solution,
        plan=plan,
    )
    if write and config.out:
        write_artifacts(result, config, Path(config.out))
    return result


# --- artifacts -------------------------------------------------------------


def fmt(value: float) -> str:
    return format(value, ".9g")


def _csv(rows: Iterable[Sequence[object]]) -> str:
    out = io.StringIO()
    for row in rows:
        out.write(",".join("" if v is None else (fmt(v) if isinstance(v, float) else str(v)) for v in row))
        out.write("\n")
    return out.getvalue()


def report_csv(report: RunReport) -> str:
    rows: list[Sequence[object]] = [("phase", "eta", "covered_cells", "total_cells")]
    for ph in PHASES:
        rows.append((ph, report.eta[ph], report.covered_cells[ph], report.total_cells))
    rows.append(())
    rows.append(("metric", "value"))
    rows.extend(
        [
            ("target_eta", report.target_eta),
            ("m_prime", report.m_prime),
            ("analytic_m", report.analytic_m),
            ("analytic_m_ceil", report.analytic_m_ceil),
            ("redundant", report.redundant),
            ("moves_accepted", report.moves_accepted),
            ("moves_rejected", report.moves_rejected),
            ("cover_shortfall", int(report.cover_shortfall)),
            ("seed", report.seed),
        ]
    )
    return _csv(rows)


def deployment_csv(poses: Sequence[SensorPose]) -> str:
    rows: list[Sequence[object]] = [("id", "x", "y", "z", "theta_rad", "gamma_rad")]
    rows.extend((i, p.x, p.y, p.z, p.theta, p.gamma) for i, p in enumerate(poses))
    return _csv(rows)


def coverage_pgm(state: CoverageState) -> bytes:
    """Binary PGM, one pixel per cell, first pixel row is the y = 0 edge."""
    r = state.region
    header = f"P5\n{r.cols} {r.rows}\n255\n".encode("ascii")
    pix = np.where(state.covered_mask, 255, 0).astype(np.uint8)
    return header + pix.tobytes()


def read_pgm(data: bytes) -> np.ndarray:
    magic, dims, maxval, rest = data.split(b"\n", 3)
    if magic != b"P5" or maxval != b"255":
        raise ValueError("not an 8-bit binary PGM")
    cols, rows = map(int, dims.split())
    return np.frombuffer(rest, dtype=np.uint8).reshape(rows, cols)


def manifest_txt(config: ExperimentConfig, report: RunReport) -> str:
    lines = [f"{f.name}={getattr(config, f.name)}" for f in fields(config)]
    lines += [
        f"package_version={__version__}",
        f"python={platform.python_version()}",
        f"numpy={np.__version__}",
        f"scipy={scipy.__version__}",
        "rng=numpy.random.PCG64",
    ]
    lines += [f"wall_time_{k}={fmt(v)}" for k, v in report.wall_time.items()]
    return "\n".join(lines) + "\n"


def _atomic_write(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_artifacts(result: RunResult, config: ExperimentConfig, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    _atomic_write(out / "report.csv", report_csv(result.report).encode())
    for ph in PHASES:
        _atomic_write(out / f"deployment_{ph}.csv", deployment_csv(result.poses[ph]).encode())
        _atomic_write(out / f"coverage_{ph}.pgm", coverage_pgm(result.states[ph]))
    _atomic_write(out / "manifest.txt", manifest_txt(config, result.report).encode())


# --- sweeps ----------------------------------------------------------------

SWEEP_HEADER = (
    "nodes", "seed", "initial_eta", "tilted_eta", "final_eta",
    "m_prime", "analytic_m_ceil", "redundant", "tilt_regressed",
)


def sweep(
    config: ExperimentConfig,
    seeds: Sequence[int],
    node_counts: Sequence[int] | None = None,
) -> tuple[str, list[RunReport]]:
    """Run the pipeline for every (node count, seed) pair and tabulate.

    Per-run artifacts go to ``<out>/n<nodes>_s<seed>/`` and the table to
    ``<out>/sweep.csv`` when ``config.out`` is set.
    """
    counts = [config.nodes] if node_counts is None else list(node_counts)
    reports: list[RunReport] = []
    rows: list[Sequence[object]] = [SWEEP_HEADER]
    for n in counts:
        for seed in seeds:
            out = None if config.out is None else str(Path(config.out) / f"n{n}_s{seed}")
            rep = run_pipeline(replace(config, nodes=n, seed=seed, out=out)).report
            reports.append(rep)
            rows.append(
                (
                    n, seed, rep.eta["initial"], rep.eta["tilted"], rep.eta["final"],
                    rep.m_prime, rep.analytic_m_ceil, rep.redundant, int(rep.tilt_regressed),
                )
            )
    table = _csv(rows)
    if config.out is not None:
        Path(config.out).mkdir(parents=True, exist_ok=True)
        _atomic_write(Path(config.out) / "sweep.csv", table.encode())
    return table, reports


def report_dict(report: RunReport) -> dict:
    d = asdict(report)
    d["analytic_m_ceil"] = report.analytic_m_ceil
    return d
