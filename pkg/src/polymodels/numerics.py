"""Floating-point spot checks: sampling, ellipticity, symmetry, rendering, spectra."""

from __future__ import annotations

import io
import math
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from .algebra.poly import MultiPoly
from .catalog.types import PolynomialModel

MARGIN = 1e-9
MIN_ACCEPTANCE = 1e-4
SYMMETRY_TOL = 5e-2
DEFAULT_GRID = 512


class LowAcceptance(RuntimeError):
    pass


class ConvergenceFailure(ArithmeticError):
    pass


# -- float evaluation of exact polynomials ---------------------------------------

class FloatPoly:
    """Vectorised evaluation of a polynomial at rows of an ``(N, k)`` array."""

    def __init__(self, p: MultiPoly, coords: Sequence[str]) -> None:
        coords = tuple(coords)
        extra = set(p.used_variables()) - set(coords)
        if extra:
            raise ValueError(f"polynomial uses {sorted(extra)} outside {coords}")
        p = p.with_variables(tuple(sorted(set(p.variables) | set(coords),
                                          key=lambda v: coords.index(v) if v in coords else -1)))
        pos = [p.variables.index(c) for c in coords]
        exps, coeffs = [], []
        for e, c in p.terms.items():
            exps.append([e[i] for i in pos])
            coeffs.append(float(c))
        self.coords = coords
        self.exps = np.array(exps, dtype=np.int64).reshape(len(exps), len(coords))
        self.coeffs = np.array(coeffs, dtype=float)

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        if not len(self.coeffs):
            return np.zeros(len(pts))
        out = np.zeros(len(pts))
        for e, c in zip(self.exps, self.coeffs):
            out += c * np.prod(pts ** e, axis=1)
        return out


def float_matrix(model: PolynomialModel) -> Callable[[np.ndarray], np.ndarray]:
    """``pts -> (N, k, k)`` array of co-metric values."""
    k = model.dim
    coords = model.coordinates
    entries = [[FloatPoly(model.cometric[i, j], coords) for j in range(k)] for i in range(k)]

    def evaluate(pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(pts)
        out = np.empty((len(pts), k, k))
        for i in range(k):
            for j in range(i, k):
                out[:, i, j] = out[:, j, i] = entries[i][j](pts)
        return out

    return evaluate


# -- domain box ------------------------------------------------------------------

def fibonacci_sphere(count: int) -> np.ndarray:
    i = np.arange(count) + 0.5
    z = 1 - 2 * i / count
    r = np.sqrt(1 - z * z)
    phi = math.pi * (3 - math.sqrt(5)) * i
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def domain_box(model: PolynomialModel, count: int = 20000, margin: float = 0.05
               ) -> tuple[tuple[float, float], ...]:
    """Bounding box of the invariant image of the sphere, widened by ``margin``.

    The image of the sphere is the closure of a 2-d domain and the
    boundary surface of a 3-d one, so its box contains the domain.
    """
    if model.domain_box:
        return model.domain_box
    if model.system.ambient_dim != 3:
        raise ValueError("domain boxes are computed for three-dimensional ambient space")
    pts = fibonacci_sphere(count)
    cols = [FloatPoly(inv.ambient, ("x", "y", "z"))(pts) for inv in model.system.invariants]
    box = []
    for c in cols:
        lo, hi = float(c.min()), float(c.max())
        pad = margin * max(hi - lo, 1e-6)
        box.append((lo - pad, hi + pad))
    return tuple(box)


# -- sampling --------------------------------------------------------------------

@dataclass
class SampleCloud:
    points: np.ndarray
    seed: int
    model: str
    acceptance: float = 1.0

    def __len__(self) -> int:
        return len(self.points)


def _raw_inside(model: PolynomialModel, pts: np.ndarray, margin: float = MARGIN) -> np.ndarray:
    mask = np.ones(len(pts), dtype=bool)
    for cond in model.sign_conditions():
        mask &= FloatPoly(cond, model.coordinates)(pts) > margin
    return mask


def _seed_points(model: PolynomialModel, count: int = 20000) -> np.ndarray:
    """Points of the domain built from the sphere image.

    For a secondary coordinate ``eta`` the image lies on the boundary
    surface ``eta^2 = R``; halving ``eta`` moves it inside.
    """
    pts = fibonacci_sphere(count)
    cols = [FloatPoly(inv.ambient, ("x", "y", "z"))(pts) for inv in model.system.invariants]
    if model.system.secondary is not None:
        k = model.coordinates.index(model.system.secondary)
        cols[k] = 0.5 * cols[k]
    return np.column_stack(cols)


class DomainMask:
    """Connected pieces of the sign-condition set that belong to the domain.

    The conditions alone may also hold on pieces the sphere image never
    reaches, sometimes touching the domain at a cusp.  The raster of the
    condition set is split by a watershed on the distance to its edge (so
    pinch points are flooded last) and the basins containing image points
    deep inside the conditions are kept.
    """

    def __init__(self, model: PolynomialModel, resolution: int | None = None) -> None:
        from scipy.ndimage import distance_transform_edt
        from skimage.measure import label
        from skimage.segmentation import watershed

        self.model = model
        self.box = np.array(domain_box(model))
        dim = model.dim
        self.res = resolution or (401 if dim == 2 else 81)
        axes = [np.linspace(lo, hi, self.res) for lo, hi in self.box]
        nodes = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dim)
        mask = _raw_inside(model, nodes).reshape((self.res,) * dim)
        depth = distance_transform_edt(mask)
        markers = label(depth > 2.0, connectivity=1)
        self.labels = watershed(-depth, markers, mask=mask)
        seeds = _seed_points(model)
        values = np.column_stack([FloatPoly(c, model.coordinates)(seeds)
                                  for c in model.sign_conditions()])
        deep = np.all(values > 0.05 * values.max(axis=0), axis=1)
        idx = np.rint(self._grid_coords(seeds[deep])).astype(int)
        hit = self.labels[tuple(idx.T)]
        self.kept = np.unique(hit[hit > 0])

    def _grid_coords(self, pts: np.ndarray) -> np.ndarray:
        lo, hi = self.box[:, 0], self.box[:, 1]
        return np.clip((pts - lo) / (hi - lo) * (self.res - 1), 0, self.res - 1)

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        ok = _raw_inside(self.model, pts)
        g = self._grid_coords(pts)
        base = np.minimum(np.floor(g).astype(int), self.res - 2)
        dim = pts.shape[1]
        for corner in np.ndindex(*(2,) * dim):
            lab = self.labels[tuple((base + np.array(corner)).T)]
            ok &= (lab == 0) | np.isin(lab, self.kept)
        return ok


_MASKS: dict[tuple, DomainMask] = {}


def domain_mask(model: PolynomialModel) -> DomainMask:
    key = (model.key, model.n)
    if key not in _MASKS:
        _MASKS[key] = DomainMask(model)
    return _MASKS[key]


def inside(model: PolynomialModel, pts: np.ndarray) -> np.ndarray:
    """Strict interior test: sign conditions with margin, on the domain's components."""
    if model.system.ambient_dim != 3:
        return _raw_inside(model, pts)
    return domain_mask(model)(np.atleast_2d(pts))


def sample_interior(model: PolynomialModel, count: int, seed: int = 0, batch: int = 20000
                    ) -> SampleCloud:
    """Rejection sampling in the domain box.

    Batch ``k`` draws from the ``k``-th child of ``SeedSequence(seed)`` so the
    cloud does not depend on how batches are scheduled.
    """
    box = np.array(domain_box(model))
    accepted: list[np.ndarray] = []
    total = drawn = 0
    k = 0
    while total < count:
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(k,)))
        pts = box[:, 0] + (box[:, 1] - box[:, 0]) * rng.random((batch, len(box)))
        good = pts[inside(model, pts)]
        accepted.append(good)
        total += len(good)
        drawn += batch
        k += 1
        if drawn >= 10 * batch and total / drawn < MIN_ACCEPTANCE:
            raise LowAcceptance(f"acceptance {total / drawn:.2e} in box {box.tolist()}")
    rate = total / drawn
    if rate < MIN_ACCEPTANCE:
        raise LowAcceptance(f"acceptance {rate:.2e} in box {box.tolist()}")
    return SampleCloud(np.concatenate(accepted)[:count], seed, model.label, rate)


# -- ellipticity -----------------------------------------------------------------

@dataclass
class EllipticityStats:
    minimum: float
    mean: float
    count: int
    passed: bool


def min_eigenvalues(model: PolynomialModel, pts: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(float_matrix(model)(pts))[:, 0]


def ellipticity_check(model: PolynomialModel, cloud: SampleCloud | np.ndarray,
                      threshold: float = 1e-10) -> EllipticityStats:
    pts = cloud.points if isinstance(cloud, SampleCloud) else np.atleast_2d(cloud)
    mins = min_eigenvalues(model, pts)
    lo = float(mins.min())
    return EllipticityStats(lo, float(mins.mean()), len(pts), lo > threshold)


# -- integration by parts ----------------------------------------------------------

def _operator_values(model: PolynomialModel, drift: Sequence[MultiPoly], f: MultiPoly,
                     pts: np.ndarray) -> np.ndarray:
    coords = model.coordinates
    total = np.zeros(len(pts))
    for i, ci in enumerate(coords):
        di = f.diff(ci)
        if not di:
            continue
        total += FloatPoly(drift[i] * di, coords)(pts)
        for j, cj in enumerate(coords):
            dij = di.diff(cj)
            if dij:
                total += FloatPoly(model.cometric[i, j] * dij, coords)(pts)
    return total


@dataclass
class SymmetryResult:
    residual: float
    left: float
    right: float
    samples: int

    @property
    def passed(self) -> bool:
        return self.residual < SYMMETRY_TOL


def density_weight(model: PolynomialModel, alpha: Mapping[str, float | Fraction],
                   pts: np.ndarray) -> np.ndarray:
    by_name = {b.name: b.poly for b in model.boundary}
    w = np.ones(len(pts))
    for name, a in alpha.items():
        if float(a) <= -1:
            raise ValueError(f"exponent {a} for {name} is not integrable")
        w *= np.abs(FloatPoly(by_name[name], model.coordinates)(pts)) ** float(a)
    return w


def symmetry_check(model: PolynomialModel, alpha: Mapping[str, float | Fraction],
                   f: MultiPoly, g: MultiPoly, cloud: SampleCloud,
                   drift: Sequence[MultiPoly] | None = None, eps: float = 1e-12
                   ) -> SymmetryResult:
    """Monte Carlo residual of ``int f Lg dmu = int g Lf dmu``.

    The difference of the two sample means is divided by the mean absolute
    size of the integrands plus ``eps``; normalising by the integrals
    themselves would be meaningless when both vanish by symmetry.
    ``drift`` defaults to the measure drift of ``alpha``.
    """
    from .modelcheck.verify import measure_drift
    if drift is None:
        drift = measure_drift(model, {k: Fraction(v) for k, v in alpha.items()})
    pts = cloud.points
    w = density_weight(model, alpha, pts)
    coords = model.coordinates
    fv, gv = FloatPoly(f, coords)(pts), FloatPoly(g, coords)(pts)
    a = w * fv * _operator_values(model, drift, g, pts)
    b = w * gv * _operator_values(model, drift, f, pts)
    left, right = float(np.mean(a)), float(np.mean(b))
    scale = float(np.mean(np.abs(a)) + np.mean(np.abs(b)))
    return SymmetryResult(abs(left - right) / (scale + eps), left, right, len(pts))


# -- rendering ---------------------------------------------------------------------

@dataclass
class Contour:
    factor_index: int
    points: np.ndarray


@dataclass
class Rendering:
    model: str
    box: tuple[tuple[float, float], tuple[float, float]]
    contours: list[Contour] = field(default_factory=list)
    slice_value: float | None = None

    def point_count(self, factor_index: int | None = None) -> int:
        return sum(len(c.points) for c in self.contours
                   if factor_index is None or c.factor_index == factor_index)


def _plane_factors(model: PolynomialModel, slice_value: float) -> list[tuple[int, MultiPoly]]:
    out = []
    coords = model.coordinates
    for idx, b in enumerate(model.boundary):
        if not b.satisfies_boundary or b.composite:
            continue
        p = b.poly
        if model.dim == 3:
            p = p.substitute({coords[2]: MultiPoly.const(Fraction(slice_value))})
        if p.is_constant():
            continue
        out.append((idx, p))
    return out


def newton_refine(p: FloatPoly, dp: tuple[FloatPoly, FloatPoly], pts: np.ndarray,
                  steps: int = 8) -> np.ndarray:
    """Project points onto ``p = 0`` along the gradient."""
    pts = pts.copy()
    for _ in range(steps):
        val = p(pts)
        gx, gy = dp[0](pts), dp[1](pts)
        norm2 = gx * gx + gy * gy
        ok = norm2 > 1e-300
        step = np.where(ok, val / np.where(ok, norm2, 1.0), 0.0)
        pts[:, 0] -= step * gx
        pts[:, 1] -= step * gy
    return pts


def render_boundary(model: PolynomialModel, grid: int = DEFAULT_GRID,
                    slice_value: float = 0.0) -> Rendering:
    """Zero contours of each boundary factor by marching squares on ``grid x grid``.

    Three-dimensional models are cut by the plane where the third coordinate
    equals ``slice_value``.
    """
    from skimage.measure import find_contours

    if model.dim not in (2, 3):
        raise ValueError("rendering needs a 2-d model or a 3-d slice")
    box3 = domain_box(model)
    box = (box3[0], box3[1])
    xs = np.linspace(box[0][0], box[0][1], grid)
    ys = np.linspace(box[1][0], box[1][1], grid)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    flat = np.column_stack([gx.ravel(), gy.ravel()])
    plane = model.coordinates[:2]
    out = Rendering(model.label, box, slice_value=slice_value if model.dim == 3 else None)
    for idx, p in _plane_factors(model, slice_value):
        fp = FloatPoly(p, plane)
        dp = (FloatPoly(p.diff(plane[0]), plane), FloatPoly(p.diff(plane[1]), plane))
        values = fp(flat).reshape(grid, grid)
        for c in find_contours(values, 0.0):
            pts = np.column_stack([
                np.interp(c[:, 0], np.arange(grid), xs),
                np.interp(c[:, 1], np.arange(grid), ys)])
            out.contours.append(Contour(idx, newton_refine(fp, dp, pts)))
    return out


def _fmt(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def rendering_csv(r: Rendering) -> str:
    buf = io.StringIO()
    buf.write("x,y,factor_index\n")
    for c in r.contours:
        for x, y in c.points:
            buf.write(f"{_fmt(x)},{_fmt(y)},{c.factor_index}\n")
    return buf.getvalue()


_COLOURS = ("#1f4e79", "#a23b2a", "#2e7d32", "#6a1b9a", "#ef6c00", "#00838f")


def rendering_svg(r: Rendering, size: int = 512) -> str:
    (x0, x1), (y0, y1) = r.box
    sx = size / (x1 - x0)
    sy = size / (y1 - y0)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">',
        f"<title>{r.model}</title>",
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    for c in r.contours:
        if not len(c.points):
            continue
        coords = [f"{_fmt((x - x0) * sx)} {_fmt((y1 - y) * sy)}" for x, y in c.points]
        d = "M " + " L ".join(coords)
        colour = _COLOURS[c.factor_index % len(_COLOURS)]
        lines.append(f'<path d="{d}" fill="none" stroke="{colour}" stroke-width="1.5" '
                     f'data-factor="{c.factor_index}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def atomic_write(path: str | os.PathLike, data: str | bytes) -> None:
    """Write via a temporary file in the target directory and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, mode, **({} if mode == "wb" else {"encoding": "utf-8", "newline": "\n"})) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_rendering(r: Rendering, stem: str | os.PathLike) -> tuple[Path, Path]:
    """Write ``<stem>.svg`` and ``<stem>.csv``."""
    stem = Path(stem)
    svg, csv = stem.with_suffix(".svg"), stem.with_suffix(".csv")
    atomic_write(svg, rendering_svg(r))
    atomic_write(csv, rendering_csv(r))
    return svg, csv


# -- spectra ---------------------------------------------------------------------------

def numeric_eigenvalues(matrix, tol: float = 1e-9,
                        blocks: Mapping[int, Sequence[int]] | None = None) -> list[float]:
    """Real eigenvalues with residual certification ``|Mv - lv| <= tol |M|``.

    With ``blocks`` (index sets of a block-triangular matrix) each diagonal
    block is solved separately, which keeps defective multiplicities across
    blocks from spoiling accuracy.
    """
    if hasattr(matrix, "to_floats"):
        if blocks is None:
            blocks = matrix.blocks()
        m = matrix.to_floats()
    else:
        m = np.array([[float(v) for v in row] for row in matrix], dtype=float)
    if m.size == 0:
        return []
    groups = list(blocks.values()) if blocks is not None else [list(range(len(m)))]
    out: list[float] = []
    for idx in groups:
        sub = m[np.ix_(idx, idx)]
        scale = max(np.linalg.norm(sub, 2), 1.0)
        vals, vecs = np.linalg.eig(sub)
        for k, lam in enumerate(vals):
            v = vecs[:, k]
            if abs(lam.imag) > tol * scale:
                raise ConvergenceFailure(f"complex eigenvalue {lam}")
            if np.linalg.norm(sub @ v - lam * v) > tol * scale * max(np.linalg.norm(v), 1e-300):
                raise ConvergenceFailure(f"residual too large for eigenvalue {lam}")
            out.append(float(lam.real))
    return sorted(out)
