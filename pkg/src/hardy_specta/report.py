"""Run configuration, deterministic JSON and region rasters."""

from __future__ import annotations

import json
import math
import os
import warnings
from dataclasses import dataclass, field

import numpy as np

from .catalog import NumericOnly, SpectralRegion
from .errors import NumericOnlyRegion
from .mobius import DEFAULT_TOL, Tolerances
from .series import DEFAULT_QUAD, DEFAULT_TRUNC

TOL_ENV = "HARDY_SPECTA_TOL"


def tolerances_from_env(env=None) -> Tolerances:
    env = os.environ if env is None else env
    raw = env.get(TOL_ENV)
    if not raw:
        return DEFAULT_TOL
    try:
        eps = float(raw)
    except ValueError as exc:
        raise ValueError(f"{TOL_ENV} must be a number, got {raw!r}") from exc
    if not eps > 0:
        raise ValueError(f"{TOL_ENV} must be positive, got {raw!r}")
    return Tolerances(eps_fix=eps, eps_par=DEFAULT_TOL.eps_par, eps_det=DEFAULT_TOL.eps_det,
                      eps_circle=DEFAULT_TOL.eps_circle)


@dataclass(frozen=True)
class RunConfig:
    trunc: int = DEFAULT_TRUNC
    quad: int = DEFAULT_QUAD
    p: float = 2.0
    tol: Tolerances = field(default_factory=lambda: DEFAULT_TOL)
    out: str | None = None

    def __post_init__(self):
        if self.trunc < 8:
            raise ValueError(f"--trunc must be at least 8, got {self.trunc}")
        if self.quad < 4 * self.trunc:
            raise ValueError(f"--quad must be at least 4 * trunc = {4 * self.trunc}, got {self.quad}")
        if self.p == 1.0:
            warnings.warn(
                "p = 1: SVEP-failure results cover 1 <= p < inf, but property (C) claims "
                "and the quadrature tools need 1 < p < inf",
                stacklevel=2,
            )
        elif not (1.0 < self.p < math.inf):
            raise ValueError(f"--p must lie in [1, inf), got {self.p}")

    def to_json(self) -> dict:
        return {
            "trunc": self.trunc,
            "quad": self.quad,
            "p": self.p,
            "tolerances": {
                "epsFix": self.tol.eps_fix,
                "epsPar": self.tol.eps_par,
                "epsDet": self.tol.eps_det,
                "epsCircle": self.tol.eps_circle,
            },
            "out": self.out,
        }


# --- deterministic JSON ----------------------------------------------------------


def _float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    text = format(x, ".17g")
    if all(ch not in text for ch in ".en"):
        text += ".0"
    return text


def _encode(obj, indent: int, level: int) -> str:
    pad = "\n" + " " * (indent * (level + 1)) if indent else ""
    end = "\n" + " " * (indent * level) if indent else ""
    sep = "," if indent else ", "
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return _encode([obj.real, obj.imag], indent, level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if hasattr(obj, "to_json"):
        return _encode(obj.to_json(), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [json.dumps(str(k)) + ": " + _encode(v, indent, level + 1) for k, v in obj.items()]
        return "{" + pad + (sep + pad).join(items) + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [_encode(v, indent, level + 1) for v in obj]
        return "[" + pad + (sep + pad).join(items) + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON with insertion-ordered keys and 17-significant-digit floats."""
    return _encode(obj, indent, 0)


def envelope(command: str, result, config: RunConfig) -> dict:
    return {"command": command, "config": config.to_json(), "result": result}


# --- rasters ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Raster:
    grid: np.ndarray  # uint8, row 0 is the top (largest imaginary part)
    half_width: float
    isolated: tuple

    @property
    def width(self) -> int:
        return self.grid.shape[1]

    @property
    def height(self) -> int:
        return self.grid.shape[0]

    def pixel_center(self, row: int, col: int) -> complex:
        x = -self.half_width + (col + 0.5) * 2 * self.half_width / self.width
        y = self.half_width - (row + 0.5) * 2 * self.half_width / self.height
        return complex(x, y)

    def pixel_of(self, z: complex) -> tuple[int, int]:
        col = math.floor((z.real + self.half_width) / (2 * self.half_width) * self.width)
        row = math.floor((self.half_width - z.imag) / (2 * self.half_width) * self.height)
        return min(max(row, 0), self.height - 1), min(max(col, 0), self.width - 1)

    def to_json(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "halfWidth": self.half_width,
            "isolatedPoints": [[z.real, z.imag] for z in self.isolated],
            "grid": self.grid.tolist(),
        }

    def to_pgm(self) -> str:
        lines = ["P2", f"{self.width} {self.height}", "1"]
        lines += [" ".join(str(int(v)) for v in row) for row in self.grid]
        return "\n".join(lines) + "\n"


def rasterize(region: SpectralRegion, width: int, height: int) -> Raster:
    """Membership grid over ``[-R, R]^2`` with ``R = 1.25 * max modulus``.

    Isolated points are marked on the one pixel containing them.
    """
    if isinstance(region, NumericOnly):
        raise NumericOnlyRegion(region.reason)
    if width < 16 or height < 16:
        raise ValueError("raster needs width, height >= 16")
    half = 1.25 * region.max_modulus()
    xs = -half + (np.arange(width) + 0.5) * 2 * half / width
    ys = half - (np.arange(height) + 0.5) * 2 * half / height
    grid = np.zeros((height, width), dtype=np.uint8)
    for i, y in enumerate(ys):
        for j, x in enumerate(xs):
            grid[i, j] = region.contains(complex(x, y))
    out = Raster(grid, half, tuple(region.isolated_points()))
    for z in out.isolated:
        grid[out.pixel_of(z)] = 1
    return out
