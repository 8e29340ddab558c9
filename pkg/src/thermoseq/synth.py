"""Synthetic heating sequences over a block with subsurface voids.

Each pixel is an independent 1D conduction problem under constant surface flux
``q = flux * g(x)``, with the lateral gain ``g(x) = 1 + gradient * (x/width - 1/2)``.

* sound pixel: semi-infinite solid, rise ``(2q/e) sqrt(t/pi)``
* void pixel: a concrete layer of thickness L over a reflecting interface with
  reflection coefficient R, solved by image sources at depths 2nL:

      rise = (2q/e) sqrt(t/pi) [1 + 2 sum_n R^n sqrt(pi) ierfc(n L / sqrt(alpha t))]

  R = 1 is an adiabatic plane at depth L; R < 1 is a substrate of effusivity
  e (1 - R) / (1 + R). Both are exact for the layered medium.

No lateral conduction and no surface losses. Noise is i.i.d. Gaussian drawn from
numpy's Philox counter-based generator (``Generator(Philox(seed)).standard_normal``)
over the whole (frames, height, width) block in C order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
from scipy.special import erfcx

from .errors import RoiError, SceneError
from .seq_model import FrameSequence, Roi

DEFAULT_TERMS = 64


@dataclass(frozen=True)
class Defect:
    footprint: Roi
    depth: float  # m
    reflection: float = 0.9


@dataclass(frozen=True)
class ReflectivePatch:
    footprint: Roi
    gain: float


@dataclass(frozen=True)
class SceneSpec:
    width: int = 160
    height: int = 90
    frames: int = 360
    dt: float = 5.0
    ambient: float = 20.0
    flux: float = 627.0  # W/m^2
    effusivity: float = 2000.0  # W s^0.5 / (m^2 K)
    diffusivity: float = 8e-7  # m^2/s
    defects: tuple[Defect, ...] = ()
    heating_gradient: float = 0.0
    reflective_patch: ReflectivePatch | None = None
    noise_sigma: float = 0.0
    seed: int = 0
    physical_width: float | None = None  # cm
    terms: int = DEFAULT_TERMS

    def __post_init__(self):
        object.__setattr__(self, "defects", tuple(self.defects))
        self.validate()

    def validate(self) -> None:
        for name in ("width", "height", "frames", "terms"):
            if int(getattr(self, name)) < 1:
                raise SceneError(f"{name} must be >= 1")
        for name in ("dt", "flux", "effusivity", "diffusivity"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise SceneError(f"{name} must be positive, got {v}")
        if not math.isfinite(self.ambient):
            raise SceneError("ambient must be finite")
        if self.heating_gradient < 0 or self.noise_sigma < 0:
            raise SceneError("heating_gradient and noise_sigma must be >= 0")
        for i, d in enumerate(self.defects):
            self._check_footprint(d.footprint, f"defect {i + 1}")
            if not d.depth > 0:
                raise SceneError(f"defect {i + 1}: depth must be positive")
            if not 0 <= d.reflection <= 1:
                raise SceneError(f"defect {i + 1}: reflection must be in [0, 1]")
            for other in self.defects[:i]:
                if d.footprint.overlaps(other.footprint):
                    raise SceneError(f"defect {i + 1} overlaps {other.footprint.name}")
        if self.reflective_patch is not None:
            self._check_footprint(self.reflective_patch.footprint, "reflective patch")
            if self.reflective_patch.gain < 0:
                raise SceneError("reflective patch gain must be >= 0")

    def _check_footprint(self, roi: Roi, what: str) -> None:
        try:
            roi.check_bounds(self.width, self.height)
        except RoiError as exc:
            raise SceneError(f"{what}: {exc}") from None

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.frames) * self.dt

    def gain_field(self) -> np.ndarray:
        """Lateral flux gain per column, shape (width,)."""
        x = np.arange(self.width)
        return 1.0 + self.heating_gradient * (x / self.width - 0.5)


def _sqrt_pi_ierfc(x):
    # sqrt(pi) * ierfc(x) = exp(-x^2) - sqrt(pi) x erfc(x), written via erfcx to stay accurate
    return np.exp(-x * x) * (1.0 - math.sqrt(math.pi) * x * erfcx(x))


def sound_rise(t, q: float, effusivity: float):
    t = np.asarray(t, dtype=np.float64)
    return 2.0 * q / effusivity * np.sqrt(np.maximum(t, 0.0) / math.pi)


def defect_rise(t, q: float, depth: float, refl: float, effusivity: float, diffusivity: float,
                terms: int = DEFAULT_TERMS):
    t = np.asarray(t, dtype=np.float64)
    if terms < 1:
        raise ValueError("terms must be >= 1")
    base = sound_rise(t, q, effusivity)
    pos = t > 0
    series = np.zeros_like(t)
    if refl > 0:
        root = np.sqrt(diffusivity * np.where(pos, t, 1.0))
        for n in range(1, terms + 1):
            series += refl**n * _sqrt_pi_ierfc(n * depth / root)
    return np.where(pos, base * (1.0 + 2.0 * series), 0.0)


def surface_temp_sound(t, q: float, spec: SceneSpec):
    return spec.ambient + sound_rise(t, q, spec.effusivity)


def surface_temp_defect(t, q: float, depth: float, refl: float, spec: SceneSpec,
                        terms: int | None = None):
    return spec.ambient + defect_rise(
        t, q, depth, refl, spec.effusivity, spec.diffusivity, terms or spec.terms
    )


def patch_offset(spec: SceneSpec) -> float:
    """Apparent step (degC at unit gain) added over the reflective patch while heating.

    Taken as ``gain`` times the unit-gain sound rise at the end of the record.
    """
    if spec.reflective_patch is None:
        return 0.0
    t_end = (spec.frames - 1) * spec.dt
    return spec.reflective_patch.gain * float(sound_rise(t_end, spec.flux, spec.effusivity))


def label_map(spec: SceneSpec) -> np.ndarray:
    """0 for sound pixels, i for pixels over defect i (1-based)."""
    labels = np.zeros((spec.height, spec.width), dtype=np.int32)
    for i, d in enumerate(spec.defects, 1):
        labels[d.footprint.slices] = i
    return labels


def noiseless_rise(spec: SceneSpec) -> np.ndarray:
    t = spec.times
    curves = [sound_rise(t, spec.flux, spec.effusivity)]
    for d in spec.defects:
        curves.append(defect_rise(t, spec.flux, d.depth, d.reflection,
                                  spec.effusivity, spec.diffusivity, spec.terms))
    rise = np.moveaxis(np.stack(curves)[label_map(spec)], -1, 0)  # (frames, height, width)
    rise *= spec.gain_field()[None, None, :]
    if spec.reflective_patch is not None:
        rows, cols = spec.reflective_patch.footprint.slices
        step = (t > 0).astype(np.float64)[:, None, None]
        rise[:, rows, cols] += patch_offset(spec) * step * spec.gain_field()[None, None, cols]
    return rise


def generate(spec: SceneSpec) -> FrameSequence:
    temp = spec.ambient + noiseless_rise(spec)
    if spec.noise_sigma > 0:
        rng = np.random.Generator(np.random.Philox(spec.seed))
        temp += spec.noise_sigma * rng.standard_normal(temp.shape)
    return FrameSequence(temp.astype(np.float32), spec.dt, spec.physical_width)


# -- standard scene -------------------------------------------------------------

# 90x160 px over a 40 cm block face: two cores, a sound band under them used as the
# reference, and a glare hotspot on the right end web. Footprints are representative,
# not measured from the original specimen.
STANDARD_DEFECTS = (
    Roi("hollow_1", 24, 18, 67, 71, "defect"),
    Roi("hollow_2", 92, 18, 135, 71, "defect"),
)
STANDARD_ROIS = (
    Roi("reference", 4, 76, 86, 87, "reference"),
    Roi("hollow_1", 32, 28, 59, 61, "defect"),
    Roi("hollow_2", 100, 28, 127, 61, "defect"),
)
STANDARD_PATCH = Roi("glare", 140, 20, 155, 60, "defect")


def standard_scene(**overrides) -> SceneSpec:
    """Two identical voids under a lateral heating gradient, a glare patch and sensor noise."""
    spec = SceneSpec(
        width=160, height=90, frames=360, dt=5.0, ambient=20.0, flux=627.0,
        effusivity=2000.0, diffusivity=8e-7,
        defects=tuple(Defect(r, 0.020, 0.9) for r in STANDARD_DEFECTS),
        heating_gradient=0.3,
        reflective_patch=ReflectivePatch(STANDARD_PATCH, 0.15),
        noise_sigma=0.05, seed=42, physical_width=40.0,
    )
    return replace(spec, **overrides) if overrides else spec


def standard_rois() -> list[Roi]:
    return list(STANDARD_ROIS)


# -- scene file -----------------------------------------------------------------

_SCALARS = {
    "width": int, "height": int, "frames": int, "dt": float, "ambient": float,
    "flux": float, "effusivity": float, "diffusivity": float,
    "heating_gradient": float, "noise_sigma": float, "seed": int,
    "physical_width": float, "terms": int,
}


def parse_scene(text: str, source: str = "<scene>") -> SceneSpec:
    """Parse ``key = value`` lines; ``defect = x0,y0,x1,y1,L_mm,R`` and
    ``reflective_patch = x0,y0,x1,y1,r`` describe footprints."""
    kw: dict = {}
    defects: list[Defect] = []
    patch = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        if "=" not in line:
            raise SceneError(f"{where}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        try:
            if key in _SCALARS:
                if key in kw:
                    raise SceneError(f"{where}: duplicate key {key!r}")
                kw[key] = _SCALARS[key](value)
            elif key == "defect":
                x0, y0, x1, y1, depth_mm, refl = value.split(",")
                roi = Roi(f"defect_{len(defects) + 1}", int(x0), int(y0), int(x1), int(y1))
                defects.append(Defect(roi, float(depth_mm) / 1000.0, float(refl)))
            elif key == "reflective_patch":
                if patch is not None:
                    raise SceneError(f"{where}: only one reflective_patch allowed")
                x0, y0, x1, y1, gain = value.split(",")
                patch = ReflectivePatch(Roi("patch", int(x0), int(y0), int(x1), int(y1)), float(gain))
            else:
                raise SceneError(f"{where}: unknown key {key!r}")
        except SceneError:
            raise
        except ValueError as exc:
            raise SceneError(f"{where}: bad value for {key!r}: {value!r}") from exc
        except Exception as exc:  # Roi validation
            raise SceneError(f"{where}: {exc}") from exc
    if kw.get("physical_width", 1.0) == 0:
        kw["physical_width"] = None
    return SceneSpec(defects=tuple(defects), reflective_patch=patch, **kw)


def load_scene(path) -> SceneSpec:
    return parse_scene(Path(path).read_text(), source=str(path))


def format_scene(spec: SceneSpec) -> str:
    lines = [f"{k} = {getattr(spec, k)!r}" for k in _SCALARS if getattr(spec, k) is not None]
    for d in spec.defects:
        r = d.footprint
        lines.append(f"defect = {r.x0},{r.y0},{r.x1},{r.y1},{d.depth * 1000!r},{d.reflection!r}")
    if spec.reflective_patch is not None:
        r = spec.reflective_patch.footprint
        lines.append(f"reflective_patch = {r.x0},{r.y0},{r.x1},{r.y1},{spec.reflective_patch.gain!r}")
    return "\n".join(lines) + "\n"
