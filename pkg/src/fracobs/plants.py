"""Benchmark plants in observable canonical form.

Every plant here is a commensurate-order chain

    D^alpha x_i = x_{i+1},            i = 1..n-1
    D^alpha x_n = a(x) + b(x) * (f(t) + noise)

with scalar output y = x_1. ``a`` is the drift nonlinearity, ``b`` the
input gain (identically 1 for both bundled presets), ``f`` an additive
actuator fault and the noise a per-step Gaussian disturbance entering the
same equation.

Two chaotic presets are bundled:

* ``arneodo``      -- a(x) = -b1*x1 - b2*x2 - b3*x3 + b4*x1^3,
                      betas (-5.5, 3.5, 0.8, -1.0), alpha 0.97.
* ``genesio_tesi`` -- a(x) = -b1*x1 - b2*x2 - b3*x3 + b4*x1^2,
                      betas (1.0, 1.1, 0.44, 1.0), alpha 0.9.

The ``a`` callables broadcast over leading axes (x may be shape (n,) or
(rows, n)), which the harness uses to evaluate readouts over whole traces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .fde import VectorField

__all__ = [
    "PlantModel",
    "FaultSignal",
    "NoiseSpec",
    "arneodo",
    "genesio_tesi",
    "plant_preset",
    "PLANT_PRESETS",
    "fault_value",
    "noise_draws",
    "assemble_field",
]

FAULT_KINDS = ("none", "cosine", "sine", "step", "ramp", "custom")


@dataclass
class PlantModel:
    """Observable-form plant of dimension n with drift a and input gain b."""

    n: int
    alpha: float
    a: Callable[[np.ndarray], float]
    b: Callable[[np.ndarray], float]
    x0: np.ndarray
    params: dict
    name: str = ""

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"plant dimension must be >= 2, got {self.n}")
        self.x0 = np.asarray(self.x0, dtype=float)
        if self.x0.shape != (self.n,):
            raise ValueError(f"x0 shape {self.x0.shape} does not match n={self.n}")


@dataclass(frozen=True)
class FaultSignal:
    """Additive actuator fault with closed-form evaluation.

    kinds: none | cosine | sine | step | ramp | custom.
    The signal is identically zero before ``onset``; the waveform runs on
    the shifted clock t - onset. ramp slope is ``amplitude`` per second.
    ``custom`` interprets ``samples`` on a uniform grid of spacing
    ``sample_dt`` starting at onset (zero-order hold, clamped at the end).
    """

    kind: str = "none"
    amplitude: float = 0.0
    frequency: float = 1.0
    onset: float = 0.0
    samples: Optional[tuple] = None
    sample_dt: Optional[float] = None

    def __post_init__(self):
        if self.kind not in FAULT_KINDS:
            raise ValueError(f"unknown fault kind {self.kind!r}, expected one of {FAULT_KINDS}")
        for nm in ("amplitude", "frequency", "onset"):
            if not math.isfinite(float(getattr(self, nm))):
                raise ValueError(f"fault {nm} must be finite")
        if self.onset < 0.0:
            raise ValueError(f"fault onset must be >= 0, got {self.onset}")
        if self.kind == "custom":
            if self.samples is None or self.sample_dt is None:
                raise ValueError("custom fault needs samples and sample_dt")
            arr = np.asarray(self.samples, dtype=float)
            if arr.size == 0 or not np.all(np.isfinite(arr)):
                raise ValueError("custom fault samples must be non-empty and finite")
            if not (float(self.sample_dt) > 0.0):
                raise ValueError("custom fault sample_dt must be > 0")
            object.__setattr__(self, "samples", tuple(float(v) for v in arr))


def fault_value(fault: Optional[FaultSignal], t):
    """Evaluate the fault at scalar or array t (zero before onset)."""
    if fault is None or fault.kind == "none":
        return np.zeros_like(np.asarray(t, dtype=float)) if np.ndim(t) else 0.0
    t = np.asarray(t, dtype=float)
    tau = t - fault.onset
    live = tau >= 0.0
    if fault.kind == "cosine":
        out = fault.amplitude * np.cos(fault.frequency * tau)
    elif fault.kind == "sine":
        out = fault.amplitude * np.sin(fault.frequency * tau)
    elif fault.kind == "step":
        out = np.full_like(tau, fault.amplitude)
    elif fault.kind == "ramp":
        out = fault.amplitude * tau
    else:  # custom
        arr = np.asarray(fault.samples, dtype=float)
        idx = np.clip((tau / fault.sample_dt).astype(int), 0, arr.size - 1)
        out = arr[idx]
    out = np.where(live, out, 0.0)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class NoiseSpec:
    """Per-step Gaussian disturbance on the D^alpha x_n equation.

    One draw from N(0, variance) per grid step, held constant within the
    step; no 1/sqrt(h) scaling. variance = 0 disables the stream entirely
    (no RNG is consumed). ``target_channel`` exists for explicitness and
    must resolve to the last state equation.
    """

    variance: float = 0.0
    seed: int = 0
    target_channel: int = -1

    def __post_init__(self):
        if not (float(self.variance) >= 0.0) or not math.isfinite(float(self.variance)):
            raise ValueError(f"noise variance must be >= 0, got {self.variance!r}")


def noise_draws(spec: NoiseSpec, count: int) -> np.ndarray:
    """The first ``count`` draws of the stream for ``spec`` (testing hook)."""
    rng = np.random.default_rng(spec.seed)
    return rng.normal(0.0, math.sqrt(spec.variance), size=int(count))


class _NoiseStream:
    """Sequential per-step sampler owned by a single integration run.

    The stepper evaluates the field once per step at strictly increasing
    times, so a draw is taken whenever t moves; re-evaluation at the same
    t returns the held value.
    """

    def __init__(self, spec: NoiseSpec):
        self._rng = np.random.default_rng(spec.seed)
        self._sigma = math.sqrt(spec.variance)
        self._t = None
        self._value = 0.0

    def sample(self, t: float) -> float:
        if t != self._t:
            self._t = t
            self._value = float(self._rng.normal(0.0, self._sigma))
        return self._value


def _unit_gain(x) -> float:
    return 1.0


def arneodo(
    alpha: float = 0.97,
    betas: Sequence[float] = (-5.5, 3.5, 0.8, -1.0),
    x0: Sequence[float] = (-0.2, 0.5, 0.2),
) -> PlantModel:
    """Arneodo chaotic system, cubic drift, stock chaotic parameter set."""
    b1, b2, b3, b4 = (float(v) for v in betas)

    def a(x):
        return -b1 * x[..., 0] - b2 * x[..., 1] - b3 * x[..., 2] + b4 * x[..., 0] ** 3

    return PlantModel(
        n=3, alpha=float(alpha), a=a, b=_unit_gain, x0=np.asarray(x0, dtype=float),
        params={"betas": (b1, b2, b3, b4)}, name="arneodo",
    )


def genesio_tesi(
    alpha: float = 0.9,
    betas: Sequence[float] = (1.0, 1.1, 0.44, 1.0),
    x0: Sequence[float] = (-0.1, 0.5, 0.2),
) -> PlantModel:
    """Genesio-Tesi chaotic system, quadratic drift, stock parameter set.

    The default initial state was picked empirically for a bounded
    (sup-norm < 10) trajectory over the benchmark horizon.
    """
    b1, b2, b3, b4 = (float(v) for v in betas)

    def a(x):
        return -b1 * x[..., 0] - b2 * x[..., 1] - b3 * x[..., 2] + b4 * x[..., 0] ** 2

    return PlantModel(
        n=3, alpha=float(alpha), a=a, b=_unit_gain, x0=np.asarray(x0, dtype=float),
        params={"betas": (b1, b2, b3, b4)}, name="genesio_tesi",
    )


PLANT_PRESETS = {
    "arneodo-paper": arneodo,
    "genesio-tesi-paper": genesio_tesi,
}


def plant_preset(name: str, **overrides) -> PlantModel:
    """Instantiate a bundled preset by name, with optional overrides."""
    try:
        factory = PLANT_PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown plant preset {name!r}, expected one of {sorted(PLANT_PRESETS)}"
        ) from None
    kwargs = {k: v for k, v in overrides.items() if v is not None}
    return factory(**kwargs)


def assemble_field(
    plant: PlantModel,
    fault: Optional[FaultSignal] = None,
    noise: Optional[NoiseSpec] = None,
) -> VectorField:
    """Build the simulation right-hand side for a plant run.

    Components 1..n-1 are exactly the shifted state (the chain); fault and
    noise enter only the last component. A field carrying a live noise
    stream is single-use: build a fresh one per integration run.
    """
    n = plant.n
    if noise is not None and noise.variance > 0.0:
        tgt = noise.target_channel
        if tgt not in (-1, n - 1):
            raise ValueError(
                f"noise target_channel must be the last equation (index {n-1}), got {tgt}"
            )
        stream = _NoiseStream(noise)
    else:
        stream = None

    a_fn = plant.a
    b_fn = plant.b

    def evaluate(t, x):
        dx = np.empty(n)
        dx[:-1] = x[1:]
        drive = a_fn(x)
        if fault is not None and fault.kind != "none":
            drive = drive + b_fn(x) * fault_value(fault, t)
        if stream is not None:
            drive = drive + stream.sample(t)
        dx[-1] = drive
        return dx

    return VectorField(dim=n, eval=evaluate, discontinuity_flag=False)
