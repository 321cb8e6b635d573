"""Explicit fixed-step solver for commensurate Caputo systems.

The scheme is the standard explicit Grunwald-Letnikov stepper applied to
the shifted state z = x - x0 (z(0) = 0), which gives Caputo semantics for
nonzero initial conditions:

    z_k = h^alpha * phi(t_k, x_{k-1}) - sum_{j=1..min(k,L)} w_j * z_{k-j}
    x_k = x0 + z_k

L is the short-memory length (L = n_steps means the full sum). With
alpha = 1 the weight table collapses to [1, -1, 0, ...] and the update is
algebraically explicit Euler, which is the integer-order validation hook.

Discontinuous right-hand sides (sign terms in the sliding-mode observers)
are fine here precisely because the stepper is explicit and fixed-step;
nothing ever tries to locate the switching surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .fraccalc import _as_order, gl_weights

__all__ = [
    "SimGrid",
    "VectorField",
    "Trace",
    "integrate",
    "memory_truncation_error",
    "DIVERGENCE_BOUND",
]

# A trajectory component beyond this magnitude marks the run as diverged.
DIVERGENCE_BOUND = 1e8

FULL_MEMORY = "full"


@dataclass(frozen=True)
class SimGrid:
    """Uniform time grid t_k = k*h, k = 0..n_steps, with memory policy.

    ``memory_len`` is either the string "full" or a positive integer
    number of history terms retained by the solver; it may not exceed
    n_steps.
    """

    h: float
    t_end: float
    memory_len: Union[int, str] = FULL_MEMORY

    def __post_init__(self):
        if not (self.h > 0.0) or not np.isfinite(self.h):
            raise ValueError(f"grid step h must be > 0, got {self.h!r}")
        if not (self.t_end > 0.0) or not np.isfinite(self.t_end):
            raise ValueError(f"t_end must be > 0, got {self.t_end!r}")
        n = self.n_steps
        if n < 1:
            raise ValueError(f"grid must contain at least one step, got t_end={self.t_end}, h={self.h}")
        if self.memory_len != FULL_MEMORY:
            m = int(self.memory_len)
            if m < 1 or m > n:
                raise ValueError(
                    f"memory_len must be 'full' or an integer in [1, n_steps={n}], got {self.memory_len!r}"
                )
            object.__setattr__(self, "memory_len", m)

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.h))

    def effective_memory(self) -> int:
        return self.n_steps if self.memory_len == FULL_MEMORY else int(self.memory_len)

    def times(self) -> np.ndarray:
        return np.arange(self.n_steps + 1) * self.h


@dataclass
class VectorField:
    """Right-hand side phi(t, x) of D^alpha x = phi(t, x).

    ``discontinuity_flag`` documents that phi contains switching terms
    (sign functions); it does not change the stepping, which is already
    discontinuity-safe.
    """

    dim: int
    eval: Callable[[float, np.ndarray], np.ndarray]
    discontinuity_flag: bool = False


@dataclass
class Trace:
    """Trajectory on a SimGrid: values[k] is the state at t_k.

    ``diverged`` marks runs where some component left the sanity bound;
    rows after ``diverged_at`` are NaN in that case and metrics must not
    be computed from them.
    """

    grid: SimGrid
    labels: list[str]
    values: np.ndarray
    seed: Optional[int] = None
    diverged: bool = False
    diverged_at: Optional[float] = None

    def __post_init__(self):
        n_rows = self.grid.n_steps + 1
        if self.values.shape[0] != n_rows:
            raise ValueError(
                f"trace has {self.values.shape[0]} rows, grid wants {n_rows}"
            )
        if len(self.labels) != self.values.shape[1]:
            raise ValueError(
                f"{len(self.labels)} labels for {self.values.shape[1]} channels"
            )
        if not self.diverged and not np.all(np.isfinite(self.values)):
            raise ValueError("non-finite trace values in a run not flagged as diverged")

    def times(self) -> np.ndarray:
        return self.grid.times()

    def channel(self, label: str) -> np.ndarray:
        try:
            col = self.labels.index(label)
        except ValueError:
            raise KeyError(f"no channel {label!r}; trace has {self.labels}") from None
        return self.values[:, col]


def integrate(
    field: VectorField,
    alpha,
    grid: SimGrid,
    x0,
    labels: Optional[Sequence[str]] = None,
    seed: Optional[int] = None,
) -> Trace:
    """Run the explicit GL stepper over the whole grid.

    Returns a Trace with n_steps+1 rows. Divergence (any component with
    magnitude above DIVERGENCE_BOUND, or any non-finite component) flags
    the trace and stops the march; it does not raise. Integrating
    phi == 0 returns x0 in every row exactly, whatever alpha.
    """
    a = _as_order(alpha)
    x0 = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    if x0.shape != (field.dim,):
        raise ValueError(f"x0 has shape {x0.shape}, field.dim is {field.dim}")
    if labels is None:
        labels = [f"x{i+1}" for i in range(field.dim)]
    labels = list(labels)

    n = grid.n_steps
    h = grid.h
    mem = grid.effective_memory()
    ha = h ** a
    w = gl_weights(a, mem).weights
    wrev = np.ascontiguousarray(w[1:][::-1])  # [w_mem ... w_1]

    Z = np.zeros((n + 1, field.dim))
    X = np.empty((n + 1, field.dim))
    X[0] = x0
    diverged = False
    diverged_at: Optional[float] = None

    evaluate = field.eval
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, n + 1):
            t = k * h
            phi = np.asarray(evaluate(t, X[k - 1]), dtype=float)
            m = k if k < mem else mem
            z = ha * phi - (wrev[mem - m:] @ Z[k - m:k])
            Z[k] = z
            xk = x0 + z
            X[k] = xk
            if not np.all(np.isfinite(xk)) or np.max(np.abs(xk)) > DIVERGENCE_BOUND:
                diverged = True
                diverged_at = t
                X[k + 1:] = np.nan
                break

    return Trace(
        grid=grid,
        labels=labels,
        values=X,
        seed=seed,
        diverged=diverged,
        diverged_at=diverged_at,
    )


def memory_truncation_error(
    field: VectorField,
    alpha,
    grid: SimGrid,
    x0,
    memory_lengths: Sequence[int],
) -> list[tuple[int, float]]:
    """Sup-norm deviation of short-memory runs from the full-memory run.

    The full-memory trajectory is the oracle; each entry of the returned
    list is (L, max_{k,i} |x_L - x_full|). Deviations are expected to be
    non-increasing as L grows and are exactly 0.0 at L = n_steps, where
    the truncated sum is the full sum.

    The field is evaluated repeatedly, so it must be stateless (no noise
    stream); pass closed-form fault signals only.
    """
    full_grid = SimGrid(h=grid.h, t_end=grid.t_end, memory_len=FULL_MEMORY)
    reference = integrate(field, alpha, full_grid, x0)
    if reference.diverged:
        raise RuntimeError("full-memory reference run diverged; no usable oracle")
    table: list[tuple[int, float]] = []
    for mem in memory_lengths:
        g = SimGrid(h=grid.h, t_end=grid.t_end, memory_len=int(mem))
        tr = integrate(field, alpha, g, x0)
        if tr.diverged:
            dev = float("inf")
        else:
            dev = float(np.max(np.abs(tr.values - reference.values)))
        table.append((int(mem), dev))
    return table
