"""Walkthrough of joint state + fault estimation on the stress benchmark.

The bundled 'example1' config puts the cubic chaotic plant under an
additive fault f(t) = 0.4 cos(t) in its last equation, adds process
noise of variance 1.5 to the same equation, and asks the proposed
observer (stock high-gain set: lambda = [1, 1, 10, 100],
alpha-gains = [10, 200, 50, 100]) to reconstruct all three states plus
the fault from the single measured output x1.

The cascade works stage by stage:
  stage 1 pins  x1-hat to the output and recovers x2 in x2-tilde;
  stage 2 pins  x2-hat to x2-tilde and recovers x3 in x3-tilde;
  stage 3 pins  x3-hat (drift + fault estimate) and recovers f-tilde;
  stage 4 low-pass-filters f-tilde into the delivered estimate f-hat.
Each stage is enabled by a gate E_i that closes whenever an upstream
error leaves the epsilon band, so junk never propagates downstream.

Run:  python3 demos/04_fault_estimation_walkthrough.py   (~20 s)
"""

import numpy as np

from fracobs import ExperimentConfig, bundled_config, run_experiment


def banner(title):
    print()
    print("=" * 72)
    print(title)
    print("=" * 72)


def first_open(trace, label):
    col = trace.channel(label)
    idx = np.flatnonzero(col > 0.5)
    return None if idx.size == 0 else float(trace.times()[idx[0]])


def show(trace, report):
    print("gate first-open times:")
    for i in (1, 2, 3):
        t = first_open(trace, f"E{i}")
        print(f"  E{i}: {'never' if t is None else f'{t:7.3f} s'}")
    print("settle times (|error| within 5*epsilon for a 5 s dwell):")
    for key in ("e1", "e2", "e3", "ef"):
        st = report.settle[key]
        print(f"  {key}: {'never' if st is None else f'{st:7.3f} s'}")
    if report.fault_from_t is not None:
        print(f"fault estimate, evaluated from t = {report.fault_from_t:.3f}:")
        print(f"  RMSE             = {report.fault_rmse_post_settle:.4f}")
        print(f"  sup error        = {report.sup_error_post_settle:.4f}")
        print(f"  chattering index = {report.chattering_index:.4f}")


banner("Noisy run (variance 1.5 on the driven equation)")
cfg = ExperimentConfig.from_dict(bundled_config("example1"))
trace, report = run_experiment(cfg)
show(trace, report)

banner("Same config, noise off")
raw = bundled_config("example1")
raw["noise"]["variance"] = 0.0
trace2, report2 = run_experiment(ExperimentConfig.from_dict(raw))
show(trace2, report2)

banner("Reading the numbers honestly")
print("""\
The cascade does what it promises: gates open strictly in order, and
the settle times of the four error channels form a chain. The fault
estimate, however, carries a floor you should expect from any
discretized sign injection: with an alpha-gain of 200 on stage 2, the
recovered x3-tilde oscillates in a band of roughly
gain * (h/2)^alpha ~ 0.13 around the truth at h = 1e-3, and that
ripple propagates into f-hat. The post-settle RMSE above (~0.18 clean,
~0.5 with variance-1.5 noise) is that floor, not an implementation
artifact -- drop the gains (see the quadratic benchmark in demo 05)
or shrink h and it falls accordingly. The epsilon band of this config
is 0.1 for the same reason: a tighter gate would sit inside the
chattering band and flap shut forever.

For CSV traces, metrics files, and a manifest with the config hash:
  fracobs run example1 --out /tmp/fracobs-demo""")
