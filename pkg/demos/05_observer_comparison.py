"""Head-to-head: does the extra fault stage actually reduce chattering?

The baseline observer recovers the fault algebraically: its last stage
estimates theta-tilde = a(x) + b(x) f directly, and the delivered
estimate is f-hat = b(x)^-1 (theta-tilde - a(x)). Whatever ripple the
sign injection leaves in theta-tilde lands in f-hat unfiltered.

The proposed variant inserts one more super-twisting pair: it first
recovers the fault as f-tilde, then drives a second estimate f-hat
toward f-tilde through its own continuous |e|^(1/2) injection. That
extra integration is a low-pass filter with finite-time convergence --
the chattering should drop while the tracking stays.

The bundled 'example2' config runs both variants on the quadratic
benchmark (all gains 0.5, noise off, fault f(t) = 0.06 sin(t)). Both
observers consume the IDENTICAL recorded x1 stream, so the comparison
is paired: every difference in the numbers is the observer, not the
plant realization.

Run:  python3 demos/05_observer_comparison.py   (~15 s)
"""

from fracobs import ExperimentConfig, bundled_config, compare_observers


def banner(title):
    print()
    print("=" * 72)
    print(title)
    print("=" * 72)


banner("Paired run on one recorded output stream")
cfg = ExperimentConfig.from_dict(bundled_config("example2"))
result = compare_observers(cfg)
print(result.to_text())

banner("What to take away")
chat = result.common_chattering
supe = result.common_sup_error
ca, cb = chat[result.variant_a], chat[result.variant_b]
sa, sb = supe[result.variant_a], supe[result.variant_b]
print(f"""\
On the shared post-settle window (t >= {result.common_from_t:.3f}):

  chattering index:  {ca:.4f}  vs  {cb:.4f}   ({cb / ca:.1f}x less ripple)
  sup fault error:   {sa:.4f}  vs  {sb:.4f}   ({sb / sa:.1f}x tighter band)

Same gains, same plant realization, same solver -- the only change is
where the last sign injection sits. Routing it through one more
super-twisting stage turns the delivered fault estimate from a raw
sliding signal into a filtered one, and both the ripple and the error
band shrink. This is the mechanism demo 04's stress benchmark was
missing at its much higher gains; rerun this script after editing the
gains in the config if you want to watch the floor move:

  fracobs dump-config example2 > /tmp/ex2.json
  fracobs compare /tmp/ex2.json --set observer.gains=1.5 --out /tmp/cmp""")
