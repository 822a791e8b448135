"""
Chase combining and the three-protocol comparison
=================================================

Chase combining retransmits the same packet and adds SNR; the analytic
route (Erlang quantile for the rate, survivor sum for the rounds) has a
completely independent check in the event-level simulator, which replays
the protocol message by message.  The second panel reproduces the
classic ordering at eps=0.05, L=4: energy combining holds its own at low
SNR and trails information combining at high SNR.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from outagecap import (McConfig, SnrPoint, cc_expected_rounds, cc_initial_rate,
                       cc_throughput, simulate_harq_protocol,
                       solve_operating_point)

MC = McConfig(n_samples=200_000, seed=3)

# ---------------------------------------------------------------------------
# arbitration: closed forms vs the protocol simulator (L=4, eps=0.05)
# ---------------------------------------------------------------------------

print("Chase combining, L=4, eps=0.05: formula vs event simulation")
print(f"{'P (dB)':>7} {'E[X] formula':>13} {'E[X] simulated':>17} {'eta formula':>12} {'eta simulated':>16}")
for db in (0.0, 10.0, 20.0):
    snr = SnrPoint.from_db(db)
    r = cc_initial_rate(snr, 0.05, 4)
    _, rounds, eta = simulate_harq_protocol("cc", r, snr, 4, MC)
    print(f"{db:7.0f} {cc_expected_rounds(r, snr, 4):13.4f} "
          f"{rounds.value:10.4f} +/- {rounds.std_error:.4f} "
          f"{cc_throughput(snr, 0.05, 4):12.4f} "
          f"{eta.value:9.4f} +/- {eta.std_error:.4f}")

# ---------------------------------------------------------------------------
# IR vs CC vs no ARQ across the power range
# ---------------------------------------------------------------------------

db_grid = np.arange(0.0, 46.0, 2.5)
curves = {"ir": [], "cc": [], "noarq": []}
for d in db_grid:
    snr = SnrPoint.from_db(d)
    curves["ir"].append(solve_operating_point("ir", 4, 0.05, snr, mc=MC))
    curves["cc"].append(solve_operating_point("cc", 4, 0.05, snr))
    curves["noarq"].append(solve_operating_point("noarq", 4, 0.05, snr, mc=MC))

fig, ax = plt.subplots(figsize=(7, 4.5))
labels = {"ir": "incremental redundancy", "cc": "Chase combining",
          "noarq": "no ARQ (fixed 4-slot code)"}
for key, style in (("ir", "C0-"), ("cc", "C1-"), ("noarq", "k--")):
    ax.plot(db_grid, [p.throughput for p in curves[key]], style,
            label=labels[key])
ax.set_xlabel("P (dB)")
ax.set_ylabel("throughput (bits/symbol)")
ax.set_title("hybrid-ARQ strategies, L=4, eps=0.05")
ax.legend(fontsize=9)
ax.grid(True, alpha=0.3)
fig.tight_layout()
fig.savefig("demo04_chase_combining.png", dpi=130)
print("\nwrote demo04_chase_combining.png")

lo, hi = curves["cc"][2], curves["cc"][-1]
ir_hi = curves["ir"][-1]
print(f"at {db_grid[2]:.0f} dB CC throughput {lo.throughput:.3f} sits with IR; "
      f"at {db_grid[-1]:.0f} dB CC gives {hi.throughput:.3f} vs IR {ir_hi.throughput:.3f}:")
print("adding SNR saturates the log, adding mutual information does not.")
