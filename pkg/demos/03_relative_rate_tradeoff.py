"""Rate cost of frequency-selective reflection.

At N = K the reflection is perfectly selective, but the time-varying
configuration no longer phase-aligns the reflected signal with the direct
one. The relative rate (achievable rate over the coherent upper bound)
quantifies that cost; it shrinks as more subcarriers are selected, and the
adjacent method stays marginally ahead because edge clipping lowers its
average selection size. Emits the same CSV the command-line sweep writes.
"""

from fsris import ExperimentSpec, emit, load_config, sweep_selection_size

base = load_config("K = 64\nn_row = 8\nn_col = 8\nseed = 42")
spec = ExperimentSpec(base=base,
                      methods=("adjacent", "fixed_adjacent", "random"),
                      sel_sizes=(1, 5, 9, 17, 31), realizations=300)
records = sweep_selection_size(spec)

print(f"{'method':>16} {'|I|':>4} {'mean R_Rel [%]':>15} {'mean R [Mbit/s]':>16}")
for rec in records:
    print(f"{rec.method:>16} {rec.sel_size:>4} {rec.mean_rel_rate_pct:>15.2f} "
          f"{rec.mean_rate_bps / 1e6:>16.3f}")

emit(records, "csv", "relative_rate.csv")
print("\nwrote relative_rate.csv")
