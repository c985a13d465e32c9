"""Sweep the RIS size and watch the selectivity ratio climb toward the
perfect-reflection regime at N = K.

With fewer reflectors than subcarriers the coefficient sequence is cut
short, the reflected spectrum leaks into unselected bins, and S/I drops.
The run mirrors the library's desk-scale sweep and prints one line per
(N, selection size) point.
"""

from fsris import ExperimentSpec, load_config, sweep_ris_size

base = load_config("K = 64\nseed = 42")
spec = ExperimentSpec(base=base, methods=("adjacent",), sel_sizes=(1, 7),
                      ris_sizes=(16, 25, 36, 49, 64), realizations=200)

print(f"{'N':>4} {'|I|':>4} {'mean S/I [dB]':>14} {'infinite':>9}")
for rec in sweep_ris_size(spec):
    si = "inf" if rec.finite_count == 0 else f"{rec.mean_si_db:.2f}"
    print(f"{rec.N:>4} {rec.sel_size:>4} {si:>14} "
          f"{rec.inf_count:>5}/{rec.realizations}")
