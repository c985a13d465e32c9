"""Link-level simulator for a RIS-assisted wideband OFDM downlink with
time-varying, DFT-based frequency-selective reflection."""

from .config import (ScenarioConfig, ValidationError, load_config,
                     paper_defaults, serialize, wavelength)
from .channel import (ChannelRealization, PathSet, draw_composite_paths,
                      draw_direct_paths, realize_channel, steering_phase,
                      taps_from_paths)
from .selection import (SelectionSet, adjacent, fixed_adjacent,
                        random_nonconsecutive, selector_vector)
from .ris import (RisProgram, apply_reflector_limit, bin_response,
                  bin_responses, composite_response, passivity_margin,
                  synthesize_program, synthesize_weights)
from .metrics import (LinkMetrics, PowerAllocation, achievable_rate,
                      per_bin_gain, relative_rate, s_over_i, waterfill)
from .harness import (AggregateRecord, ExperimentSpec, emit, parse_csv,
                      run_realization, selftest, sweep_ris_size,
                      sweep_selection_size)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
