#ifndef TERAWAVE_TERAWAVE_HPP
#define TERAWAVE_TERAWAVE_HPP

// Umbrella header: link-level waveform simulation toolkit for single- and
// multi-carrier schemes (CP-OFDM, SC-FDE, DFT-s-OFDM, OQAM/FBMC, OTFS) with
// channel and oscillator impairment models and the KPI evaluators.

#include "terawave/channels/awgn.hpp"
#include "terawave/channels/beam_split.hpp"
#include "terawave/channels/csv_io.hpp"
#include "terawave/channels/dd.hpp"
#include "terawave/channels/tdl.hpp"
#include "terawave/common.hpp"
#include "terawave/eq/equalizers.hpp"
#include "terawave/fft.hpp"
#include "terawave/harness/chains.hpp"
#include "terawave/harness/config.hpp"
#include "terawave/harness/experiments.hpp"
#include "terawave/harness/manifest.hpp"
#include "terawave/harness/validate.hpp"
#include "terawave/impairments/phase_noise.hpp"
#include "terawave/kpi/ber.hpp"
#include "terawave/kpi/formulas.hpp"
#include "terawave/kpi/papr.hpp"
#include "terawave/kpi/psd.hpp"
#include "terawave/qam.hpp"
#include "terawave/random.hpp"
#include "terawave/signal.hpp"
#include "terawave/waveforms/fbmc.hpp"
#include "terawave/waveforms/ofdm.hpp"
#include "terawave/waveforms/otfs.hpp"
#include "terawave/waveforms/params.hpp"
#include "terawave/waveforms/pulse_shaping.hpp"

#endif
