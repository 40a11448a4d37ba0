#ifndef TERAWAVE_CHANNELS_AWGN_HPP
#define TERAWAVE_CHANNELS_AWGN_HPP

#include "terawave/random.hpp"
#include "terawave/signal.hpp"

namespace terawave {

/// Adds i.i.d. circular complex Gaussian noise of variance noise_power per
/// sample (noise_power/2 per real dimension).
inline ComplexSignal awgn_add(const ComplexSignal& signal, double noise_power,
                              RandomStream& stream) {
    if (noise_power < 0.0) throw ConfigError("awgn_add: noise power must be >= 0");
    ComplexSignal out = signal;
    if (noise_power == 0.0) return out;
    const double s = std::sqrt(noise_power);
    for (auto& x : out.samples) x += s * stream.complex_normal();
    return out;
}

}  // namespace terawave

#endif
