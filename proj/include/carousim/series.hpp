// Uniformly sampled scalar time series, the carrier of all signals.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace carousim {

struct SampleSeries {
    std::vector<double> values;      // rad/s unless the label says otherwise
    double sample_interval = 1.0;    // seconds, > 0
    std::string label;

    std::size_t size() const { return values.size(); }
};

// Throws std::invalid_argument when the series violates its invariants
// (empty, non-positive sample interval, or non-finite values).
inline void validate(const SampleSeries& s) {
    if (s.values.empty())
        throw std::invalid_argument("SampleSeries: length must be >= 1");
    if (!(s.sample_interval > 0.0) || !std::isfinite(s.sample_interval))
        throw std::invalid_argument("SampleSeries: sample_interval must be positive");
    for (double v : s.values)
        if (!std::isfinite(v))
            throw std::invalid_argument("SampleSeries: non-finite value");
}

}  // namespace carousim
