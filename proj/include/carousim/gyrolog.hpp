// CSV gyro-log ingestion. Schema: header `t,gx,gy,gz`, seconds and rad/s,
// decimal point, UTF-8, newline-delimited.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "carousim/series.hpp"

namespace carousim {

struct GyroLog {
    std::vector<double> t;   // seconds, strictly increasing
    std::vector<double> gx;  // rad/s
    std::vector<double> gy;
    std::vector<double> gz;
    double sample_rate = 0.0;            // Hz, inferred from timestamps
    std::vector<std::string> warnings;   // e.g. timestamp gaps > 1.5x nominal

    std::size_t size() const { return t.size(); }

    // One axis as a SampleSeries at the inferred rate; axis in {gx, gy, gz}.
    SampleSeries axis(const std::string& name) const;
};

// Throws std::runtime_error with the offending line number on malformed
// headers, unparsable rows, non-finite values, or non-monotonic timestamps.
// With degrees=true the angular rates are converted to rad/s on ingest.
GyroLog ingest_csv(const std::filesystem::path& path, bool degrees = false);

}  // namespace carousim
