#include "carousim/gyrolog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace carousim {

namespace {

std::string strip(std::string s) {
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), is_space));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), is_space).base(), s.end());
    return s;
}

double parse_field(const std::string& field, std::size_t line_no) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw std::runtime_error("gyro log line " + std::to_string(line_no) +
                                 ": cannot parse '" + field + "'");
    if (!std::isfinite(value))
        throw std::runtime_error("gyro log line " + std::to_string(line_no) +
                                 ": non-finite value");
    return value;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(strip(line.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

}  // namespace

SampleSeries GyroLog::axis(const std::string& name) const {
    const std::vector<double>* v = nullptr;
    if (name == "gx") v = &gx;
    else if (name == "gy") v = &gy;
    else if (name == "gz") v = &gz;
    else throw std::invalid_argument("GyroLog: unknown axis '" + name + "'");
    if (sample_rate <= 0.0)
        throw std::runtime_error("GyroLog: sample rate not established");
    return SampleSeries{*v, 1.0 / sample_rate, name};
}

GyroLog ingest_csv(const std::filesystem::path& path, bool degrees) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open gyro log: " + path.string());

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line))
        throw std::runtime_error("gyro log is empty: " + path.string());
    ++line_no;
    // Tolerate a UTF-8 BOM on the header line.
    if (line.size() >= 3 && line.compare(0, 3, "\xef\xbb\xbf") == 0)
        line.erase(0, 3);
    const std::vector<std::string> header = split_csv(line);
    if (header.size() != 4 || header[0] != "t" || header[1] != "gx" ||
        header[2] != "gy" || header[3] != "gz")
        throw std::runtime_error(
            "line 1: gyro log header must be 't,gx,gy,gz', got '" + line + "'");

    GyroLog log;
    const double unit = degrees ? std::numbers::pi / 180.0 : 1.0;
    while (std::getline(in, line)) {
        ++line_no;
        if (strip(line).empty()) continue;
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != 4)
            throw std::runtime_error("gyro log line " + std::to_string(line_no) +
                                     ": expected 4 fields, got " +
                                     std::to_string(fields.size()));
        const double t = parse_field(fields[0], line_no);
        if (!log.t.empty() && t <= log.t.back())
            throw std::runtime_error("gyro log line " + std::to_string(line_no) +
                                     ": timestamps must be strictly increasing");
        log.t.push_back(t);
        log.gx.push_back(unit * parse_field(fields[1], line_no));
        log.gy.push_back(unit * parse_field(fields[2], line_no));
        log.gz.push_back(unit * parse_field(fields[3], line_no));
    }
    if (log.size() < 2)
        throw std::runtime_error("gyro log needs at least 2 samples: " +
                                 path.string());

    const double span = log.t.back() - log.t.front();
    const double nominal = span / static_cast<double>(log.size() - 1);
    log.sample_rate = 1.0 / nominal;
    for (std::size_t i = 1; i < log.size(); ++i) {
        const double gap = log.t[i] - log.t[i - 1];
        if (gap > 1.5 * nominal)
            log.warnings.push_back("gap of " + std::to_string(gap) +
                                   " s before sample " + std::to_string(i + 1));
    }
    return log;
}

}  // namespace carousim
