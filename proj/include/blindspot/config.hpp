#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace blindspot {

// Full scenario description. length = infinity selects the line-process
// (asymptotic) regime; a finite length selects segment obstacles.
struct ScenarioConfig {
    double lambda = 0.0;    // anchors per m^2
    double lambda0 = 0.0;   // obstacle feet per m^2
    double range = 20.0;    // communication range R, m
    double length = std::numeric_limits<double>::infinity();  // obstacle length L, m
    double delta = 1e-4;    // containment criterion threshold
    double epsilon = 0.1;   // design target blind-spot probability
    int k_min = 3;          // anchors needed for unambiguous localization

    bool infinite_length() const { return std::isinf(length); }

    void validate() const {
        if (!(lambda >= 0.0)) throw std::invalid_argument("config: lambda must be >= 0");
        if (!(lambda0 >= 0.0)) throw std::invalid_argument("config: lambda0 must be >= 0");
        if (!(range > 0.0)) throw std::invalid_argument("config: range must be > 0");
        if (!(length > 0.0)) throw std::invalid_argument("config: length must be > 0");
        if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("config: delta in (0,1)");
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw std::invalid_argument("config: epsilon in (0,1)");
        if (k_min < 1) throw std::invalid_argument("config: k_min must be >= 1");
    }
};

// Monte Carlo estimate with its standard error and reproduction handle.
struct EstimateResult {
    double value = 0.0;
    double stderr_ = 0.0;
    std::uint64_t n_trials = 0;
    std::uint64_t master_seed = 0;
};

// One record of the sweep CSV schema.
struct SweepRow {
    std::string method;
    double lambda = 0.0;
    double lambda0 = 0.0;
    double length = std::numeric_limits<double>::infinity();
    double range = 0.0;
    int k_min = 3;
    double value = 0.0;
    std::optional<double> stderr_;
    std::optional<std::uint64_t> n_trials;
    std::optional<std::uint64_t> seed;
};

}  // namespace blindspot
