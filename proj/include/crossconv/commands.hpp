#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "crossconv/signal.hpp"

namespace crossconv {

struct GlobalOptions {
    std::filesystem::path out_dir = ".";
    bool round_output = false;  // print 4 decimals instead of full precision
    std::size_t fft_crossover = kDefaultFftCrossover;
    bool frame_rate_check = true;
    double default_frame_rate = 30.0;  // for bare speed CSV inputs
};

// Full precision by default; --round gives the 4-decimal display used in
// published tables.
std::string format_value(double v, bool rounded);

struct SpeedsOptions {
    std::filesystem::path keypoints;
    std::optional<std::size_t> start_frame;  // absent: heel-off detection
    std::optional<std::size_t> end_frame;    // absent: last frame
    std::size_t detect_window = 3;
};

struct SweepOptions {
    std::filesystem::path base_csv;
    std::optional<std::filesystem::path> probe_csv;
    std::vector<double> thetas;
};

// Commands validate and load every input before computing or writing
// anything, print to `out`, and report failures by throwing: ParseError and
// std::invalid_argument mean bad input (exit 2), std::domain_error means the
// computation is undefined for the data (exit 1).
void cmd_speeds(const SpeedsOptions& opts, const GlobalOptions& g, std::ostream& out);
void cmd_compare(const std::filesystem::path& pair_a, const std::filesystem::path& pair_b,
                 const GlobalOptions& g, std::ostream& out);
void cmd_matrix(const std::filesystem::path& manifest, const GlobalOptions& g, std::ostream& out);
void cmd_cluster(const std::filesystem::path& input, const GlobalOptions& g, std::ostream& out);
void cmd_sweep(const SweepOptions& opts, const GlobalOptions& g, std::ostream& out);
void cmd_dtw(const std::filesystem::path& a, const std::filesystem::path& b,
             const GlobalOptions& g, std::ostream& out);

std::vector<double> make_theta_grid(double start, double end, double step);

}  // namespace crossconv
