#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crossconv/analysis.hpp"
#include "crossconv/kinematics.hpp"
#include "crossconv/projection.hpp"
#include "crossconv/signal.hpp"

namespace crossconv {

// Malformed or unreadable input files. The CLI maps this to exit code 2.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shortest representation that round-trips the exact double.
std::string format_double(double v);

// --- speed series: CSV "frame,value", one file per signal ------------------

void write_speed_csv(const std::filesystem::path& path, const Signal& signal,
                     std::size_t first_frame);
// The frame column is carried for readability only; sample order defines the
// signal. The frame rate is not stored in the CSV and comes from the caller.
Signal read_speed_csv(const std::filesystem::path& path, double frame_rate);

// --- keypoints: one JSON document per motion --------------------------------

KeypointSequence load_keypoints(const std::filesystem::path& path,
                                std::optional<Handedness> handedness_override = {});

// --- motion manifest: JSON list of {label, file, bounds, handedness} --------

struct MotionManifestEntry {
    std::string label;
    std::filesystem::path file;
    std::optional<SegmentBounds> bounds;       // absent: heel-off start, last frame end
    std::optional<Handedness> handedness;      // absent: taken from the motion file
};

std::vector<MotionManifestEntry> load_motion_manifest(const std::filesystem::path& path);

// Resolves one manifest entry to a pair. `file` may be a keypoint JSON
// (detected by its "frames" field) or a pair spec JSON with
// {label, frame_rate, input_csv, output_csv}.
SignalPair load_motion(const MotionManifestEntry& entry, std::size_t detect_window = 3);

// Pair spec JSON; CSV paths are resolved relative to the spec file.
SignalPair load_pair_spec(const std::filesystem::path& path, double default_frame_rate = 30.0);

// Either form, detected by content: keypoint JSON (needs bounds/detection) or
// pair spec.
SignalPair load_motion_file(const std::filesystem::path& path,
                            std::optional<SegmentBounds> bounds = {},
                            std::size_t detect_window = 3);

// --- mocap: CSV "frame,marker,x,y,z" with a sidecar JSON manifest -----------

struct MocapDataset {
    MocapSequence sequence;
    MocapChannels channels;
};

// Sidecar manifest sits next to the CSV with the .json extension and holds
// {subject, handedness, frame_rate, ankle_marker, wrist_marker, start_frame,
// end_frame}.
MocapDataset load_mocap(const std::filesystem::path& csv_path);
MocapDataset load_mocap(const std::filesystem::path& csv_path,
                        const std::filesystem::path& manifest_path);

// --- dissimilarity matrix ----------------------------------------------------

void write_matrix_csv(const std::filesystem::path& path, const DissimilarityMatrix& m);
DissimilarityMatrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_json(const std::filesystem::path& path, const DissimilarityMatrix& m);

// --- merge tree --------------------------------------------------------------

void write_merge_tree_json(const std::filesystem::path& path, const MergeTree& tree);

// --- angle sweep ---------------------------------------------------------------

void write_sweep_csv(const std::filesystem::path& path, const AngleSweepResult& result);
void write_sweep_report_json(const std::filesystem::path& path,
                             const std::vector<AngleSweepResult>& results);

}  // namespace crossconv
