#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "crossconv/kinematics.hpp"

namespace crossconv {

struct MarkerPosition {
    double x = 0.0;  // toward first base
    double y = 0.0;  // vertically upward
    double z = 0.0;  // from home base
};

// 3D marker trajectories in field-aligned axes (+x first base, +y up,
// +z from home base).
class MocapSequence {
public:
    MocapSequence(std::string subject, Handedness handedness, double frame_rate,
                  std::vector<std::string> marker_names,
                  std::vector<std::vector<MarkerPosition>> frames);

    const std::string& subject() const { return subject_; }
    Handedness handedness() const { return handedness_; }
    double frame_rate() const { return frame_rate_; }
    const std::vector<std::string>& marker_names() const { return marker_names_; }
    std::size_t frame_count() const { return frames_.size(); }
    const MarkerPosition& at(std::size_t frame, std::size_t marker) const {
        return frames_[frame][marker];
    }

private:
    std::string subject_;
    Handedness handedness_;
    double frame_rate_;
    std::vector<std::string> marker_names_;
    std::vector<std::vector<MarkerPosition>> frames_;
};

// Which markers stand in for the ankle/wrist joints and which frame range is
// one motion; comes from the dataset manifest.
struct MocapChannels {
    std::string ankle_marker;
    std::string wrist_marker;
    SegmentBounds bounds;
};

struct SweepEntry {
    double theta_deg = 0.0;
    double dis = 0.0;
};

struct SweepErrorEntry {
    double theta_deg = 0.0;
    std::string message;
};

struct AngleSweepResult {
    std::string base_subject;
    std::string probe_subject;
    std::vector<SweepEntry> entries;       // ordered by theta
    std::vector<SweepErrorEntry> errors;   // thetas whose evaluation failed
    std::string annotation;                // free-form note carried into reports
};

// sin/cos of an angle in degrees, exact at multiples of 90 so the projection
// anchors (theta = 0 identity, theta = 90 maps z' to x) hold bit-exactly.
std::array<double, 2> sincos_deg(double deg);

// Orthographic camera rotated by theta in the horizontal plane:
// horizontal coordinate z' = z cos(theta) + x sin(theta), vertical = y
// flipped to the downward-positive image convention shared with the video
// pipeline. Markers become joints with confidence 1.
KeypointSequence project(const MocapSequence& seq, double theta_deg);

// -80..+90 in steps of 10.
std::vector<double> default_theta_grid();

// Reduces the base motion at theta = 0 to a speed pair, then compares it with
// the probe motion projected at every theta. A degenerate projection at some
// theta is reported as an error entry and the sweep continues.
AngleSweepResult sweep(const MocapSequence& base, const MocapChannels& base_channels,
                       const MocapSequence& probe, const MocapChannels& probe_channels,
                       const std::vector<double>& thetas,
                       std::size_t fft_crossover = kDefaultFftCrossover);

}  // namespace crossconv
