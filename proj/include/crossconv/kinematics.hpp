#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "crossconv/signal.hpp"

namespace crossconv {

enum class Handedness { right, left };

Handedness parse_handedness(const std::string& s);
std::string to_string(Handedness h);

struct Keypoint {
    double x = 0.0;  // pixels, rightward
    double y = 0.0;  // pixels, vertically downward (image convention)
    double confidence = 0.0;
};

// Per-frame 2D joint coordinates as produced by a pose estimator. Joint order
// is fixed by joint_names; frames[f][j] is the j-th joint in frame f. A joint
// whose triple is exactly (0,0,0) counts as missing in that frame, matching
// the usual pose-estimator convention for undetected joints.
class KeypointSequence {
public:
    KeypointSequence(std::string subject, Handedness handedness, double frame_rate,
                     std::vector<std::string> joint_names,
                     std::vector<std::vector<Keypoint>> frames);

    const std::string& subject() const { return subject_; }
    Handedness handedness() const { return handedness_; }
    double frame_rate() const { return frame_rate_; }
    const std::vector<std::string>& joint_names() const { return joint_names_; }
    std::size_t frame_count() const { return frames_.size(); }

    // Index of a joint by name; throws std::invalid_argument naming the joint
    // when absent.
    std::size_t joint_index(const std::string& name) const;
    bool has_joint(const std::string& name) const;
    const Keypoint& at(std::size_t frame, std::size_t joint) const { return frames_[frame][joint]; }

private:
    std::string subject_;
    Handedness handedness_;
    double frame_rate_;
    std::vector<std::string> joint_names_;
    std::vector<std::vector<Keypoint>> frames_;
};

// Motion segment delimited by heel-off (start) and the frame before ball
// release (end); frames start..end inclusive, speeds on (start, end].
struct SegmentBounds {
    std::size_t start_frame = 0;
    std::size_t end_frame = 0;
};

struct JointSelection {
    std::string ankle;
    std::string wrist;
};

// Stride-side ankle and throwing-side wrist: a right-handed pitcher strides
// with the left foot.
JointSelection select_joints(const KeypointSequence& seq);

// s[n] = sqrt(dx^2 + dy^2) in pixels/frame for each n in (start, end].
Signal speed_series(const KeypointSequence& seq, const std::string& joint, SegmentBounds bounds);

// Heel-off heuristic: earliest frame at which the ankle's downward-Y
// coordinate starts `sustain_window` consecutive decreases (the ankle starts
// rising). The returned end is the last frame; ball release has no
// keypoint-level definition, so callers override it from configuration.
SegmentBounds detect_segment(const KeypointSequence& seq, const std::string& ankle_joint,
                             std::size_t sustain_window = 3);

SignalPair build_pair(const KeypointSequence& seq, SegmentBounds bounds);

}  // namespace crossconv
