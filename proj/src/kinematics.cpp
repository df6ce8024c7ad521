#include "crossconv/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace crossconv {

Handedness parse_handedness(const std::string& s) {
    if (s == "right") return Handedness::right;
    if (s == "left") return Handedness::left;
    throw std::invalid_argument("handedness must be \"right\" or \"left\", got \"" + s + "\"");
}

std::string to_string(Handedness h) {
    return h == Handedness::right ? "right" : "left";
}

KeypointSequence::KeypointSequence(std::string subject, Handedness handedness, double frame_rate,
                                   std::vector<std::string> joint_names,
                                   std::vector<std::vector<Keypoint>> frames)
    : subject_(std::move(subject)),
      handedness_(handedness),
      frame_rate_(frame_rate),
      joint_names_(std::move(joint_names)),
      frames_(std::move(frames)) {
    if (frames_.size() < 2)
        throw std::invalid_argument("KeypointSequence '" + subject_ + "': needs at least 2 frames");
    if (!(frame_rate_ > 0.0))
        throw std::invalid_argument("KeypointSequence '" + subject_ + "': frame rate must be positive");
    if (joint_names_.empty())
        throw std::invalid_argument("KeypointSequence '" + subject_ + "': no joints declared");
    for (std::size_t f = 0; f < frames_.size(); ++f) {
        if (frames_[f].size() != joint_names_.size())
            throw std::invalid_argument("KeypointSequence '" + subject_ + "': frame " +
                                        std::to_string(f) + " has wrong joint count");
        for (const Keypoint& k : frames_[f])
            if (!std::isfinite(k.x) || !std::isfinite(k.y) || !std::isfinite(k.confidence))
                throw std::invalid_argument("KeypointSequence '" + subject_ +
                                            "': non-finite keypoint in frame " + std::to_string(f));
    }
}

std::size_t KeypointSequence::joint_index(const std::string& name) const {
    for (std::size_t i = 0; i < joint_names_.size(); ++i)
        if (joint_names_[i] == name) return i;
    throw std::invalid_argument("joint '" + name + "' not present in sequence '" + subject_ + "'");
}

bool KeypointSequence::has_joint(const std::string& name) const {
    for (const auto& n : joint_names_)
        if (n == name) return true;
    return false;
}

JointSelection select_joints(const KeypointSequence& seq) {
    JointSelection sel;
    if (seq.handedness() == Handedness::right) {
        sel.ankle = "left_ankle";
        sel.wrist = "right_wrist";
    } else {
        sel.ankle = "right_ankle";
        sel.wrist = "left_wrist";
    }
    // fail early with the joint named rather than deep in speed extraction
    seq.joint_index(sel.ankle);
    seq.joint_index(sel.wrist);
    return sel;
}

namespace {

bool missing(const Keypoint& k) {
    return k.x == 0.0 && k.y == 0.0 && k.confidence == 0.0;
}

void validate_bounds(const KeypointSequence& seq, SegmentBounds bounds) {
    if (bounds.start_frame >= bounds.end_frame || bounds.end_frame >= seq.frame_count())
        throw std::invalid_argument(
            "invalid segment bounds [" + std::to_string(bounds.start_frame) + ", " +
            std::to_string(bounds.end_frame) + "] for sequence '" + seq.subject() + "' with " +
            std::to_string(seq.frame_count()) + " frames");
}

}  // namespace

Signal speed_series(const KeypointSequence& seq, const std::string& joint, SegmentBounds bounds) {
    validate_bounds(seq, bounds);
    const std::size_t j = seq.joint_index(joint);
    std::vector<double> speeds;
    speeds.reserve(bounds.end_frame - bounds.start_frame);
    for (std::size_t n = bounds.start_frame; n <= bounds.end_frame; ++n) {
        const Keypoint& k = seq.at(n, j);
        if (missing(k))
            throw std::invalid_argument("joint '" + joint + "' missing in frame " +
                                        std::to_string(n) + " of sequence '" + seq.subject() + "'");
        if (n == bounds.start_frame) continue;
        const Keypoint& prev = seq.at(n - 1, j);
        speeds.push_back(std::hypot(k.x - prev.x, k.y - prev.y));
    }
    return Signal(std::move(speeds), seq.frame_rate());
}

SegmentBounds detect_segment(const KeypointSequence& seq, const std::string& ankle_joint,
                             std::size_t sustain_window) {
    if (sustain_window == 0)
        throw std::invalid_argument("detect_segment: sustain window must be at least 1");
    const std::size_t j = seq.joint_index(ankle_joint);
    const std::size_t frames = seq.frame_count();
    // decreasing[i] true when Y drops from frame i-1 to frame i (ankle rising
    // in image coordinates)
    for (std::size_t i = 1; i + sustain_window - 1 < frames; ++i) {
        bool sustained = true;
        for (std::size_t k = 0; k < sustain_window; ++k) {
            const double cur = seq.at(i + k, j).y;
            const double prev = seq.at(i + k - 1, j).y;
            if (!(cur < prev)) {
                sustained = false;
                break;
            }
        }
        if (sustained) return {i, frames - 1};
    }
    throw std::invalid_argument("no heel-off found in sequence '" + seq.subject() +
                                "': ankle Y never starts a sustained decrease; supply manual bounds");
}

SignalPair build_pair(const KeypointSequence& seq, SegmentBounds bounds) {
    const JointSelection sel = select_joints(seq);
    Signal ankle = speed_series(seq, sel.ankle, bounds);
    Signal wrist = speed_series(seq, sel.wrist, bounds);
    const std::string label = seq.subject() + "[" + std::to_string(bounds.start_frame) + ":" +
                              std::to_string(bounds.end_frame) + "]";
    return SignalPair(std::move(ankle), std::move(wrist), label);
}

}  // namespace crossconv
