#include "crossconv/projection.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crossconv {

MocapSequence::MocapSequence(std::string subject, Handedness handedness, double frame_rate,
                             std::vector<std::string> marker_names,
                             std::vector<std::vector<MarkerPosition>> frames)
    : subject_(std::move(subject)),
      handedness_(handedness),
      frame_rate_(frame_rate),
      marker_names_(std::move(marker_names)),
      frames_(std::move(frames)) {
    if (frames_.size() < 2)
        throw std::invalid_argument("MocapSequence '" + subject_ + "': needs at least 2 frames");
    if (!(frame_rate_ > 0.0))
        throw std::invalid_argument("MocapSequence '" + subject_ + "': frame rate must be positive");
    if (marker_names_.empty())
        throw std::invalid_argument("MocapSequence '" + subject_ + "': no markers declared");
    for (std::size_t f = 0; f < frames_.size(); ++f) {
        if (frames_[f].size() != marker_names_.size())
            throw std::invalid_argument("MocapSequence '" + subject_ + "': frame " +
                                        std::to_string(f) + " has wrong marker count");
        for (const MarkerPosition& m : frames_[f])
            if (!std::isfinite(m.x) || !std::isfinite(m.y) || !std::isfinite(m.z))
                throw std::invalid_argument("MocapSequence '" + subject_ +
                                            "': non-finite coordinate in frame " + std::to_string(f));
    }
}

std::array<double, 2> sincos_deg(double deg) {
    if (!std::isfinite(deg)) throw std::invalid_argument("sincos_deg: non-finite angle");
    double r = std::fmod(deg, 360.0);
    if (r < 0.0) r += 360.0;
    if (r == 0.0) return {0.0, 1.0};
    if (r == 90.0) return {1.0, 0.0};
    if (r == 180.0) return {0.0, -1.0};
    if (r == 270.0) return {-1.0, 0.0};
    const double rad = r * std::numbers::pi / 180.0;
    return {std::sin(rad), std::cos(rad)};
}

KeypointSequence project(const MocapSequence& seq, double theta_deg) {
    const auto [sin_t, cos_t] = sincos_deg(theta_deg);
    std::vector<std::vector<Keypoint>> frames(seq.frame_count());
    for (std::size_t f = 0; f < seq.frame_count(); ++f) {
        frames[f].resize(seq.marker_names().size());
        for (std::size_t m = 0; m < seq.marker_names().size(); ++m) {
            const MarkerPosition& p = seq.at(f, m);
            Keypoint& k = frames[f][m];
            k.x = p.z * cos_t + p.x * sin_t;
            k.y = -p.y;  // image convention: downward positive
            k.confidence = 1.0;
        }
    }
    return KeypointSequence(seq.subject(), seq.handedness(), seq.frame_rate(),
                            seq.marker_names(), std::move(frames));
}

std::vector<double> default_theta_grid() {
    std::vector<double> grid;
    for (int t = -80; t <= 90; t += 10) grid.push_back(static_cast<double>(t));
    return grid;
}

namespace {

SignalPair reduce_to_pair(const MocapSequence& seq, const MocapChannels& ch, double theta_deg) {
    const KeypointSequence projected = project(seq, theta_deg);
    Signal ankle = speed_series(projected, ch.ankle_marker, ch.bounds);
    Signal wrist = speed_series(projected, ch.wrist_marker, ch.bounds);
    const std::string label = seq.subject() + "@" + std::to_string(theta_deg);
    return SignalPair(std::move(ankle), std::move(wrist), label);
}

}  // namespace

AngleSweepResult sweep(const MocapSequence& base, const MocapChannels& base_channels,
                       const MocapSequence& probe, const MocapChannels& probe_channels,
                       const std::vector<double>& thetas, std::size_t fft_crossover) {
    if (thetas.empty()) throw std::invalid_argument("sweep: empty theta grid");
    for (std::size_t i = 1; i < thetas.size(); ++i)
        if (!(thetas[i] > thetas[i - 1]))
            throw std::invalid_argument("sweep: thetas must be strictly increasing");

    const SignalPair reference = reduce_to_pair(base, base_channels, 0.0);

    AngleSweepResult result;
    result.base_subject = base.subject();
    result.probe_subject = probe.subject();
    DissimilarityOptions opts;
    opts.fft_crossover = fft_crossover;
    for (double theta : thetas) {
        try {
            const SignalPair probed = reduce_to_pair(probe, probe_channels, theta);
            result.entries.push_back({theta, dissimilarity(reference, probed, opts)});
        } catch (const std::exception& e) {
            result.errors.push_back({theta, e.what()});
        }
    }
    return result;
}

}  // namespace crossconv
