#include "crossconv/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace crossconv {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    out << content;
    if (!out) throw ParseError("write failed for " + path.string());
}

double parse_double(std::string_view token, const std::filesystem::path& path, std::size_t line) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last)
        throw ParseError(path.string() + ":" + std::to_string(line) + ": bad number '" +
                         std::string(token) + "'");
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return fields;
}

std::vector<std::string> read_csv_lines(const std::filesystem::path& path) {
    const std::string content = read_file(path);
    std::vector<std::string> lines;
    std::string::size_type pos = 0;
    while (pos < content.size()) {
        auto nl = content.find('\n', pos);
        if (nl == std::string::npos) nl = content.size();
        std::string line = content.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(std::move(line));
        pos = nl + 1;
    }
    return lines;
}

json parse_json_file(const std::filesystem::path& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

const json& require_field(const json& j, const char* name, const std::filesystem::path& path) {
    const auto it = j.find(name);
    if (it == j.end()) throw ParseError(path.string() + ": missing field '" + name + "'");
    return *it;
}

}  // namespace

void write_speed_csv(const std::filesystem::path& path, const Signal& signal,
                     std::size_t first_frame) {
    std::string out = "frame,value\n";
    for (std::size_t i = 0; i < signal.size(); ++i) {
        out += std::to_string(first_frame + i);
        out += ',';
        out += format_double(signal[i]);
        out += '\n';
    }
    write_file(path, out);
}

Signal read_speed_csv(const std::filesystem::path& path, double frame_rate) {
    const auto lines = read_csv_lines(path);
    if (lines.empty() || lines[0] != "frame,value")
        throw ParseError(path.string() + ": expected header 'frame,value'");
    std::vector<double> samples;
    samples.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv_line(lines[i]);
        if (fields.size() != 2)
            throw ParseError(path.string() + ":" + std::to_string(i + 1) + ": expected 2 columns");
        parse_double(fields[0], path, i + 1);  // frame index, order is what counts
        samples.push_back(parse_double(fields[1], path, i + 1));
    }
    try {
        return Signal(std::move(samples), frame_rate);
    } catch (const std::invalid_argument& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

KeypointSequence load_keypoints(const std::filesystem::path& path,
                                std::optional<Handedness> handedness_override) {
    const json j = parse_json_file(path);
    try {
        const std::string subject = require_field(j, "subject", path).get<std::string>();
        const Handedness handedness =
            handedness_override ? *handedness_override
                                : parse_handedness(require_field(j, "handedness", path).get<std::string>());
        const double frame_rate = require_field(j, "frame_rate", path).get<double>();
        const auto joint_names =
            require_field(j, "joint_names", path).get<std::vector<std::string>>();
        const json& jframes = require_field(j, "frames", path);

        std::vector<std::vector<Keypoint>> frames;
        frames.reserve(jframes.size());
        for (const json& jframe : jframes) {
            std::vector<Keypoint> frame;
            frame.reserve(jframe.size());
            for (const json& jk : jframe) {
                if (!jk.is_array() || jk.size() != 3)
                    throw ParseError(path.string() + ": keypoint must be [x, y, confidence]");
                frame.push_back({jk[0].get<double>(), jk[1].get<double>(), jk[2].get<double>()});
            }
            frames.push_back(std::move(frame));
        }
        return KeypointSequence(subject, handedness, frame_rate, joint_names, std::move(frames));
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::vector<MotionManifestEntry> load_motion_manifest(const std::filesystem::path& path) {
    const json j = parse_json_file(path);
    if (!j.is_array()) throw ParseError(path.string() + ": manifest must be a JSON array");
    const auto base_dir = path.parent_path();

    std::vector<MotionManifestEntry> entries;
    entries.reserve(j.size());
    try {
        for (const json& je : j) {
            MotionManifestEntry entry;
            entry.label = require_field(je, "label", path).get<std::string>();
            entry.file = base_dir / require_field(je, "file", path).get<std::string>();
            if (je.contains("bounds") && !je["bounds"].is_null()) {
                const json& jb = je["bounds"];
                if (!jb.is_array() || jb.size() != 2)
                    throw ParseError(path.string() + ": bounds must be [start_frame, end_frame]");
                entry.bounds = SegmentBounds{jb[0].get<std::size_t>(), jb[1].get<std::size_t>()};
            }
            if (je.contains("handedness") && !je["handedness"].is_null())
                entry.handedness = parse_handedness(je["handedness"].get<std::string>());
            entries.push_back(std::move(entry));
        }
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (entries.empty()) throw ParseError(path.string() + ": manifest lists no motions");
    return entries;
}

SignalPair load_pair_spec(const std::filesystem::path& path, double default_frame_rate) {
    const json j = parse_json_file(path);
    try {
        const std::string label = require_field(j, "label", path).get<std::string>();
        const double frame_rate =
            j.contains("frame_rate") ? j["frame_rate"].get<double>() : default_frame_rate;
        const auto base_dir = path.parent_path();
        const auto input_csv = base_dir / require_field(j, "input_csv", path).get<std::string>();
        const auto output_csv = base_dir / require_field(j, "output_csv", path).get<std::string>();
        return SignalPair(read_speed_csv(input_csv, frame_rate),
                          read_speed_csv(output_csv, frame_rate), label);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

SignalPair load_motion_file(const std::filesystem::path& path, std::optional<SegmentBounds> bounds,
                            std::size_t detect_window) {
    const json j = parse_json_file(path);
    if (j.contains("input_csv")) return load_pair_spec(path);
    if (!j.contains("frames"))
        throw ParseError(path.string() + ": neither a keypoint file (frames) nor a pair spec (input_csv)");
    const KeypointSequence seq = load_keypoints(path);
    SegmentBounds b;
    if (bounds) {
        b = *bounds;
    } else {
        const JointSelection sel = select_joints(seq);
        b = detect_segment(seq, sel.ankle, detect_window);
    }
    return build_pair(seq, b);
}

SignalPair load_motion(const MotionManifestEntry& entry, std::size_t detect_window) {
    const json j = parse_json_file(entry.file);
    SignalPair pair = [&] {
        if (j.contains("input_csv")) return load_pair_spec(entry.file);
        const KeypointSequence seq = load_keypoints(entry.file, entry.handedness);
        SegmentBounds b;
        if (entry.bounds) {
            b = *entry.bounds;
        } else {
            const JointSelection sel = select_joints(seq);
            b = detect_segment(seq, sel.ankle, detect_window);
        }
        return build_pair(seq, b);
    }();
    // manifest label wins over whatever the file called itself
    return SignalPair(pair.input(), pair.output(), entry.label);
}

namespace {

MocapDataset load_mocap_impl(const std::filesystem::path& csv_path,
                             const std::filesystem::path& manifest_path) {
    const json j = parse_json_file(manifest_path);
    std::string subject;
    Handedness handedness = Handedness::right;
    double frame_rate = 0.0;
    MocapChannels channels;
    try {
        subject = require_field(j, "subject", manifest_path).get<std::string>();
        handedness = parse_handedness(require_field(j, "handedness", manifest_path).get<std::string>());
        frame_rate = require_field(j, "frame_rate", manifest_path).get<double>();
        channels.ankle_marker = require_field(j, "ankle_marker", manifest_path).get<std::string>();
        channels.wrist_marker = require_field(j, "wrist_marker", manifest_path).get<std::string>();
        channels.bounds.start_frame = require_field(j, "start_frame", manifest_path).get<std::size_t>();
        channels.bounds.end_frame = require_field(j, "end_frame", manifest_path).get<std::size_t>();
    } catch (const json::exception& e) {
        throw ParseError(manifest_path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(manifest_path.string() + ": " + e.what());
    }

    const auto lines = read_csv_lines(csv_path);
    if (lines.empty() || lines[0] != "frame,marker,x,y,z")
        throw ParseError(csv_path.string() + ": expected header 'frame,marker,x,y,z'");

    // frame number -> marker -> position; marker order fixed by first frame
    std::map<long long, std::map<std::string, MarkerPosition>> by_frame;
    std::vector<std::string> marker_order;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv_line(lines[i]);
        if (fields.size() != 5)
            throw ParseError(csv_path.string() + ":" + std::to_string(i + 1) + ": expected 5 columns");
        const long long frame =
            static_cast<long long>(parse_double(fields[0], csv_path, i + 1));
        const std::string& marker = fields[1];
        MarkerPosition p{parse_double(fields[2], csv_path, i + 1),
                         parse_double(fields[3], csv_path, i + 1),
                         parse_double(fields[4], csv_path, i + 1)};
        auto [it, inserted] = by_frame[frame].emplace(marker, p);
        if (!inserted)
            throw ParseError(csv_path.string() + ":" + std::to_string(i + 1) + ": duplicate marker '" +
                             marker + "' in frame " + std::to_string(frame));
        if (by_frame.size() == 1) marker_order.push_back(marker);
    }
    if (by_frame.empty()) throw ParseError(csv_path.string() + ": no data rows");

    std::vector<std::vector<MarkerPosition>> frames;
    frames.reserve(by_frame.size());
    long long expected = by_frame.begin()->first;
    for (const auto& [frame, markers] : by_frame) {
        if (frame != expected)
            throw ParseError(csv_path.string() + ": frames are not contiguous (missing " +
                             std::to_string(expected) + ")");
        ++expected;
        if (markers.size() != marker_order.size())
            throw ParseError(csv_path.string() + ": frame " + std::to_string(frame) +
                             " has a different marker set");
        std::vector<MarkerPosition> row;
        row.reserve(marker_order.size());
        for (const std::string& name : marker_order) {
            const auto it = markers.find(name);
            if (it == markers.end())
                throw ParseError(csv_path.string() + ": marker '" + name + "' missing in frame " +
                                 std::to_string(frame));
            row.push_back(it->second);
        }
        frames.push_back(std::move(row));
    }

    try {
        return MocapDataset{
            MocapSequence(subject, handedness, frame_rate, marker_order, std::move(frames)),
            channels};
    } catch (const std::invalid_argument& e) {
        throw ParseError(csv_path.string() + ": " + e.what());
    }
}

}  // namespace

MocapDataset load_mocap(const std::filesystem::path& csv_path) {
    std::filesystem::path manifest = csv_path;
    manifest.replace_extension(".json");
    return load_mocap_impl(csv_path, manifest);
}

MocapDataset load_mocap(const std::filesystem::path& csv_path,
                        const std::filesystem::path& manifest_path) {
    return load_mocap_impl(csv_path, manifest_path);
}

void write_matrix_csv(const std::filesystem::path& path, const DissimilarityMatrix& m) {
    std::string out = "label";
    for (const auto& l : m.labels()) {
        out += ',';
        out += l;
    }
    out += '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        out += m.labels()[i];
        for (std::size_t j = 0; j < m.size(); ++j) {
            out += ',';
            out += format_double(m.at(i, j));
        }
        out += '\n';
    }
    write_file(path, out);
}

DissimilarityMatrix read_matrix_csv(const std::filesystem::path& path) {
    const auto lines = read_csv_lines(path);
    if (lines.empty()) throw ParseError(path.string() + ": empty matrix file");
    const auto header = split_csv_line(lines[0]);
    if (header.size() < 3 || header[0] != "label")
        throw ParseError(path.string() + ": expected header 'label,<name>,...'");
    const std::vector<std::string> labels(header.begin() + 1, header.end());
    const std::size_t n = labels.size();
    if (lines.size() != n + 1)
        throw ParseError(path.string() + ": expected " + std::to_string(n) + " data rows");

    std::vector<std::vector<double>> values(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const auto fields = split_csv_line(lines[i + 1]);
        if (fields.size() != n + 1)
            throw ParseError(path.string() + ":" + std::to_string(i + 2) + ": expected " +
                             std::to_string(n + 1) + " columns");
        if (fields[0] != labels[i])
            throw ParseError(path.string() + ":" + std::to_string(i + 2) + ": row label '" +
                             fields[0] + "' does not match column label '" + labels[i] + "'");
        for (std::size_t j = 0; j < n; ++j)
            values[i][j] = parse_double(fields[j + 1], path, i + 2);
    }
    try {
        return DissimilarityMatrix(labels, std::move(values));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_matrix_json(const std::filesystem::path& path, const DissimilarityMatrix& m) {
    json j;
    j["labels"] = m.labels();
    j["values"] = m.values();
    write_file(path, j.dump(2) + "\n");
}

void write_merge_tree_json(const std::filesystem::path& path, const MergeTree& tree) {
    json j;
    j["leaves"] = tree.leaf_labels;
    json merges = json::array();
    for (const Merge& m : tree.merges)
        merges.push_back({{"a", m.a}, {"b", m.b}, {"height", m.height}, {"id", m.id}});
    j["merges"] = std::move(merges);
    j["newick"] = to_newick(tree);
    write_file(path, j.dump(2) + "\n");
}

void write_sweep_csv(const std::filesystem::path& path, const AngleSweepResult& result) {
    std::string out = "theta_deg,dis\n";
    for (const SweepEntry& e : result.entries) {
        out += format_double(e.theta_deg);
        out += ',';
        out += format_double(e.dis);
        out += '\n';
    }
    write_file(path, out);
}

void write_sweep_report_json(const std::filesystem::path& path,
                             const std::vector<AngleSweepResult>& results) {
    json report = json::array();
    for (const AngleSweepResult& r : results) {
        json entries = json::array();
        for (const SweepEntry& e : r.entries)
            entries.push_back({{"theta_deg", e.theta_deg}, {"dis", e.dis}});
        json errors = json::array();
        for (const SweepErrorEntry& e : r.errors)
            errors.push_back({{"theta_deg", e.theta_deg}, {"message", e.message}});
        json entry = {{"base_subject", r.base_subject},
                      {"probe_subject", r.probe_subject},
                      {"entries", std::move(entries)},
                      {"errors", std::move(errors)}};
        if (!r.annotation.empty()) entry["annotation"] = r.annotation;
        report.push_back(std::move(entry));
    }
    write_file(path, report.dump(2) + "\n");
}

}  // namespace crossconv
