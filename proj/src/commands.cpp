#include "crossconv/commands.hpp"

#include <cstdio>
#include <fstream>

#include "crossconv/analysis.hpp"
#include "crossconv/io.hpp"
#include "crossconv/kinematics.hpp"
#include "crossconv/projection.hpp"
#include "crossconv/svg_plot.hpp"

namespace crossconv {

namespace fs = std::filesystem;

std::string format_value(double v, bool rounded) {
    if (!rounded) return format_double(v);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

namespace {

std::string sanitize_filename(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-' && c != '_')
            c = '_';
    return out;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot write " + path.string());
    f << content;
}

fs::path prepare_out_dir(const GlobalOptions& g) {
    std::error_code ec;
    fs::create_directories(g.out_dir, ec);
    if (ec) throw ParseError("cannot create output directory " + g.out_dir.string());
    return g.out_dir;
}

std::vector<double> index_axis(std::size_t count, double first) {
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i) xs[i] = first + static_cast<double>(i);
    return xs;
}

}  // namespace

std::vector<double> make_theta_grid(double start, double end, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("theta step must be positive");
    if (end < start) throw std::invalid_argument("theta end must not be below theta start");
    std::vector<double> grid;
    for (std::size_t i = 0;; ++i) {
        const double t = start + static_cast<double>(i) * step;
        if (t > end + step * 1e-9) break;
        grid.push_back(t);
    }
    return grid;
}

void cmd_speeds(const SpeedsOptions& opts, const GlobalOptions& g, std::ostream& out) {
    const KeypointSequence seq = load_keypoints(opts.keypoints);
    const JointSelection sel = select_joints(seq);

    SegmentBounds bounds;
    if (opts.start_frame) {
        bounds.start_frame = *opts.start_frame;
    } else {
        bounds = detect_segment(seq, sel.ankle, opts.detect_window);
    }
    bounds.end_frame = opts.end_frame ? *opts.end_frame : seq.frame_count() - 1;

    const Signal ankle = speed_series(seq, sel.ankle, bounds);
    const Signal wrist = speed_series(seq, sel.wrist, bounds);

    const fs::path dir = prepare_out_dir(g);
    const std::string stem = sanitize_filename(seq.subject());
    const fs::path ankle_csv = dir / (stem + "_ankle.csv");
    const fs::path wrist_csv = dir / (stem + "_wrist.csv");
    const fs::path svg_path = dir / (stem + "_speeds.svg");

    write_speed_csv(ankle_csv, ankle, bounds.start_frame + 1);
    write_speed_csv(wrist_csv, wrist, bounds.start_frame + 1);

    const std::vector<double> xs = index_axis(ankle.size(), static_cast<double>(bounds.start_frame + 1));
    LinePlot plot;
    plot.title(seq.subject() + " ankle/wrist speeds")
        .x_label("frame")
        .y_label("speed [pixels/frame]")
        .add_series("ankle", xs, ankle.samples(), kColorOrange)
        .add_series("wrist", xs, wrist.samples(), kColorBlue);
    write_text(svg_path, plot.render());

    out << "segment [" << bounds.start_frame << ":" << bounds.end_frame << "], "
        << ankle.size() << " samples\n";
    out << "wrote " << ankle_csv.string() << "\n";
    out << "wrote " << wrist_csv.string() << "\n";
    out << "wrote " << svg_path.string() << "\n";
}

void cmd_compare(const fs::path& pair_a, const fs::path& pair_b, const GlobalOptions& g,
                 std::ostream& out) {
    const SignalPair p = load_motion_file(pair_a);
    const SignalPair q = load_motion_file(pair_b);

    DissimilarityOptions opts;
    opts.check_frame_rate = g.frame_rate_check;
    opts.fft_crossover = g.fft_crossover;
    const double dis = dissimilarity(p, q, opts);

    const ConvolutionVector u =
        convolve_fast(p.input().samples(), q.output().samples(), g.fft_crossover);
    const ConvolutionVector v =
        convolve_fast(q.input().samples(), p.output().samples(), g.fft_crossover);

    const fs::path dir = prepare_out_dir(g);
    const fs::path svg_path =
        dir / ("compare_" + sanitize_filename(p.label()) + "_vs_" + sanitize_filename(q.label()) +
               ".svg");
    const std::vector<double> xs = index_axis(u.size(), 0.0);
    LinePlot plot;
    plot.title(p.label() + " vs " + q.label() + " convolution vectors")
        .x_label("coefficient index")
        .y_label("value")
        .add_series("u = a*y", xs, u.coefficients, kColorBlue)
        .add_series("v = x*b", xs, v.coefficients, kColorOrange);
    write_text(svg_path, plot.render());

    out << format_value(dis, g.round_output) << "\n";
    out << "wrote " << svg_path.string() << "\n";
}

namespace {

std::vector<SignalPair> load_manifest_pairs(const fs::path& manifest) {
    const auto entries = load_motion_manifest(manifest);
    std::vector<SignalPair> pairs;
    pairs.reserve(entries.size());
    for (const auto& entry : entries) pairs.push_back(load_motion(entry));
    return pairs;
}

void print_matrix(const DissimilarityMatrix& m, bool rounded, std::ostream& out) {
    out << "label";
    for (const auto& l : m.labels()) out << "," << l;
    out << "\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << m.labels()[i];
        for (std::size_t j = 0; j < m.size(); ++j) out << "," << format_value(m.at(i, j), rounded);
        out << "\n";
    }
}

}  // namespace

void cmd_matrix(const fs::path& manifest, const GlobalOptions& g, std::ostream& out) {
    const std::vector<SignalPair> pairs = load_manifest_pairs(manifest);

    MatrixOptions opts;
    opts.dissimilarity.check_frame_rate = g.frame_rate_check;
    opts.dissimilarity.fft_crossover = g.fft_crossover;
    const DissimilarityMatrix m = build_matrix(pairs, opts);

    const fs::path dir = prepare_out_dir(g);
    const fs::path csv_path = dir / "matrix.csv";
    const fs::path json_path = dir / "matrix.json";
    write_matrix_csv(csv_path, m);
    write_matrix_json(json_path, m);

    print_matrix(m, g.round_output, out);
    out << "wrote " << csv_path.string() << "\n";
    out << "wrote " << json_path.string() << "\n";
}

void cmd_cluster(const fs::path& input, const GlobalOptions& g, std::ostream& out) {
    const DissimilarityMatrix m = [&] {
        if (input.extension() == ".csv") return read_matrix_csv(input);
        MatrixOptions opts;
        opts.dissimilarity.check_frame_rate = g.frame_rate_check;
        opts.dissimilarity.fft_crossover = g.fft_crossover;
        return build_matrix(load_manifest_pairs(input), opts);
    }();

    const MergeTree tree = ward_cluster(m);

    const fs::path dir = prepare_out_dir(g);
    const fs::path json_path = dir / "dendrogram.json";
    const fs::path svg_path = dir / "dendrogram.svg";
    write_merge_tree_json(json_path, tree);
    write_text(svg_path, render_dendrogram_svg(tree));

    auto cluster_name = [&](std::size_t id) {
        return id < tree.leaf_labels.size() ? tree.leaf_labels[id] : "#" + std::to_string(id);
    };
    for (const Merge& mg : tree.merges)
        out << "merge " << cluster_name(mg.a) << " + " << cluster_name(mg.b) << " -> #" << mg.id
            << " at " << format_value(mg.height, g.round_output) << "\n";
    out << to_newick(tree) << "\n";
    out << "wrote " << json_path.string() << "\n";
    out << "wrote " << svg_path.string() << "\n";
}

void cmd_sweep(const SweepOptions& opts, const GlobalOptions& g, std::ostream& out) {
    const MocapDataset base = load_mocap(opts.base_csv);
    std::optional<MocapDataset> probe;
    if (opts.probe_csv) probe = load_mocap(*opts.probe_csv);

    const std::vector<double> thetas = opts.thetas.empty() ? default_theta_grid() : opts.thetas;

    std::vector<AngleSweepResult> results;
    AngleSweepResult self =
        sweep(base.sequence, base.channels, base.sequence, base.channels, thetas, g.fft_crossover);
    self.annotation = "same-subject sweep; the horizontal-angle range |theta| < 40 deg is where "
                      "small dissimilarity is expected";
    results.push_back(std::move(self));
    if (probe)
        results.push_back(sweep(base.sequence, base.channels, probe->sequence, probe->channels,
                                thetas, g.fft_crossover));

    const fs::path dir = prepare_out_dir(g);
    const std::string base_stem = sanitize_filename(base.sequence.subject());

    const fs::path self_csv = dir / ("sweep_" + base_stem + "_self.csv");
    write_sweep_csv(self_csv, results[0]);

    LinePlot plot;
    plot.title("dissimilarity vs shooting angle (base " + base.sequence.subject() + ")")
        .x_label("theta [deg]")
        .y_label("Dis");
    auto to_xy = [](const AngleSweepResult& r) {
        std::pair<std::vector<double>, std::vector<double>> xy;
        for (const SweepEntry& e : r.entries) {
            xy.first.push_back(e.theta_deg);
            xy.second.push_back(e.dis);
        }
        return xy;
    };
    const auto self_xy = to_xy(results[0]);
    plot.add_series(base.sequence.subject() + " vs " + base.sequence.subject(), self_xy.first,
                    self_xy.second, kColorRed);

    fs::path cross_csv;
    if (probe) {
        cross_csv = dir / ("sweep_" + base_stem + "_vs_" +
                           sanitize_filename(probe->sequence.subject()) + ".csv");
        write_sweep_csv(cross_csv, results[1]);
        const auto cross_xy = to_xy(results[1]);
        plot.add_series(base.sequence.subject() + " vs " + probe->sequence.subject(),
                        cross_xy.first, cross_xy.second, kColorGreen);
    }

    const fs::path report_path = dir / "sweep_report.json";
    const fs::path svg_path = dir / ("sweep_" + base_stem + ".svg");
    write_sweep_report_json(report_path, results);
    write_text(svg_path, plot.render());

    for (const AngleSweepResult& r : results) {
        out << r.base_subject << " vs " << r.probe_subject << ": " << r.entries.size()
            << " angles";
        if (!r.errors.empty()) out << ", " << r.errors.size() << " errors";
        out << "\n";
        for (const SweepErrorEntry& e : r.errors)
            out << "  theta " << format_value(e.theta_deg, false) << ": " << e.message << "\n";
    }
    out << "wrote " << self_csv.string() << "\n";
    if (probe) out << "wrote " << cross_csv.string() << "\n";
    out << "wrote " << report_path.string() << "\n";
    out << "wrote " << svg_path.string() << "\n";
}

void cmd_dtw(const fs::path& a, const fs::path& b, const GlobalOptions& g, std::ostream& out) {
    if (a.extension() == ".csv" && b.extension() == ".csv") {
        const Signal s = read_speed_csv(a, g.default_frame_rate);
        const Signal t = read_speed_csv(b, g.default_frame_rate);
        out << "dtw " << format_value(dtw_distance(s, t), g.round_output) << "\n";
        return;
    }
    const SignalPair p = load_motion_file(a);
    const SignalPair q = load_motion_file(b);
    DissimilarityOptions opts;
    opts.check_frame_rate = g.frame_rate_check;
    opts.fft_crossover = g.fft_crossover;
    const double dtw = dtw_pair_distance(p, q);
    const double dis = dissimilarity(p, q, opts);
    out << "dtw_pair " << format_value(dtw, g.round_output) << "\n";
    out << "dis " << format_value(dis, g.round_output) << "\n";
}

}  // namespace crossconv
