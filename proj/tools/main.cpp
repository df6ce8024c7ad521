#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "crossconv/commands.hpp"
#include "crossconv/io.hpp"

using namespace crossconv;

int main(int argc, char** argv) {
    CLI::App app{"Cross-convolution dissimilarity analysis of body-segment speed signals"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    GlobalOptions g;
    double theta_start = -80.0, theta_end = 90.0, theta_step = 10.0;

    app.add_option("--out-dir", g.out_dir, "Directory for emitted files")->capture_default_str();
    app.add_flag("--round", g.round_output, "Print values rounded to 4 decimals");
    app.add_option("--fft-crossover", g.fft_crossover,
                   "Operand length above which convolution switches to the FFT")
        ->capture_default_str();
    app.add_flag("--frame-rate-check,!--no-frame-rate-check", g.frame_rate_check,
                 "Require equal frame rates when comparing signals");
    app.add_option("--frame-rate", g.default_frame_rate,
                   "Frame rate assumed for bare speed CSV inputs")
        ->capture_default_str();
    app.add_option("--theta-start", theta_start, "Sweep start angle in degrees")
        ->capture_default_str();
    app.add_option("--theta-end", theta_end, "Sweep end angle in degrees")->capture_default_str();
    app.add_option("--theta-step", theta_step, "Sweep angle step in degrees")
        ->capture_default_str();

    SpeedsOptions speeds;
    auto* cmd_speeds_app =
        app.add_subcommand("speeds", "Extract ankle/wrist speed series from a keypoint file");
    cmd_speeds_app->add_option("keypoints", speeds.keypoints, "Keypoint JSON file")->required();
    cmd_speeds_app->add_option("--start", speeds.start_frame,
                               "Segment start frame (default: heel-off detection)");
    cmd_speeds_app->add_option("--end", speeds.end_frame, "Segment end frame (default: last)");
    cmd_speeds_app->add_option("--detect-window", speeds.detect_window,
                               "Consecutive Y decreases required by heel-off detection")
        ->capture_default_str();

    std::string compare_a, compare_b;
    auto* cmd_compare_app =
        app.add_subcommand("compare", "Dissimilarity between two motions plus a u/v overlay plot");
    cmd_compare_app->add_option("first", compare_a, "Pair spec or keypoint JSON")->required();
    cmd_compare_app->add_option("second", compare_b, "Pair spec or keypoint JSON")->required();

    std::string matrix_manifest;
    auto* cmd_matrix_app =
        app.add_subcommand("matrix", "Pairwise dissimilarity matrix over a motion manifest");
    cmd_matrix_app->add_option("manifest", matrix_manifest, "Motion manifest JSON")->required();

    std::string cluster_input;
    auto* cmd_cluster_app =
        app.add_subcommand("cluster", "Ward dendrogram from a manifest or a matrix CSV");
    cmd_cluster_app->add_option("input", cluster_input, "Motion manifest JSON or matrix CSV")
        ->required();

    SweepOptions sweep;
    std::string sweep_base, sweep_probe;
    auto* cmd_sweep_app =
        app.add_subcommand("sweep", "Dissimilarity versus camera angle from mocap data");
    cmd_sweep_app->add_option("base", sweep_base, "Base mocap CSV (sidecar JSON next to it)")
        ->required();
    cmd_sweep_app->add_option("probe", sweep_probe, "Probe mocap CSV for the cross-subject curve");

    std::string dtw_a, dtw_b;
    auto* cmd_dtw_app =
        app.add_subcommand("dtw", "Dynamic time warping baseline (signals or pairs)");
    cmd_dtw_app->add_option("first", dtw_a, "Speed CSV or pair spec / keypoint JSON")->required();
    cmd_dtw_app->add_option("second", dtw_b, "Speed CSV or pair spec / keypoint JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*cmd_speeds_app) {
            cmd_speeds(speeds, g, std::cout);
        } else if (*cmd_compare_app) {
            cmd_compare(compare_a, compare_b, g, std::cout);
        } else if (*cmd_matrix_app) {
            cmd_matrix(matrix_manifest, g, std::cout);
        } else if (*cmd_cluster_app) {
            cmd_cluster(cluster_input, g, std::cout);
        } else if (*cmd_sweep_app) {
            sweep.base_csv = sweep_base;
            if (!sweep_probe.empty()) sweep.probe_csv = sweep_probe;
            sweep.thetas = make_theta_grid(theta_start, theta_end, theta_step);
            cmd_sweep(sweep, g, std::cout);
        } else if (*cmd_dtw_app) {
            cmd_dtw(dtw_a, dtw_b, g, std::cout);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
