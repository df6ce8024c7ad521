#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>

#include <json.hpp>

#include "crossconv/io.hpp"
#include "test_util.hpp"

using namespace crossconv;
using testutil::TempDir;

namespace {

void put(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    f << content;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const std::filesystem::path kDataDir = CROSSCONV_TEST_DATA_DIR;

}  // namespace

TEST_CASE("speed CSV round-trips bit-exactly") {
    TempDir dir("speedcsv");
    std::mt19937 rng(79);
    const Signal s(testutil::random_samples(rng, 40, 0.0, 25.0), 30.0);
    const auto path = dir.path / "s.csv";
    write_speed_csv(path, s, 11);
    const Signal back = read_speed_csv(path, 30.0);
    CHECK(back.samples() == s.samples());
    CHECK(slurp(path).substr(0, 12) == "frame,value\n");

    // deterministic: writing again produces identical bytes
    const auto path2 = dir.path / "s2.csv";
    write_speed_csv(path2, s, 11);
    CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("speed CSV rejects malformed input") {
    TempDir dir("speedbad");
    const auto path = dir.path / "bad.csv";
    put(path, "time,value\n0,1\n");
    CHECK_THROWS_AS(read_speed_csv(path, 30.0), ParseError);
    put(path, "frame,value\n0,abc\n1,2\n");
    CHECK_THROWS_AS(read_speed_csv(path, 30.0), ParseError);
    put(path, "frame,value\n0,1\n");
    CHECK_THROWS_AS(read_speed_csv(path, 30.0), ParseError);  // single sample
    CHECK_THROWS_AS(read_speed_csv(dir.path / "absent.csv", 30.0), ParseError);
}

TEST_CASE("keypoint fixture loads with the documented schema") {
    const KeypointSequence seq = load_keypoints(kDataDir / "pitcherA1_keypoints.json");
    CHECK(seq.subject() == "pitcherA1");
    CHECK(seq.handedness() == Handedness::right);
    CHECK(seq.frame_rate() == 30.0);
    CHECK(seq.joint_names().size() == 25);
    CHECK(seq.frame_count() == 75);
    CHECK(seq.has_joint("left_ankle"));
    CHECK(seq.has_joint("right_wrist"));

    const KeypointSequence flipped =
        load_keypoints(kDataDir / "pitcherA1_keypoints.json", Handedness::left);
    CHECK(flipped.handedness() == Handedness::left);
}

TEST_CASE("keypoint loader reports missing fields") {
    TempDir dir("kp");
    const auto path = dir.path / "broken.json";
    put(path, R"({"subject": "x", "handedness": "right", "frame_rate": 30})");
    CHECK_THROWS_WITH_AS(load_keypoints(path), doctest::Contains("joint_names"), ParseError);
    put(path, "not json at all");
    CHECK_THROWS_AS(load_keypoints(path), ParseError);
}

TEST_CASE("motion manifest resolves entries against its own directory") {
    const auto entries = load_motion_manifest(kDataDir / "manifest.json");
    REQUIRE(entries.size() == 4);
    CHECK(entries[0].label == "A1");
    REQUIRE(entries[0].bounds.has_value());
    CHECK(entries[0].bounds->start_frame == 10);
    CHECK(entries[0].bounds->end_frame == 70);
    CHECK(std::filesystem::exists(entries[0].file));

    const SignalPair pair = load_motion(entries[0]);
    CHECK(pair.label() == "A1");
    CHECK(pair.input().size() == 60);
}

TEST_CASE("pair specs load speed CSVs relative to the spec file") {
    const SignalPair p = load_pair_spec(kDataDir / "pairs" / "A1.json");
    CHECK(p.label() == "A1");
    CHECK(p.input().frame_rate() == 30.0);
    CHECK(p.input().size() == p.output().size());
}

TEST_CASE("load_motion_file dispatches on content") {
    const SignalPair from_pair = load_motion_file(kDataDir / "pairs" / "A1.json");
    CHECK(from_pair.label() == "A1");
    const SignalPair from_keypoints =
        load_motion_file(kDataDir / "pitcherA1_keypoints.json", SegmentBounds{10, 70});
    CHECK(from_keypoints.input().size() == from_pair.input().size());

    TempDir dir("motion");
    const auto path = dir.path / "neither.json";
    put(path, R"({"label": "x"})");
    CHECK_THROWS_AS(load_motion_file(path), ParseError);
}

TEST_CASE("mocap fixture loads with its sidecar manifest") {
    const MocapDataset d = load_mocap(kDataDir / "mocap" / "subjectD.csv");
    CHECK(d.sequence.subject() == "subjectD");
    CHECK(d.sequence.marker_names().size() == 16);
    CHECK(d.sequence.frame_count() == 80);
    CHECK(d.channels.ankle_marker == "left_ankle");
    CHECK(d.channels.wrist_marker == "right_wrist");
    CHECK(d.channels.bounds.start_frame == 5);
    CHECK(d.channels.bounds.end_frame == 75);
}

TEST_CASE("mocap loader validates structure") {
    TempDir dir("mocap");
    const auto csv = dir.path / "m.csv";
    const auto sidecar = dir.path / "m.json";
    put(sidecar, R"({"subject":"m","handedness":"right","frame_rate":100,
        "ankle_marker":"a","wrist_marker":"w","start_frame":0,"end_frame":2})");

    SUBCASE("happy path") {
        put(csv, "frame,marker,x,y,z\n0,a,1,2,3\n0,w,4,5,6\n1,a,1,2,4\n1,w,4,5,7\n");
        const MocapDataset d = load_mocap(csv);
        CHECK(d.sequence.frame_count() == 2);
        CHECK(d.sequence.at(1, 0).z == 4.0);
    }
    SUBCASE("missing frame") {
        put(csv, "frame,marker,x,y,z\n0,a,1,2,3\n0,w,4,5,6\n2,a,1,2,4\n2,w,4,5,7\n");
        CHECK_THROWS_WITH_AS(load_mocap(csv), doctest::Contains("contiguous"), ParseError);
    }
    SUBCASE("inconsistent marker set") {
        put(csv, "frame,marker,x,y,z\n0,a,1,2,3\n0,w,4,5,6\n1,a,1,2,4\n1,q,4,5,7\n");
        CHECK_THROWS_AS(load_mocap(csv), ParseError);
    }
    SUBCASE("duplicate marker") {
        put(csv, "frame,marker,x,y,z\n0,a,1,2,3\n0,a,4,5,6\n");
        CHECK_THROWS_WITH_AS(load_mocap(csv), doctest::Contains("duplicate"), ParseError);
    }
    SUBCASE("missing sidecar") {
        put(csv, "frame,marker,x,y,z\n0,a,1,2,3\n");
        std::filesystem::remove(sidecar);
        CHECK_THROWS_AS(load_mocap(csv), ParseError);
    }
}

TEST_CASE("matrix CSV round-trips bit-exactly") {
    TempDir dir("matrix");
    std::mt19937 rng(83);
    std::vector<std::vector<double>> values(4, std::vector<double>(4, 0.0));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            values[i][j] = values[j][i] = std::uniform_real_distribution<double>(0, 1)(rng);
    const DissimilarityMatrix m({"w", "x", "y", "z"}, values);

    const auto path = dir.path / "m.csv";
    write_matrix_csv(path, m);
    const DissimilarityMatrix back = read_matrix_csv(path);
    CHECK(back.labels() == m.labels());
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(back.at(i, j) == m.at(i, j));

    const auto path2 = dir.path / "m2.csv";
    write_matrix_csv(path2, m);
    CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("the published Table I fixture parses") {
    const DissimilarityMatrix m = read_matrix_csv(kDataDir / "table1_matrix.csv");
    REQUIRE(m.size() == 6);
    CHECK(m.labels() == std::vector<std::string>{"A1", "A2", "B1", "B2", "C1", "C2"});
    CHECK(m.at(0, 1) == 0.1027);
    CHECK(m.at(2, 3) == 0.0986);
    CHECK(m.at(4, 5) == 0.0819);
    CHECK(m.at(1, 5) == 0.2811);
}

TEST_CASE("matrix CSV parser rejects bad files") {
    TempDir dir("matbad");
    const auto path = dir.path / "m.csv";
    put(path, "label,a,b\na,0,1\nb,2,0\n");  // asymmetric
    CHECK_THROWS_AS(read_matrix_csv(path), ParseError);
    put(path, "label,a,b\na,0,1\n");  // missing row
    CHECK_THROWS_AS(read_matrix_csv(path), ParseError);
    put(path, "label,a,b\nb,0,1\na,1,0\n");  // row order mismatch
    CHECK_THROWS_AS(read_matrix_csv(path), ParseError);
    put(path, "a,b\n0,1\n");
    CHECK_THROWS_AS(read_matrix_csv(path), ParseError);
}

TEST_CASE("merge tree serializes to JSON with a Newick string") {
    MergeTree tree;
    tree.leaf_labels = {"A", "B", "C"};
    tree.merges = {{0, 1, 1.0, 3}, {2, 3, 2.0, 4}};

    CHECK(to_newick(tree) == "(C:1,(A:0.5,B:0.5):0.5);");

    TempDir dir("tree");
    const auto path = dir.path / "tree.json";
    write_merge_tree_json(path, tree);
    const auto j = nlohmann::json::parse(slurp(path));
    CHECK(j["leaves"] == nlohmann::json({"A", "B", "C"}));
    CHECK(j["merges"].size() == 2);
    CHECK(j["merges"][0]["a"] == 0);
    CHECK(j["merges"][0]["height"] == 1.0);
    CHECK(j["newick"] == "(C:1,(A:0.5,B:0.5):0.5);");
}

TEST_CASE("sweep results serialize to CSV and a JSON report") {
    AngleSweepResult r;
    r.base_subject = "D";
    r.probe_subject = "E";
    r.entries = {{-10.0, 0.25}, {0.0, 0.0}, {10.0, 0.125}};
    r.errors = {{20.0, "degenerate signal"}};
    r.annotation = "note";

    TempDir dir("sweep");
    const auto csv = dir.path / "s.csv";
    write_sweep_csv(csv, r);
    CHECK(slurp(csv) == "theta_deg,dis\n-10,0.25\n0,0\n10,0.125\n");

    const auto report = dir.path / "report.json";
    write_sweep_report_json(report, {r});
    const auto j = nlohmann::json::parse(slurp(report));
    REQUIRE(j.size() == 1);
    CHECK(j[0]["base_subject"] == "D");
    CHECK(j[0]["entries"].size() == 3);
    CHECK(j[0]["errors"][0]["message"] == "degenerate signal");
    CHECK(j[0]["annotation"] == "note");
}

TEST_CASE("format_double is shortest round-trip") {
    CHECK(format_double(0.1027) == "0.1027");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
}
