#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "crossconv/signal.hpp"

namespace crossconv {

// Symmetric pairwise dissimilarities over a labeled motion set.
class DissimilarityMatrix {
public:
    DissimilarityMatrix(std::vector<std::string> labels, std::vector<std::vector<double>> values);

    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    double at(std::size_t i, std::size_t j) const { return values_[i][j]; }
    const std::vector<std::vector<double>>& values() const { return values_; }

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<double>> values_;
};

// One agglomeration step. Cluster ids follow the usual linkage convention:
// leaves are 0..n-1, the k-th merge creates id n+k.
struct Merge {
    std::size_t a = 0;
    std::size_t b = 0;
    double height = 0.0;
    std::size_t id = 0;
};

struct MergeTree {
    std::vector<std::string> leaf_labels;
    std::vector<Merge> merges;  // exactly leaf_labels.size()-1 entries, heights non-decreasing
};

struct MatrixOptions {
    DissimilarityOptions dissimilarity;
    bool parallel = true;
};

// values[i][j] = dissimilarity(pairs[i], pairs[j]); the upper triangle is
// evaluated in parallel and mirrored. A failing pair aborts the build with
// both labels in the message.
DissimilarityMatrix build_matrix(const std::vector<SignalPair>& pairs,
                                 const MatrixOptions& opts = {});

// Agglomerative clustering with the Ward linkage update, treating matrix
// entries directly as inter-point distances. Equal linkage values break
// toward the lowest cluster-id pair so runs are reproducible.
MergeTree ward_cluster(const DissimilarityMatrix& m);

// Classic unconstrained DTW: absolute-difference local cost, full window,
// match/insert/delete steps, unnormalized accumulated cost.
double dtw_distance(std::span<const double> s, std::span<const double> t);
double dtw_distance(const Signal& s, const Signal& t);

// Channel-wise DTW baseline for pairs: input-vs-input plus output-vs-output,
// each channel compared independently.
double dtw_pair_distance(const SignalPair& p, const SignalPair& q);

std::string to_newick(const MergeTree& tree);

}  // namespace crossconv
