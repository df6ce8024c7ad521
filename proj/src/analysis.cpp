#include "crossconv/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace crossconv {

DissimilarityMatrix::DissimilarityMatrix(std::vector<std::string> labels,
                                         std::vector<std::vector<double>> values)
    : labels_(std::move(labels)), values_(std::move(values)) {
    const std::size_t n = labels_.size();
    if (n < 2) throw std::invalid_argument("DissimilarityMatrix: needs at least 2 labels");
    if (values_.size() != n)
        throw std::invalid_argument("DissimilarityMatrix: row count does not match labels");
    for (std::size_t i = 0; i < n; ++i) {
        if (values_[i].size() != n)
            throw std::invalid_argument("DissimilarityMatrix: matrix is not square");
        if (values_[i][i] != 0.0)
            throw std::invalid_argument("DissimilarityMatrix: diagonal entry for '" + labels_[i] +
                                        "' is not zero");
        for (std::size_t j = 0; j < n; ++j) {
            const double v = values_[i][j];
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("DissimilarityMatrix: entry (" + labels_[i] + ", " +
                                            labels_[j] + ") is not a finite non-negative value");
            if (j < i && values_[j][i] != v)
                throw std::invalid_argument("DissimilarityMatrix: asymmetric at (" + labels_[i] +
                                            ", " + labels_[j] + ")");
        }
    }
}

DissimilarityMatrix build_matrix(const std::vector<SignalPair>& pairs, const MatrixOptions& opts) {
    const std::size_t n = pairs.size();
    if (n < 2) throw std::invalid_argument("build_matrix: needs at least 2 pairs");

    std::vector<std::string> labels;
    labels.reserve(n);
    for (const auto& p : pairs) labels.push_back(p.label());

    struct Task {
        std::size_t i, j;
    };
    std::vector<Task> tasks;
    tasks.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) tasks.push_back({i, j});

    std::vector<std::vector<double>> values(n, std::vector<double>(n, 0.0));
    std::vector<std::string> failures(tasks.size());
    std::vector<int> failure_kind(tasks.size(), 0);  // 1 = domain, 2 = invalid

    auto run_task = [&](std::size_t t) {
        const auto [i, j] = tasks[t];
        try {
            values[i][j] = dissimilarity(pairs[i], pairs[j], opts.dissimilarity);
            values[j][i] = values[i][j];
        } catch (const std::domain_error& e) {
            failures[t] = e.what();
            failure_kind[t] = 1;
        } catch (const std::exception& e) {
            failures[t] = e.what();
            failure_kind[t] = 2;
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = opts.parallel ? std::min<std::size_t>(hw, tasks.size()) : 1;
    if (workers <= 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            threads.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1))
                    run_task(t);
            });
        for (auto& th : threads) th.join();
    }

    // report the first failing pair in (i,j) order regardless of which thread
    // hit it first
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        if (failure_kind[t] == 0) continue;
        const auto [i, j] = tasks[t];
        const std::string msg =
            "build_matrix: pair (" + labels[i] + ", " + labels[j] + "): " + failures[t];
        if (failure_kind[t] == 1) throw std::domain_error(msg);
        throw std::invalid_argument(msg);
    }

    return DissimilarityMatrix(std::move(labels), std::move(values));
}

MergeTree ward_cluster(const DissimilarityMatrix& m) {
    const std::size_t n = m.size();
    const std::size_t total = 2 * n - 1;

    // Distances indexed directly by cluster id (leaves 0..n-1, merges n..2n-2).
    // Quadratic in the final node count, which is fine at motion-collection
    // scale; the id indexing keeps the lowest-id tie-break trivial.
    std::vector<std::vector<double>> dist(total, std::vector<double>(total, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dist[i][j] = m.at(i, j);

    std::vector<std::size_t> active(n);
    for (std::size_t i = 0; i < n; ++i) active[i] = i;
    std::vector<std::size_t> count(total, 1);

    MergeTree tree;
    tree.leaf_labels = m.labels();
    tree.merges.reserve(n - 1);

    std::size_t next_id = n;
    while (active.size() > 1) {
        // active stays sorted ascending, so a strict < scan lands on the
        // lowest-id pair among equals
        std::size_t best_i = active[0], best_j = active[1];
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < active.size(); ++a)
            for (std::size_t b = a + 1; b < active.size(); ++b) {
                const std::size_t i = active[a], j = active[b];
                if (dist[i][j] < best) {
                    best = dist[i][j];
                    best_i = i;
                    best_j = j;
                }
            }

        const double ni = static_cast<double>(count[best_i]);
        const double nj = static_cast<double>(count[best_j]);
        const double dij = dist[best_i][best_j];

        // Lance-Williams update for Ward linkage: the merged cluster's
        // distance to each bystander k is
        //   sqrt(((ni+nk) d_ik^2 + (nj+nk) d_jk^2 - nk d_ij^2) / (ni+nj+nk))
        for (std::size_t k : active) {
            if (k == best_i || k == best_j) continue;
            const double nk = static_cast<double>(count[k]);
            const double dik = dist[best_i][k];
            const double djk = dist[best_j][k];
            const double sq =
                ((ni + nk) * dik * dik + (nj + nk) * djk * djk - nk * dij * dij) / (ni + nj + nk);
            const double d = std::sqrt(std::max(sq, 0.0));
            dist[next_id][k] = d;
            dist[k][next_id] = d;
        }

        tree.merges.push_back({best_i, best_j, dij, next_id});
        count[next_id] = count[best_i] + count[best_j];

        std::erase(active, best_i);
        std::erase(active, best_j);
        active.push_back(next_id);  // largest id so far, keeps the order
        ++next_id;
    }

    return tree;
}

double dtw_distance(std::span<const double> s, std::span<const double> t) {
    if (s.empty() || t.empty()) throw std::invalid_argument("dtw_distance: empty input");
    for (double v : s)
        if (!std::isfinite(v)) throw std::invalid_argument("dtw_distance: non-finite sample");
    for (double v : t)
        if (!std::isfinite(v)) throw std::invalid_argument("dtw_distance: non-finite sample");

    const std::size_t n = s.size(), m = t.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> prev(m, inf), cur(m, inf);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double cost = std::abs(s[i] - t[j]);
            double back;
            if (i == 0 && j == 0)
                back = 0.0;
            else if (i == 0)
                back = cur[j - 1];
            else if (j == 0)
                back = prev[j];
            else
                back = std::min({prev[j - 1], prev[j], cur[j - 1]});
            cur[j] = cost + back;
        }
        std::swap(prev, cur);
    }
    return prev[m - 1];
}

double dtw_distance(const Signal& s, const Signal& t) {
    return dtw_distance(std::span<const double>(s.samples()), std::span<const double>(t.samples()));
}

double dtw_pair_distance(const SignalPair& p, const SignalPair& q) {
    return dtw_distance(p.input(), q.input()) + dtw_distance(p.output(), q.output());
}

namespace {

std::string sanitize_newick_label(const std::string& label) {
    std::string out = label;
    for (char& c : out)
        if (c == ',' || c == '(' || c == ')' || c == ':' || c == ';' || c == ' ') c = '_';
    return out;
}

std::string format_branch(double length) {
    std::ostringstream os;
    os.precision(17);
    os << length;
    return os.str();
}

}  // namespace

std::string to_newick(const MergeTree& tree) {
    const std::size_t n = tree.leaf_labels.size();
    if (tree.merges.size() + 1 != n)
        throw std::invalid_argument("to_newick: merge count does not match leaf count");

    // Node depth is half the merge height, so the tip-to-tip path between two
    // leaves equals the height at which they merge (the cophenetic value).
    std::vector<std::string> rendered(n + tree.merges.size());
    std::vector<double> height(n + tree.merges.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) rendered[i] = sanitize_newick_label(tree.leaf_labels[i]);
    for (const Merge& mg : tree.merges) {
        if (mg.a >= mg.id || mg.b >= mg.id || mg.id >= rendered.size())
            throw std::invalid_argument("to_newick: malformed merge ids");
        const double ba = (mg.height - height[mg.a]) / 2.0;
        const double bb = (mg.height - height[mg.b]) / 2.0;
        rendered[mg.id] = "(" + rendered[mg.a] + ":" + format_branch(ba) + "," + rendered[mg.b] +
                          ":" + format_branch(bb) + ")";
        height[mg.id] = mg.height;
    }
    return rendered.back() + ";";
}

}  // namespace crossconv
