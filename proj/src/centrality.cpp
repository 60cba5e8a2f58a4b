#include "scg/centrality.hpp"

#include <cmath>
#include <queue>
#include <stack>

namespace scg {

namespace {

using Eigen::VectorXd;

// y = A^T x: every vertex collects the scores of its predecessors.
void collectIncoming(const Digraph& g, const VectorXd& x, VectorXd& y) {
    const auto n = g.vertexCount();
    for (std::size_t v = 0; v < n; ++v) {
        double s = 0.0;
        for (auto u : g.predecessors(v)) s += x[static_cast<Eigen::Index>(u)];
        y[static_cast<Eigen::Index>(v)] = s;
    }
}

}  // namespace

CentralityResult pageRank(const Digraph& g, double damping, double tol, int maxIter) {
    const auto n = static_cast<Eigen::Index>(g.vertexCount());
    CentralityResult r;
    r.parameter = damping;
    if (n == 0) return r;
    VectorXd x = VectorXd::Constant(n, 1.0 / n);
    VectorXd share(n);
    VectorXd next(n);
    r.converged = false;
    for (r.iterations = 1; r.iterations <= maxIter; ++r.iterations) {
        double dangling = 0.0;
        for (Eigen::Index u = 0; u < n; ++u) {
            const auto d = g.outDegree(static_cast<std::size_t>(u));
            share[u] = d ? x[u] / static_cast<double>(d) : 0.0;
            if (!d) dangling += x[u];
        }
        collectIncoming(g, share, next);
        next = damping * next;
        next.array() += (1.0 - damping + damping * dangling) / static_cast<double>(n);
        const double change = (next - x).lpNorm<1>();
        x.swap(next);
        if (change < tol) {
            r.converged = true;
            break;
        }
    }
    r.iterations = std::min(r.iterations, maxIter);
    r.scores = x / x.sum();
    return r;
}

CentralityResult eigenvectorCentrality(const Digraph& g, double tol, int maxIter) {
    const auto n = static_cast<Eigen::Index>(g.vertexCount());
    CentralityResult r;
    if (n == 0) return r;
    VectorXd x = VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    VectorXd next(n);
    r.converged = false;
    for (r.iterations = 1; r.iterations <= maxIter; ++r.iterations) {
        collectIncoming(g, x, next);
        next += x;
        double norm = next.norm();
        if (norm == 0.0) {
            next.setConstant(1.0 / std::sqrt(static_cast<double>(n)));
            norm = 1.0;
        }
        next /= norm;
        const double change = (next - x).lpNorm<1>();
        x.swap(next);
        if (change < tol) {
            r.converged = true;
            break;
        }
    }
    r.iterations = std::min(r.iterations, maxIter);
    r.scores = x;
    return r;
}

CentralityResult katzCentrality(const Digraph& g, double alpha, double beta, double tol, int maxIter) {
    const auto n = static_cast<Eigen::Index>(g.vertexCount());
    CentralityResult r;
    r.parameter = alpha;
    if (n == 0) return r;
    // Divergence shows up as unbounded growth; a convergent solve is bounded
    // by beta / (1 - alpha * lambda_max), far below this limit.
    const double limit = std::abs(beta) * 1e12 + 1.0;
    VectorXd x(n);
    VectorXd next(n);
    for (int attempt = 0; attempt < 60; ++attempt) {
        x.setZero();
        bool diverged = false;
        r.converged = false;
        for (r.iterations = 1; r.iterations <= maxIter; ++r.iterations) {
            collectIncoming(g, x, next);
            next = alpha * next;
            next.array() += beta;
            const double change = (next - x).lpNorm<1>();
            x.swap(next);
            if (!std::isfinite(change) || x.lpNorm<Eigen::Infinity>() > limit) {
                diverged = true;
                break;
            }
            if (change < tol * static_cast<double>(n)) {
                r.converged = true;
                break;
            }
        }
        r.iterations = std::min(r.iterations, maxIter);
        if (!diverged) break;
        alpha /= 2;
        r.parameter = alpha;
    }
    const double norm = x.norm();
    r.scores = norm > 0 ? VectorXd(x / norm) : VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    return r;
}

Eigen::VectorXd betweennessCentrality(const Digraph& g) {
    const auto n = g.vertexCount();
    VectorXd bc = VectorXd::Zero(static_cast<Eigen::Index>(n));
    std::vector<double> sigma(n);
    std::vector<double> delta(n);
    std::vector<long> dist(n);
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        std::fill(dist.begin(), dist.end(), -1);
        order.clear();
        sigma[s] = 1.0;
        dist[s] = 0;
        std::queue<std::size_t> queue;
        queue.push(s);
        while (!queue.empty()) {
            auto v = queue.front();
            queue.pop();
            order.push_back(v);
            for (auto w : g.successors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push(w);
                }
                if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
            }
        }
        // Dependencies accumulate in reverse BFS order; predecessors on
        // shortest paths are recovered from the distance labels.
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            auto w = *it;
            for (auto v : g.predecessors(w)) {
                if (dist[v] >= 0 && dist[v] + 1 == dist[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if (w != s) bc[static_cast<Eigen::Index>(w)] += delta[w];
        }
    }
    return bc;
}

Eigen::VectorXd harmonicCentrality(const Digraph& g) {
    const auto n = g.vertexCount();
    VectorXd h = VectorXd::Zero(static_cast<Eigen::Index>(n));
    if (n < 2) return h;
    std::vector<long> dist(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        std::queue<std::size_t> queue;
        queue.push(s);
        double sum = 0.0;
        while (!queue.empty()) {
            auto v = queue.front();
            queue.pop();
            if (v != s) sum += 1.0 / static_cast<double>(dist[v]);
            for (auto w : g.successors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push(w);
                }
            }
        }
        h[static_cast<Eigen::Index>(s)] = sum / static_cast<double>(n - 1);
    }
    return h;
}

}  // namespace scg
