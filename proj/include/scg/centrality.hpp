#pragma once

#include <Eigen/Dense>

#include "scg/digraph.hpp"

namespace scg {

struct CentralityResult {
    Eigen::VectorXd scores;
    bool converged = true;
    int iterations = 0;
    double parameter = 0.0;  // Katz: the alpha actually used
};

/// Power iteration with uniform teleport; dangling mass is spread uniformly.
CentralityResult pageRank(const Digraph& g, double damping = 0.85, double tol = 1e-8, int maxIter = 100);

/// Aggregates over incoming edges with the shifted iteration x <- (A^T + I) x,
/// L2-normalized.
CentralityResult eigenvectorCentrality(const Digraph& g, double tol = 1e-8, int maxIter = 1000);

/// Solves x = alpha A^T x + beta by iteration, L2-normalized. Alpha is halved
/// and the solve restarted whenever the iteration diverges.
CentralityResult katzCentrality(const Digraph& g, double alpha = 0.1, double beta = 1.0, double tol = 1e-8,
                                int maxIter = 1000);

/// Brandes' algorithm on the unweighted directed graph, unnormalized.
Eigen::VectorXd betweennessCentrality(const Digraph& g);

/// Sum of 1/d(u, v) along outgoing shortest paths, divided by n - 1.
Eigen::VectorXd harmonicCentrality(const Digraph& g);

}  // namespace scg
