#pragma once

#include <Eigen/Dense>

#include "digh/random_walk.hpp"

namespace digh {

enum class LaplacianKind { normalized, random_walk, combinatorial };

// I - (Pi^{1/2} P Pi^{-1/2} + Pi^{-1/2} P^T Pi^{1/2}) / 2. Symmetric PSD.
Eigen::MatrixXd normalized_laplacian(const RandomWalk& w);

// I - (P + P*) / 2. Self-adjoint in l2(V, pi); the same for every P_alpha.
Eigen::MatrixXd random_walk_laplacian(const RandomWalk& w);

// Pi - (Pi P + P^T Pi) / 2 = Pi L_RW.
Eigen::MatrixXd combinatorial_laplacian(const RandomWalk& w);

Eigen::MatrixXd laplacian(const RandomWalk& w, LaplacianKind kind);

}  // namespace digh
