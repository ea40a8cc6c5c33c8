#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "polariton/model/spec.hpp"

namespace polariton {

inline constexpr std::size_t kDefaultDenseLimit = 20000;

struct DenseHamiltonian {
    /// H_1 with -i kappa/2 on photon blocks and -i gamma/2 on excited blocks.
    Eigen::MatrixXcd matrix;
    /// Row of |1_ph; no phonons>.
    Eigen::Index vacuum_index = 0;
};

/// Concatenates the chain blocks H_ph,0, H_e,0, H_ph,1, ... up to
/// `max_depth` (default: the whole chain) into one dense matrix. Throws
/// SizingError when the total dimension exceeds `limit`.
DenseHamiltonian assemble_dense_h1(const EnsembleSpec& spec,
                                   std::optional<int> max_depth = std::nullopt,
                                   std::size_t limit = kDefaultDenseLimit);

/// Total dimension the assembly would have, without building it.
std::size_t dense_dimension(const EnsembleSpec& spec, std::optional<int> max_depth = std::nullopt);

}  // namespace polariton
