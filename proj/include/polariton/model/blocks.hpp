#pragma once

#include <vector>

#include <Eigen/Dense>

#include "polariton/model/basis.hpp"

namespace polariton {

/// Blocks of the first-excitation-manifold Hamiltonian at one chain depth n.
///
/// h_ph and h_e are the (real, diagonal) bare energies measured from the
/// all-ground initial state. V couples H_ph,n to H_e,n (collective, O(lambda
/// sqrt N)); v couples H_e,n to H_ph,n+1 (single molecule, O(lambda)). Losses
/// are not included here; callers add -i kappa/2 and -i gamma/2.
struct BlockOperators {
    int depth = 0;
    BlockBasis photon_basis;
    BlockBasis excited_basis;  ///< empty at depth N
    Eigen::VectorXd h_ph;
    Eigen::VectorXd h_e;
    Eigen::MatrixXcd V;  ///< dim(ph,n) x dim(e,n)
    Eigen::MatrixXcd v;  ///< dim(e,n) x dim(ph,n+1)
};

/// Builds the depth-n blocks. Depth N is accepted and yields only the photon
/// block (H_e,N does not exist).
BlockOperators build_block_operators(const EnsembleSpec& spec, int depth);

/// Blocks for depths 0..max_depth, built once and shared read-only.
class BlockChain {
public:
    /// max_depth < 0 means the full chain (depth N).
    explicit BlockChain(const EnsembleSpec& spec, int max_depth = -1);

    const EnsembleSpec& spec() const { return spec_; }
    int max_depth() const { return static_cast<int>(blocks_.size()) - 1; }
    int total_count() const { return total_; }
    const BlockOperators& at(int depth) const;

    /// Dimension of the photon / excited block, 0 beyond the stored range.
    int photon_dim(int depth) const;
    int excited_dim(int depth) const;

private:
    EnsembleSpec spec_;
    int total_;
    std::vector<BlockOperators> blocks_;
};

}  // namespace polariton
