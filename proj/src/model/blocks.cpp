#include "polariton/model/blocks.hpp"

#include <cmath>
#include <map>
#include <string>

#include "polariton/errors.hpp"

namespace polariton {
namespace {

double phonon_energy(const EnsembleSpec& spec, const std::vector<Channel>& channels, const PhononConfig& c) {
    double e = 0.0;
    for (std::size_t k = 0; k < channels.size(); ++k) {
        e += c.occupations[k] * spec.species[channels[k].species].phonon_energy(channels[k].level);
    }
    return e;
}

std::map<std::vector<int>, Eigen::Index> index_of(const std::vector<PhononConfig>& states) {
    std::map<std::vector<int>, Eigen::Index> out;
    for (std::size_t i = 0; i < states.size(); ++i) out.emplace(states[i].occupations, static_cast<Eigen::Index>(i));
    return out;
}

}  // namespace

BlockOperators build_block_operators(const EnsembleSpec& spec, int depth) {
    const int total = spec.total_count();
    BlockOperators ops;
    ops.depth = depth;
    ops.photon_basis = enumerate_block_basis(spec, depth, BlockKind::Photon);
    const auto& channels = ops.photon_basis.channels;
    const auto& photons = ops.photon_basis.photon_states;

    ops.h_ph.resize(static_cast<Eigen::Index>(photons.size()));
    for (std::size_t i = 0; i < photons.size(); ++i) {
        ops.h_ph(i) = spec.cavity.omega_ph + phonon_energy(spec, channels, photons[i]);
    }

    if (depth == total) {
        ops.excited_basis.kind = BlockKind::Excited;
        ops.excited_basis.depth = depth;
        ops.excited_basis.channels = channels;
        ops.V.resize(ops.h_ph.size(), 0);
        return ops;
    }

    ops.excited_basis = enumerate_block_basis(spec, depth, BlockKind::Excited);
    const auto& excited = ops.excited_basis.excited_states;
    const auto ne = static_cast<Eigen::Index>(excited.size());
    ops.h_e.resize(ne);
    ops.V = Eigen::MatrixXcd::Zero(ops.h_ph.size(), ne);

    const auto photon_index = index_of(photons);
    for (Eigen::Index k = 0; k < ne; ++k) {
        const auto& state = excited[k];
        const auto& sp = spec.species[state.label.species];
        ops.h_e(k) = sp.excitation_energy(state.label.level) + phonon_energy(spec, channels, state.config);
        // Rayleigh: photon absorbed by a vibrationless molecule of this species.
        const Eigen::Index i = photon_index.at(state.config.occupations);
        const int unexcited = sp.count - state.config.species_total(channels, state.label.species);
        ops.V(i, k) = spec.lambda * std::sqrt(double(unexcited)) * sp.fc_overlaps(state.label.level, 0);
    }

    // Raman: the excited molecule emits into the cavity and lands in ground
    // level j >= 1 of its own species.
    const BlockBasis next = enumerate_block_basis(spec, depth + 1, BlockKind::Photon);
    const auto next_index = index_of(next.photon_states);
    ops.v = Eigen::MatrixXcd::Zero(ne, static_cast<Eigen::Index>(next.photon_states.size()));
    for (Eigen::Index k = 0; k < ne; ++k) {
        const auto& state = excited[k];
        const auto& sp = spec.species[state.label.species];
        for (std::size_t c = 0; c < channels.size(); ++c) {
            if (channels[c].species != state.label.species) continue;
            std::vector<int> target = state.config.occupations;
            const int before = target[c];
            target[c] += 1;
            const Eigen::Index t = next_index.at(target);
            ops.v(k, t) = spec.lambda * std::sqrt(double(before + 1)) *
                          std::conj(sp.fc_overlaps(state.label.level, channels[c].level));
        }
    }
    return ops;
}

BlockChain::BlockChain(const EnsembleSpec& spec, int max_depth) : spec_(spec), total_(spec.total_count()) {
    const int depth = max_depth < 0 ? total_ : std::min(max_depth, total_);
    blocks_.reserve(static_cast<std::size_t>(depth) + 1);
    for (int n = 0; n <= depth; ++n) blocks_.push_back(build_block_operators(spec_, n));
}

const BlockOperators& BlockChain::at(int depth) const {
    if (depth < 0 || depth > max_depth()) {
        throw RangeError("chain depth " + std::to_string(depth) + " not built (max " + std::to_string(max_depth()) +
                         ")");
    }
    return blocks_[static_cast<std::size_t>(depth)];
}

int BlockChain::photon_dim(int depth) const {
    return depth < 0 || depth > max_depth() ? 0 : static_cast<int>(blocks_[depth].h_ph.size());
}

int BlockChain::excited_dim(int depth) const {
    return depth < 0 || depth > max_depth() ? 0 : static_cast<int>(blocks_[depth].h_e.size());
}

}  // namespace polariton
