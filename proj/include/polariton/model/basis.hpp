#pragma once

#include <cstddef>
#include <vector>

#include "polariton/model/spec.hpp"

namespace polariton {

enum class BlockKind { Photon, Excited };

/// Flat index over the phonon-carrying channels (s, j >= 1), ordered by species
/// then level.
struct Channel {
    int species;
    int level;
};

std::vector<Channel> phonon_channels(const EnsembleSpec& spec);

/// Number of molecules sitting in each excited vibrational level of the ground
/// state, one entry per channel of phonon_channels().
struct PhononConfig {
    std::vector<int> occupations;

    int order() const;
    /// Molecules of species s that carry a ground-state phonon.
    int species_total(const std::vector<Channel>& channels, int s) const;

    auto operator<=>(const PhononConfig&) const = default;
};

struct ExcitedLabel {
    int species;
    int level;  ///< excited vibrational level j'

    auto operator<=>(const ExcitedLabel&) const = default;
};

struct ExcitedState {
    PhononConfig config;
    ExcitedLabel label;
};

/// Basis of one chain block: H_ph,n (Photon) or H_e,n (Excited).
struct BlockBasis {
    BlockKind kind = BlockKind::Photon;
    int depth = 0;
    std::vector<Channel> channels;
    std::vector<PhononConfig> photon_states;    ///< Photon kind only
    std::vector<ExcitedState> excited_states;   ///< Excited kind only

    std::size_t size() const {
        return kind == BlockKind::Photon ? photon_states.size() : excited_states.size();
    }
    bool empty() const { return size() == 0; }
};

/// All admissible configurations at chain depth n, in lexicographic order of
/// the occupation vector and then of the excited label. Throws RangeError when
/// n is outside [0, N] (Photon) or [0, N-1] (Excited).
BlockBasis enumerate_block_basis(const EnsembleSpec& spec, int depth, BlockKind kind);

}  // namespace polariton
