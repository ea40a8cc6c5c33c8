#include "polariton/model/basis.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "polariton/errors.hpp"

namespace polariton {

std::vector<Channel> phonon_channels(const EnsembleSpec& spec) {
    std::vector<Channel> out;
    for (int s = 0; s < static_cast<int>(spec.species.size()); ++s) {
        for (int j = 1; j < spec.species[s].ground_count(); ++j) out.push_back({s, j});
    }
    return out;
}

int PhononConfig::order() const { return std::accumulate(occupations.begin(), occupations.end(), 0); }

int PhononConfig::species_total(const std::vector<Channel>& channels, int s) const {
    int n = 0;
    for (std::size_t c = 0; c < channels.size(); ++c) {
        if (channels[c].species == s) n += occupations[c];
    }
    return n;
}

namespace {

// Depth-first fill of channel occupations; smaller values first so the output
// is lexicographically ascending.
void distribute(const std::vector<Channel>& channels, std::vector<int>& species_left, std::size_t channel,
                int remaining, std::vector<int>& current, std::vector<PhononConfig>& out) {
    if (channel == channels.size()) {
        if (remaining == 0) out.push_back({current});
        return;
    }
    const int s = channels[channel].species;
    const int top = std::min(remaining, species_left[s]);
    for (int k = 0; k <= top; ++k) {
        current[channel] = k;
        species_left[s] -= k;
        distribute(channels, species_left, channel + 1, remaining - k, current, out);
        species_left[s] += k;
    }
    current[channel] = 0;
}

}  // namespace

BlockBasis enumerate_block_basis(const EnsembleSpec& spec, int depth, BlockKind kind) {
    const int total = spec.total_count();
    const int top = kind == BlockKind::Photon ? total : total - 1;
    if (depth < 0 || depth > top) {
        throw RangeError(std::string(kind == BlockKind::Photon ? "photon" : "excited") + " block depth " +
                         std::to_string(depth) + " outside [0, " + std::to_string(top) + "]");
    }
    BlockBasis basis;
    basis.kind = kind;
    basis.depth = depth;
    basis.channels = phonon_channels(spec);

    std::vector<int> species_left;
    for (const auto& s : spec.species) species_left.push_back(s.count);
    std::vector<PhononConfig> configs;
    std::vector<int> current(basis.channels.size(), 0);
    distribute(basis.channels, species_left, 0, depth, current, configs);

    if (kind == BlockKind::Photon) {
        basis.photon_states = std::move(configs);
        return basis;
    }
    for (const auto& c : configs) {
        for (int s = 0; s < static_cast<int>(spec.species.size()); ++s) {
            if (c.species_total(basis.channels, s) + 1 > spec.species[s].count) continue;
            for (int jp = 0; jp < spec.species[s].excited_count(); ++jp) {
                basis.excited_states.push_back({c, {s, jp}});
            }
        }
    }
    return basis;
}

}  // namespace polariton
