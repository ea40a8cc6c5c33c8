#pragma once

#include <span>
#include <string>
#include <vector>

#include "polariton/engines/green.hpp"
#include "polariton/model/blocks.hpp"

namespace polariton {

/// Node of the block chain H_ph,0 - H_e,0 - H_ph,1 - H_e,1 - ...
struct ChainNode {
    BlockKind kind = BlockKind::Photon;
    int depth = 0;

    bool operator==(const ChainNode&) const = default;
};

/// Closed walk on the chain from H_ph,0 back to H_ph,0; 2m steps, 2m+1 nodes.
struct Walk {
    std::vector<ChainNode> nodes;

    int steps() const { return static_cast<int>(nodes.size()) - 1; }
    /// Steps between blocks of different depth (v or v^dagger).
    int raman_steps() const;
    int max_depth() const;
};

enum class WalkClass { Reducible, Irreducible };

/// Reducible iff the walk returns to H_ph,0 at an interior node.
WalkClass classify_walk(const Walk& walk);

/// Finer labels used when comparing with ladder-diagram tables: a reducible
/// walk with no Raman step is a power of the collective Rayleigh bounce.
enum class LadderFamily { CollectiveRayleigh, ReducibleMixed, Irreducible };
LadderFamily ladder_family(const Walk& walk);

/// All closed 2m-step walks for an ensemble of N molecules, lexicographic in
/// the step sequence. At a photon node the V step precedes v^dagger; at an
/// excited node V^dagger precedes v.
std::vector<Walk> enumerate_walks(int m, int total_count);

/// Symbolic factors, e.g. {"Gph0","V0","Ge0","V0†","Gph0"}.
std::vector<std::string> walk_factors(const Walk& walk);
/// Factors joined by a middle dot.
std::string ladder_string(const Walk& walk);

struct WalkTerm {
    Walk walk;
    std::vector<std::string> factors;
    cplx value;
    /// Power of 1/N at fixed lambda sqrt(N): half the number of Raman steps.
    int n_scaling_exponent = 0;
    bool reducible = false;
};

/// Ordered product G_ph,0 * coupling * bare propagator * ... * G_ph,0. The
/// chain must cover the deepest node of the walk.
WalkTerm evaluate_walk(const BlockChain& chain, const Walk& walk, double omega);
WalkTerm evaluate_walk(const EnsembleSpec& spec, const Walk& walk, double omega);

/// G_ph,0 + sum of all walks with 1..m_max round trips.
GreenResult dyson_partial_sum(const EnsembleSpec& spec, std::span<const double> omegas, int m_max);

inline constexpr int kDefaultMaxDysonOrder = 8;

}  // namespace polariton
