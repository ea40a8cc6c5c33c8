#include "polariton/diagrams/walks.hpp"

#include <algorithm>
#include <string>

#include "polariton/errors.hpp"
#include "polariton/parallel.hpp"

namespace polariton {

int Walk::raman_steps() const {
    int count = 0;
    for (std::size_t i = 1; i < nodes.size(); ++i) count += nodes[i].depth != nodes[i - 1].depth;
    return count;
}

int Walk::max_depth() const {
    int d = 0;
    for (const auto& n : nodes) d = std::max(d, n.depth);
    return d;
}

WalkClass classify_walk(const Walk& walk) {
    for (std::size_t i = 1; i + 1 < walk.nodes.size(); ++i) {
        if (walk.nodes[i] == ChainNode{BlockKind::Photon, 0}) return WalkClass::Reducible;
    }
    return WalkClass::Irreducible;
}

LadderFamily ladder_family(const Walk& walk) {
    if (classify_walk(walk) == WalkClass::Irreducible) return LadderFamily::Irreducible;
    return walk.raman_steps() == 0 ? LadderFamily::CollectiveRayleigh : LadderFamily::ReducibleMixed;
}

namespace {

// Neighbours of a node in enumeration order.
std::vector<ChainNode> neighbours(const ChainNode& node, int total) {
    std::vector<ChainNode> out;
    if (node.kind == BlockKind::Photon) {
        if (node.depth <= total - 1) out.push_back({BlockKind::Excited, node.depth});
        if (node.depth >= 1) out.push_back({BlockKind::Excited, node.depth - 1});
    } else {
        out.push_back({BlockKind::Photon, node.depth});
        if (node.depth + 1 <= total) out.push_back({BlockKind::Photon, node.depth + 1});
    }
    return out;
}

// Steps needed to get back to Photon 0 from a node.
int distance_home(const ChainNode& node) {
    return node.kind == BlockKind::Photon ? 2 * node.depth : 2 * node.depth + 1;
}

void extend(std::vector<ChainNode>& path, int remaining, int total, std::vector<Walk>& out) {
    const ChainNode here = path.back();
    if (remaining == 0) {
        if (here == ChainNode{BlockKind::Photon, 0}) out.push_back(Walk{path});
        return;
    }
    for (const ChainNode& next : neighbours(here, total)) {
        if (distance_home(next) > remaining - 1) continue;
        path.push_back(next);
        extend(path, remaining - 1, total, out);
        path.pop_back();
    }
}

std::string coupling_label(const ChainNode& from, const ChainNode& to) {
    if (from.kind == BlockKind::Photon) {
        return to.depth == from.depth ? "V" + std::to_string(from.depth) : "v" + std::to_string(to.depth) + "†";
    }
    return to.depth == from.depth ? "V" + std::to_string(from.depth) + "†" : "v" + std::to_string(from.depth);
}

std::string propagator_label(const ChainNode& node) {
    return (node.kind == BlockKind::Photon ? "Gph" : "Ge") + std::to_string(node.depth);
}

}  // namespace

std::vector<Walk> enumerate_walks(int m, int total_count) {
    if (m < 0) throw RangeError("walk order must be non-negative");
    if (total_count < 1) throw RangeError("walk enumeration needs N >= 1");
    std::vector<Walk> out;
    std::vector<ChainNode> path{{BlockKind::Photon, 0}};
    extend(path, 2 * m, total_count, out);
    return out;
}

std::vector<std::string> walk_factors(const Walk& walk) {
    std::vector<std::string> out;
    if (walk.nodes.empty()) return out;
    out.push_back(propagator_label(walk.nodes.front()));
    for (std::size_t i = 1; i < walk.nodes.size(); ++i) {
        out.push_back(coupling_label(walk.nodes[i - 1], walk.nodes[i]));
        out.push_back(propagator_label(walk.nodes[i]));
    }
    return out;
}

std::string ladder_string(const Walk& walk) {
    std::string out;
    for (const auto& f : walk_factors(walk)) {
        if (!out.empty()) out += "·";
        out += f;
    }
    return out;
}

WalkTerm evaluate_walk(const BlockChain& chain, const Walk& walk, double omega) {
    const auto& spec = chain.spec();
    if (walk.nodes.empty() || walk.nodes.front() != ChainNode{BlockKind::Photon, 0} ||
        walk.nodes.back() != ChainNode{BlockKind::Photon, 0}) {
        throw ConfigError("walk must start and end at the depth-0 photon block");
    }
    if (walk.max_depth() > chain.max_depth()) throw RangeError("chain does not cover the walk");

    auto propagator = [&](const ChainNode& node) {
        const auto& b = chain.at(node.depth);
        return node.kind == BlockKind::Photon ? bare_resolvent(b.h_ph, omega, spec.cavity.kappa)
                                              : bare_resolvent(b.h_e, omega, spec.gamma);
    };

    // Row vector carried along the walk: <vac| G ... at the current block.
    Eigen::RowVectorXcd state = propagator(walk.nodes.front()).transpose();
    for (std::size_t i = 1; i < walk.nodes.size(); ++i) {
        const ChainNode& from = walk.nodes[i - 1];
        const ChainNode& to = walk.nodes[i];
        Eigen::RowVectorXcd next;
        if (from.kind == BlockKind::Photon && to.depth == from.depth) {
            next = state * chain.at(from.depth).V;
        } else if (from.kind == BlockKind::Photon) {
            next = state * chain.at(to.depth).v.adjoint();
        } else if (to.depth == from.depth) {
            next = state * chain.at(from.depth).V.adjoint();
        } else {
            next = state * chain.at(from.depth).v;
        }
        state = next.cwiseProduct(propagator(to).transpose());
    }

    WalkTerm term;
    term.walk = walk;
    term.factors = walk_factors(walk);
    term.value = state(0);
    term.n_scaling_exponent = walk.raman_steps() / 2;
    term.reducible = classify_walk(walk) == WalkClass::Reducible;
    return term;
}

WalkTerm evaluate_walk(const EnsembleSpec& spec, const Walk& walk, double omega) {
    validate(spec);
    const BlockChain chain(spec, walk.max_depth());
    return evaluate_walk(chain, walk, omega);
}

GreenResult dyson_partial_sum(const EnsembleSpec& spec, std::span<const double> omegas, int m_max) {
    validate(spec);
    if (m_max < 0) throw RangeError("Dyson order must be non-negative");
    const int total = spec.total_count();
    std::vector<Walk> walks;
    int depth = 0;
    for (int m = 1; m <= m_max; ++m) {
        for (auto& w : enumerate_walks(m, total)) {
            depth = std::max(depth, w.max_depth());
            walks.push_back(std::move(w));
        }
    }
    const BlockChain chain(spec, depth);

    GreenResult out;
    out.omegas.assign(omegas.begin(), omegas.end());
    out.values.assign(omegas.size(), cplx{});
    out.engine = EngineTag{EngineKind::DysonSum, m_max};
    out.spec_hash = spec_hash(spec);
    parallel_for(omegas.size(), [&](std::size_t i) {
        cplx sum = bare_photon_propagator(spec, omegas[i]);
        for (const Walk& w : walks) sum += evaluate_walk(chain, w, omegas[i]).value;
        out.values[i] = sum;
    });
    return out;
}

}  // namespace polariton
