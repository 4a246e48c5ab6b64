#include "taxi/lattice.hpp"

namespace taxi {

std::vector<Vertex> canonical_map(Vertex anchor, std::span<const Vertex> walk) {
    if (walk.empty() || !(walk.front() == anchor))
        throw std::invalid_argument("canonical_map: walk must start at the anchor");
    const Symmetry f(anchor);
    std::vector<Vertex> out;
    out.reserve(walk.size());
    for (const Vertex& v : walk) out.push_back(f.apply(v));
    return out;
}

bool is_legal_walk(std::span<const Vertex> walk) {
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        const Vertex a = walk[i], b = walk[i + 1];
        const int dx = b.x - a.x, dy = b.y - a.y;
        if (std::abs(dx) + std::abs(dy) != 1) return false;
        Direction d;
        if (dx == 1) d = Direction::E;
        else if (dx == -1) d = Direction::W;
        else if (dy == 1) d = Direction::N;
        else d = Direction::S;
        if (d != horizontal_step(a) && d != vertical_step(a)) return false;
    }
    return true;
}

}  // namespace taxi
