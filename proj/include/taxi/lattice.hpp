#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace taxi {

struct Vertex {
    int x = 0;
    int y = 0;

    friend bool operator==(const Vertex&, const Vertex&) = default;
    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

inline bool is_even_vertex(Vertex v) { return ((v.x + v.y) & 1) == 0; }

// Fixed integer tags keep turn-word derivation and file formats deterministic.
enum class Direction : std::uint8_t { N = 0, E = 1, S = 2, W = 3 };

constexpr std::array<Vertex, 4> kStep = {{{0, 1}, {1, 0}, {0, -1}, {-1, 0}}};

inline Vertex step(Vertex v, Direction d) {
    const Vertex s = kStep[static_cast<int>(d)];
    return {v.x + s.x, v.y + s.y};
}

inline bool is_vertical(Direction d) { return d == Direction::N || d == Direction::S; }

// The two legal outgoing directions on the oriented Manhattan lattice:
// streets run E on even rows and W on odd rows, avenues run N on even
// columns and S on odd columns.
inline Direction horizontal_step(Vertex v) { return (v.y & 1) == 0 ? Direction::E : Direction::W; }
inline Direction vertical_step(Vertex v) { return (v.x & 1) == 0 ? Direction::N : Direction::S; }

inline std::array<Direction, 2> legal_steps(Vertex v) {
    return {horizontal_step(v), vertical_step(v)};
}

// The orientation-preserving symmetry f_{(x,y)} sending `anchor` to the
// origin. Which of the four maps applies is fixed by the anchor parities.
class Symmetry {
  public:
    enum class Kind : std::uint8_t {
        Translation,         // both coordinates even
        HalfTurn,            // both odd: translate, then rotate by pi
        FlipAcrossXAxis,     // x odd, y even
        FlipAcrossYAxis,     // x even, y odd
    };

    explicit Symmetry(Vertex anchor) : anchor_(anchor) {
        const bool ex = (anchor.x & 1) == 0, ey = (anchor.y & 1) == 0;
        kind_ = ex ? (ey ? Kind::Translation : Kind::FlipAcrossYAxis)
                   : (ey ? Kind::FlipAcrossXAxis : Kind::HalfTurn);
    }

    Vertex anchor() const { return anchor_; }
    Kind kind() const { return kind_; }

    Vertex apply(Vertex v) const {
        const int tx = v.x - anchor_.x, ty = v.y - anchor_.y;
        switch (kind_) {
            case Kind::Translation: return {tx, ty};
            case Kind::HalfTurn: return {-tx, -ty};
            case Kind::FlipAcrossXAxis: return {tx, -ty};
            case Kind::FlipAcrossYAxis: return {-tx, ty};
        }
        return {};  // unreachable
    }

    Vertex apply_inverse(Vertex v) const {
        switch (kind_) {
            case Kind::Translation: return {v.x + anchor_.x, v.y + anchor_.y};
            case Kind::HalfTurn: return {anchor_.x - v.x, anchor_.y - v.y};
            case Kind::FlipAcrossXAxis: return {v.x + anchor_.x, anchor_.y - v.y};
            case Kind::FlipAcrossYAxis: return {anchor_.x - v.x, v.y + anchor_.y};
        }
        return {};
    }

  private:
    Vertex anchor_;
    Kind kind_;
};

// Image of a directed walk under f_{anchor}; the result starts at the origin
// and is again a legal directed walk.
std::vector<Vertex> canonical_map(Vertex anchor, std::span<const Vertex> walk);

// True iff consecutive vertices are joined by legal oriented edges.
bool is_legal_walk(std::span<const Vertex> walk);

}  // namespace taxi
