#include "taxi/polygons.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <stdexcept>

#include "taxi/walk_dfs.hpp"

namespace taxi {

namespace {

// Closed-walk DFS. Distance pruning: a vertex can only lie on a polygon of
// length <= max_len if its Manhattan distance to the origin fits in the
// remaining steps.
struct PolygonSearch {
    unsigned max_len;
    OccupancyGrid grid;
    std::string word;  // turn flags of steps 2..depth
    std::vector<std::string>* out;

    PolygonSearch(unsigned max_len_, std::vector<std::string>* out_)
        : max_len(max_len_), grid(static_cast<int>(max_len_)), out(out_) {
        grid.set({0, 0});
    }

    void run(Direction first) {
        const Vertex w = step({0, 0}, first);
        grid.set(w);
        descend(w, first, false, 1);
        grid.clear(w);
    }

    void descend(Vertex v, Direction dir, bool turned, unsigned depth) {
        if (depth >= max_len) return;
        try_child(v, dir, false, depth);
        if (!turned) {
            const Direction td = is_vertical(dir) ? horizontal_step(v) : vertical_step(v);
            try_child(v, td, true, depth);
        }
    }

    void try_child(Vertex v, Direction d, bool turn, unsigned depth) {
        const Vertex w = step(v, d);
        if (w == Vertex{0, 0}) {
            if (depth + 1 >= 4) {
                out->push_back(word);
                out->back().push_back(turn ? 't' : 's');
            }
            return;
        }
        const unsigned dist = static_cast<unsigned>(std::abs(w.x) + std::abs(w.y));
        if (dist > max_len - depth - 1 || grid.test(w)) return;
        grid.set(w);
        word.push_back(turn ? 't' : 's');
        descend(w, d, turn, depth + 1);
        word.pop_back();
        grid.clear(w);
    }
};

}  // namespace

std::vector<std::string> enumerate_taxi_polygon_words(unsigned max_len, unsigned jobs) {
    if (max_len < 4) throw std::invalid_argument("polygons need max_len >= 4");
    std::vector<std::string> words;
    if (jobs <= 1 || max_len <= 20) {
        PolygonSearch search(max_len, &words);
        search.run(Direction::N);
        search.run(Direction::E);
    } else {
        // Split by walk prefixes of fixed depth; each worker re-runs its
        // subtree with a private word list.
        constexpr unsigned kSplit = 10;
        struct Prefix {
            std::vector<Direction> dirs;
        };
        std::vector<Prefix> prefixes;
        {
            struct Collect {
                unsigned depth;
                std::vector<Prefix>* out;
                bool admit(const WalkDfsState&, Vertex, unsigned, bool) const { return true; }
                void enter(const WalkDfsState& st, unsigned d) {
                    if (d == depth) out->push_back({{st.dirs.begin() + 1, st.dirs.begin() + 1 + d}});
                }
                void leave(const WalkDfsState&, unsigned) {}
            } coll{kSplit, &prefixes};
            walk_dfs(coll, kSplit);
        }
        // Short polygons (closing at depth <= kSplit) in one sequential pass.
        {
            PolygonSearch search(std::min(max_len, kSplit), &words);
            search.run(Direction::N);
            search.run(Direction::E);
        }
        std::mutex mu;
        parallel_for_index(prefixes.size(), jobs, [&](std::size_t i, unsigned) {
            std::vector<std::string> local;
            PolygonSearch search(max_len, &local);
            // replay prefix
            Vertex v{0, 0};
            Direction dir = Direction::N;
            bool turned = false;
            bool dead = false;
            unsigned depth = 0;
            for (Direction d : prefixes[i].dirs) {
                const Vertex w = step(v, d);
                const unsigned dist = static_cast<unsigned>(std::abs(w.x) + std::abs(w.y));
                if (w == Vertex{0, 0} || dist > max_len - depth - 1) {
                    dead = true;  // closures here were handled in the sequential pass
                    break;
                }
                turned = depth > 0 && is_vertical(d) != is_vertical(dir);
                search.grid.set(w);
                if (depth >= 1) search.word.push_back(turned ? 't' : 's');
                v = w;
                dir = d;
                ++depth;
            }
            if (!dead) search.descend(v, dir, turned, depth);
            std::lock_guard<std::mutex> lock(mu);
            words.insert(words.end(), local.begin(), local.end());
        });
    }
    std::sort(words.begin(), words.end(), [](const std::string& a, const std::string& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return words;
}

std::filesystem::path save_polygon_words(const std::vector<std::string>& words, unsigned max_len,
                                         const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    fs::path target = path;
    if (fs::is_directory(path) || path.extension().empty())
        target = path / ("polygons_le" + std::to_string(max_len) + ".txt");
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        for (const auto& w : words) out << w << '\n';
    }
    fs::rename(tmp, target);
    return target;
}

}  // namespace taxi
