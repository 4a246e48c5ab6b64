#include "taxi/word_count.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <stdexcept>

#include "taxi/polygons.hpp"

namespace taxi {

namespace {

int sym(char c) {
    if (c == 's') return 0;
    if (c == 't') return 1;
    throw std::invalid_argument("mistake words must be over {s,t}");
}

}  // namespace

MistakeSet MistakeSet::reduce(std::vector<std::string> words) {
    for (const auto& w : words) {
        if (w.empty()) throw std::invalid_argument("empty mistake word");
        for (char c : w) sym(c);
    }
    std::sort(words.begin(), words.end(), [](const std::string& a, const std::string& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    words.erase(std::unique(words.begin(), words.end()), words.end());
    MistakeSet out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < words.size() && !dominated; ++j) {
            if (j == i || words[j].size() >= words[i].size()) continue;
            dominated = words[i].find(words[j]) != std::string::npos;
        }
        if (!dominated) out.words_.push_back(words[i]);
    }
    return out;
}

MistakeSet MistakeSet::taxi_mistakes(unsigned polygon_max, unsigned jobs) {
    std::vector<std::string> words = enumerate_taxi_polygon_words(polygon_max, jobs);
    words.emplace_back("tt");
    return reduce(std::move(words));
}

FactorAutomaton::FactorAutomaton(const MistakeSet& mistakes) {
    // Trie
    std::vector<std::array<std::int32_t, 2>> child;
    child.push_back({-1, -1});
    dead_.push_back(0);
    for (const auto& w : mistakes.words()) {
        std::int32_t s = 0;
        for (char c : w) {
            const int a = sym(c);
            if (child[s][a] < 0) {
                child[s][a] = static_cast<std::int32_t>(child.size());
                child.push_back({-1, -1});
                dead_.push_back(0);
            }
            s = child[s][a];
        }
        dead_[s] = 1;
    }
    // Failure links by BFS; goto function completed in place.
    std::vector<std::int32_t> fail(child.size(), 0);
    next_.assign(child.size(), {0, 0});
    std::deque<std::int32_t> queue;
    for (int a = 0; a < 2; ++a) {
        if (child[0][a] < 0) {
            next_[0][a] = 0;
        } else {
            next_[0][a] = child[0][a];
            fail[child[0][a]] = 0;
            queue.push_back(child[0][a]);
        }
    }
    while (!queue.empty()) {
        const std::int32_t s = queue.front();
        queue.pop_front();
        dead_[s] |= dead_[fail[s]];  // a shorter mistake ends here too
        for (int a = 0; a < 2; ++a) {
            const std::int32_t c = child[s][a];
            if (c < 0) {
                next_[s][a] = next_[fail[s]][a];
            } else {
                next_[s][a] = c;
                fail[c] = next_[fail[s]][a];
                queue.push_back(c);
            }
        }
    }
}

std::vector<mpz_class> FactorAutomaton::count_avoiding_upto(unsigned n) const {
    const std::size_t states = next_.size();
    std::vector<mpz_class> cur(states, 0), nxt(states, 0), out;
    out.reserve(n + 1);
    cur[0] = 1;
    const auto total = [&](const std::vector<mpz_class>& v) {
        mpz_class t = 0;
        for (std::size_t s = 0; s < states; ++s)
            if (!dead_[s]) t += v[s];
        return t;
    };
    out.push_back(total(cur));
    for (unsigned k = 1; k <= n; ++k) {
        for (auto& x : nxt) x = 0;
        for (std::size_t s = 0; s < states; ++s) {
            if (dead_[s] || cur[s] == 0) continue;
            for (int a = 0; a < 2; ++a) {
                const std::int32_t d = next_[s][a];
                if (!dead_[d]) nxt[d] += cur[s];
            }
        }
        cur.swap(nxt);
        out.push_back(total(cur));
    }
    return out;
}

mpz_class FactorAutomaton::count_avoiding(unsigned n) const { return count_avoiding_upto(n).back(); }

mpz_class count_avoiding_words(const MistakeSet& mistakes, unsigned n) {
    return FactorAutomaton(mistakes).count_avoiding(n);
}

mpz_class count_avoiding_words_gj(const MistakeSet& mistakes, unsigned n) {
    const auto& M = mistakes.words();
    const std::size_t k = M.size();

    // Cluster series per mistake, order by order:
    //   C_v[d] = -[d == |v|] - sum_u sum_{overlap o} C_u[d - (|v| - o)]
    // where o runs over proper overlaps (suffix of u = prefix of v).
    // F = 1/(1 - 2x - sum_v C_v) gives the avoiding counts.
    std::vector<std::vector<unsigned>> shifts(k * k);  // |v| - o values per (u,v)
    for (std::size_t u = 0; u < k; ++u) {
        for (std::size_t v = 0; v < k; ++v) {
            const std::string &wu = M[u], &wv = M[v];
            const std::size_t maxo = std::min(wu.size(), wv.size()) - (u == v ? 1 : 0);
            for (std::size_t o = 1; o <= maxo && o < wv.size(); ++o) {
                if (wu.compare(wu.size() - o, o, wv, 0, o) == 0)
                    shifts[u * k + v].push_back(static_cast<unsigned>(wv.size() - o));
            }
        }
    }

    std::vector<std::vector<mpz_class>> C(k, std::vector<mpz_class>(n + 1, 0));
    std::vector<mpz_class> Ctot(n + 1, 0);
    for (unsigned d = 1; d <= n; ++d) {
        for (std::size_t v = 0; v < k; ++v) {
            mpz_class acc = 0;
            if (M[v].size() == d) acc = -1;
            for (std::size_t u = 0; u < k; ++u) {
                for (unsigned sh : shifts[u * k + v]) {
                    if (sh <= d) acc -= C[u][d - sh];
                }
            }
            C[v][d] = acc;
            Ctot[d] += acc;
        }
    }
    std::vector<mpz_class> f(n + 1, 0);
    f[0] = 1;
    for (unsigned d = 1; d <= n; ++d) {
        f[d] = 2 * f[d - 1];
        for (unsigned j = 1; j <= d; ++j) f[d] += Ctot[j] * f[d - j];
    }
    return f[n];
}

BoundReport gj_upper_bound(const MistakeSet& mistakes, unsigned n, std::string parameters,
                           unsigned decimals) {
    const mpz_class ln = count_avoiding_words(mistakes, n);
    if (ln <= 0) throw std::domain_error("gj_upper_bound: no avoiding words at this length");
    return BoundReport::from_root("goulden-jackson", true, ln, 1, n, std::move(parameters),
                                  decimals);
}

BoundReport gj_upper_bound(unsigned polygon_max, unsigned n, unsigned jobs, unsigned decimals) {
    if (polygon_max < 4 || n < 1) throw std::invalid_argument("gj_upper_bound parameters");
    const MistakeSet M = MistakeSet::taxi_mistakes(polygon_max, jobs);
    return gj_upper_bound(M, n,
                          "polygon_max=" + std::to_string(polygon_max) + ",n=" + std::to_string(n),
                          decimals);
}

}  // namespace taxi
