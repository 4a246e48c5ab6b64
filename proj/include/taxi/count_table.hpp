#pragma once

#include <gmpxx.h>

#include <filesystem>
#include <string>
#include <vector>

namespace taxi {

// Exact integer sequence n -> count, densely stored for 0 <= n <= max_n.
class CountTable {
  public:
    CountTable() = default;
    explicit CountTable(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    unsigned max_n() const { return values_.empty() ? 0 : static_cast<unsigned>(values_.size() - 1); }
    bool empty() const { return values_.empty(); }

    bool has(unsigned n) const { return n < values_.size(); }
    const mpz_class& at(unsigned n) const;
    void set(unsigned n, mpz_class value);

    const std::vector<mpz_class>& values() const { return values_; }

    // CSV persistence: header "n,count", exact decimal integers, one row per
    // index starting at the lowest stored one. Writes are atomic
    // (temp file + rename).
    void save_csv(const std::filesystem::path& path) const;
    static CountTable load_csv(const std::filesystem::path& path, std::string name = "");

  private:
    std::string name_;
    std::vector<mpz_class> values_;
};

// Published reference values: walk counts c_1..c_60, the bridge count b_60,
// and cumulative taxi-polygon counts at lengths 44 and 48.
const CountTable& reference_walk_counts();
const mpz_class& reference_bridge_count_60();
unsigned long reference_polygon_count(unsigned max_len);  // 44 or 48

}  // namespace taxi
