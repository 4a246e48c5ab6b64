#include "taxi/count_table.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace taxi {

const mpz_class& CountTable::at(unsigned n) const {
    if (!has(n)) throw std::out_of_range("CountTable '" + name_ + "': missing index " + std::to_string(n));
    return values_[n];
}

void CountTable::set(unsigned n, mpz_class value) {
    if (n >= values_.size()) values_.resize(n + 1, mpz_class(-1));
    values_[n] = std::move(value);
}

void CountTable::save_csv(const std::filesystem::path& path) const {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << "n,count\n";
        for (std::size_t n = 0; n < values_.size(); ++n) {
            if (values_[n] < 0) continue;  // hole
            out << n << ',' << values_[n].get_str() << '\n';
        }
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

CountTable CountTable::load_csv(const std::filesystem::path& path, std::string name) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    CountTable t(name.empty() ? path.stem().string() : std::move(name));
    std::string line;
    if (!std::getline(in, line) || line != "n,count")
        throw std::runtime_error("bad CSV header in " + path.string());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("bad CSV row in " + path.string());
        const unsigned n = static_cast<unsigned>(std::stoul(line.substr(0, comma)));
        t.set(n, mpz_class(line.substr(comma + 1)));
    }
    return t;
}

const CountTable& reference_walk_counts() {
    static const CountTable table = [] {
        // Known exact counts of taxi walks of length 1..60.
        static const char* kCounts[60] = {
            "2", "4", "6", "10", "16", "26", "42", "68", "110", "178",
            "288", "460", "740", "1192", "1918", "3064", "4910", "7872", "12620", "20114",
            "32150", "51396", "82160", "130730", "208506", "332616", "530588", "843222",
            "1342662", "2138280", "3405346", "5406522", "8597632", "13674278", "21748530",
            "34501460", "54807754", "87077354", "138346766", "219324398", "348109128",
            "552582790", "877163942", "1389806294", "2204289314", "3496483316", "5546212122",
            "8783360626", "13922238632", "22069957494", "34986181158", "55383388278",
            "87740467384", "139014623272", "220254102104", "348536652664", "551914140382",
            "874039817792", "1384184997874", "2189670407434"};
        CountTable t("c");
        t.set(0, 1);  // empty walk, by convention
        for (unsigned n = 1; n <= 60; ++n) t.set(n, mpz_class(kCounts[n - 1]));
        return t;
    }();
    return table;
}

const mpz_class& reference_bridge_count_60() {
    static const mpz_class b60("80312795498");
    return b60;
}

unsigned long reference_polygon_count(unsigned max_len) {
    switch (max_len) {
        case 44: return 1721326UL;
        case 48: return 8009144UL;
        default: throw std::out_of_range("no reference polygon count for max_len " + std::to_string(max_len));
    }
}

}  // namespace taxi
