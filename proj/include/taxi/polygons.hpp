#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace taxi {

// A taxi polygon: turn word of a closed taxi walk that starts and ends at
// the origin and is otherwise vertex-simple. Its word (length = steps - 1)
// cannot occur as a factor of any taxi walk's turn word. Words are
// deduplicated across the two possible first steps.
struct TaxiPolygon {
    std::string word;
    unsigned length() const { return static_cast<unsigned>(word.size()) + 1; }
};

// All distinct taxi-polygon words of length (steps) <= max_len, sorted.
std::vector<std::string> enumerate_taxi_polygon_words(unsigned max_len, unsigned jobs = 1);

// Newline-delimited sorted word list; atomic write. The file name encodes
// max_len (polygons_le<N>.txt) when `path` is a directory.
std::filesystem::path save_polygon_words(const std::vector<std::string>& words, unsigned max_len,
                                         const std::filesystem::path& path);

}  // namespace taxi
