// Exact joint counts f_{n,k}: number (or total weight) of objects of size
// index n whose statistic equals k. Rows are sparse maps k -> count; only
// nonzero entries are stored.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "qgibbs/rational.hpp"

namespace qgibbs {

using Row = std::map<long, Rational>;

struct BivariateTable {
    std::string model;
    long max_n = -1;
    std::vector<Row> rows;  // indexed by n = 0..max_n

    const Row& row(long n) const { return rows.at(static_cast<std::size_t>(n)); }
};

inline Rational row_sum(const Row& r) {
    Rational s(0);
    for (const auto& [k, v] : r) s += v;
    return s;
}

}  // namespace qgibbs
