#pragma once

// Internal layout of the embedded parameterization table (families_data.cpp).

#include <cstddef>

namespace qit::detail {

struct RawTateRow {
    const char* label;
    const char* a_num;
    const char* a_den;
    const char* b_num;
    const char* b_den;
    const char* d_num;
    const char* d_den;
    long r, s, n, m;
    long d_exp;
    long lambda;
};

extern const RawTateRow kRawTateRows[];
extern const std::size_t kRawTateRowCount;

}  // namespace qit::detail
