#include "families_data.hpp"

namespace qit::detail {

// Tate normal forms y^2 + a*xy + b*y = x^3 + d*x^2 for the twelve
// finite-exponent generic families, as coefficient lists (ascending,
// numerator/denominator) together with their expected degree table row
// (r, s, n, m, d) and integrality scale lambda.
const RawTateRow kRawTateRows[] = {
    {"Z/4",
     "1", "1",
     "0,-1", "1",
     "0,-1", "1",
     2, 3, 1, 2, 4, 6},
    {"Z/5",
     "1,-1", "1",
     "0,-1", "1",
     "0,-1", "1",
     4, 6, 1, 1, 6, 6},
    {"Z/6",
     "1,-1", "1",
     "0,-1,-1", "1",
     "0,-1,-1", "1",
     4, 6, 1, 1, 6, 6},
    {"Z/7",
     "1,1,-1", "1",
     "0,0,1,-1", "1",
     "0,0,1,-1", "1",
     8, 12, 2, 1, 12, 6},
    {"Z/8",
     "-1,4,-2", "0,1",
     "-1,3,-2", "1",
     "-1,3,-2", "1",
     8, 12, 2, 1, 12, 6},
    {"Z/9",
     "1,0,1,-1", "1",
     "0,0,1,-2,2,-1", "1",
     "0,0,1,-2,2,-1", "1",
     12, 18, 3, 1, 18, 6},
    {"Z/10",
     "1,-2,-2,2", "1,-3,1",
     "0,0,0,-1,3,-2", "1,-6,11,-6,1",
     "0,0,0,-1,3,-2", "1,-6,11,-6,1",
     12, 18, 3, 1, 18, 6},
    {"Z/12",
     "-6,16,-14,6,-1", "0,1",
     "-12,42,-64,55,-28,8,-1", "0,0,1",
     "-12,42,-64,55,-28,8,-1", "0,0,1",
     16, 24, 4, 1, 24, 6},
    {"Z/2xZ/4",
     "1", "1",
     "1,0,-16", "16",
     "1,0,-16", "16",
     4, 6, 1, 1, 6, 12},
    {"Z/2xZ/6",
     "-19,2,1", "-9,0,1",
     "-10,22,-14,2", "81,0,-18,0,1",
     "-10,22,-14,2", "81,0,-18,0,1",
     8, 12, 2, 1, 12, 6},
    {"Z/2xZ/8",
     "-64,0,24,8,1", "-64,-16,8,2",
     "0,-16,-16,-6,-1", "64,0,-16,0,1",
     "0,-16,-16,-6,-1", "64,0,-16,0,1",
     16, 24, 4, 1, 24, 12},
    {"Z/4xZ/4",
     "4", "1",
     "4,0,0,0,-4", "1",
     "1,0,0,0,-1", "1",
     8, 12, 2, 1, 12, 3},
};

const std::size_t kRawTateRowCount = sizeof(kRawTateRows) / sizeof(kRawTateRows[0]);

}  // namespace qit::detail
