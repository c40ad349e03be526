#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qit/curve.hpp"
#include "qit/families.hpp"
#include "qit/torsion.hpp"

namespace qit {

// One census tally: the number of minimal iso-classes of height < X whose
// torsion matches `group` under the run's tally mode.
struct CensusRecord {
    TorsionLabel group;
    long long X = 0;
    long long count = 0;
};

// equals: bucket by exact torsion structure (a partition of the classes).
// contains: bucket by "torsion contains G" (one class may hit many buckets).
enum class TallyMode { equals, contains };

struct CensusOptions {
    std::vector<long long> grid;       // ascending height thresholds
    std::vector<TorsionLabel> groups;  // empty: every admissible bucket
    TallyMode mode = TallyMode::equals;
    int workers = 1;
};

// Every minimal, nonsingular, sign-canonical (A, B) with height < X, emitted
// exactly once, ordered by (norm(A), A lex, norm(B), B lex).
void enumerate_minimal(long long X,
                       const std::function<void(const Curve&)>& emit);

// Tally torsion over enumerate_minimal at each grid point.  A mod-p point
// count screen settles most curves without exact torsion work: whenever the
// gcd of good reduction counts equals the rational 2-torsion order the group
// is exactly E[2] (Z/1, Z/2, or Z/2xZ/2); the rest fall back to
// torsion_structure.  Output rows sorted by (group string, X);
// byte-identical for any worker count.
std::vector<CensusRecord> census(const CensusOptions& opt);

// growth exponent status per the reference table: thirteen groups have a
// finite d, eight have d = +infinity, and the three generic groups
// (Z/1, Z/2, Z/3) are unlisted.
enum class DClass { finite, infinite, unlisted };

struct ReferenceD {
    DClass cls = DClass::unlisted;
    mpq_class value;  // meaningful only when cls == finite
};

ReferenceD reference_d(const TorsionLabel& group);

struct SlopeEstimate {
    TorsionLabel group;
    double inv_d_est = 0.0;          // fitted slope of log count vs log X
    bool finite_sample_flag = false; // too few usable grid points
    double residual = 0.0;           // sum of squared fit residuals
    std::vector<long long> X_grid;
    ReferenceD d_paper;              // published reference value
};

// Least-squares slope over one group's records (>= 3 grid points required;
// rows with count < min_count are discarded before fitting).
SlopeEstimate estimate_d(const std::vector<CensusRecord>& records,
                         long long min_count = 5);

// Group the records by torsion label and fit each; output sorted by group.
std::vector<SlopeEstimate> estimate_d_all(const std::vector<CensusRecord>& records,
                                          long long min_count = 5);

// Family-driven counting.  kappa scales the parameter box; the run validates
// post-hoc that every raw pair (b^{4n} f(t), b^{6n} g(t)) satisfies
// N(A) < X^{1/3} and N(B) < X^{1/2} before clearing to integrality.
struct S2Config {
    TorsionLabel group;
    long long X = 0;
    double kappa = 0.5;
};

struct FamilyCountResult {
    long long s2_size = 0;      // admissible coprime parameter pairs
    long long s3_size = 0;      // distinct integral models (A, B)
    long long s_size = 0;       // distinct minimal iso-classes
    long max_gcd_valuation = 0; // max_p val_p(gcd(A^3, B^2)) over the run
    bool kappa_valid = true;
    std::string violation;      // offending pair when !kappa_valid
};

FamilyCountResult family_count(const S2Config& cfg);

// Fraction of uniformly sampled nonzero Gaussian-integer pairs with norm at
// most norm_bound that are coprime.  Deterministic (fixed seed).
double coprimality_probe(long long sample_count, long long norm_bound);

// Expected limit of coprimality_probe: 1/zeta_{Q(i)}(2).
double coprime_density_reference();

// For curves sampled from a family, decompose the scale u = q * b^n where
// t = a/b^m in lowest terms, and report the distinct q values observed.
// stable: the q-set at `samples` equals the q-set at samples/10.
struct ScaleDecompositionReport {
    std::vector<GaussianRational> q_values;
    bool stable = false;
    long long samples_small = 0;
    long long samples_large = 0;
};

ScaleDecompositionReport scale_decomposition_probe(const FamilyRecord& fr,
                                                   long long samples);

// CSV: header "group,X,count", LF endings, rows sorted by (group, X).
std::string census_csv(const std::vector<CensusRecord>& records);
std::vector<CensusRecord> parse_census_csv(const std::string& text);

// CSV: header "group,inv_d_est,d_est,d_paper,residual"; "inf" for infinite
// entries, empty d_paper for unlisted groups.
std::string slopes_csv(const std::vector<SlopeEstimate>& estimates);

}  // namespace qit
