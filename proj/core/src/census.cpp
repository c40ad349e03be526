#include "qit/census.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <iterator>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace qit {

namespace {

// ---------------------------------------------------------------------------
// Admissible label bookkeeping
// ---------------------------------------------------------------------------

const std::vector<TorsionLabel>& admissible_labels() {
    static const std::vector<TorsionLabel> labels = [] {
        std::vector<TorsionLabel> out;
        for (int m = 1; m <= 16; ++m)
            if (m != 17) out.push_back(TorsionLabel::cyclic(m));
        out.push_back(TorsionLabel::cyclic(18));
        for (int m = 1; m <= 6; ++m) out.push_back(TorsionLabel::product(2, 2 * m));
        out.push_back(TorsionLabel::product(4, 4));
        std::sort(out.begin(), out.end());
        return out;
    }();
    return labels;
}

int label_index(const TorsionLabel& g) {
    const auto& all = admissible_labels();
    auto it = std::find(all.begin(), all.end(), g);
    if (it == all.end()) throw std::logic_error("census: label outside the admissible list");
    return static_cast<int>(it - all.begin());
}

// ---------------------------------------------------------------------------
// int64 Gaussian helpers for the enumeration hot loop
// ---------------------------------------------------------------------------

struct ZI64 {
    std::int64_t re = 0, im = 0;
};

std::int64_t isqrt64(std::int64_t n) {
    if (n <= 0) return 0;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// All z with norm(z) == n, sorted by (re, im).
void gaussians_of_norm(std::int64_t n, std::vector<ZI64>& out) {
    out.clear();
    if (n < 0) return;
    if (n == 0) {
        out.push_back({0, 0});
        return;
    }
    const std::int64_t top = isqrt64(n);
    for (std::int64_t re = -top; re <= top; ++re) {
        const std::int64_t rest = n - re * re;
        const std::int64_t s = isqrt64(rest);
        if (s * s != rest) continue;
        if (s == 0)
            out.push_back({re, 0});
        else {
            out.push_back({re, -s});
            out.push_back({re, s});
        }
    }
}

// Sign-canonical representative of {B, -B}: keep the lexicographically
// greater one, i.e. re > 0, or re == 0 and im >= 0.
bool sign_canonical(const ZI64& b) { return b.re > 0 || (b.re == 0 && b.im >= 0); }

ZI64 mul(const ZI64& a, const ZI64& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussianInt to_gaussian(const ZI64& z) {
    return {mpz_class(static_cast<long>(z.re)), mpz_class(static_cast<long>(z.im))};
}

// ---------------------------------------------------------------------------
// Reduction tables: #E(F_p) for every (A mod p, B mod p), one table per
// split prime.  A value of 0 marks bad reduction (the honest count is at
// least p + 1 - 2 sqrt(p) > 0, so 0 is unambiguous).  For every split
// p >= 17 the reduction map is injective on admissible torsion (no
// admissible order is divisible by p), hence the torsion order divides
// every good table value.
// ---------------------------------------------------------------------------

constexpr int kSievePrimes[] = {17, 29, 37, 41, 53, 61, 73, 89,
                                97, 101, 109, 113, 137, 149, 157, 173};
constexpr int kSieveCount = static_cast<int>(std::size(kSievePrimes));

struct SieveTable {
    int p = 0;
    int root = 0;  // root of x^2 = -1 mod p; the two embeddings use root and p - root
    std::vector<std::uint8_t> counts;  // counts[a * p + b]
};

const std::vector<SieveTable>& sieve_tables() {
    static const std::vector<SieveTable> tables = [] {
        std::vector<SieveTable> out;
        for (int p : kSievePrimes) {
            SieveTable st;
            st.p = p;
            for (int r = 2; r < p; ++r)
                if ((r * r + 1) % p == 0) {
                    st.root = r;
                    break;
                }
            std::vector<std::int8_t> legendre(p, -1);
            for (int x = 1; x < p; ++x) legendre[(x * x) % p] = 1;
            legendre[0] = 0;
            st.counts.assign(static_cast<std::size_t>(p) * p, 0);
            for (int a = 0; a < p; ++a) {
                for (int b = 0; b < p; ++b) {
                    const int disc = (4 * a % p * a % p * a % p + 27 * b % p * b % p) % p;
                    if (disc == 0) continue;  // bad reduction sentinel
                    int total = p + 1;
                    for (int x = 0; x < p; ++x)
                        total += legendre[((x * x % p * x + a * x + b) % p + p) % p];
                    st.counts[static_cast<std::size_t>(a) * p + b] =
                        static_cast<std::uint8_t>(total);
                }
            }
            out.push_back(std::move(st));
        }
        return out;
    }();
    return tables;
}

int mod_embed(const ZI64& z, int p, int root) {
    const std::int64_t re = ((z.re % p) + p) % p;
    const std::int64_t im = ((z.im % p) + p) % p;
    return static_cast<int>((re + im * root) % p);
}

// ---------------------------------------------------------------------------
// Minimality screen.  (A, B) is non-minimal iff some prime pi has
// pi^4 | A and pi^6 | B; within height X only primes with norm(pi)^12 <= X
// can occur, a handful of tiny primes.
// ---------------------------------------------------------------------------

struct MinimalityPrime {
    ZI64 p4, p6;             // pi^4, pi^6
    std::int64_t n4, n6;     // their norms
};

bool divides_zi64(const ZI64& z, const ZI64& d, std::int64_t nd) {
    const std::int64_t t1 = z.re * d.re + z.im * d.im;
    if (t1 % nd != 0) return false;
    const std::int64_t t2 = z.im * d.re - z.re * d.im;
    return t2 % nd == 0;
}

std::vector<MinimalityPrime> minimality_primes(long long X) {
    std::vector<MinimalityPrime> out;
    std::vector<ZI64> shell;
    for (std::int64_t n = 2;; ++n) {
        // stop once norm^12 exceeds X
        long double pw = 1.0L;
        bool over = false;
        for (int i = 0; i < 12 && !over; ++i) {
            pw *= static_cast<long double>(n);
            if (pw > static_cast<long double>(X)) over = true;
        }
        if (over) break;
        gaussians_of_norm(n, shell);
        for (const ZI64& z : shell) {
            if (!(z.re > 0 && z.im >= 0)) continue;  // canonical associates only
            const GaussianInt g = to_gaussian(z);
            const Factorization f = factor(g);
            if (f.factors.size() != 1 || f.factors[0].second != 1) continue;
            if (!(f.factors[0].first.value == g)) continue;
            MinimalityPrime mp;
            const ZI64 p2 = mul(z, z);
            mp.p4 = mul(p2, p2);
            mp.p6 = mul(mp.p4, p2);
            mp.n4 = mp.p4.re * mp.p4.re + mp.p4.im * mp.p4.im;
            mp.n6 = mp.p6.re * mp.p6.re + mp.p6.im * mp.p6.im;
            out.push_back(mp);
        }
    }
    if (out.size() > 31) throw std::invalid_argument("census: height threshold too large");
    return out;
}

std::uint32_t mask_p4(const ZI64& a, const std::vector<MinimalityPrime>& primes) {
    if (a.re == 0 && a.im == 0) return ~std::uint32_t{0};
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (divides_zi64(a, primes[i].p4, primes[i].n4)) mask |= std::uint32_t{1} << i;
    return mask;
}

std::uint32_t mask_p6(const ZI64& b, const std::vector<MinimalityPrime>& primes) {
    if (b.re == 0 && b.im == 0) return ~std::uint32_t{0};
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (divides_zi64(b, primes[i].p6, primes[i].n6)) mask |= std::uint32_t{1} << i;
    return mask;
}

// ---------------------------------------------------------------------------
// Shared enumeration scaffolding
// ---------------------------------------------------------------------------

struct BEntry {
    ZI64 b;
    std::int64_t nb = 0;
    ZI64 d27;                 // 27 * B^2
    std::uint32_t mask6 = 0;  // minimality primes with pi^6 | B
    int jb = 0;               // first grid index with grid[j] > nb^2
    std::uint8_t res[kSieveCount][2] = {};  // B mod p under both embeddings
};

struct EnumContext {
    long long Xmax = 0;
    std::int64_t amax = 0;  // largest norm(A) with norm(A)^3 < Xmax
    std::int64_t bmax = 0;  // largest norm(B) with norm(B)^2 < Xmax
    std::vector<MinimalityPrime> primes;
    std::vector<BEntry> btable;  // sign-canonical B, sorted by (norm, re, im)
};

EnumContext build_context(long long Xmax, const std::vector<long long>* grid,
                          bool with_residues) {
    if (Xmax < 1) throw std::invalid_argument("census: height threshold must be positive");
    if (Xmax > 1000000000000LL)
        throw std::invalid_argument("census: height threshold too large");
    EnumContext ctx;
    ctx.Xmax = Xmax;
    while ((ctx.amax + 1) * (ctx.amax + 1) * (ctx.amax + 1) < Xmax) ++ctx.amax;
    while ((ctx.bmax + 1) * (ctx.bmax + 1) < Xmax) ++ctx.bmax;
    ctx.primes = minimality_primes(Xmax);
    const std::vector<SieveTable>* tables = with_residues ? &sieve_tables() : nullptr;
    std::vector<ZI64> shell;
    for (std::int64_t nb = 0; nb <= ctx.bmax; ++nb) {
        gaussians_of_norm(nb, shell);
        for (const ZI64& b : shell) {
            if (!sign_canonical(b)) continue;
            BEntry e;
            e.b = b;
            e.nb = nb;
            const ZI64 b2 = mul(b, b);
            e.d27 = {27 * b2.re, 27 * b2.im};
            e.mask6 = mask_p6(b, ctx.primes);
            if (grid) {
                const long long h = nb * nb;
                int j = 0;
                while ((*grid)[j] <= h) ++j;  // grid.back() > h by construction
                e.jb = j;
            }
            if (tables) {
                for (int i = 0; i < kSieveCount; ++i) {
                    const SieveTable& st = (*tables)[i];
                    e.res[i][0] = static_cast<std::uint8_t>(mod_embed(b, st.p, st.root));
                    e.res[i][1] =
                        static_cast<std::uint8_t>(mod_embed(b, st.p, st.p - st.root));
                }
            }
            ctx.btable.push_back(e);
        }
    }
    return ctx;
}

// Count of roots in Z[i] of x^3 + Ax + B for every B in the table, laid out
// on a (re, im) grid: each candidate root r contributes B = -r^3 - A r.
// Any root has |r|^2 <= max(4 norm(A), (2 sqrt(bmax))^{2/3}) + slack, from
// |r|^3 <= |A||r| + |B|.
class RootMap {
  public:
    explicit RootMap(std::int64_t bmax)
        : off_(isqrt64(bmax) + 1), dim_(2 * off_ + 1), cells_(dim_ * dim_, 0) {}

    void fill(const ZI64& a, std::int64_t na, std::int64_t bmax,
              std::vector<ZI64>& shell) {
        for (std::size_t idx : touched_) cells_[idx] = 0;
        touched_.clear();
        const double cap1 = 4.0 * static_cast<double>(na);
        const double cap2 = std::pow(2.0 * std::sqrt(static_cast<double>(bmax)), 2.0 / 3.0);
        const auto rmax = static_cast<std::int64_t>(std::max(cap1, cap2)) + 4;
        for (std::int64_t nr = 0; nr <= rmax; ++nr) {
            gaussians_of_norm(nr, shell);
            for (const ZI64& r : shell) {
                const ZI64 r2 = mul(r, r);
                const ZI64 r3 = mul(r2, r);
                const ZI64 ar = mul(a, r);
                const ZI64 b{-r3.re - ar.re, -r3.im - ar.im};
                if (b.re * b.re + b.im * b.im > bmax) continue;
                const std::size_t idx = cell(b);
                if (cells_[idx] == 0) touched_.push_back(idx);
                ++cells_[idx];
            }
        }
    }

    int count(const ZI64& b) const { return cells_[cell(b)]; }

  private:
    std::size_t cell(const ZI64& b) const {
        return static_cast<std::size_t>(b.re + off_) * dim_ +
               static_cast<std::size_t>(b.im + off_);
    }
    std::int64_t off_, dim_;
    std::vector<std::uint8_t> cells_;
    std::vector<std::size_t> touched_;
};

// ---------------------------------------------------------------------------
// The census shard: classify every pair with norm(A) in the worker's shells.
// counts is indexed [label][grid slot]; the grid slot is the first index
// whose threshold exceeds the height (cumulated by the caller).
// ---------------------------------------------------------------------------

void census_shard(const EnumContext& ctx, const std::vector<long long>& grid, int worker,
                  int nworkers, std::vector<long long>& counts) {
    const auto& tables = sieve_tables();
    const int ngrid = static_cast<int>(grid.size());
    const int iZ1 = label_index(TorsionLabel::cyclic(1));
    const int iZ2 = label_index(TorsionLabel::cyclic(2));
    const int i22 = label_index(TorsionLabel::product(2, 2));
    RootMap roots(ctx.bmax);
    std::vector<ZI64> shell, rshell;
    for (std::int64_t na = 0; na <= ctx.amax; ++na) {
        if (na % nworkers != worker) continue;
        const long long ha = na * na * na;
        int ja = 0;
        while (grid[ja] <= ha) ++ja;
        gaussians_of_norm(na, shell);
        for (const ZI64& a : shell) {
            const std::uint32_t amask = mask_p4(a, ctx.primes);
            const ZI64 a2 = mul(a, a);
            const ZI64 a3 = mul(a2, a);
            const ZI64 d4{4 * a3.re, 4 * a3.im};
            int ares[kSieveCount][2];
            for (int i = 0; i < kSieveCount; ++i) {
                ares[i][0] = mod_embed(a, tables[i].p, tables[i].root);
                ares[i][1] = mod_embed(a, tables[i].p, tables[i].p - tables[i].root);
            }
            roots.fill(a, na, ctx.bmax, rshell);
            for (const BEntry& e : ctx.btable) {
                if ((amask & e.mask6) != 0) continue;  // non-minimal
                if (d4.re + e.d27.re == 0 && d4.im + e.d27.im == 0) continue;  // singular
                const int j0 = std::max(ja, e.jb);
                const int k = roots.count(e.b);
                const int kp1 = k + 1;
                int M = 0;
                for (int i = 0; i < kSieveCount && M != kp1; ++i) {
                    const SieveTable& st = tables[i];
                    for (int emb = 0; emb < 2; ++emb) {
                        const int v = st.counts[static_cast<std::size_t>(ares[i][emb]) * st.p +
                                                e.res[i][emb]];
                        if (v == 0) continue;  // bad reduction at this prime
                        M = std::gcd(M, v);
                        if (M == kp1) break;
                    }
                }
                int idx;
                if (M == kp1 && (k == 0 || k == 1 || k == 3)) {
                    // torsion order divides M and the 2-torsion already
                    // accounts for all of it: the group is exactly E[2].
                    idx = k == 0 ? iZ1 : (k == 1 ? iZ2 : i22);
                } else {
                    const Curve c{to_gaussian(a), to_gaussian(e.b)};
                    idx = label_index(torsion_structure(c));
                }
                ++counts[static_cast<std::size_t>(idx) * ngrid + j0];
            }
        }
    }
}

std::string label_key(const TorsionLabel& g) { return to_string(g); }

// ---------------------------------------------------------------------------
// family_count helpers
// ---------------------------------------------------------------------------

GaussianInt pow_gaussian(const GaussianInt& z, long k) {
    GaussianInt out(1);
    for (long i = 0; i < k; ++i) out = out * z;
    return out;
}

// Smallest canonical u with denA | u^4 and denB | u^6, prime by prime.
GaussianInt clearing_scale(const GaussianInt& denA, const GaussianInt& denB) {
    std::map<std::string, std::pair<GaussianInt, unsigned>> need;
    auto accumulate = [&](const GaussianInt& den, unsigned weight) {
        if (den.is_unit()) return;
        for (const auto& [prime, exp] : factor(den).factors) {
            const unsigned e = (exp + weight - 1) / weight;
            auto it = need.find(to_string(prime.value));
            if (it == need.end() || it->second.second < e)
                need[to_string(prime.value)] = {prime.value, e};
        }
    };
    accumulate(denA, 4);
    accumulate(denB, 6);
    GaussianInt u(1);
    for (const auto& [key, pe] : need) {
        (void)key;
        for (unsigned i = 0; i < pe.second; ++i) u = u * pe.first;
    }
    return canonical_associate(u).first;
}

long max_valuation(const GaussianInt& z) {
    if (z.is_zero()) throw std::logic_error("census: valuation of zero");
    if (z.is_unit()) return 0;
    long best = 0;
    for (const auto& [prime, exp] : factor(z).factors)
        best = std::max(best, static_cast<long>(exp));
    return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// enumerate_minimal
// ---------------------------------------------------------------------------

void enumerate_minimal(long long X, const std::function<void(const Curve&)>& emit) {
    const EnumContext ctx = build_context(X, nullptr, /*with_residues=*/false);
    std::vector<ZI64> shell;
    for (std::int64_t na = 0; na <= ctx.amax; ++na) {
        gaussians_of_norm(na, shell);
        for (const ZI64& a : shell) {
            const std::uint32_t amask = mask_p4(a, ctx.primes);
            const ZI64 a2 = mul(a, a);
            const ZI64 a3 = mul(a2, a);
            const ZI64 d4{4 * a3.re, 4 * a3.im};
            for (const BEntry& e : ctx.btable) {
                if ((amask & e.mask6) != 0) continue;
                if (d4.re + e.d27.re == 0 && d4.im + e.d27.im == 0) continue;
                emit(Curve{to_gaussian(a), to_gaussian(e.b)});
            }
        }
    }
}

// ---------------------------------------------------------------------------
// census
// ---------------------------------------------------------------------------

std::vector<CensusRecord> census(const CensusOptions& opt) {
    if (opt.grid.empty()) throw std::invalid_argument("census: empty grid");
    for (std::size_t i = 0; i < opt.grid.size(); ++i) {
        if (opt.grid[i] < 1) throw std::invalid_argument("census: grid entries must be >= 1");
        if (i > 0 && opt.grid[i] <= opt.grid[i - 1])
            throw std::invalid_argument("census: grid must be strictly ascending");
    }
    for (const TorsionLabel& g : opt.groups)
        if (!g.is_admissible())
            throw std::invalid_argument("census: group " + to_string(g) + " is not admissible");
    if (opt.workers < 1) throw std::invalid_argument("census: workers must be >= 1");

    const auto& labels = admissible_labels();
    const int nlabels = static_cast<int>(labels.size());
    const int ngrid = static_cast<int>(opt.grid.size());
    const EnumContext ctx = build_context(opt.grid.back(), &opt.grid, /*with_residues=*/true);

    std::vector<long long> counts(static_cast<std::size_t>(nlabels) * ngrid, 0);
    if (opt.workers == 1) {
        census_shard(ctx, opt.grid, 0, 1, counts);
    } else {
        std::vector<std::vector<long long>> partial(
            opt.workers, std::vector<long long>(counts.size(), 0));
        std::vector<std::exception_ptr> errors(opt.workers);
        std::vector<std::thread> pool;
        for (int w = 0; w < opt.workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    census_shard(ctx, opt.grid, w, opt.workers, partial[w]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& err : errors)
            if (err) std::rethrow_exception(err);
        for (const auto& part : partial)
            for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += part[i];
    }

    // Cumulate: slot j held the classes first visible at grid[j].
    for (int l = 0; l < nlabels; ++l)
        for (int j = 1; j < ngrid; ++j)
            counts[static_cast<std::size_t>(l) * ngrid + j] +=
                counts[static_cast<std::size_t>(l) * ngrid + j - 1];

    std::vector<TorsionLabel> wanted = opt.groups.empty() ? labels : opt.groups;
    std::sort(wanted.begin(), wanted.end(), [](const TorsionLabel& x, const TorsionLabel& y) {
        return label_key(x) < label_key(y);
    });
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

    std::vector<CensusRecord> out;
    for (const TorsionLabel& g : wanted) {
        for (int j = 0; j < ngrid; ++j) {
            long long c = 0;
            if (opt.mode == TallyMode::equals) {
                c = counts[static_cast<std::size_t>(label_index(g)) * ngrid + j];
            } else {
                for (int l = 0; l < nlabels; ++l)
                    if (labels[l].contains(g))
                        c += counts[static_cast<std::size_t>(l) * ngrid + j];
            }
            out.push_back(CensusRecord{g, opt.grid[j], c});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// reference_d
// ---------------------------------------------------------------------------

ReferenceD reference_d(const TorsionLabel& group) {
    if (!group.is_admissible())
        throw std::invalid_argument("reference_d: " + to_string(group) + " is not admissible");
    static const std::map<std::pair<int, int>, long> finite = {
        {{1, 4}, 4},  {{1, 5}, 6},   {{1, 6}, 6},  {{1, 7}, 12}, {{1, 8}, 12},
        {{1, 9}, 18}, {{1, 10}, 18}, {{1, 12}, 24}, {{2, 2}, 3},  {{2, 4}, 6},
        {{2, 6}, 12}, {{2, 8}, 24},  {{4, 4}, 12}};
    static const std::set<std::pair<int, int>> infinite = {
        {1, 11}, {1, 13}, {1, 14}, {1, 15}, {1, 16}, {1, 18}, {2, 10}, {2, 12}};
    const std::pair<int, int> key{group.a, group.b};
    ReferenceD out;
    if (auto it = finite.find(key); it != finite.end()) {
        out.cls = DClass::finite;
        out.value = it->second;
    } else if (infinite.count(key)) {
        out.cls = DClass::infinite;
    } else {
        out.cls = DClass::unlisted;
    }
    return out;
}

// ---------------------------------------------------------------------------
// estimate_d
// ---------------------------------------------------------------------------

SlopeEstimate estimate_d(const std::vector<CensusRecord>& records, long long min_count) {
    if (records.size() < 3)
        throw std::invalid_argument("estimate_d: need at least 3 grid points");
    SlopeEstimate est;
    est.group = records.front().group;
    for (const CensusRecord& r : records) {
        if (r.group != est.group)
            throw std::invalid_argument("estimate_d: records mix torsion groups");
        est.X_grid.push_back(r.X);
    }
    std::sort(est.X_grid.begin(), est.X_grid.end());
    est.d_paper = reference_d(est.group);

    std::vector<std::pair<double, double>> pts;  // (log X, log count)
    for (const CensusRecord& r : records)
        if (r.count >= min_count && r.count >= 1)
            pts.emplace_back(std::log(static_cast<double>(r.X)),
                             std::log(static_cast<double>(r.count)));
    if (pts.size() < 3) {
        est.inv_d_est = 0.0;
        est.finite_sample_flag = true;
        return est;
    }
    double mx = 0, my = 0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    const double slope = sxy / sxx;
    est.inv_d_est = std::max(0.0, slope);
    for (const auto& [x, y] : pts) {
        const double r = y - (my + slope * (x - mx));
        est.residual += r * r;
    }
    return est;
}

std::vector<SlopeEstimate> estimate_d_all(const std::vector<CensusRecord>& records,
                                          long long min_count) {
    std::map<std::string, std::vector<CensusRecord>> by_group;
    for (const CensusRecord& r : records) by_group[label_key(r.group)].push_back(r);
    std::vector<SlopeEstimate> out;
    for (auto& [key, recs] : by_group) {
        (void)key;
        out.push_back(estimate_d(recs, min_count));
    }
    return out;
}

// ---------------------------------------------------------------------------
// family_count
// ---------------------------------------------------------------------------

FamilyCountResult family_count(const S2Config& cfg) {
    const FamilyRecord& fr = family_for(cfg.group);
    if (cfg.X < 1) throw std::invalid_argument("family_count: X must be positive");
    if (!(cfg.kappa > 0)) throw std::invalid_argument("family_count: kappa must be positive");

    const long n = fr.n, m = fr.m;
    const mpq_class kq(cfg.kappa);  // exact binary value of the double
    mpq_class k12n = 1;
    for (long i = 0; i < 12 * n; ++i) k12n *= kq;
    const mpz_class Xz(static_cast<long>(cfg.X));
    mpz_class Xm = 1;
    for (long i = 0; i < m; ++i) Xm *= Xz;
    // norm(a)^{12n} < kappa^{12n} X^m   and   norm(b)^{12n} < kappa^{12n} X
    const auto a_ok = [&](const mpz_class& na) {
        mpz_class p = 1;
        for (long i = 0; i < 12 * n; ++i) p *= na;
        return mpq_class(p) < k12n * Xm;
    };
    const auto b_ok = [&](const mpz_class& nb) {
        mpz_class p = 1;
        for (long i = 0; i < 12 * n; ++i) p *= nb;
        return mpq_class(p) < k12n * Xz;
    };

    FamilyCountResult res;
    std::set<std::string> s3_keys, s_keys;
    std::map<std::string, long> fibers;
    const long fiber_bound = std::max(4L, fr.r) * std::max(6L, fr.s);
    const GaussianRational four(GaussianInt(4)), twenty_seven(GaussianInt(27));

    std::vector<ZI64> ashell, bshell;
    for (std::int64_t nb = 1; b_ok(mpz_class(static_cast<long>(nb))); ++nb) {
        gaussians_of_norm(nb, bshell);
        for (const ZI64& bz : bshell) {
            const GaussianInt b = to_gaussian(bz);
            const GaussianInt bm = pow_gaussian(b, m);
            const GaussianInt b4n = pow_gaussian(b, 4 * n);
            const GaussianInt b6n = pow_gaussian(b, 6 * n);
            for (std::int64_t na = 0; a_ok(mpz_class(static_cast<long>(na))); ++na) {
                gaussians_of_norm(na, ashell);
                for (const ZI64& az : ashell) {
                    const GaussianInt a = to_gaussian(az);
                    if (!(a.is_zero() ? b.is_unit() : gcd(a, b).is_unit())) continue;
                    const GaussianRational t(a, bm);
                    const GaussianRational A0 = GaussianRational(b4n) * fr.f.eval(t);
                    const GaussianRational B0 = GaussianRational(b6n) * fr.g.eval(t);
                    const GaussianRational disc0 = four * A0 * A0 * A0 +
                                                   twenty_seven * B0 * B0;
                    if (disc0.is_zero()) continue;
                    const mpq_class nA = A0.norm(), nB = B0.norm();
                    if (!(nA * nA * nA < mpq_class(Xz) && nB * nB < mpq_class(Xz))) {
                        res.kappa_valid = false;
                        res.violation = "(a=" + to_string(a) + ", b=" + to_string(b) +
                                        "): N(A)^3 = " + nA.get_str() +
                                        "^3, N(B)^2 = " + nB.get_str() + "^2 vs X = " +
                                        Xz.get_str();
                        return res;
                    }
                    ++res.s2_size;
                    const GaussianInt u = clearing_scale(A0.den, B0.den);
                    const GaussianRational Aq = GaussianRational(pow_gaussian(u, 4)) * A0;
                    const GaussianRational Bq = GaussianRational(pow_gaussian(u, 6)) * B0;
                    if (!Aq.is_integral() || !Bq.is_integral())
                        throw std::logic_error("family_count: clearing failed");
                    const GaussianInt A = Aq.num, B = Bq.num;
                    GaussianInt g3;
                    if (A.is_zero())
                        g3 = canonical_associate(B * B).first;
                    else if (B.is_zero())
                        g3 = canonical_associate(A * A * A).first;
                    else
                        g3 = gcd(A * A * A, B * B);
                    res.max_gcd_valuation = std::max(res.max_gcd_valuation, max_valuation(g3));
                    const std::string key = to_string(A) + "," + to_string(B);
                    s3_keys.insert(key);
                    if (++fibers[key] > fiber_bound)
                        throw std::logic_error("family_count: fiber bound exceeded at " + key);
                    const IsoClass cls = iso_class(minimalize(Curve{A, B}));
                    s_keys.insert(to_string(cls.rep.A) + "," + to_string(cls.rep.B));
                }
            }
        }
    }
    res.s3_size = static_cast<long long>(s3_keys.size());
    res.s_size = static_cast<long long>(s_keys.size());
    return res;
}

// ---------------------------------------------------------------------------
// coprimality_probe
// ---------------------------------------------------------------------------

double coprimality_probe(long long sample_count, long long norm_bound) {
    if (sample_count < 10000)
        throw std::invalid_argument("coprimality_probe: need at least 10^4 samples");
    if (norm_bound < 1)
        throw std::invalid_argument("coprimality_probe: norm bound must be positive");
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    const std::int64_t side = isqrt64(norm_bound);
    std::uniform_int_distribution<std::int64_t> comp(-side, side);
    const auto draw = [&](std::int64_t& re, std::int64_t& im) {
        do {
            re = comp(rng);
            im = comp(rng);
        } while (re * re + im * im > norm_bound || (re == 0 && im == 0));
    };
    long long hits = 0;
    for (long long i = 0; i < sample_count; ++i) {
        std::int64_t r1, i1, r2, i2;
        draw(r1, i1);
        draw(r2, i2);
        if (detail::gcd_int64_pair(r1, i1, r2, i2) == 1) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(sample_count);
}

double coprime_density_reference() {
    // 1 / (zeta(2) * L(2, chi_{-4})), the density of coprime pairs in Z[i].
    return 0.663700804613853460721;
}

// ---------------------------------------------------------------------------
// scale_decomposition_probe
// ---------------------------------------------------------------------------

ScaleDecompositionReport scale_decomposition_probe(const FamilyRecord& fr,
                                                   long long samples) {
    if (samples < 10) throw std::invalid_argument("scale_decomposition_probe: too few samples");
    const long n = fr.n, m = fr.m;
    ScaleDecompositionReport rep;
    rep.samples_large = samples;
    rep.samples_small = std::max<long long>(1, samples / 10);

    std::set<GaussianRational, GaussianRationalLexLess> small_set, large_set;
    long long seen = 0;
    std::vector<ZI64> ashell, bshell;
    // Deterministic spiral over coprime (a, b): shells of norm(a) + norm(b).
    for (std::int64_t s = 1; seen < samples; ++s) {
        for (std::int64_t na = 0; na <= s && seen < samples; ++na) {
            const std::int64_t nb = s - na;
            if (nb < 1) continue;
            gaussians_of_norm(na, ashell);
            gaussians_of_norm(nb, bshell);
            for (const ZI64& az : ashell) {
                for (const ZI64& bz : bshell) {
                    if (seen >= samples) break;
                    const GaussianInt a = to_gaussian(az), b = to_gaussian(bz);
                    if (!(a.is_zero() ? b.is_unit() : gcd(a, b).is_unit())) continue;
                    const GaussianRational t(a, pow_gaussian(b, m));
                    // b recovered from the reduced denominator of t: the
                    // denominator is an associate of b^m, so its m-th power
                    // part is an associate of b.
                    const auto [broot, rest] = kth_power_part(t.den, static_cast<unsigned>(m));
                    if (!rest.is_unit())
                        throw std::logic_error("scale_decomposition_probe: denominator is "
                                               "not an m-th power");
                    const GaussianRational fv = fr.f.eval(t), gv = fr.g.eval(t);
                    const GaussianInt u = clearing_scale(fv.den, gv.den);
                    GaussianRational q(u, pow_gaussian(broot, n));
                    // unit-normalize so associates compare equal
                    q = GaussianRational(canonical_associate(q.num).first, q.den);
                    ++seen;
                    if (seen <= rep.samples_small) small_set.insert(q);
                    large_set.insert(q);
                }
                if (seen >= samples) break;
            }
        }
    }
    rep.stable = small_set == large_set;
    rep.q_values.assign(large_set.begin(), large_set.end());
    return rep;
}

// ---------------------------------------------------------------------------
// CSV serialization
// ---------------------------------------------------------------------------

std::string census_csv(const std::vector<CensusRecord>& records) {
    std::vector<CensusRecord> rows = records;
    std::sort(rows.begin(), rows.end(), [](const CensusRecord& x, const CensusRecord& y) {
        const std::string kx = label_key(x.group), ky = label_key(y.group);
        return kx != ky ? kx < ky : x.X < y.X;
    });
    std::ostringstream out;
    out << "group,X,count\n";
    for (const CensusRecord& r : rows)
        out << label_key(r.group) << "," << r.X << "," << r.count << "\n";
    return out.str();
}

std::vector<CensusRecord> parse_census_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("census csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "group,X,count") throw std::invalid_argument("census csv: bad header");
    std::vector<CensusRecord> out;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::invalid_argument("census csv: bad row: " + line);
        CensusRecord r;
        r.group = parse_torsion_label(line.substr(0, c1));
        try {
            std::size_t used = 0;
            r.X = std::stoll(line.substr(c1 + 1, c2 - c1 - 1), &used);
            if (used != c2 - c1 - 1) throw std::invalid_argument("trailing junk");
            r.count = std::stoll(line.substr(c2 + 1), &used);
            if (used != line.size() - c2 - 1) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw std::invalid_argument("census csv: bad row: " + line);
        }
        out.push_back(r);
    }
    return out;
}

std::string slopes_csv(const std::vector<SlopeEstimate>& estimates) {
    std::vector<SlopeEstimate> rows = estimates;
    std::sort(rows.begin(), rows.end(), [](const SlopeEstimate& x, const SlopeEstimate& y) {
        return label_key(x.group) < label_key(y.group);
    });
    const auto fixed6 = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return std::string(buf);
    };
    std::ostringstream out;
    out << "group,inv_d_est,d_est,d_paper,residual\n";
    for (const SlopeEstimate& e : rows) {
        out << label_key(e.group) << "," << fixed6(e.inv_d_est) << ",";
        out << (e.inv_d_est > 1e-12 ? fixed6(1.0 / e.inv_d_est) : "inf") << ",";
        switch (e.d_paper.cls) {
            case DClass::finite:
                out << e.d_paper.value.get_str();
                break;
            case DClass::infinite:
                out << "inf";
                break;
            case DClass::unlisted:
                break;  // empty field
        }
        out << "," << fixed6(e.residual) << "\n";
    }
    return out.str();
}

}  // namespace qit
