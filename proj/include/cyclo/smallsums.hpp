#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cyclo/cycint.hpp"
#include "cyclo/intpoly.hpp"
#include "cyclo/invariants.hpp"

namespace cyclo {

// ---- sums of roots of unity ----

// sign * zeta_order^exponent
struct RootTerm {
    long order = 1;
    long exponent = 0;
    int sign = 1;
};

struct RootSum {
    std::vector<RootTerm> terms;

    RootSum() = default;
    RootSum(std::initializer_list<RootTerm> t) : terms(t) {}

    CycInt value() const;
    long term_lcm() const;
    std::string str() const;
};

bool is_vanishing(const RootSum& s);
// Vanishing with no vanishing proper nonempty subsum. Term count <= 12.
bool is_primitive_vanishing(const RootSum& s);

// The classified primitive vanishing sums through ten terms (one row of
// weight 2, one of weight 6, three of weight 8, six of weight 10).
std::vector<RootSum> vanishing_table();

struct FourTermScanResult {
    long conductor = 0;
    long vanishing = 0;  // multisets 1 + z^a + z^b + z^c = 0, a <= b <= c
    long primitive = 0;  // those with no vanishing proper subsum
};
FourTermScanResult four_term_vanishing_scan(long conductor);

// ---- real-form classification (sums of at most five roots) ----

struct RealForm {
    int major = 0;            // case 1..8
    char minor = 0;           // 0, or 'a'..'e' for cases 7/8
    std::string description;
    int sign = 1;             // the matched orientation: sign*beta is in the stated form
    long zeta_order = 0;      // witness root order for generic cases
    long a = 0, b = 0;        // witness exponents
    long conj_k = 0;          // Galois witness for the exceptional orbits
};

// Classifies a real nonzero sum of at most five roots of unity as either a
// paired-cosine form (possibly plus 1) or one of the finitely many
// exceptional orbits. Witness roots are searched over orders dividing
// 2*lcm(term orders). Throws if the value is not real or is zero.
RealForm real_form_of(const RootSum& s);

// ---- house enumeration over the canonical real forms ----

struct ClassifiedValue {
    double house = 0;
    double house_radius = 0;
    CycInt exact = CycInt::zero(1);
    std::string form_tag;
    IntPoly min_poly;
};

struct EnumerationScope {
    long max_conductor = 230;
    std::vector<long> extra_conductors = {330, 390};
    bool pairs = true;           // z^a + z^-a
    bool pairs_plus_one = true;  // z^a + z^-a + 1
    bool two_pairs = true;       // z^a + z^-a + z^b + z^-b
    bool two_pairs_plus_one = true;
    bool eta_plus_pair = true;   // exceptional degree-8 orbit plus a cosine pair
    bool exceptional = true;     // the fixed exotic orbits
    bool six_term_13 = false;    // adjoin (1+sqrt(13))/2, a six-root value
};

// All houses realized in the open interval (lo, hi) by the scoped forms,
// deduplicated up to Galois conjugacy and sign, sorted by house.
std::vector<ClassifiedValue> enumerate_real_forms(const EnumerationScope& scope,
                                                  double lo, double hi);
std::vector<ClassifiedValue> classify_interval(double lo, double hi,
                                               const EnumerationScope& scope);

// ---- Jacobsthal function ----

// Smallest m such that every m consecutive integers contain one coprime to M.
long jacobsthal(long m_modulus);
// Brute-force arithmetic-progression variant, gcd(step, modulus) = 1.
long jacobsthal_progression(long m_modulus, long step);
// All M <= bound with j(M) > 2M/5 - 1.
std::vector<long> jacobsthal_exceptions(long bound);
// Number of squarefree R <= nmax violating j(R) <= 2^omega(R) (covers all
// N <= nmax since j(N) = j(rad N) and omega(N) = omega(rad N)).
long kanold_violations(long nmax);

// ---- certified log-barrier minimum ----

struct ThetaResult {
    bool certified = false;  // positivity on [0,(76/33)^2] minus singular balls
    double min_x = 0;
    double min_value = 0;
    long intervals = 0;      // bisection pieces certified
    double ball_margin = 0;  // weakest certified ball bound
};
ThetaResult theta_min();
// Exact numerator of -Theta'(x); throws if inconsistent with term expansion.
IntPoly theta_critical_quintic();

// ---- residue splits ----

// b = sum_{i in S} zeta_p^i alpha_i with S = {-(p-1)/2..(p-1)/2}, alpha_i in
// Q(zeta_{N/p}), normalized so alpha at the maximum index is zero.
struct PrimeSplit {
    long p = 0;
    std::map<long, CycInt> alphas;
    CycInt lambda = CycInt::zero(1);  // conj(alpha_i) - alpha_{-i}, real b only
    long x_count = 0;                 // nonzero alphas
};
PrimeSplit decompose_prime(const CycInt& b, long p);

// Unique decomposition b = sum_{i<p} zeta_{p^m}^i alpha_i when p^2 | N.
struct PrimePowerSplit {
    long p = 0, m = 0;
    std::vector<CycInt> alphas;
};
PrimePowerSplit decompose_prime_power(const CycInt& b, long p);

// ---- finite enumerations behind the interval classification ----

struct SplitMinimum {
    std::string label;
    bool enumerated = false;  // scan minimum vs closed-form bound
    double value = 0;         // scan result (== closed_form for bounds)
    double closed_form = 0;
    double printed = 0;       // frozen reference decimal
    long witness = -1;
};
std::vector<SplitMinimum> residue_split_minima();

// ---- exhaustive classification of small mean-square values ----

struct MClassEntry {
    std::vector<long> exponents;  // exponents at the scan conductor, first 0
    Rat m_value;
    int case_tag = 0;  // 1..4, 0 = unmatched
};

struct MScanResult {
    long conductor = 0;
    Rat bound;
    long two_term_hits = 0, three_term_hits = 0, four_term_hits = 0;
    std::array<long, 5> case_counts{};  // [0] unused, [1..4] matched cases
    std::vector<MClassEntry> violations;
    long real_hits = 0;
    long real_form_failures = 0;  // real hits outside cos/seven/eta orbits
};
MScanResult classify_m_below(const Rat& bound, long conductor);

}  // namespace cyclo
