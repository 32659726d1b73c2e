#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "cyclo/intpoly.hpp"

#include <nlohmann/json.hpp>

namespace cyclo {

// Connected undirected multigraph with a marked attachment vertex.
// Invariant: 0 <= marked < vertices; edges {a, b, mult} with a != b, mult >= 1.
struct MarkedGraph {
    long vertices = 0;
    long marked = 0;
    std::vector<std::array<long, 3>> edges;

    std::vector<std::vector<long>> adjacency() const;
    std::vector<long> degrees() const;
    bool connected() const;
    bool bipartite() const;
    bool simple() const;  // all multiplicities 1

    // Text form: "vertices N marked V", then one "a b [mult]" line per edge.
    // '#' starts a comment.
    std::string to_text() const;
    static MarkedGraph parse_text(const std::string& s);
    static MarkedGraph load(const std::string& path);
    nlohmann::ordered_json to_json() const;
    static MarkedGraph from_json(const nlohmann::json& j);
};

MarkedGraph path_graph(long n);  // A_n, marked at an end
MarkedGraph dynkin_d(long n);    // D_n, marked at the tail end
bool is_path_graph(const MarkedGraph& g);
bool is_dynkin_d(const MarkedGraph& g);

// Base graph with a pendant path of n - |base| new vertices attached at the
// mark; total vertex count n.
MarkedGraph build_gamma_n(const MarkedGraph& base, long n);

// Exact characteristic polynomial of the adjacency matrix.
IntPoly char_poly(const MarkedGraph& g);

// Family char polys P_n via P_n = x P_{n-1} - P_{n-2}, seeded directly.
class FamilyCharPolys {
  public:
    explicit FamilyCharPolys(MarkedGraph base);
    const IntPoly& at(long n);
    const MarkedGraph& base() const { return base_; }

  private:
    MarkedGraph base_;
    std::vector<IntPoly> table_;  // table_[i] = P_{|base| + i}
};

// Checks P_n == x P_{n-1} - P_{n-2} against directly computed char polys
// for every n in [lo, hi]; lo >= |base| + 2.
bool verify_recurrence(const MarkedGraph& base, long lo, long hi);

// p(t + 1/t); symmetric under t -> 1/t.
LaurentPoly to_laurent(const IntPoly& p);

// The stable block A with F_n(t)(t - 1/t) = t^n A(t) - t^-n A(1/t),
// recovered at the probe index and cross-checked at probe + 1.
// Throws std::runtime_error when the support blocks overlap.
LaurentPoly extract_A(const MarkedGraph& base, long probe_n);

// (K, n0): sum (lambda^2 - 2)^2 = Tr M^4 - 4 Tr M^2 + 4n = 2n + K for all
// n >= n0; fitted over a window and verified constant.
std::pair<long, long> compute_K(const MarkedGraph& base);

// A = B * C with B the maximal on-circle reciprocal factor and C free of
// unit-circle roots. B is a plain polynomial (lo = 0).
std::pair<LaurentPoly, LaurentPoly> repeated_root_poly(const LaurentPoly& a);

// Factors out min polys of 2cos(2 pi / d); rest has no such factor.
struct CyclotomicSplit {
    std::vector<std::pair<long, int>> factors;  // (d, multiplicity)
    IntPoly rest;
    long stripped_degree() const;
};
CyclotomicSplit strip_cyclotomic(const IntPoly& p);

struct PeriodInfo {
    bool found = false;
    long period = 0;
    long window_lo = 0;
    std::vector<long> degree_by_residue;  // cyclotomic-part degree at n = r (mod period)
    long max_degree = 0;                  // R
};
// Period of the cyclotomic part over n in [lo, hi]; needs hi - lo >= 2 * period.
PeriodInfo cyclotomic_period(FamilyCharPolys& fam, long lo, long hi);

struct FamilyProfile {
    MarkedGraph base;
    LaurentPoly a, b, c;  // a = b * c
    long k = 0;
    long n0 = 0;
    PeriodInfo period;
    long n_effective = 0;
    bool salem_shortcut = false;  // bipartite, one +- root pair of a off the circle
    double lambda_infinity = 0;

    nlohmann::ordered_json to_json() const;
};
FamilyProfile family_profile(const MarkedGraph& base);
long effective_bound(long k, long r);

enum class AbelianOutcome { Certified, ProbablyNot, Inconclusive };

struct AbelianResult {
    AbelianOutcome outcome = AbelianOutcome::Inconclusive;
    long conductor = 0;  // certified f
    Int constant = 0;    // certified value = constant + sum c_j (z^j + z^-j)
    std::vector<std::pair<long, Int>> cosine_combo;
    int primes_tested = 0;
    std::string evidence;
};
// Decides whether the field of a root of the irreducible m is abelian.
// Certificates are exact (verified by substitution); refutations are either
// a factor-degree certificate or a failed complete-split sample.
AbelianResult abelian_test(const IntPoly& m, long conductor_cap, int prime_count);

// Scaled Chebyshev: phi_m(t + 1/t) = t^m + t^-m.
IntPoly phi_m(long m);

// Mean of phi_m(root)^2 over the roots of lambda_minpoly, exact.
Rat amplification(const IntPoly& lambda_minpoly, long m);

enum class Outcome { DynkinAD, ExcludedByBound, ExcludedByTest, Candidate, Inconclusive };
std::string outcome_name(Outcome o);

struct Verdict {
    long n = 0;
    Outcome outcome = Outcome::Inconclusive;
    IntPoly lambda2_minpoly;
    double lambda2 = 0;
    std::string evidence;

    nlohmann::ordered_json to_json() const;
};
Verdict family_verdict(const FamilyProfile& profile, long n, long conductor_cap = 10000,
                       int prime_count = 25);
std::vector<Verdict> family_verdicts(const FamilyProfile& profile, long lo, long hi,
                                     long conductor_cap, int prime_count, int jobs);

struct GraphNorm {
    double lambda2 = 0;
    double radius = 0;
    IntPoly minpoly;  // of lambda^2
};
GraphNorm graph_norm(const MarkedGraph& g);

}  // namespace cyclo
