#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cyclo/cycint.hpp"
#include "cyclo/intpoly.hpp"

#include <nlohmann/json.hpp>

namespace cyclo {

// Exact field trace over Q.
Int trace(const CycInt& b);

// Mean of |sigma(b)|^2 over all complex embeddings; always rational.
Rat m_invariant(const CycInt& b);

// Certified numeric: |value - true house| <= radius.
struct HouseValue {
    long double value = 0;
    long double radius = 0;
    int bits = 64;  // precision of the accepted pass
};
HouseValue house(const CycInt& b, long double target_radius = 1e-12L);

// Monic minimal polynomial over Z, via the product over the Galois orbit.
IntPoly min_poly(const CycInt& b);

struct RootWitness {
    long order = 1;
    std::vector<long> exponents;  // b = sum of zeta_order^e over these
};

// Least k <= rmax with b equal to a sum of k roots of unity of order dividing
// search_order; meet-in-the-middle over sorted multisets.
std::optional<RootWitness> n_invariant_upto(const CycInt& b, int rmax, long search_order);

struct InvariantReport {
    std::string value_text;
    long conductor = 1;
    std::string m_value;
    double house_value = 0;
    double house_radius = 0;
    std::string min_poly;
    std::vector<long long> min_poly_coeffs;
    int n_upper = -1;  // -1 when not found within the cap
    std::vector<long> witness_exponents;
    long witness_order = 0;

    nlohmann::ordered_json to_json() const;
};

InvariantReport invariant_report(const CycInt& b, int rmax, long search_order,
                                 long double house_target = 1e-12L);

std::string rat_str(const Rat& r);

}  // namespace cyclo
