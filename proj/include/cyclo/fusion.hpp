#pragma once

#include <string>
#include <vector>

#include "cyclo/intpoly.hpp"

#include <nlohmann/json.hpp>

namespace cyclo {

// Fusion ring on a finite basis with unit, duality, and nonnegative integer
// structure constants tensor[i][j][k] = multiplicity of k inside i (x) j.
struct FusionRing {
    std::vector<std::string> labels;
    long unit = 0;
    std::vector<long> dual;
    std::vector<std::vector<std::vector<long>>> tensor;

    long size() const { return static_cast<long>(labels.size()); }
    // action of i on column vectors: [k][j] = tensor[i][j][k]
    std::vector<std::vector<Int>> left_matrix(long i) const;
    nlohmann::ordered_json to_json() const;
    static FusionRing from_json(const nlohmann::json& j);
    static FusionRing load(const std::string& path);
};

// Unit, Frobenius reciprocity, dual involution, and associativity, checked
// exhaustively over the basis.
bool verify_axioms(const FusionRing& r, std::string* why = nullptr);

// Group ring of Z/k with basis g^0 .. g^{k-1}.
FusionRing cyclic_pointed_ring(long k);

// Z/3 pointed part plus one self-dual X with X (x) X = 1 + g + g^2 + 3X.
FusionRing ix_ring();

// Extension of ix_ring by a self-dual M and a Z/3 orbit V, gV, g^2V with
// M (x) M = 1 + g + g^2, M (x) V = X, V (x) V = 1 + X.
FusionRing v_ring();

struct FPDim {
    IntPoly minpoly;
    double value = 0;
};
// Largest real eigenvalue of left multiplication by object i, together with
// its exact integer minimal polynomial.
FPDim fp_dimension(const FusionRing& r, long i);

enum class IndexClass { Allowed, Excluded };
struct IndexVerdict {
    IndexClass cls = IndexClass::Excluded;
    std::string reason;
    IntPoly beta_minpoly;
    double alpha = 0;
};
// Classifies a candidate index alpha inside the window (4, 4 + 10/33) by its
// minimal polynomial: alpha must be an algebraic integer whose shift beta =
// alpha - 2 is an admitted interval value with all conjugates real and >= -2.
// Throws std::domain_error when no root lies in the open window.
IndexVerdict index_classify(const IntPoly& alpha_minpoly);

}  // namespace cyclo
