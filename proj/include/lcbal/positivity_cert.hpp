#pragma once

#include "lcbal/complex_structure.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace lcbal {

/// Principal minors of the Hermitian coefficient matrix of a generic
/// metric. Each is positive at every positive specialization.
class MinorTable {
public:
    /// `basis_labels` name the algebra's basis vectors; frame vectors that are
    /// basis vectors inherit those names, others print as v1, v2, ...
    MinorTable(const GenericMetric& metric, const ComplexStructure& j, const std::vector<std::string>& basis_labels);

    struct Minor {
        std::vector<int> subset; ///< indices into the complex frame
        Poly value;
    };
    const std::vector<Minor>& minors() const { return minors_; }
    const std::vector<Vector>& frame() const { return frame_; }
    /// "det H[Y_1,T_2]"
    std::string describe(const std::vector<int>& subset) const;
    const GenericMetric& metric() const { return metric_; }
    const Matrix& j() const { return j_; }
    /// Multi-index at which basis form a has its leading coefficient 1.
    const std::vector<MultiIndex>& pivots() const { return pivots_; }

private:
    GenericMetric metric_;
    Matrix j_;
    std::vector<MultiIndex> pivots_;
    std::vector<Vector> frame_;
    std::vector<std::string> labels_;
    std::vector<Minor> minors_;
};

/// p = coefficient * prod minors[factors] (a monomial in minors), or
/// p = sum coefficient_i * minors[i] with all coefficients of one sign.
struct MinorCertificate {
    enum class Kind { product, combination };
    Kind kind = Kind::product;
    std::vector<std::vector<std::size_t>> terms; ///< each term is a product of minor indices
    std::vector<Rational> coefficients;          ///< one per term, all of one sign
    int sign = 0;                                ///< sign of p on the positive cone
    std::string text;
};

/// Exact recognition; candidates are filtered by evaluation at random
/// points and then verified by exact expansion. Products use at most
/// `max_factors` minors.
std::optional<MinorCertificate> recognize(const Poly& p, const MinorTable& table, int max_factors = 3);

/// Re-expands a certificate and compares with p exactly.
bool verify(const MinorCertificate& cert, const Poly& p, const MinorTable& table);

/// Random positive specialization of the generic metric: parameter values
/// of omega = sum_k (J^* a_k) ^ a_k + omega_0 for random rational covectors a_k.
std::map<Var, Rational> random_positive_point(std::mt19937_64& rng, const MinorTable& table);

struct SampleResult {
    int samples = 0;
    int positive = 0;
    int negative = 0;
    int zero = 0;
    int sign() const; ///< +1 / -1 when all samples share that sign, else 0
};

SampleResult sample_sign(const Poly& p, const MinorTable& table, std::uint64_t seed, int samples = 1000);
SampleResult sample_sign(const std::function<Rational(const std::map<Var, Rational>&)>& f, const MinorTable& table,
                         std::uint64_t seed, int samples = 1000);

} // namespace lcbal
