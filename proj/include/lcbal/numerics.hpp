#pragma once

#include "lcbal/linalg.hpp"
#include "lcbal/polynomial.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace lcbal::numerics {

/// Search knobs shared by the feasibility routines.
struct SearchOptions {
    std::uint64_t seed = 20240607;
    int starts = 64;
    int iterations = 500;
    double tol = 1e-9;
    long max_den = 1000000;
    bool parallel = true;
};

/// Independent stream per (seed, start index); scheduling cannot change it.
std::mt19937_64 start_rng(std::uint64_t seed, int start);

/// Polynomial compiled for double evaluation over a fixed variable order.
class CompiledPoly {
public:
    CompiledPoly() = default;
    CompiledPoly(const Poly& p, const std::vector<Var>& order);
    double operator()(const std::vector<double>& x) const;
    /// Value and gradient.
    double eval_grad(const std::vector<double>& x, std::vector<double>& grad) const;

private:
    struct Term {
        double coef;
        std::vector<std::pair<std::size_t, unsigned>> powers;
    };
    std::vector<Term> terms_;
    std::size_t nvars_ = 0;
};

Eigen::MatrixXd to_eigen(const Matrix& m);
double to_double(const Rational& q);

/// Smallest eigenvalue and a unit eigenvector of a symmetric matrix.
double min_eigen(const Eigen::MatrixXd& m, Eigen::VectorXd* vec = nullptr);

/// Component-wise continued-fraction rationalization.
Vector rationalize(const std::vector<double>& x, long max_den);

} // namespace lcbal::numerics
